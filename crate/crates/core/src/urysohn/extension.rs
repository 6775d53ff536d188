//! Explicit finite extensions: metric achievability, weak micro-transitivity,
//! the displacement-bounded one-point extension, non-proper truncation
//! witnesses and distance chains.
//!
//! Each construction writes down the prescribed distances literally and then
//! runs the full metric scan on the result. A prescription that breaks the
//! triangle inequality is reported as [`Error::MetricFailure`] with the first
//! offending triple; nothing is repaired.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::metric::{amalgamate, Check, MetricSpace, PartialIsometry};
use crate::rational::{ceil_to_u64, fmt_rational, Rational};

/// Input of [`ma_extension`]: a landmark set `f`, two points and a target distance.
#[derive(Debug, Clone)]
pub struct MaRequest {
    pub space: MetricSpace,
    pub f: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub delta: Rational,
}

impl MaRequest {
    /// Checks (a) `|d(x,z) - d(y,z)| < delta` and (b) `delta <= d(x,z) + d(y,z)` for `z` in `f`.
    pub fn check_preconditions(&self) -> Result<()> {
        let s = &self.space;
        s.check_index(self.x)?;
        s.check_index(self.y)?;
        for (a, &z) in self.f.iter().enumerate() {
            s.check_index(z)?;
            if self.f[..a].contains(&z) {
                return Err(Error::IndexClash(format!("landmark {z} listed twice")));
            }
        }
        if self.f.contains(&self.x) {
            return Err(Error::IndexClash(format!("x = {} is a landmark", self.x)));
        }
        if self.delta <= Rational::zero() {
            return Err(Error::InvalidArgument("delta must be positive".into()));
        }
        if self.delta >= *s.diam_bound() {
            return Err(Error::DiameterExceeded {
                what: format!("delta = {}", fmt_rational(&self.delta)),
                diam: fmt_rational(s.diam_bound()),
            });
        }
        for &z in &self.f {
            let (dx, dy) = (s.dist(self.x, z), s.dist(self.y, z));
            if (dx - dy).abs() >= self.delta {
                return Err(Error::PreconditionA { z });
            }
            if self.delta > dx + dy {
                return Err(Error::PreconditionB { z });
            }
        }
        Ok(())
    }
}

/// Output of a one-point construction: the new space and the new point.
#[derive(Debug, Clone)]
pub struct OnePoint {
    pub space: MetricSpace,
    pub point: usize,
}

/// Restricts to `f + [x]` and adds `y'` with `d(y', x) = delta` and
/// `d(y', z) = d(y, z)` for every landmark.
pub fn ma_extension(req: &MaRequest) -> Result<OnePoint> {
    req.check_preconditions()?;
    let mut keep = req.f.clone();
    keep.push(req.x);
    let base = req.space.subspace(&keep)?;
    let mut row: Vec<Rational> = req
        .f
        .iter()
        .map(|&z| req.space.dist(req.y, z).clone())
        .collect();
    row.push(req.delta.clone());
    let label = base.fresh_label("y'");
    let space = base.push_point(label, row)?;
    let point = space.len() - 1;
    Ok(OnePoint { space, point })
}

/// Output of [`uwmt_extension`]: the extended space and the indices of the shifted copies.
#[derive(Debug, Clone)]
pub struct Shifted {
    pub space: MetricSpace,
    pub copies: Vec<usize>,
}

/// Adds a shifted copy `z'_j` of each `z_j` in `zs`, moving `x` to `y`.
///
/// With `z_0 = x` and `z'_0 = y`, the local prescription on
/// `{x, y, z_1.., z'_1..}` is
/// `d(z'_i, z'_j) = d(z_i, z_j)` for `0 <= i, j` and
/// `d(z_i, z'_j) = min(d(z_i, z_j) + d(x, y), bound)` for `0 <= i`, `1 <= j`;
/// distances to `y` already present in the space are kept. The remaining
/// points of the space are attached by the free amalgam over
/// `{x, y, z_1, ..}`, so existing distances are untouched and an empty `zs`
/// returns the input unchanged.
pub fn uwmt_extension(space: &MetricSpace, x: usize, y: usize, zs: &[usize]) -> Result<Shifted> {
    let mut core = vec![x, y];
    core.extend_from_slice(zs);
    for (a, &p) in core.iter().enumerate() {
        space.check_index(p)?;
        if core[..a].contains(&p) {
            return Err(Error::IndexClash(format!(
                "point {p} repeated among x, y, Z"
            )));
        }
    }
    let k = zs.len();
    let n_local = 2 + 2 * k;
    let shift = space.dist(x, y);
    let bound = space.diam_bound();
    // local numbering: 0 = x, 1 = y, 1 + i = z_i, 1 + k + j = z'_j (i, j >= 1)
    let orig = |l: usize| if l == 0 { x } else { core[l] };
    let zi = |i: usize| if i == 0 { x } else { zs[i - 1] };
    let mut d = vec![vec![Rational::zero(); n_local]; n_local];
    for a in 0..2 + k {
        for b in 0..2 + k {
            d[a][b] = space.dist(orig(a), orig(b)).clone();
        }
    }
    for j in 1..=k {
        let cj = 1 + k + j;
        for i in 1..=k {
            let ci = 1 + k + i;
            d[ci][cj] = space.dist(zi(i), zi(j)).clone();
        }
        let to_y = space.dist(x, zi(j)).clone();
        d[1][cj] = to_y.clone();
        d[cj][1] = to_y;
        for i in 0..=k {
            let li = if i == 0 { 0 } else { 1 + i };
            let v = (space.dist(zi(i), zi(j)) + shift).min(bound.clone());
            d[li][cj] = v.clone();
            d[cj][li] = v;
        }
    }
    let mut labels: Vec<String> = core.iter().map(|&p| space.labels()[p].clone()).collect();
    labels.extend(zs.iter().map(|&z| format!("{}'", space.labels()[z])));
    let n = space.len();
    let local_to_out = |l: usize| if l < 2 + k { orig(l) } else { n + (l - 2 - k) };
    let local = match crate::metric::validate_metric(&d, bound)? {
        Check::Pass => MetricSpace::new(labels, d, bound.clone())?,
        Check::Fail(v) => return Err(Error::MetricFailure(v.remap(local_to_out))),
    };
    let glue = PartialIsometry::new(core.clone(), (0..2 + k).collect())?;
    let am = amalgamate(space, &local, &glue, Some(bound))?;
    let copies = (1..=k).map(|j| am.right[1 + k + j]).collect();
    Ok(Shifted {
        space: am.space,
        copies,
    })
}

/// A finite partial isometry `x_i -> y_i` with displacement at most `eps`,
/// given as index pairs into some space.
#[derive(Debug, Clone, PartialEq)]
pub struct BfState {
    pub pairs: Vec<(usize, usize)>,
    pub eps: Rational,
}

impl BfState {
    pub fn new(pairs: Vec<(usize, usize)>, eps: Rational) -> Self {
        BfState { pairs, eps }
    }

    pub fn identity(points: &[usize], eps: Rational) -> Self {
        BfState {
            pairs: points.iter().map(|&p| (p, p)).collect(),
            eps,
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    /// Non-empty, injective domain, exact distance preservation and
    /// `d(x_i, y_i) <= eps`, against any distance oracle on `len` points.
    pub fn validate_with(&self, len: usize, dist: impl Fn(usize, usize) -> Rational) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::EmptyState);
        }
        if self.eps <= Rational::zero() {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        for (a, &(x, y)) in self.pairs.iter().enumerate() {
            for p in [x, y] {
                if p >= len {
                    return Err(Error::IndexOutOfRange { index: p, len });
                }
            }
            if self.pairs[..a].iter().any(|q| q.0 == x) {
                return Err(Error::IndexClash(format!(
                    "point {x} appears twice in the domain"
                )));
            }
            if dist(x, y) > self.eps {
                return Err(Error::InvalidState(format!("d({x},{y}) exceeds eps")));
            }
        }
        for (a, &(xa, ya)) in self.pairs.iter().enumerate() {
            for &(xb, yb) in &self.pairs[a + 1..] {
                if dist(xa, xb) != dist(ya, yb) {
                    return Err(Error::InvalidState(format!(
                        "d({xa},{xb}) != d({ya},{yb}): not a partial isometry"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, space: &MetricSpace) -> Result<()> {
        self.validate_with(space.len(), |i, j| space.dist(i, j).clone())
    }
}

/// The distances a new point `z'` must have so that `x_i -> y_i, z -> z'`
/// stays isometric with `d(z', z) <= eps`:
///
/// * `d(z', y_i) = d(z, x_i)`
/// * `d(z', x_i) = min(bound, min_j d(z, x_j) + d(y_j, x_i))`
/// * `d(z', z) = min(eps, min_i d(z, x_i) + d(y_i, z))`
///
/// The `j = i` term of the middle line is `d(z, x_i) + d(x_i, y_i)`; taking
/// it alone is [`prop53_prescription_per_index`], which is not always a metric.
///
/// Anchors are listed in first-occurrence order over `x_1, y_1, x_2, y_2, ..., z`.
/// A point that receives two different prescribed values is reported as
/// `InvalidState`.
pub fn prop53_prescription(
    dist: impl Fn(usize, usize) -> Rational,
    bound: &Rational,
    st: &BfState,
    z: usize,
) -> Result<Vec<(usize, Rational)>> {
    prescribe(&dist, bound, st, z, |x, _| {
        st.pairs
            .iter()
            .map(|&(xj, yj)| dist(z, xj) + dist(yj, x))
            .min()
            .expect("non-empty")
            .min(bound.clone())
    })
}

/// As [`prop53_prescription`] but with `d(z', x_i) = min(bound, d(z, x_i) + d(x_i, y_i))`
/// for each `i` separately.
pub fn prop53_prescription_per_index(
    dist: impl Fn(usize, usize) -> Rational,
    bound: &Rational,
    st: &BfState,
    z: usize,
) -> Result<Vec<(usize, Rational)>> {
    prescribe(&dist, bound, st, z, |x, y| {
        (dist(z, x) + dist(x, y)).min(bound.clone())
    })
}

fn prescribe(
    dist: &impl Fn(usize, usize) -> Rational,
    bound: &Rational,
    st: &BfState,
    z: usize,
    at_x: impl Fn(usize, usize) -> Rational,
) -> Result<Vec<(usize, Rational)>> {
    if st.pairs.is_empty() {
        return Err(Error::EmptyState);
    }
    if st.domain().any(|x| x == z) {
        return Err(Error::IndexClash(format!(
            "z = {z} is already in the domain"
        )));
    }
    let to_z = st
        .pairs
        .iter()
        .map(|&(x, y)| dist(z, x) + dist(y, z))
        .chain(std::iter::once(st.eps.clone()))
        .min()
        .expect("non-empty")
        .min(bound.clone());
    let mut anchors: Vec<(usize, Rational)> = Vec::new();
    let mut put = |p: usize, v: Rational| -> std::result::Result<(), usize> {
        match anchors.iter().find(|(q, _)| *q == p) {
            Some((_, w)) if *w != v => Err(p),
            Some(_) => Ok(()),
            None => {
                anchors.push((p, v));
                Ok(())
            }
        }
    };
    let mut clash = None;
    for &(x, y) in &st.pairs {
        let r1 = put(x, at_x(x, y));
        let r2 = put(y, dist(z, x));
        clash = clash.or(r1.err()).or(r2.err());
    }
    clash = clash.or(put(z, to_z).err());
    match clash {
        Some(p) => Err(Error::InvalidState(format!(
            "point {p} receives two different prescribed distances"
        ))),
        None => Ok(anchors),
    }
}

/// Adds `z'` to `space` following [`prop53_prescription`]. The prescription
/// is first certified on the local space `{x_i, y_i, z, z'}`, then the
/// remaining points are attached by the free amalgam.
pub fn prop53_extension(space: &MetricSpace, st: &BfState, z: usize) -> Result<OnePoint> {
    st.validate(space)?;
    space.check_index(z)?;
    let anchors = prop53_prescription(|i, j| space.dist(i, j).clone(), space.diam_bound(), st, z)?;
    certify_local(space, &anchors)?;
    let row = space.amalgam_row(&anchors);
    let label = space.fresh_label(&format!("{}'", space.labels()[z]));
    let out = space.push_point(label, row)?;
    let point = out.len() - 1;
    Ok(OnePoint { space: out, point })
}

/// Runs the metric scan on `anchors + new point`, reporting failures in the
/// numbering of `space` (the new point is `space.len()`).
fn certify_local(space: &MetricSpace, anchors: &[(usize, Rational)]) -> Result<()> {
    let idx: Vec<usize> = anchors.iter().map(|a| a.0).collect();
    let local = space.subspace(&idx)?;
    let row = anchors.iter().map(|a| a.1.clone()).collect();
    let n = space.len();
    match local.push_point("new".into(), row) {
        Ok(_) => Ok(()),
        Err(Error::MetricFailure(v)) => Err(Error::MetricFailure(v.remap(|l| {
            if l < idx.len() {
                idx[l]
            } else {
                n
            }
        }))),
        Err(e) => Err(e),
    }
}

/// Restricts to `[x] + zs` and adds `y` with `d(y, x) = lambda` and
/// `d(y, z) = max(lambda, d(x, z))`.
pub fn nonproper_witness(
    space: &MetricSpace,
    x: usize,
    zs: &[usize],
    lambda: &Rational,
) -> Result<OnePoint> {
    if *lambda <= Rational::zero() || lambda >= space.diam_bound() {
        return Err(Error::LambdaOutOfRange {
            lambda: fmt_rational(lambda),
            diam: fmt_rational(space.diam_bound()),
        });
    }
    if zs.contains(&x) {
        return Err(Error::IndexClash(format!("x = {x} is listed in Z")));
    }
    let mut keep = vec![x];
    keep.extend_from_slice(zs);
    let base = space.subspace(&keep)?;
    let mut row = vec![lambda.clone()];
    row.extend(zs.iter().map(|&z| space.dist(x, z).max(lambda).clone()));
    let label = base.fresh_label("y");
    let out = base.push_point(label, row)?;
    let point = out.len() - 1;
    Ok(OnePoint { space: out, point })
}

/// Points `x_0..x_n` with `n = max(2, ceil(s / r))`, consecutive points at distance
/// `r` and `d(x_0, x_n) = s`: the shortest-path metric of a cycle with `n`
/// edges of length `r` and one closing edge of length `s`, capped at the bound.
pub fn injectivity_chain(r: &Rational, s: &Rational, diam_bound: &Rational) -> Result<MetricSpace> {
    let zero = Rational::zero();
    if *r <= zero || r > diam_bound || *s <= zero || s > diam_bound {
        return Err(Error::InvalidArgument(format!(
            "need 0 < r, s <= bound (r = {r}, s = {s}, bound = {diam_bound})"
        )));
    }
    let n = ceil_to_u64(&(s / r))
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::InvalidArgument("s / r too large".into()))?
        // one step cannot carry both r and s unless they are equal
        .max(2);
    let points = n + 1;
    let d = (0..points)
        .map(|i| {
            (0..points)
                .map(|j| {
                    let steps = i.abs_diff(j);
                    let along = r * Rational::from_integer(steps.into());
                    let around = s + r * Rational::from_integer((n - steps).into());
                    along.min(around).min(diam_bound.clone())
                })
                .collect()
        })
        .collect();
    let labels = (0..points).map(|i| format!("x{i}")).collect();
    MetricSpace::certify(labels, d, diam_bound.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn space(rows: Vec<Vec<Rational>>) -> MetricSpace {
        MetricSpace::from_matrix(rows, int(1)).unwrap()
    }

    /// points x, y, z with the given pairwise distances
    fn xyz(xy: Rational, xz: Rational, yz: Rational) -> MetricSpace {
        space(vec![
            vec![int(0), xy.clone(), xz.clone()],
            vec![xy, int(0), yz.clone()],
            vec![xz, yz, int(0)],
        ])
    }

    #[test]
    fn ma_single_landmark() {
        let s = xyz(rat(1, 5), rat(1, 2), rat(3, 5));
        let req = MaRequest {
            space: s,
            f: vec![2],
            x: 0,
            y: 1,
            delta: rat(1, 4),
        };
        let out = ma_extension(&req).unwrap();
        // order: z, x, y'
        assert_eq!(out.space.len(), 3);
        assert_eq!(out.space.dist(out.point, 1), &rat(1, 4));
        assert_eq!(out.space.dist(out.point, 0), &rat(3, 5));
    }

    #[test]
    fn ma_without_landmarks() {
        let s = xyz(rat(1, 5), rat(1, 2), rat(3, 5));
        let req = MaRequest {
            space: s,
            f: vec![],
            x: 0,
            y: 1,
            delta: rat(1, 3),
        };
        let out = ma_extension(&req).unwrap();
        assert_eq!(out.space.len(), 2);
        assert_eq!(out.space.dist(0, 1), &rat(1, 3));
    }

    #[test]
    fn ma_precondition_b() {
        let s = xyz(rat(1, 10), rat(1, 10), rat(1, 10));
        let req = MaRequest {
            space: s,
            f: vec![2],
            x: 0,
            y: 1,
            delta: rat(1, 2),
        };
        assert_eq!(
            ma_extension(&req).unwrap_err(),
            Error::PreconditionB { z: 2 }
        );
        let s = xyz(rat(1, 5), rat(1, 2), rat(3, 5));
        let req = MaRequest {
            space: s,
            f: vec![2],
            x: 0,
            y: 1,
            delta: rat(1, 20),
        };
        assert_eq!(
            ma_extension(&req).unwrap_err(),
            Error::PreconditionA { z: 2 }
        );
    }

    #[test]
    fn uwmt_single_z() {
        let s = xyz(rat(1, 5), rat(1, 2), rat(3, 5));
        let out = uwmt_extension(&s, 0, 1, &[2]).unwrap();
        let zp = out.copies[0];
        assert_eq!(zp, 3);
        assert_eq!(out.space.dist(2, zp), &rat(1, 5));
        assert_eq!(out.space.dist(0, zp), &rat(7, 10));
        assert_eq!(out.space.dist(1, zp), &rat(1, 2));
    }

    #[test]
    fn uwmt_degenerate_inputs() {
        let s = xyz(rat(1, 5), rat(1, 2), rat(3, 5));
        let out = uwmt_extension(&s, 0, 1, &[]).unwrap();
        assert_eq!(out.space, s);
        assert!(matches!(
            uwmt_extension(&s, 0, 0, &[2]),
            Err(Error::IndexClash(_))
        ));
    }

    #[test]
    fn uwmt_collinear_failure_is_surfaced() {
        // points on a line: b = -1/10, x = 0, y = 1/10, a = 2/10
        let pos = [rat(0, 1), rat(1, 10), rat(2, 10), rat(-1, 10)];
        let d = pos
            .iter()
            .map(|p| pos.iter().map(|q| (p - q).abs()).collect())
            .collect();
        let s = space(d);
        let err = uwmt_extension(&s, 0, 1, &[2, 3]).unwrap_err();
        let Error::MetricFailure(v) = err else {
            panic!("expected a metric failure")
        };
        assert!(v.triple().is_some());
    }

    #[test]
    fn prop53_single_pair() {
        let s = xyz(rat(1, 4), rat(1, 2), rat(3, 5));
        let st = BfState::new(vec![(0, 1)], rat(1, 4));
        let out = prop53_extension(&s, &st, 2).unwrap();
        let zp = out.point;
        assert_eq!(out.space.dist(zp, 1), &rat(1, 2));
        assert_eq!(out.space.dist(zp, 0), &rat(3, 4));
        assert_eq!(out.space.dist(zp, 2), &rat(1, 4));
    }

    #[test]
    fn per_index_prescription_can_break_triangles() {
        // twelfths; y_1 = 6, y_2 = 7 are copies moved by 1/12 and 1/6, x_3 = 5 fixed
        let u = [
            [0, 7, 8, 7, 7, 8, 10, 8],
            [7, 0, 4, 1, 4, 2, 6, 2],
            [8, 4, 0, 5, 4, 5, 2, 6],
            [7, 1, 5, 0, 3, 1, 6, 1],
            [7, 4, 4, 3, 0, 2, 6, 3],
            [8, 2, 5, 1, 2, 0, 5, 1],
            [10, 6, 2, 6, 6, 5, 0, 5],
            [8, 2, 6, 1, 3, 1, 5, 0],
        ];
        let s = space(
            u.iter()
                .map(|r| r.iter().map(|&x| rat(x, 12)).collect())
                .collect(),
        );
        let st = BfState::new(vec![(2, 6), (3, 7), (5, 5)], rat(1, 6));
        st.validate(&s).unwrap();
        let d = |i: usize, j: usize| s.dist(i, j).clone();
        let literal = prop53_prescription_per_index(d, &int(1), &st, 4).unwrap();
        // d(z', x_2) = 1/4 + 1/12 = 1/3 > d(z', 5) + d(5, 3) = 1/6 + 1/12
        assert!(literal.contains(&(3, rat(1, 3))));
        assert!(literal.contains(&(5, rat(1, 6))));
        let out = prop53_extension(&s, &st, 4).unwrap();
        assert_eq!(out.space.dist(out.point, 3), &rat(1, 4));
        assert_eq!(out.space.dist(out.point, 7), &rat(1, 4));
        assert!(out.space.dist(out.point, 4) <= &rat(1, 6));
    }

    #[test]
    fn prop53_identity_pairs() {
        let s = xyz(rat(1, 2), rat(1, 2), rat(1, 2));
        let st = BfState::identity(&[0, 1], int(1));
        let out = prop53_extension(&s, &st, 2).unwrap();
        assert_eq!(out.space.dist(out.point, 0), &rat(1, 2));
        assert_eq!(out.space.dist(out.point, 2), &int(1));
        let st = BfState::identity(&[0, 1], rat(1, 8));
        let out = prop53_extension(&s, &st, 2).unwrap();
        assert_eq!(out.space.dist(out.point, 2), &rat(1, 8));
        let empty = BfState::new(vec![], rat(1, 8));
        assert_eq!(
            prop53_extension(&s, &empty, 2).unwrap_err(),
            Error::EmptyState
        );
    }

    #[test]
    fn nonproper_examples() {
        let s = xyz(rat(1, 4), rat(9, 10), rat(3, 4));
        let out = nonproper_witness(&s, 0, &[1], &rat(1, 2)).unwrap();
        assert_eq!(out.space.dist(out.point, 1), &rat(1, 2));
        assert_eq!(out.space.dist(out.point, 0), &rat(1, 2));
        let out = nonproper_witness(&s, 0, &[2], &rat(1, 2)).unwrap();
        assert_eq!(out.space.dist(out.point, 1), &rat(9, 10));
        let out = nonproper_witness(&s, 0, &[], &rat(1, 2)).unwrap();
        assert_eq!(out.space.len(), 2);
        assert!(nonproper_witness(&s, 0, &[0], &rat(1, 2)).is_err());
        assert!(nonproper_witness(&s, 0, &[1], &int(1)).is_err());
    }

    #[test]
    fn chains() {
        let c = injectivity_chain(&rat(1, 2), &int(1), &int(1)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.dist(0, 1), &rat(1, 2));
        assert_eq!(c.dist(1, 2), &rat(1, 2));
        assert_eq!(c.dist(0, 2), &int(1));

        let c = injectivity_chain(&rat(1, 3), &rat(1, 3), &int(1)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.dist(0, 2), &rat(1, 3));

        let c = injectivity_chain(&rat(3, 4), &rat(1, 8), &int(1)).unwrap();
        assert_eq!(c.dist(0, 1), &rat(3, 4));
        assert_eq!(c.dist(0, 2), &rat(1, 8));

        let c = injectivity_chain(&rat(1, 3), &rat(1, 2), &int(1)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.dist(0, 2), &rat(1, 2));
        assert!(injectivity_chain(&int(0), &int(1), &int(1)).is_err());
    }
}
