//! Katetov functions over finite metric spaces.
//!
//! A vector `xi` indexed by the points of a space is Katetov when
//! `|xi(x) - xi(y)| <= d(x,y) <= xi(x) + xi(y)` for all points and
//! `0 <= xi(x) <= diam_bound`. These are exactly the distance profiles of
//! one-point extensions of the space.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::KatetovUnits;
use crate::metric::{Check, MetricSpace};
use crate::rational::{fmt_rational, from_units, grid_units, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum KatetovViolation {
    Negative {
        x: usize,
    },
    AboveBound {
        x: usize,
    },
    /// `|xi(x) - xi(y)| > d(x,y)`.
    Lipschitz {
        x: usize,
        y: usize,
    },
    /// `d(x,y) > xi(x) + xi(y)`.
    Triangle {
        x: usize,
        y: usize,
    },
}

impl KatetovViolation {
    pub fn to_json(&self) -> Value {
        match self {
            KatetovViolation::Negative { x } => json!({"kind": "negative", "x": x}),
            KatetovViolation::AboveBound { x } => json!({"kind": "above_bound", "x": x}),
            KatetovViolation::Lipschitz { x, y } => json!({"kind": "lipschitz", "pair": [x, y]}),
            KatetovViolation::Triangle { x, y } => json!({"kind": "triangle", "pair": [x, y]}),
        }
    }
}

impl std::fmt::Display for KatetovViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KatetovViolation::Negative { x } => write!(f, "value at {x} is negative"),
            KatetovViolation::AboveBound { x } => {
                write!(f, "value at {x} exceeds the diameter bound")
            }
            KatetovViolation::Lipschitz { x, y } => write!(f, "|xi({x}) - xi({y})| > d({x},{y})"),
            KatetovViolation::Triangle { x, y } => write!(f, "d({x},{y}) > xi({x}) + xi({y})"),
        }
    }
}

/// Checks the Katetov inequalities. Bound violations are reported first (by
/// point), then pair violations in lexicographic order.
pub fn is_katetov(values: &[Rational], space: &MetricSpace) -> Result<Check<KatetovViolation>> {
    if values.len() != space.len() {
        return Err(Error::LengthMismatch {
            expected: space.len(),
            found: values.len(),
        });
    }
    for (x, v) in values.iter().enumerate() {
        if *v < Rational::zero() {
            return Ok(Check::Fail(KatetovViolation::Negative { x }));
        }
        if v > space.diam_bound() {
            return Ok(Check::Fail(KatetovViolation::AboveBound { x }));
        }
    }
    for x in 0..values.len() {
        for y in x + 1..values.len() {
            let d = space.dist(x, y);
            if (&values[x] - &values[y]).abs() > *d {
                return Ok(Check::Fail(KatetovViolation::Lipschitz { x, y }));
            }
            if *d > &values[x] + &values[y] {
                return Ok(Check::Fail(KatetovViolation::Triangle { x, y }));
            }
        }
    }
    Ok(Check::Pass)
}

/// A validated Katetov function bound to its space.
#[derive(Debug, Clone)]
pub struct KatetovFn {
    space: Arc<MetricSpace>,
    values: Vec<Rational>,
}

impl PartialEq for KatetovFn {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_space(&self.space, &other.space)
    }
}

fn same_space(a: &Arc<MetricSpace>, b: &Arc<MetricSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl KatetovFn {
    pub fn new(space: Arc<MetricSpace>, values: Vec<Rational>) -> Result<Self> {
        match is_katetov(&values, &space)? {
            Check::Pass => Ok(KatetovFn { space, values }),
            Check::Fail(v) => Err(Error::KatetovViolation(v.to_string())),
        }
    }

    pub fn space(&self) -> &Arc<MetricSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }
}

/// `f_z(x) = d(x, z)`.
pub fn elementary_katetov(space: &Arc<MetricSpace>, z: usize) -> Result<KatetovFn> {
    space.check_index(z)?;
    Ok(KatetovFn {
        space: Arc::clone(space),
        values: space.row(z).to_vec(),
    })
}

/// Realizes `xi` as a new point `p` with `d(p, x) = xi(x)`.
///
/// A zero value would make `p` coincide with an existing point, which the
/// strict metric forbids; that case is reported as [`Error::DuplicatePoint`].
pub fn extend_by_katetov(xi: &KatetovFn) -> Result<(MetricSpace, usize)> {
    if let Some(index) = xi.values.iter().position(Zero::is_zero) {
        return Err(Error::DuplicatePoint { index });
    }
    let space = &xi.space;
    let label = space.fresh_label("xi");
    let extended = space.push_point(label, xi.values.clone())?;
    let p = extended.len() - 1;
    Ok((extended, p))
}

/// Checks the raw vector first, then extends.
pub fn extend_by_values(
    space: &Arc<MetricSpace>,
    values: Vec<Rational>,
) -> Result<(MetricSpace, usize)> {
    let xi = KatetovFn::new(Arc::clone(space), values)?;
    extend_by_katetov(&xi)
}

/// `max_x |xi(x) - zeta(x)|` (zero on the empty space).
pub fn sup_distance(xi: &KatetovFn, zeta: &KatetovFn) -> Result<Rational> {
    if !same_space(&xi.space, &zeta.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(sup_norm_diff(&xi.values, &zeta.values))
}

pub(crate) fn sup_norm_diff(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// The map `z -> f_z`; isometric for the sup distance.
pub fn kuratowski_embed(space: &Arc<MetricSpace>) -> Vec<KatetovFn> {
    (0..space.len())
        .map(|z| KatetovFn {
            space: Arc::clone(space),
            values: space.row(z).to_vec(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `max(lambda, xi)`; stays Katetov.
    Max,
    /// `min(lambda, xi)`; not Katetov in general.
    Min,
}

impl std::str::FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Truncation::Max),
            "min" => Ok(Truncation::Min),
            other => Err(Error::Parse(format!("unknown truncation mode {other:?}"))),
        }
    }
}

/// Pointwise `max(lambda, xi)` or `min(lambda, xi)` for `0 < lambda < diam_bound`.
pub fn truncate_katetov(
    xi: &KatetovFn,
    lambda: &Rational,
    mode: Truncation,
) -> Result<Vec<Rational>> {
    let diam = xi.space.diam_bound();
    if *lambda <= Rational::zero() || lambda >= diam {
        return Err(Error::LambdaOutOfRange {
            lambda: fmt_rational(lambda),
            diam: fmt_rational(diam),
        });
    }
    Ok(xi
        .values
        .iter()
        .map(|v| match mode {
            Truncation::Max => v.max(lambda).clone(),
            Truncation::Min => v.min(lambda).clone(),
        })
        .collect())
}

/// Every Katetov function over `space` whose values lie on the grid
/// `{0, 1/denom, ..., diam_bound}`, in lexicographic order.
pub fn enumerate_katetov(space: &Arc<MetricSpace>, denom: u64) -> Result<KatetovEnumeration> {
    if denom == 0 {
        return Err(Error::InvalidArgument(
            "denominator must be positive".into(),
        ));
    }
    let units = |r: &Rational, what: &str| {
        grid_units(r, denom)
            .map(u64::from)
            .ok_or_else(|| Error::DenominatorMismatch {
                what: what.to_string(),
                denom,
            })
    };
    let bound = units(space.diam_bound(), "diameter bound")?;
    let n = space.len();
    let mut dist = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            dist.push(units(space.dist(i, j), &format!("d({i},{j})"))?);
        }
    }
    Ok(KatetovEnumeration {
        space: Arc::clone(space),
        denom,
        inner: KatetovUnits::new(n, dist, bound, 1),
    })
}

pub struct KatetovEnumeration {
    space: Arc<MetricSpace>,
    denom: u64,
    inner: KatetovUnits,
}

impl Iterator for KatetovEnumeration {
    type Item = KatetovFn;

    fn next(&mut self) -> Option<KatetovFn> {
        let units = self.inner.next()?;
        let values = units
            .into_iter()
            .map(|u| from_units(u, self.denom))
            .collect();
        Some(KatetovFn {
            space: Arc::clone(&self.space),
            values,
        })
    }
}

/// Number of grid points `{0, 1/denom, ..., bound}`; used by callers sizing a naive scan.
pub fn grid_size(bound: &Rational, denom: u64) -> Option<u64> {
    (bound * BigInt::from(denom))
        .to_integer()
        .to_u64()
        .map(|b| b + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn two_point(d: Rational) -> Arc<MetricSpace> {
        Arc::new(
            MetricSpace::from_matrix(vec![vec![int(0), d.clone()], vec![d, int(0)]], int(1))
                .unwrap(),
        )
    }

    fn equilateral(side: Rational, diam: Rational) -> Arc<MetricSpace> {
        let d = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { int(0) } else { side.clone() })
                    .collect()
            })
            .collect();
        Arc::new(MetricSpace::from_matrix(d, diam).unwrap())
    }

    #[test]
    fn katetov_examples() {
        let x = two_point(int(1));
        assert!(is_katetov(&[rat(1, 2), rat(1, 2)], &x).unwrap().is_pass());
        assert_eq!(
            is_katetov(&[int(0), int(0)], &x).unwrap(),
            Check::Fail(KatetovViolation::Triangle { x: 0, y: 1 })
        );
        assert!(matches!(
            is_katetov(&[int(0)], &x),
            Err(Error::LengthMismatch { .. })
        ));
        let f = elementary_katetov(&x, 0).unwrap();
        assert_eq!(f.values(), &[int(0), int(1)]);
    }

    #[test]
    fn elementary_on_equilateral() {
        let x = equilateral(rat(1, 2), int(1));
        let f = elementary_katetov(&x, 2).unwrap();
        assert_eq!(f.values(), &[rat(1, 2), rat(1, 2), int(0)]);
        assert!(elementary_katetov(&x, 3).is_err());
    }

    #[test]
    fn extension_adds_midpoint() {
        let x = two_point(int(1));
        let (ext, p) = extend_by_values(&x, vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(p, 2);
        assert_eq!(ext.dist(p, 0), &rat(1, 2));
        let f = elementary_katetov(&x, 0).unwrap();
        assert_eq!(
            extend_by_katetov(&f).unwrap_err(),
            Error::DuplicatePoint { index: 0 }
        );
        assert!(matches!(
            extend_by_values(&x, vec![int(0), int(0)]),
            Err(Error::KatetovViolation(_))
        ));

        let eq = equilateral(int(1), int(1));
        let (ext, _) = extend_by_values(&eq, vec![int(1); 3]).unwrap();
        assert_eq!(ext.max_distance(), int(1));
    }

    #[test]
    fn sup_distances() {
        let x = two_point(int(1));
        let emb = kuratowski_embed(&x);
        assert_eq!(sup_distance(&emb[0], &emb[1]).unwrap(), int(1));
        assert_eq!(sup_distance(&emb[0], &emb[0]).unwrap(), int(0));
        let other = two_point(rat(1, 2));
        let g = elementary_katetov(&other, 0).unwrap();
        assert_eq!(sup_distance(&emb[0], &g).unwrap_err(), Error::SpaceMismatch);

        let single = Arc::new(MetricSpace::from_matrix(vec![vec![int(0)]], int(1)).unwrap());
        assert_eq!(kuratowski_embed(&single)[0].values(), &[int(0)]);
    }

    #[test]
    fn truncations() {
        let x = two_point(int(1));
        let f = elementary_katetov(&x, 0).unwrap();
        let t = truncate_katetov(&f, &rat(1, 2), Truncation::Max).unwrap();
        assert_eq!(t, vec![rat(1, 2), int(1)]);
        assert!(is_katetov(&t, &x).unwrap().is_pass());
        let g = KatetovFn::new(Arc::clone(&x), vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(
            truncate_katetov(&g, &rat(3, 4), Truncation::Min).unwrap(),
            g.values()
        );
        assert!(matches!(
            truncate_katetov(&f, &int(1), Truncation::Max),
            Err(Error::LambdaOutOfRange { .. })
        ));
        assert!(truncate_katetov(&f, &int(0), Truncation::Min).is_err());
    }

    #[test]
    fn enumeration_two_point_half_grid() {
        let x = two_point(int(1));
        let all: Vec<Vec<Rational>> = enumerate_katetov(&x, 2)
            .unwrap()
            .map(KatetovFn::into_values)
            .collect();
        let h = rat(1, 2);
        let expected = vec![
            vec![int(0), int(1)],
            vec![h.clone(), h.clone()],
            vec![h.clone(), int(1)],
            vec![int(1), int(0)],
            vec![int(1), h.clone()],
            vec![int(1), int(1)],
        ];
        assert_eq!(all, expected);
    }

    #[test]
    fn enumeration_singleton_and_mismatch() {
        let single = Arc::new(MetricSpace::from_matrix(vec![vec![int(0)]], int(1)).unwrap());
        let all: Vec<_> = enumerate_katetov(&single, 1)
            .unwrap()
            .map(KatetovFn::into_values)
            .collect();
        assert_eq!(all, vec![vec![int(0)], vec![int(1)]]);
        let x = two_point(rat(1, 3));
        assert!(matches!(
            enumerate_katetov(&x, 2),
            Err(Error::DenominatorMismatch { .. })
        ));
    }
}
