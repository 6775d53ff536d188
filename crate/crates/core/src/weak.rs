//! Landmark approximations of the weak uniformity.
//!
//! For a finite landmark set `F`, `rho_F(x,y) = max_{z in F} |d(x,z) - d(y,z)|`
//! is the sup of the pseudometrics `d_z` over `F`. Proximity and the Gromov
//! compactification are only probed at finite scale through `rho_F`.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::katetov::{elementary_katetov, KatetovFn};
use crate::metric::MetricSpace;
use crate::rational::{fmt_rational, Rational};
use crate::report::WitnessReport;

/// Attached to every proximity report.
pub const PROXIMITY_CAVEAT: &str =
    "one-sided evidence: a pass at this (F, eps) never certifies proximity, only non-separation at that scale";

#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkSet {
    space: Arc<MetricSpace>,
    f: Vec<usize>,
}

impl LandmarkSet {
    pub fn new(space: Arc<MetricSpace>, f: Vec<usize>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::EmptySubset);
        }
        for (a, &z) in f.iter().enumerate() {
            space.check_index(z)?;
            if f[..a].contains(&z) {
                return Err(Error::IndexClash(format!("landmark {z} listed twice")));
            }
        }
        Ok(LandmarkSet { space, f })
    }

    /// Every point of the space is a landmark.
    pub fn all(space: Arc<MetricSpace>) -> Result<Self> {
        let f = (0..space.len()).collect();
        LandmarkSet::new(space, f)
    }

    pub fn space(&self) -> &Arc<MetricSpace> {
        &self.space
    }

    pub fn landmarks(&self) -> &[usize] {
        &self.f
    }

    pub fn rho(&self, x: usize, y: usize) -> Rational {
        self.f
            .iter()
            .map(|&z| (self.space.dist(x, z) - self.space.dist(y, z)).abs())
            .max()
            .expect("landmark sets are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakSeminorm {
    pub landmarks: LandmarkSet,
    pub matrix: Vec<Vec<Rational>>,
}

pub fn weak_seminorm(l: &LandmarkSet) -> WeakSeminorm {
    let n = l.space.len();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let r = l.rho(x, y);
            matrix[x][y] = r.clone();
            matrix[y][x] = r;
        }
    }
    WeakSeminorm {
        landmarks: l.clone(),
        matrix,
    }
}

/// Passes iff some `(a, b)` in `A x B` has `rho_F(a, b) < eps`; the first such
/// pair (lexicographic in `A`, then `B`) is the witness.
pub fn proximity_test(
    a: &[usize],
    b: &[usize],
    l: &LandmarkSet,
    eps: &Rational,
) -> Result<WitnessReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    if *eps <= Rational::zero() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    for &p in a.iter().chain(b) {
        l.space.check_index(p)?;
    }
    let params = json!({ "a": a, "b": b, "landmarks": l.f, "eps": fmt_rational(eps) });
    let mut scanned = 0u64;
    let mut best: Option<(Rational, usize, usize)> = None;
    for &x in a {
        for &y in b {
            scanned += 1;
            let r = l.rho(x, y);
            if r < *eps {
                let w = json!({ "a": x, "b": y, "rho": fmt_rational(&r) });
                return Ok(WitnessReport::pass("proximity", params)
                    .with_witness(w)
                    .with_count("pairs_scanned", scanned)
                    .with_caveat(PROXIMITY_CAVEAT));
            }
            if best.as_ref().is_none_or(|(m, _, _)| r < *m) {
                best = Some((r, x, y));
            }
        }
    }
    let (r, x, y) = best.expect("A and B are non-empty");
    let w = json!({ "closest": { "a": x, "b": y, "rho": fmt_rational(&r) } });
    Ok(WitnessReport::fail("proximity", params, w)
        .with_count("pairs_scanned", scanned)
        .with_caveat(PROXIMITY_CAVEAT))
}

/// A greedy `eps`-net of the elementary functions under the landmark seminorm.
#[derive(Debug, Clone)]
pub struct GromovNet {
    pub representatives: Vec<usize>,
    pub functions: Vec<KatetovFn>,
}

/// Walks the points in index order and keeps `z` when `rho_F(z, r) >= eps`
/// for every representative `r` kept so far.
pub fn gromov_approximant(l: &LandmarkSet, eps: &Rational) -> Result<GromovNet> {
    if *eps <= Rational::zero() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let mut reps: Vec<usize> = Vec::new();
    for z in 0..l.space.len() {
        if reps.iter().all(|&r| l.rho(z, r) >= *eps) {
            reps.push(z);
        }
    }
    let functions = reps
        .iter()
        .map(|&r| elementary_katetov(&l.space, r))
        .collect::<Result<_>>()?;
    Ok(GromovNet {
        representatives: reps,
        functions,
    })
}

impl GromovNet {
    /// Separation (`rho_F >= eps` between representatives) and covering
    /// (every point within `< eps` of a representative).
    pub fn verify(&self, l: &LandmarkSet, eps: &Rational) -> bool {
        let reps = &self.representatives;
        let separated = reps
            .iter()
            .enumerate()
            .all(|(i, &a)| reps[i + 1..].iter().all(|&b| l.rho(a, b) >= *eps));
        let covering = (0..l.space.len()).all(|z| reps.iter().any(|&r| l.rho(z, r) < *eps));
        separated && covering
    }
}

/// `xi` restricted to the subspace on `subset` (in the given order).
pub fn restrict_katetov(xi: &KatetovFn, subset: &[usize]) -> Result<KatetovFn> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let sub = Arc::new(xi.space().subspace(subset)?);
    let values = subset.iter().map(|&i| xi.value(i).clone()).collect();
    KatetovFn::new(sub, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::katetov::{is_katetov, sup_distance};
    use crate::metric::validate_pseudometric;
    use crate::rational::{int, rat};

    fn equilateral() -> Arc<MetricSpace> {
        let d = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { int(0) } else { int(1) })
                    .collect()
            })
            .collect();
        Arc::new(MetricSpace::from_matrix(d, int(1)).unwrap())
    }

    fn line() -> Arc<MetricSpace> {
        let pos = [int(0), rat(1, 4), rat(3, 4), int(1)];
        let d = pos
            .iter()
            .map(|p| pos.iter().map(|q| (p - q).abs()).collect())
            .collect();
        Arc::new(MetricSpace::from_matrix(d, int(1)).unwrap())
    }

    #[test]
    fn all_landmarks_recover_metric() {
        let s = line();
        let w = weak_seminorm(&LandmarkSet::all(s.clone()).unwrap());
        assert_eq!(w.matrix, s.matrix());
        assert!(validate_pseudometric(&w.matrix, s.diam_bound())
            .unwrap()
            .is_pass());
    }

    #[test]
    fn equilateral_single_landmark() {
        let l = LandmarkSet::new(equilateral(), vec![0]).unwrap();
        let w = weak_seminorm(&l);
        assert_eq!(w.matrix[1][2], int(0));
        assert_eq!(w.matrix[0][1], int(1));
    }

    #[test]
    fn proximity_examples() {
        let l = LandmarkSet::new(equilateral(), vec![0]).unwrap();
        let r = proximity_test(&[1], &[2], &l, &rat(1, 2)).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.caveat.as_deref(), Some(PROXIMITY_CAVEAT));
        assert!(proximity_test(&[0], &[0], &l, &rat(1, 100))
            .unwrap()
            .is_pass());
        let r = proximity_test(&[0], &[1], &l, &rat(1, 2)).unwrap();
        assert!(!r.is_pass());
        assert!(r.witness.is_some());
        assert_eq!(
            proximity_test(&[], &[1], &l, &int(1)).unwrap_err(),
            Error::EmptySubset
        );
    }

    #[test]
    fn nets() {
        let s = line();
        let all = LandmarkSet::all(s.clone()).unwrap();
        let big = gromov_approximant(&all, &int(2)).unwrap();
        assert_eq!(big.representatives, vec![0]);
        let fine = gromov_approximant(&all, &rat(1, 8)).unwrap();
        assert_eq!(fine.representatives.len(), 4);
        let mid = gromov_approximant(&all, &rat(1, 2)).unwrap();
        assert!(mid.verify(&all, &rat(1, 2)));
        assert!(mid.representatives.len() <= fine.representatives.len());
    }

    #[test]
    fn restriction() {
        let s = line();
        let f0 = elementary_katetov(&s, 0).unwrap();
        let f3 = elementary_katetov(&s, 3).unwrap();
        let full = restrict_katetov(&f0, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.values(), f0.values());
        let r0 = restrict_katetov(&f0, &[1, 2]).unwrap();
        assert!(is_katetov(r0.values(), r0.space()).unwrap().is_pass());
        let r3 = restrict_katetov(&f3, &[1, 2]).unwrap();
        let before = sup_distance(&f0, &f3).unwrap();
        let after = sup_distance(&r0, &r3).unwrap();
        assert!(after <= before);
        assert_eq!(restrict_katetov(&f0, &[]).unwrap_err(), Error::EmptySubset);
    }
}
