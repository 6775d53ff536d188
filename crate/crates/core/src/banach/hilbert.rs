//! Rational points of Euclidean spheres and the landmark-pseudometric
//! comparison on them.

use num_traits::{One, Signed};
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, fmt_vec, to_f64, Rational};
use crate::report::WitnessReport;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "vectors must have at least one coordinate".into(),
            ));
        }
        Ok(RationalVector(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// Inverse stereographic projection from the north pole: `t` in `Q^(n-1)`
/// maps to `(2t, |t|^2 - 1) / (|t|^2 + 1)`, a rational point of the unit sphere in `Q^n`.
pub fn stereographic(t: &[Rational]) -> RationalVector {
    let s: Rational = t.iter().map(|x| x * x).sum();
    let den = &s + Rational::one();
    let mut coords: Vec<Rational> = t
        .iter()
        .map(|x| x * Rational::from_integer(2.into()) / &den)
        .collect();
    coords.push((s - Rational::one()) / den);
    RationalVector(coords)
}

/// For unit vectors `u, v, z`: checks exactly that
/// `rho_z(u,v) = |<u,z> - <v,z>|` equals `|‖u-z‖^2 - ‖v-z‖^2| / 2`,
/// then in floats (slack `tol`) that `rho_z <= 2 d_z` and `d_z^2 <= 2 rho_z`,
/// where `d_z(u,v) = |‖u-z‖ - ‖v-z‖|`.
pub fn hilbert_check(
    u: &RationalVector,
    v: &RationalVector,
    z: &RationalVector,
    tol: f64,
) -> Result<WitnessReport> {
    for other in [v, z] {
        if other.dim() != u.dim() {
            return Err(Error::LengthMismatch {
                expected: u.dim(),
                found: other.dim(),
            });
        }
    }
    for (which, w) in [("u", u), ("v", v), ("z", z)] {
        let n = w.norm_sq();
        if !n.is_one() {
            return Err(Error::NotOnSphere {
                which: which.into(),
                norm_sq: fmt_rational(&n),
            });
        }
    }
    let rho = (u.dot(z) - v.dot(z)).abs();
    let du = u.sub(z).norm_sq();
    let dv = v.sub(z).norm_sq();
    let half = (&du - &dv).abs() / Rational::from_integer(2.into());
    let identity = rho == half;
    let d_z = (to_f64(&du).sqrt() - to_f64(&dv).sqrt()).abs();
    let rho_f = to_f64(&rho);
    let upper = rho_f <= 2.0 * d_z + tol;
    let lower = d_z * d_z <= 2.0 * rho_f + tol;
    let params = json!({
        "u": fmt_vec(&u.0),
        "v": fmt_vec(&v.0),
        "z": fmt_vec(&z.0),
        "tol": tol,
    });
    let witness = json!({
        "rho_z": fmt_rational(&rho),
        "half_gap": fmt_rational(&half),
        "dist_sq_u": fmt_rational(&du),
        "dist_sq_v": fmt_rational(&dv),
        "d_z": d_z,
        "identity": identity,
        "rho_le_2d": upper,
        "d_sq_le_2rho": lower,
    });
    Ok(WitnessReport::from_outcome(
        "hilbert",
        params,
        identity && upper && lower,
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn vec(v: &[Rational]) -> RationalVector {
        RationalVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stereographic_points_are_unit() {
        for t in [
            vec![rat(1, 2)],
            vec![int(3), rat(-2, 7)],
            vec![int(0), int(0), int(0)],
        ] {
            assert!(stereographic(&t).norm_sq().is_one());
        }
    }

    #[test]
    fn orthogonal_equality_case() {
        let u = vec(&[int(1), int(0)]);
        let v = vec(&[int(0), int(1)]);
        let r = hilbert_check(&u, &v, &u, 1e-9).unwrap();
        assert!(r.is_pass());
        let w = r.witness.unwrap();
        assert_eq!(w["rho_z"], "1");
        assert_eq!(w["half_gap"], "1");
        assert_eq!(w["dist_sq_v"], "2");
    }

    #[test]
    fn pythagorean_triple() {
        let u = vec(&[rat(3, 5), rat(4, 5)]);
        let v = vec(&[rat(4, 5), rat(3, 5)]);
        let z = vec(&[int(1), int(0)]);
        let r = hilbert_check(&u, &v, &z, 1e-9).unwrap();
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w["rho_z"], "1/5");
        assert_eq!(w["dist_sq_u"], "4/5");
        assert_eq!(w["dist_sq_v"], "2/5");
        assert!(r.is_pass());
        let same = hilbert_check(&u, &u, &z, 1e-9).unwrap();
        assert_eq!(same.witness.unwrap()["rho_z"], "0");
    }

    #[test]
    fn off_sphere_rejected() {
        let u = vec(&[int(1), int(1)]);
        let z = vec(&[int(1), int(0)]);
        assert_eq!(
            hilbert_check(&u, &z, &z, 1e-9).unwrap_err(),
            Error::NotOnSphere {
                which: "u".into(),
                norm_sq: "2".into()
            }
        );
    }
}
