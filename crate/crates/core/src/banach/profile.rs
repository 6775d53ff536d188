//! Piecewise-linear radial profiles `h: [0, inf) -> R` and the flags that make
//! `v -> h(‖v‖)` a normalized convex Katetov function.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rational::{fmt_rational, fmt_vec, int, rat, Rational};
use crate::report::WitnessReport;

/// Continuous piecewise-linear profile through `(breakpoints[i], values[i])`,
/// continued past the last breakpoint with slope `tail_slope`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
    pub tail_slope: Rational,
}

impl RadialProfile {
    pub fn new(
        breakpoints: Vec<Rational>,
        values: Vec<Rational>,
        tail_slope: Rational,
    ) -> Result<Self> {
        if breakpoints.first() != Some(&Rational::zero()) {
            return Err(Error::InvalidArgument("breakpoints must start at 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.len() != breakpoints.len() {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len(),
                found: values.len(),
            });
        }
        Ok(RadialProfile {
            breakpoints,
            values,
            tail_slope,
        })
    }

    pub fn last_breakpoint(&self) -> &Rational {
        self.breakpoints.last().expect("at least one breakpoint")
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        let b = &self.breakpoints;
        let k = b.partition_point(|x| x <= r);
        if k == 0 {
            // left of 0: extend the first piece
            let s = self
                .slopes()
                .into_iter()
                .next()
                .unwrap_or_else(|| self.tail_slope.clone());
            return &self.values[0] + s * (r - &b[0]);
        }
        let i = k - 1;
        if i + 1 == b.len() {
            return &self.values[i] + &self.tail_slope * (r - &b[i]);
        }
        let t = (r - &b[i]) / (&b[i + 1] - &b[i]);
        &self.values[i] + t * (&self.values[i + 1] - &self.values[i])
    }

    /// Slopes of the bounded pieces followed by the tail slope.
    pub fn slopes(&self) -> Vec<Rational> {
        let mut s: Vec<Rational> = self
            .breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(b, v)| (&v[1] - &v[0]) / (&b[1] - &b[0]))
            .collect();
        s.push(self.tail_slope.clone());
        s
    }

    /// Adds a breakpoint at `r` without changing the function.
    pub fn refine(&self, r: &Rational) -> RadialProfile {
        if r.is_negative() || self.breakpoints.contains(r) {
            return self.clone();
        }
        let v = self.eval(r);
        let k = self.breakpoints.partition_point(|x| x < r);
        let mut out = self.clone();
        out.breakpoints.insert(k, r.clone());
        out.values.insert(k, v);
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "breakpoints": fmt_vec(&self.breakpoints),
            "values": fmt_vec(&self.values),
            "tail_slope": fmt_rational(&self.tail_slope),
        })
    }
}

/// Midpoint-convexity failure: `h(mid) > (h(lo) + h(hi)) / 2` by `gap`.
#[derive(Debug, Clone, PartialEq)]
pub struct MidpointViolation {
    pub triple: [Rational; 3],
    pub gap: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileFlags {
    pub lipschitz1: bool,
    pub nondecreasing: bool,
    pub convex: bool,
    pub value_at_0: Rational,
    pub value_at_0_le_1: bool,
    pub dominates_identity: bool,
    pub katetov_radial: bool,
    /// Independent midpoint scan; agrees with `convex` on well-formed input.
    pub midpoint_convex: bool,
    pub midpoint_violation: Option<MidpointViolation>,
}

impl ProfileFlags {
    pub fn all(&self) -> bool {
        self.lipschitz1
            && self.nondecreasing
            && self.convex
            && self.value_at_0_le_1
            && self.dominates_identity
            && self.katetov_radial
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "lipschitz1": self.lipschitz1,
            "nondecreasing": self.nondecreasing,
            "convex": self.convex,
            "value_at_0": fmt_rational(&self.value_at_0),
            "value_at_0_le_1": self.value_at_0_le_1,
            "dominates_identity": self.dominates_identity,
            "katetov_radial": self.katetov_radial,
            "midpoint_convex": self.midpoint_convex,
        });
        if let Some(m) = &self.midpoint_violation {
            v["midpoint_triple"] = json!(fmt_vec(&m.triple));
            v["midpoint_gap"] = json!(fmt_rational(&m.gap));
        }
        v
    }
}

/// Decides every flag exactly from slopes and breakpoint values on
/// `[0, horizon]`; the tail piece is judged by its slope. Convexity is
/// cross-checked by a midpoint scan at each breakpoint `b > 0` with
/// `delta` half the distance to the nearer neighbour (or to `horizon`).
pub fn profile_flags(h: &RadialProfile, horizon: &Rational) -> Result<ProfileFlags> {
    if horizon < h.last_breakpoint() {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} is left of the last breakpoint {}",
            h.last_breakpoint()
        )));
    }
    let slopes = h.slopes();
    let lipschitz1 = slopes.iter().all(|s| s.abs() <= Rational::one());
    let nondecreasing = slopes.iter().all(|s| !s.is_negative());
    let convex = slopes.windows(2).all(|w| w[0] <= w[1]);
    let value_at_0 = h.values[0].clone();
    let value_at_0_le_1 = value_at_0 <= Rational::one();
    let dominates_identity =
        h.breakpoints.iter().zip(&h.values).all(|(b, v)| v >= b) && h.tail_slope >= Rational::one();
    let katetov_radial = lipschitz1 && dominates_identity;

    let mut midpoint_violation = None;
    let b = &h.breakpoints;
    for i in 1..b.len() {
        let right = if i + 1 < b.len() {
            &b[i + 1] - &b[i]
        } else {
            horizon - &b[i]
        };
        let left = &b[i] - &b[i - 1];
        let gap = if right.is_positive() {
            left.min(right)
        } else {
            left
        };
        let delta = gap / int(2);
        let lo = &b[i] - &delta;
        let hi = &b[i] + &delta;
        let excess = h.eval(&b[i]) - (h.eval(&lo) + h.eval(&hi)) / int(2);
        if excess.is_positive() {
            midpoint_violation = Some(MidpointViolation {
                triple: [lo, b[i].clone(), hi],
                gap: excess,
            });
            break;
        }
    }
    Ok(ProfileFlags {
        lipschitz1,
        nondecreasing,
        convex,
        value_at_0,
        value_at_0_le_1,
        dominates_identity,
        katetov_radial,
        midpoint_convex: midpoint_violation.is_none(),
        midpoint_violation,
    })
}

/// Report form of [`profile_flags`]: passes when every flag holds.
pub fn radial_profile_check(h: &RadialProfile, horizon: &Rational) -> Result<WitnessReport> {
    let flags = profile_flags(h, horizon)?;
    let params = json!({ "profile": h.to_json(), "horizon": fmt_rational(horizon) });
    Ok(WitnessReport::from_outcome(
        "profile_check",
        params,
        flags.all(),
        flags.to_json(),
    ))
}

/// Outcome of [`profiles_agree_on`].
#[derive(Debug, Clone, PartialEq)]
pub enum Agreement {
    Agree,
    /// Leftmost checked point in `[lo, hi]` where the values differ.
    Differ {
        at: Rational,
        left: Rational,
        right: Rational,
    },
}

/// Exact equality on `[lo, hi]`: both profiles are linear between consecutive
/// points of the merged breakpoint list, so comparing there decides it.
pub fn profiles_agree_on(
    h1: &RadialProfile,
    h2: &RadialProfile,
    lo: &Rational,
    hi: &Rational,
) -> Result<Agreement> {
    if lo > hi || lo.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= lo <= hi (got {lo}, {hi})"
        )));
    }
    let mut pts: Vec<Rational> = h1
        .breakpoints
        .iter()
        .chain(&h2.breakpoints)
        .filter(|b| *b > lo && *b < hi)
        .cloned()
        .collect();
    pts.push(lo.clone());
    pts.push(hi.clone());
    pts.sort();
    pts.dedup();
    for r in pts {
        let (a, b) = (h1.eval(&r), h2.eval(&r));
        if a != b {
            return Ok(Agreement::Differ {
                at: r,
                left: a,
                right: b,
            });
        }
    }
    Ok(Agreement::Agree)
}

/// `h(r) = max(1, r)`.
pub fn gurarij_sphere_profile() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0), int(1)],
        values: vec![int(1), int(1)],
        tail_slope: int(1),
    }
}

/// `h'(r) = 1 - r` on `[0, 1/2]`, then `r`.
pub fn gurarij_sphere_profile_alt() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0), rat(1, 2)],
        values: vec![int(1), rat(1, 2)],
        tail_slope: int(1),
    }
}

/// `h1(r) = 1 + r`.
pub fn ball_profile_1() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0)],
        values: vec![int(1)],
        tail_slope: int(1),
    }
}

/// `1 + r` on `[0,1)`, `2` on `[1,2)`, `r` from 2 on.
pub fn ball_profile_2() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0), int(1), int(2)],
        values: vec![int(1), int(2), int(2)],
        tail_slope: int(1),
    }
}

/// `max(1 + r/2, r + 1/2)`.
pub fn ball_profile_1_convex() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0), int(1)],
        values: vec![int(1), rat(3, 2)],
        tail_slope: int(1),
    }
}

/// `max(1 + r/2, r)`.
pub fn ball_profile_2_convex() -> RadialProfile {
    RadialProfile {
        breakpoints: vec![int(0), int(2)],
        values: vec![int(1), int(2)],
        tail_slope: int(1),
    }
}

/// The finite metric space of rational points under the `l1` norm together
/// with the sampled values `h(‖p‖_1)`. The bound is the largest distance or value.
pub fn radial_sample(
    h: &RadialProfile,
    points: &[Vec<Rational>],
) -> Result<(MetricSpace, Vec<Rational>)> {
    let l1 = |v: &[Rational]| -> Rational { v.iter().map(|x| x.abs()).sum() };
    let n = points.len();
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if points[i].len() != points[j].len() {
                return Err(Error::LengthMismatch {
                    expected: points[i].len(),
                    found: points[j].len(),
                });
            }
            let diff: Vec<Rational> = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| a - b)
                .collect();
            d[i][j] = l1(&diff);
        }
    }
    let values: Vec<Rational> = points.iter().map(|p| h.eval(&l1(p))).collect();
    let bound = d
        .iter()
        .flatten()
        .chain(&values)
        .max()
        .cloned()
        .unwrap_or_else(Rational::one);
    let space = MetricSpace::from_matrix(d, bound.max(Rational::one()))?;
    Ok((space, values))
}
