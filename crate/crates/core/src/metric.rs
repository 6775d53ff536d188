//! Finite metric spaces with exact rational distances.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, fmt_rational, Rational};

/// Outcome of a check that either passes or carries a witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }
}

/// The first axiom a distance matrix breaks, in lexicographic index order.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonzeroDiagonal {
        i: usize,
        value: Rational,
    },
    Asymmetric {
        i: usize,
        j: usize,
    },
    NonPositive {
        i: usize,
        j: usize,
        value: Rational,
    },
    ExceedsBound {
        i: usize,
        j: usize,
        value: Rational,
        bound: Rational,
    },
    /// `d(i,j) > d(i,k) + d(k,j)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        direct: Rational,
        detour: Rational,
    },
}

impl MetricViolation {
    pub fn to_json(&self) -> Value {
        match self {
            MetricViolation::NonzeroDiagonal { i, value } => {
                json!({"kind": "nonzero_diagonal", "i": i, "value": fmt_rational(value)})
            }
            MetricViolation::Asymmetric { i, j } => json!({"kind": "asymmetric", "i": i, "j": j}),
            MetricViolation::NonPositive { i, j, value } => {
                json!({"kind": "non_positive", "i": i, "j": j, "value": fmt_rational(value)})
            }
            MetricViolation::ExceedsBound { i, j, value, bound } => json!({
                "kind": "exceeds_bound", "i": i, "j": j,
                "value": fmt_rational(value), "bound": fmt_rational(bound)
            }),
            MetricViolation::Triangle {
                i,
                j,
                k,
                direct,
                detour,
            } => json!({
                "kind": "triangle", "triple": [i, j, k],
                "direct": fmt_rational(direct), "detour": fmt_rational(detour)
            }),
        }
    }

    /// Renames point indices, e.g. from a local construction to a larger space.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> MetricViolation {
        let mut v = self.clone();
        match &mut v {
            MetricViolation::NonzeroDiagonal { i, .. } => *i = f(*i),
            MetricViolation::Asymmetric { i, j }
            | MetricViolation::NonPositive { i, j, .. }
            | MetricViolation::ExceedsBound { i, j, .. } => {
                *i = f(*i);
                *j = f(*j);
            }
            MetricViolation::Triangle { i, j, k, .. } => {
                *i = f(*i);
                *j = f(*j);
                *k = f(*k);
            }
        }
        v
    }

    /// The offending index triple for triangle failures.
    pub fn triple(&self) -> Option<(usize, usize, usize)> {
        match self {
            MetricViolation::Triangle { i, j, k, .. } => Some((*i, *j, *k)),
            _ => None,
        }
    }
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonzeroDiagonal { i, value } => write!(f, "d({i},{i}) = {value} != 0"),
            MetricViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            MetricViolation::NonPositive { i, j, value } => write!(f, "d({i},{j}) = {value} <= 0"),
            MetricViolation::ExceedsBound { i, j, value, bound } => {
                write!(f, "d({i},{j}) = {value} > bound {bound}")
            }
            MetricViolation::Triangle {
                i,
                j,
                k,
                direct,
                detour,
            } => {
                write!(f, "triple ({i},{j},{k}): {direct} > {detour}")
            }
        }
    }
}

fn check_square(d: &[Vec<Rational>]) -> Result<()> {
    let n = d.len();
    for (row, r) in d.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NonSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    Ok(())
}

/// Brute-force axiom scan shared by the integer fast path and the rational path.
/// Reports indices only; the caller fills in rational values.
fn scan<T>(n: usize, at: impl Fn(usize, usize) -> T, bound: &T, strict: bool) -> Option<Violation>
where
    T: Ord + Zero + Add<Output = T> + Clone,
{
    for i in 0..n {
        if !at(i, i).is_zero() {
            return Some(Violation::Diagonal(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let dij = at(i, j);
            if dij != at(j, i) {
                return Some(Violation::Asymmetric(i, j));
            }
            if dij < T::zero() || (strict && dij.is_zero()) {
                return Some(Violation::NonPositive(i, j));
            }
            if dij > *bound {
                return Some(Violation::Bound(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dij = at(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if dij > at(i, k) + at(k, j) {
                    return Some(Violation::Triangle(i, j, k));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy)]
enum Violation {
    Diagonal(usize),
    Asymmetric(usize, usize),
    NonPositive(usize, usize),
    Bound(usize, usize),
    Triangle(usize, usize, usize),
}

// Scaled entries stay below this so sums of two never overflow an i64.
const FAST_LIMIT: i64 = 1 << 61;

/// Scales every entry to a common denominator if the integers stay small.
fn scaled_matrix(d: &[Vec<Rational>], bound: &Rational) -> Option<(Vec<i64>, i64)> {
    let lcm = common_denominator(d.iter().flatten().chain(std::iter::once(bound)));
    let scale = |r: &Rational| -> Option<i64> {
        let v = (r.numer() * (&lcm / r.denom())).to_i64()?;
        (v.abs() < FAST_LIMIT).then_some(v)
    };
    let flat = d.iter().flatten().map(scale).collect::<Option<Vec<_>>>()?;
    Some((flat, scale(bound)?))
}

fn validate_impl(
    d: &[Vec<Rational>],
    diam_bound: &Rational,
    strict: bool,
) -> Result<Check<MetricViolation>> {
    check_square(d)?;
    let n = d.len();
    let found = match scaled_matrix(d, diam_bound) {
        Some((flat, bound)) => scan(n, |i, j| flat[i * n + j], &bound, strict),
        None => scan(n, |i, j| d[i][j].clone(), diam_bound, strict),
    };
    Ok(match found {
        None => Check::Pass,
        Some(v) => Check::Fail(describe(d, diam_bound, v)),
    })
}

fn describe(d: &[Vec<Rational>], bound: &Rational, v: Violation) -> MetricViolation {
    match v {
        Violation::Diagonal(i) => MetricViolation::NonzeroDiagonal {
            i,
            value: d[i][i].clone(),
        },
        Violation::Asymmetric(i, j) => MetricViolation::Asymmetric { i, j },
        Violation::NonPositive(i, j) => MetricViolation::NonPositive {
            i,
            j,
            value: d[i][j].clone(),
        },
        Violation::Bound(i, j) => MetricViolation::ExceedsBound {
            i,
            j,
            value: d[i][j].clone(),
            bound: bound.clone(),
        },
        Violation::Triangle(i, j, k) => MetricViolation::Triangle {
            i,
            j,
            k,
            direct: d[i][j].clone(),
            detour: &d[i][k] + &d[k][j],
        },
    }
}

/// Checks that `d` is a metric bounded by `diam_bound`: zero diagonal,
/// symmetric, strictly positive off the diagonal, every entry at most the
/// bound, and the triangle inequality for every ordered triple.
///
/// The first violation in lexicographic order is returned as the witness.
pub fn validate_metric(
    d: &[Vec<Rational>],
    diam_bound: &Rational,
) -> Result<Check<MetricViolation>> {
    validate_impl(d, diam_bound, true)
}

/// Same scan as [`validate_metric`] but zero distances between distinct points are allowed.
pub fn validate_pseudometric(
    d: &[Vec<Rational>],
    diam_bound: &Rational,
) -> Result<Check<MetricViolation>> {
    validate_impl(d, diam_bound, false)
}

/// Rational-only reference scan, kept for cross-checking the integer fast path.
pub fn validate_metric_slow(
    d: &[Vec<Rational>],
    diam_bound: &Rational,
) -> Result<Check<MetricViolation>> {
    check_square(d)?;
    let n = d.len();
    Ok(match scan(n, |i, j| d[i][j].clone(), diam_bound, true) {
        None => Check::Pass,
        Some(v) => Check::Fail(describe(d, diam_bound, v)),
    })
}

/// A finite metric space with a declared diameter bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    labels: Vec<String>,
    d: Vec<Vec<Rational>>,
    diam: Rational,
}

impl MetricSpace {
    pub fn new(labels: Vec<String>, d: Vec<Vec<Rational>>, diam: Rational) -> Result<Self> {
        if labels.len() != d.len() {
            return Err(Error::LengthMismatch {
                expected: d.len(),
                found: labels.len(),
            });
        }
        match validate_metric(&d, &diam)? {
            Check::Pass => Ok(MetricSpace { labels, d, diam }),
            Check::Fail(v) => Err(Error::InvalidMetric(v)),
        }
    }

    /// Builds a space with labels `p0, p1, ...`.
    pub fn from_matrix(d: Vec<Vec<Rational>>, diam: Rational) -> Result<Self> {
        let labels = default_labels(d.len());
        MetricSpace::new(labels, d, diam)
    }

    /// Like [`MetricSpace::new`] but reports a failed scan as
    /// [`Error::MetricFailure`]; used by constructions that certify a prescription.
    pub(crate) fn certify(
        labels: Vec<String>,
        d: Vec<Vec<Rational>>,
        diam: Rational,
    ) -> Result<Self> {
        match validate_metric(&d, &diam)? {
            Check::Pass => Ok(MetricSpace { labels, d, diam }),
            Check::Fail(v) => Err(Error::MetricFailure(v)),
        }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.d[i]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn diam_bound(&self) -> &Rational {
        &self.diam
    }

    /// Largest distance actually attained (zero for fewer than two points).
    pub fn max_distance(&self) -> Rational {
        self.d
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// The subspace on `indices`, in the given order. Duplicates are rejected.
    pub fn subspace(&self, indices: &[usize]) -> Result<MetricSpace> {
        for (a, &i) in indices.iter().enumerate() {
            self.check_index(i)?;
            if indices[..a].contains(&i) {
                return Err(Error::IndexClash(format!("point {i} listed twice")));
            }
        }
        let d = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.d[i][j].clone()).collect())
            .collect();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(MetricSpace {
            labels,
            d,
            diam: self.diam.clone(),
        })
    }

    /// Same points and distances under a different bound.
    pub fn with_diam_bound(&self, diam: Rational) -> Result<MetricSpace> {
        MetricSpace::new(self.labels.clone(), self.d.clone(), diam)
    }

    /// Appends a point with the given distances to every existing point.
    /// The result is re-validated and failures surface as [`Error::MetricFailure`].
    pub(crate) fn push_point(&self, label: String, row: Vec<Rational>) -> Result<MetricSpace> {
        let n = self.len();
        debug_assert_eq!(row.len(), n);
        let mut d = self.d.clone();
        for (i, r) in d.iter_mut().enumerate() {
            r.push(row[i].clone());
        }
        let mut last = row;
        last.push(Rational::zero());
        d.push(last);
        let mut labels = self.labels.clone();
        labels.push(label);
        MetricSpace::certify(labels, d, self.diam.clone())
    }

    /// A label not yet used in this space, derived from `base`.
    pub(crate) fn fresh_label(&self, base: &str) -> String {
        if !self.labels.iter().any(|l| l == base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|l| !self.labels.iter().any(|m| m == l))
            .expect("infinitely many candidates")
    }

    /// Free-amalgam distances from a new point with the prescribed distances
    /// to `anchors`: for any other point `y`, the shortest two-leg path
    /// `min over anchors a of (profile(a) + d(a, y))`, capped at the bound.
    pub fn amalgam_row(&self, anchors: &[(usize, Rational)]) -> Vec<Rational> {
        (0..self.len())
            .map(|y| {
                if let Some((_, v)) = anchors.iter().find(|(a, _)| *a == y) {
                    return v.clone();
                }
                anchors
                    .iter()
                    .map(|(a, v)| v + &self.d[*a][y])
                    .chain(std::iter::once(self.diam.clone()))
                    .min()
                    .expect("chain is non-empty")
            })
            .collect()
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// `d'(x,y) = min(d(x,y), c)`, with `c` as the new diameter bound.
pub fn cap_metric(space: &MetricSpace, c: &Rational) -> Result<MetricSpace> {
    if *c <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("cap {c} must be positive")));
    }
    let d = space
        .d
        .iter()
        .map(|row| row.iter().map(|v| v.min(c).clone()).collect())
        .collect();
    MetricSpace::certify(space.labels.clone(), d, c.clone())
}

/// A finite map between point indices, meant to preserve distances exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialIsometry {
    pub domain: Vec<usize>,
    pub image: Vec<usize>,
}

impl PartialIsometry {
    pub fn new(domain: Vec<usize>, image: Vec<usize>) -> Result<Self> {
        if domain.len() != image.len() {
            return Err(Error::LengthMismatch {
                expected: domain.len(),
                found: image.len(),
            });
        }
        Ok(PartialIsometry { domain, image })
    }

    pub fn identity(points: &[usize]) -> Self {
        PartialIsometry {
            domain: points.to_vec(),
            image: points.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Checks ranges, injectivity of the domain and exact distance preservation.
    pub fn verify(&self, from: &MetricSpace, to: &MetricSpace) -> Result<()> {
        for (a, (&x, &y)) in self.domain.iter().zip(&self.image).enumerate() {
            from.check_index(x)?;
            to.check_index(y)?;
            if self.domain[..a].contains(&x) {
                return Err(Error::IndexClash(format!(
                    "point {x} appears twice in the domain"
                )));
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if from.dist(self.domain[i], self.domain[j])
                    != to.dist(self.image[i], self.image[j])
                {
                    return Err(Error::NotIsometry { i, j });
                }
            }
        }
        Ok(())
    }
}

/// Result of gluing two spaces: the amalgam plus where each factor landed.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub space: MetricSpace,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Free amalgam of `x` and `y` over `glue` (a partial isometry from points of
/// `x` onto points of `y`).
///
/// Points of `x` come first, followed by the unglued points of `y`. Cross
/// distances are `min(bound, min over glued (a, b) of d(x, a) + d(b, y))`.
/// Without an explicit bound, the larger of the two factor bounds is used and
/// an empty glue set is an error.
pub fn amalgamate(
    x: &MetricSpace,
    y: &MetricSpace,
    glue: &PartialIsometry,
    diam_bound: Option<&Rational>,
) -> Result<Amalgam> {
    glue.verify(x, y)?;
    if glue.is_empty() && diam_bound.is_none() {
        return Err(Error::EmptyGlue);
    }
    let bound = match diam_bound {
        Some(b) => b.clone(),
        None => x.diam_bound().max(y.diam_bound()).clone(),
    };
    for (name, s) in [("left factor", x), ("right factor", y)] {
        if s.max_distance() > bound {
            return Err(Error::DiameterExceeded {
                what: name.into(),
                diam: fmt_rational(&bound),
            });
        }
    }

    let n = x.len();
    let mut right = vec![usize::MAX; y.len()];
    for (&a, &b) in glue.domain.iter().zip(&glue.image) {
        right[b] = a;
    }
    let fresh: Vec<usize> = (0..y.len()).filter(|&b| right[b] == usize::MAX).collect();
    for (k, &b) in fresh.iter().enumerate() {
        right[b] = n + k;
    }
    let total = n + fresh.len();

    let cross = |xi: usize, yj: usize| -> Rational {
        glue.domain
            .iter()
            .zip(&glue.image)
            .map(|(&a, &b)| x.dist(xi, a) + y.dist(b, yj))
            .chain(std::iter::once(bound.clone()))
            .min()
            .expect("non-empty")
    };

    let mut d = vec![vec![Rational::zero(); total]; total];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = x.dist(i, j).clone();
        }
    }
    for (ki, &bi) in fresh.iter().enumerate() {
        for (kj, &bj) in fresh.iter().enumerate() {
            d[n + ki][n + kj] = y.dist(bi, bj).clone();
        }
        for i in 0..n {
            let v = cross(i, bi);
            d[i][n + ki] = v.clone();
            d[n + ki][i] = v;
        }
    }

    let mut labels = x.labels.clone();
    for &b in &fresh {
        let base = &y.labels[b];
        let label = if labels.contains(base) {
            format!("{base}'")
        } else {
            base.clone()
        };
        labels.push(label);
    }
    let space = MetricSpace::certify(labels, d, bound)?;
    Ok(Amalgam {
        space,
        left: (0..n).collect(),
        right,
    })
}

/// Least common multiple of every denominator in the space (distances and bound).
pub fn space_denominator(space: &MetricSpace) -> BigInt {
    common_denominator(space.d.iter().flatten().chain(std::iter::once(&space.diam)))
}
