//! Finite approximants of the rational Urysohn sphere.
//!
//! Distances are stored as integer multiples of `1/denom` in a packed lower
//! triangle, which keeps a few thousand points cheap. Each round realizes
//! every grid Katetov function over every small subset of the previous
//! round's points by a new point glued in with the free amalgam.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::KatetovUnits;
use crate::metric::MetricSpace;
use crate::rational::{from_units, grid_units, Rational};
use crate::report::WitnessReport;

pub const DEFAULT_BUDGET: usize = 5000;

/// One realized `(subset, values)` pair and the point added for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub round: u32,
    pub subset: Vec<usize>,
    /// Values in units of `1/denom`.
    pub values: Vec<u32>,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    denom: u64,
    diam_units: u32,
    subset_bound: usize,
    rounds: u32,
    budget: usize,
    labels: Vec<String>,
    tri: Vec<u32>,
    round_sizes: Vec<usize>,
    log: Vec<Realization>,
}

fn tri_index(i: usize, j: usize) -> usize {
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// Lexicographic walk over the subsets of `0..n` of a fixed size.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every subset of `points` with size `1..=k`, smaller sizes
/// first and lexicographically within a size. Stops early on `Err`.
fn for_each_subset<E>(
    points: &[usize],
    k: usize,
    mut f: impl FnMut(&[usize]) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    let n = points.len();
    let mut sub = Vec::new();
    for size in 1..=k.min(n) {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            sub.clear();
            sub.extend(c.iter().map(|&i| points[i]));
            f(&sub)?;
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    Ok(())
}

impl Approximant {
    /// Starts from `seed`, whose distances and bound must lie on the `1/denom` grid.
    pub fn seed(seed: &MetricSpace, denom: u64, subset_bound: usize) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidArgument(
                "denominator must be positive".into(),
            ));
        }
        let units = |r: &Rational, what: String| {
            grid_units(r, denom).ok_or(Error::DenominatorMismatch { what, denom })
        };
        let diam_units = units(seed.diam_bound(), "diameter bound".into())?;
        let n = seed.len();
        let mut tri = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..n {
            for j in 0..i {
                tri.push(units(seed.dist(i, j), format!("d({i},{j})"))?);
            }
        }
        Ok(Approximant {
            denom,
            diam_units,
            subset_bound,
            rounds: 0,
            budget: DEFAULT_BUDGET,
            labels: seed.labels().to_vec(),
            tri,
            round_sizes: vec![n],
            log: Vec::new(),
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn subset_bound(&self) -> usize {
        self.subset_bound
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn log(&self) -> &[Realization] {
        &self.log
    }

    /// Point counts: entry `r` is the size after round `r` (entry 0 is the seed).
    pub fn round_sizes(&self) -> &[usize] {
        &self.round_sizes
    }

    pub fn diam_bound(&self) -> Rational {
        from_units(self.diam_units.into(), self.denom)
    }

    /// Distance in units of `1/denom`.
    pub fn dist_units(&self, i: usize, j: usize) -> u32 {
        if i == j {
            0
        } else {
            self.tri[tri_index(i, j)]
        }
    }

    pub fn dist(&self, i: usize, j: usize) -> Rational {
        from_units(self.dist_units(i, j).into(), self.denom)
    }

    /// The points present after round `round` (the seed for round 0).
    pub fn snapshot(&self, round: u32) -> Result<Vec<usize>> {
        self.round_sizes
            .get(round as usize)
            .map(|&n| (0..n).collect())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("round {round} not built (have {})", self.rounds))
            })
    }

    /// Materializes the full rational metric space (validated).
    pub fn to_metric_space(&self) -> Result<MetricSpace> {
        self.subspace(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Restriction to `points`, validated with the full triple scan.
    pub fn subspace(&self, points: &[usize]) -> Result<MetricSpace> {
        for &p in points {
            if p >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.len(),
                });
            }
        }
        let d = points
            .iter()
            .map(|&i| points.iter().map(|&j| self.dist(i, j)).collect())
            .collect();
        let labels = points.iter().map(|&i| self.labels[i].clone()).collect();
        MetricSpace::new(labels, d, self.diam_bound())
    }

    /// Rebuilds an approximant from stored parts. Only O(n^2) structural
    /// checks run here (shape, symmetry, positivity, grid, bound); the triple
    /// scan is left to [`Approximant::subspace`] on whatever part is needed.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        labels: Vec<String>,
        d: &[Vec<Rational>],
        diam: &Rational,
        denom: u64,
        subset_bound: usize,
        rounds: u32,
        round_sizes: Vec<usize>,
        log: Vec<Realization>,
    ) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidArgument(
                "denominator must be positive".into(),
            ));
        }
        let n = labels.len();
        let units = |r: &Rational, what: String| {
            grid_units(r, denom).ok_or(Error::DenominatorMismatch { what, denom })
        };
        let diam_units = units(diam, "diameter bound".into())?;
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        if d.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: d.len(),
            });
        }
        let mut tri = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            if units(&d[i][i], format!("d({i},{i})"))? != 0 {
                return Err(Error::Parse(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                let u = units(&d[i][j], format!("d({i},{j})"))?;
                if d[i][j] != d[j][i] || u == 0 || u > diam_units {
                    return Err(Error::Parse(format!("bad distance at ({i},{j})")));
                }
                tri.push(u);
            }
        }
        if round_sizes.len() != rounds as usize + 1
            || round_sizes.windows(2).any(|w| w[0] > w[1])
            || round_sizes.last() != Some(&n)
        {
            return Err(Error::Parse(
                "round sizes do not match the point set".into(),
            ));
        }
        for r in &log {
            if r.point >= n || r.subset.iter().any(|&s| s >= n) || r.subset.len() != r.values.len()
            {
                return Err(Error::Parse("log entry refers to a missing point".into()));
            }
        }
        Ok(Approximant {
            denom,
            diam_units,
            subset_bound,
            rounds,
            budget: DEFAULT_BUDGET,
            labels,
            tri,
            round_sizes,
            log,
        })
    }

    fn profile(&self, p: usize, subset: &[usize]) -> Vec<u32> {
        subset.iter().map(|&s| self.dist_units(p, s)).collect()
    }

    fn unit_matrix(&self, subset: &[usize], scale: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(subset.len() * subset.len());
        for &i in subset {
            for &j in subset {
                d.push(u64::from(self.dist_units(i, j)) * scale);
            }
        }
        d
    }

    /// Adds a point realizing `values` over `subset`; the distance to any
    /// other point `y` is `min(bound, min_s values[s] + d(s, y))`.
    fn realize(&mut self, subset: &[usize], values: &[u32]) -> usize {
        let n = self.len();
        self.tri.reserve(n);
        for y in 0..n {
            let v = match subset.iter().position(|&s| s == y) {
                Some(k) => values[k],
                None => subset
                    .iter()
                    .zip(values)
                    .map(|(&s, &v)| v + self.dist_units(s, y))
                    .min()
                    .unwrap_or(self.diam_units)
                    .min(self.diam_units),
            };
            self.tri.push(v);
        }
        self.labels.push(format!("u{n}"));
        n
    }
}

/// One round: every grid Katetov function over every subset of size at most
/// `subset_bound` of the current points that is not yet realized gets a new
/// point. Subsets are visited by size, then lexicographically; functions in
/// lexicographic order.
pub fn fraisse_step(a: &Approximant) -> Result<Approximant> {
    let mut out = a.clone();
    let round = a.rounds + 1;
    let before: Vec<usize> = (0..a.len()).collect();
    for_each_subset(&before, a.subset_bound, |subset| {
        let mut realized: HashSet<Vec<u32>> =
            (0..out.len()).map(|p| out.profile(p, subset)).collect();
        let grid = KatetovUnits::new(
            subset.len(),
            out.unit_matrix(subset, 1),
            out.diam_units.into(),
            1,
        );
        for xi in grid {
            let xi: Vec<u32> = xi.into_iter().map(|v| v as u32).collect();
            if realized.contains(&xi) {
                continue;
            }
            if out.len() >= out.budget {
                return Err(Error::BudgetExceeded { budget: out.budget });
            }
            let point = out.realize(subset, &xi);
            out.log.push(Realization {
                round,
                subset: subset.to_vec(),
                values: xi.clone(),
                point,
            });
            realized.insert(xi);
        }
        Ok(())
    })?;
    out.rounds = round;
    out.round_sizes.push(out.len());
    Ok(out)
}

/// Checks that every Katetov function with values on the `1/denom` grid over
/// every subset of `over` of size at most `k` is realized exactly by some
/// point of `a`. Fails with the first unrealized `(subset, values)`.
pub fn finite_injectivity_check(
    a: &Approximant,
    over: &[usize],
    k: usize,
    denom: u64,
) -> Result<WitnessReport> {
    if denom == 0 {
        return Err(Error::InvalidArgument(
            "denominator must be positive".into(),
        ));
    }
    for &p in over {
        if p >= a.len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: a.len(),
            });
        }
    }
    let params = json!({
        "points": a.len(),
        "snapshot": over.len(),
        "k": k,
        "denom": denom,
    });
    // work in units of 1/lcm so both grids are integral
    let lcm = num_integer::lcm(a.denom, denom);
    let scale = lcm / a.denom;
    let step = lcm / denom;
    let bound = u64::from(a.diam_units) * scale;
    let mut subsets = 0u64;
    let mut functions = 0u64;
    let outcome = for_each_subset(over, k, |subset| {
        subsets += 1;
        let realized: HashSet<Vec<u64>> = (0..a.len())
            .map(|p| {
                subset
                    .iter()
                    .map(|&s| u64::from(a.dist_units(p, s)) * scale)
                    .collect()
            })
            .collect();
        for xi in KatetovUnits::new(subset.len(), a.unit_matrix(subset, scale), bound, step) {
            functions += 1;
            if !realized.contains(&xi) {
                return Err((subset.to_vec(), xi));
            }
        }
        Ok(())
    });
    let report = match outcome {
        Ok(()) => WitnessReport::pass("finite_injectivity", params),
        Err((subset, xi)) => {
            let values: Vec<String> = xi.iter().map(|&u| from_units(u, lcm).to_string()).collect();
            WitnessReport::fail(
                "finite_injectivity",
                params,
                json!({ "subset": subset, "values": values }),
            )
        }
    };
    Ok(report
        .with_count("subsets", subsets)
        .with_count("functions", functions))
}

impl Realization {
    pub fn to_json(&self, denom: u64) -> Value {
        let values: Vec<String> = self
            .values
            .iter()
            .map(|&u| from_units(u.into(), denom).to_string())
            .collect();
        json!({ "round": self.round, "subset": self.subset, "values": values, "point": self.point })
    }

    pub fn from_json(v: &Value, denom: u64) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed log entry: {v}"));
        let idx = |x: &Value| {
            x.as_u64()
                .and_then(|u| usize::try_from(u).ok())
                .ok_or_else(bad)
        };
        let round = v["round"]
            .as_u64()
            .and_then(|r| u32::try_from(r).ok())
            .ok_or_else(bad)?;
        let subset = v["subset"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(idx)
            .collect::<Result<_>>()?;
        let values = v["values"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| {
                let r = crate::rational::parse_rational(x.as_str().ok_or_else(bad)?)?;
                grid_units(&r, denom).ok_or_else(bad)
            })
            .collect::<Result<_>>()?;
        let point = idx(&v["point"])?;
        Ok(Realization {
            round,
            subset,
            values,
            point,
        })
    }
}
