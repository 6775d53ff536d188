//! The acceptance battery: one report per criterion, all driven by one seed.
//!
//! Each criterion draws from its own stream of the seeded generator, so the
//! criteria are independent of each other and of evaluation order.

use std::sync::Arc;
use std::time::Instant;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::banach::lp::{power_integral, NORM_TOL};
use crate::banach::profile::{
    ball_profile_1_convex, ball_profile_2, ball_profile_2_convex, gurarij_sphere_profile,
    gurarij_sphere_profile_alt,
};
use crate::banach::{
    disjoint_support_identity, hilbert_check, lp_counterexample, lp_witnesses, profile_flags,
    profiles_agree_on, stereographic, Agreement, StepFn2D,
};
use crate::error::{Error, Result};
use crate::io::space_to_json;
use crate::katetov::{is_katetov, kuratowski_embed, sup_distance, truncate_katetov, Truncation};
use crate::metric::{validate_metric, MetricSpace};
use crate::rado::{rado_adjacent, rado_extension_witness, rado_metric, rado_space};
use crate::random::{
    random_bf_instance, random_katetov, random_katetov_family, random_ma_request, random_open_unit,
    random_space, random_uwmt_input, sub_rng,
};
use crate::rational::{fmt_rational, from_units, int, rat, Rational};
use crate::report::{Verdict, WitnessReport};
use crate::urysohn::{
    back_and_forth_extend, finite_injectivity_check, fraisse_step, injectivity_chain, ma_extension,
    nonproper_witness, prop53_extension, uwmt_extension, Approximant, BfState,
};
use crate::weak::restrict_katetov;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: usize,
    pub tol: f64,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            budget: crate::urysohn::DEFAULT_BUDGET,
            tol: 1e-9,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub criteria: Vec<WitnessReport>,
}

pub const CRITERIA: usize = 10;

/// Runs criterion `k` (1-based).
pub fn run_criterion(k: usize, cfg: &SuiteConfig) -> Result<WitnessReport> {
    let start = Instant::now();
    let seed = cfg.seed;
    let mut r = match k {
        1 => extension_batteries(seed, 10_000)?,
        2 => kuratowski_battery(seed, 1000)?,
        3 => lp_battery(seed)?,
        4 => hilbert_battery(seed, 1000, cfg.tol)?,
        5 => profile_battery()?,
        6 => disjoint_battery(seed, 200)?,
        7 => rado_battery(seed)?,
        8 => urysohn_battery(seed, cfg.budget, 50)?,
        9 => nonproper_battery(seed, 100)?,
        10 => chain_battery(seed, 1000)?,
        _ => return Err(Error::InvalidArgument(format!("no criterion {k}"))),
    };
    if cfg.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let criteria = (1..=CRITERIA)
        .map(|k| run_criterion(k, cfg))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if criteria.iter().all(WitnessReport::is_pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SuiteReport {
        seed: cfg.seed,
        verdict,
        criteria,
    })
}

/// Pass/fail tally for one battery, keeping the first failure.
#[derive(Default)]
struct Tally {
    runs: u64,
    failures: u64,
    first: Option<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.runs += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failures == 0
    }

    fn to_json(&self) -> Value {
        json!({ "runs": self.runs, "failures": self.failures, "first_failure": self.first })
    }
}

fn finish(check: &str, params: Value, parts: &[(&str, &Tally)]) -> WitnessReport {
    let ok = parts.iter().all(|(_, t)| t.ok());
    let witness: serde_json::Map<String, Value> = parts
        .iter()
        .map(|(k, t)| (k.to_string(), t.to_json()))
        .collect();
    let mut r = WitnessReport::from_outcome(check, params, ok, Value::Object(witness));
    for (k, t) in parts {
        r = r
            .with_count(format!("{k}_runs"), t.runs)
            .with_count(format!("{k}_failures"), t.failures);
    }
    r
}

fn err_json(e: &Error) -> Value {
    match e {
        Error::MetricFailure(v) => {
            json!({ "error": "metric_failure", "violation": v.to_json(), "text": v.to_string() })
        }
        other => json!({ "error": other.to_string() }),
    }
}

/// Criterion 1: random instances of the three one-point constructions.
pub fn extension_batteries(seed: u64, runs: usize) -> Result<WitnessReport> {
    let (max_points, max_denom) = (8, 24);
    let mut ma = Tally::default();
    let mut rng = sub_rng(seed, 1);
    for _ in 0..runs {
        let req = random_ma_request(&mut rng, max_points, max_denom);
        let res = ma_extension(&req);
        let ok = matches!(&res, Ok(out) if *out.space.dist(out.point, req.f.len()) == req.delta);
        ma.record(ok, || {
            json!({
                "space": space_to_json(&req.space), "f": req.f, "x": req.x, "y": req.y,
                "delta": fmt_rational(&req.delta),
                "outcome": res.as_ref().err().map(err_json),
            })
        });
    }

    let mut uwmt = Tally::default();
    let mut rng = sub_rng(seed, 2);
    for _ in 0..runs {
        let (space, x, y, zs) = random_uwmt_input(&mut rng, max_points, max_denom);
        let res = uwmt_extension(&space, x, y, &zs);
        let ok = match &res {
            Ok(out) => {
                let n = space.len();
                (0..n).all(|i| (0..n).all(|j| out.space.dist(i, j) == space.dist(i, j)))
                    && out
                        .copies
                        .iter()
                        .zip(&zs)
                        .all(|(&c, &z)| out.space.dist(c, y) == space.dist(z, x))
            }
            Err(_) => false,
        };
        uwmt.record(ok, || {
            json!({
                "space": space_to_json(&space), "x": x, "y": y, "z": zs,
                "outcome": res.as_ref().err().map(err_json),
            })
        });
    }

    let mut p53 = Tally::default();
    let mut rng = sub_rng(seed, 3);
    for _ in 0..runs {
        let (space, st, z) = random_bf_instance(&mut rng, max_points, max_denom);
        let res = prop53_extension(&space, &st, z);
        let ok = match &res {
            Ok(out) => {
                let zp = out.point;
                *out.space.dist(zp, z) <= st.eps
                    && st
                        .pairs
                        .iter()
                        .all(|&(x, y)| out.space.dist(zp, y) == space.dist(z, x))
            }
            Err(_) => false,
        };
        p53.record(ok, || {
            json!({
                "space": space_to_json(&space),
                "pairs": st.pairs, "eps": fmt_rational(&st.eps), "z": z,
                "outcome": res.as_ref().err().map(err_json),
            })
        });
    }
    let params =
        json!({ "runs": runs, "max_points": max_points, "max_denom": max_denom, "seed": seed });
    Ok(finish(
        "extensions",
        params,
        &[("ma", &ma), ("uwmt", &uwmt), ("prop53", &p53)],
    ))
}

/// Criterion 2: Kuratowski isometry, max-truncation closure, restriction contraction.
pub fn kuratowski_battery(seed: u64, runs: usize) -> Result<WitnessReport> {
    let mut kur = Tally::default();
    let mut rng = sub_rng(seed, 21);
    for _ in 0..runs {
        let n = rng.gen_range(1..=8);
        let q = rng.gen_range(1..=24);
        let s = Arc::new(random_space(&mut rng, n, q));
        let f = kuratowski_embed(&s);
        let mut bad = None;
        'pairs: for i in 0..n {
            for j in 0..n {
                if sup_distance(&f[i], &f[j])? != *s.dist(i, j) {
                    bad = Some((i, j));
                    break 'pairs;
                }
            }
        }
        kur.record(
            bad.is_none(),
            || json!({ "space": space_to_json(&s), "pair": bad }),
        );
    }

    let mut trunc = Tally::default();
    let mut rng = sub_rng(seed, 22);
    for _ in 0..runs {
        let n = rng.gen_range(1..=7);
        let q = rng.gen_range(2..=24);
        let xi = random_katetov(&mut rng, n, q);
        let lambda = random_open_unit(&mut rng, q);
        let out = truncate_katetov(&xi, &lambda, Truncation::Max)?;
        let check = is_katetov(&out, xi.space())?;
        trunc.record(check.is_pass(), || {
            json!({
                "space": space_to_json(xi.space()),
                "xi": crate::rational::fmt_vec(xi.values()),
                "lambda": fmt_rational(&lambda),
            })
        });
    }

    let mut restr = Tally::default();
    let mut rng = sub_rng(seed, 23);
    for _ in 0..runs {
        let n = rng.gen_range(1..=7);
        let q = rng.gen_range(1..=24);
        let fam = random_katetov_family(&mut rng, n, q, 2);
        let mut subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if subset.is_empty() {
            subset.push(rng.gen_range(0..n));
        }
        let before = sup_distance(&fam[0], &fam[1])?;
        let (a, b) = (
            restrict_katetov(&fam[0], &subset)?,
            restrict_katetov(&fam[1], &subset)?,
        );
        let after = sup_distance(&a, &b)?;
        let katetov = is_katetov(a.values(), a.space())?.is_pass()
            && is_katetov(b.values(), b.space())?.is_pass();
        restr.record(after <= before && katetov, || {
            json!({ "subset": subset, "before": fmt_rational(&before), "after": fmt_rational(&after) })
        });
    }
    let params = json!({ "runs": runs, "seed": seed });
    Ok(finish(
        "kuratowski",
        params,
        &[
            ("isometry", &kur),
            ("max_truncation", &trunc),
            ("restriction", &restr),
        ],
    ))
}

/// Criterion 3: exponent separation for `p in {1, 3/2, 3, 5}`, equality at 2,
/// and vanishing pairings.
pub fn lp_battery(seed: u64) -> Result<WitnessReport> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut rng = sub_rng(seed, 31);
    for p in [int(1), rat(3, 2), int(2), int(3), int(5)] {
        let r = lp_counterexample(&p, 100, &mut rng)?;
        let w = r.witness.clone().unwrap_or(Value::Null);
        let e1 = (&p - Rational::one()) / &p;
        let e2 = p.recip();
        let exps = w["norm_w_minus_v"]["exponent"] == fmt_rational(&e1)
            && w["norm_w_prime_minus_v"]["exponent"] == fmt_rational(&e2);
        let pairings_zero = r.counts.get("nonzero_pairings") == Some(&0);
        let expected_separated = p != int(2);
        let row_ok = exps && pairings_zero && (w["separated"] == json!(expected_separated));
        ok &= row_ok;
        rows.push(json!({ "p": fmt_rational(&p), "ok": row_ok, "report": w }));
    }
    Ok(WitnessReport::from_outcome(
        "lp",
        json!({ "seed": seed }),
        ok,
        json!(rows),
    ))
}

/// Criterion 4: the sphere identity on random rational unit triples.
pub fn hilbert_battery(seed: u64, runs: usize, tol: f64) -> Result<WitnessReport> {
    let mut t = Tally::default();
    let mut rng = sub_rng(seed, 41);
    let coord =
        |rng: &mut rand_chacha::ChaCha8Rng| rat(rng.gen_range(-10..=10), rng.gen_range(1..=10));
    for _ in 0..runs {
        let dim = rng.gen_range(2..=6);
        let mut point =
            || stereographic(&(0..dim - 1).map(|_| coord(&mut rng)).collect::<Vec<_>>());
        let (u, v, z) = (point(), point(), point());
        let r = hilbert_check(&u, &v, &z, tol)?;
        t.record(r.is_pass(), || r.witness.clone().unwrap_or(Value::Null));
    }
    Ok(finish(
        "hilbert",
        json!({ "runs": runs, "tol": tol, "seed": seed }),
        &[("triples", &t)],
    ))
}

/// Criterion 5: the radial profile pairs.
pub fn profile_battery() -> Result<WitnessReport> {
    let horizon = int(4);
    let mut checks = serde_json::Map::new();
    let mut ok = true;
    let mut put = |name: &str, pass: bool, detail: Value| {
        ok &= pass;
        checks.insert(name.to_string(), json!({ "pass": pass, "detail": detail }));
    };

    let (h, h2) = (gurarij_sphere_profile(), gurarij_sphere_profile_alt());
    for (name, p) in [("sphere_h_flags", &h), ("sphere_h_alt_flags", &h2)] {
        let f = profile_flags(p, &horizon)?;
        put(name, f.all() && f.value_at_0 == int(1), f.to_json());
    }
    let agree = profiles_agree_on(&h, &h2, &int(1), &int(1))? == Agreement::Agree;
    put("sphere_agree_at_1", agree, json!(null));
    let half = rat(1, 2);
    let gap = h.eval(&half) - h2.eval(&half);
    put(
        "sphere_gap_at_half",
        gap == rat(1, 2),
        json!(fmt_rational(&gap)),
    );

    let f = profile_flags(&ball_profile_2(), &horizon)?;
    let mv = f.midpoint_violation.clone();
    let triple_ok = mv
        .as_ref()
        .is_some_and(|m| m.triple == [rat(1, 2), int(1), rat(3, 2)] && m.gap == rat(1, 4));
    put("ball_h2_not_convex", !f.convex && triple_ok, f.to_json());

    let (a, b) = (ball_profile_1_convex(), ball_profile_2_convex());
    for (name, p) in [
        ("ball_corrected_1_flags", &a),
        ("ball_corrected_2_flags", &b),
    ] {
        let f = profile_flags(p, &horizon)?;
        put(name, f.all(), f.to_json());
    }
    let agree = profiles_agree_on(&a, &b, &int(0), &int(1))? == Agreement::Agree;
    put("ball_corrected_agree_0_1", agree, json!(null));
    let r = rat(3, 2);
    let gap = a.eval(&r) - b.eval(&r);
    put(
        "ball_corrected_gap_at_3_2",
        gap == rat(1, 4),
        json!(fmt_rational(&gap)),
    );

    Ok(WitnessReport::from_outcome(
        "profiles",
        json!({ "horizon": fmt_rational(&horizon) }),
        ok,
        Value::Object(checks),
    ))
}

/// Random `x` and `n` parts with disjoint supports on a shared random grid.
fn random_disjoint_instance(rng: &mut impl Rng, n: usize) -> (StepFn2D, Vec<StepFn2D>) {
    let mut breaks = |hi: i64, max_cells: usize| {
        let cells = rng.gen_range(1..=max_cells);
        let mut cuts: Vec<i64> = (1..hi * 12).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<i64> = cuts[..cells - 1].to_vec();
        cuts.sort_unstable();
        let mut b = vec![int(0)];
        b.extend(cuts.iter().map(|&c| rat(c, 12)));
        b.push(int(hi));
        b
    };
    let xb = breaks(2, 4);
    let yb = breaks(1, 3);
    let (nx, ny) = (xb.len() - 1, yb.len() - 1);
    let val = |rng: &mut dyn rand::RngCore| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    let x_values = (0..nx)
        .map(|_| (0..ny).map(|_| val(rng)).collect())
        .collect();
    let x = StepFn2D::new(xb.clone(), yb.clone(), x_values).expect("valid grid");
    let owner: Vec<Vec<Option<usize>>> = (0..nx)
        .map(|_| {
            (0..ny)
                .map(|_| {
                    if rng.gen_bool(0.8) {
                        Some(rng.gen_range(0..n))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let parts = (0..n)
        .map(|k| {
            let values = (0..nx)
                .map(|i| {
                    (0..ny)
                        .map(|j| {
                            if owner[i][j] == Some(k) {
                                val(rng)
                            } else {
                                int(0)
                            }
                        })
                        .collect()
                })
                .collect();
            StepFn2D::new(xb.clone(), yb.clone(), values).expect("valid grid")
        })
        .collect();
    (x, parts)
}

/// Criterion 6: the disjoint-support identity.
pub fn disjoint_battery(seed: u64, runs: usize) -> Result<WitnessReport> {
    let mut exact = Tally::default();
    let mut rng = sub_rng(seed, 61);
    for p in 1..=3 {
        for n in 1..=3 {
            for _ in 0..runs {
                let (x, parts) = random_disjoint_instance(&mut rng, n);
                let r = disjoint_support_identity(&x, &parts, &int(p), NORM_TOL)?;
                let is_exact = r
                    .witness
                    .as_ref()
                    .is_some_and(|w| w["exact"] == json!(true));
                exact.record(
                    r.is_pass() && is_exact,
                    || json!({ "p": p, "n": n, "report": r.witness }),
                );
            }
        }
    }
    let mut float = Tally::default();
    let mut rng = sub_rng(seed, 62);
    for _ in 0..runs {
        let n = rng.gen_range(1..=3);
        let (x, parts) = random_disjoint_instance(&mut rng, n);
        let r = disjoint_support_identity(&x, &parts, &rat(3, 2), NORM_TOL)?;
        float.record(r.is_pass(), || json!({ "n": n, "report": r.witness }));
    }
    // keep the exact-power helper honest on a known value: ∫|w|^3 = 1
    let (w, _, _) = lp_witnesses();
    let known = matches!(power_integral(&w, &int(3)), crate::banach::lp::PowerIntegral::Exact(ref s) if s.is_one());
    let mut r = finish(
        "disjoint_support",
        json!({ "runs_per_case": runs, "tol": NORM_TOL, "seed": seed }),
        &[("exact", &exact), ("float", &float)],
    );
    if !known {
        r.verdict = Verdict::Fail;
    }
    Ok(r)
}

/// Criterion 7: extension witnesses, the metric on `{0..255}`, metric coding of adjacency.
pub fn rado_battery(seed: u64) -> Result<WitnessReport> {
    let mut ext = Tally::default();
    // every disjoint (U, V) over {0..15} with |U| + |V| <= 6: assign each
    // vertex to U, V or neither via base-3 digits of a sparse enumeration
    fn walk(start: u64, u: &mut Vec<u64>, v: &mut Vec<u64>, t: &mut Tally) -> Result<()> {
        let w = rado_extension_witness(u, v)?;
        let ok = !u.contains(&w)
            && !v.contains(&w)
            && u.iter().all(|&x| rado_adjacent(w, x) == Ok(true))
            && v.iter().all(|&x| rado_adjacent(w, x) == Ok(false));
        t.record(ok, || json!({ "u": u, "v": v, "w": w }));
        if u.len() + v.len() == 6 {
            return Ok(());
        }
        for x in start..16 {
            u.push(x);
            walk(x + 1, u, v, t)?;
            u.pop();
            v.push(x);
            walk(x + 1, u, v, t)?;
            v.pop();
        }
        Ok(())
    }
    walk(0, &mut Vec::new(), &mut Vec::new(), &mut ext)?;

    let mut metric = Tally::default();
    let vs: Vec<u64> = (0..256).collect();
    let ok = rado_space(&vs).is_ok();
    metric.record(ok, || json!({ "vertices": 256 }));

    let mut coding = Tally::default();
    let mut rng = sub_rng(seed, 71);
    for _ in 0..10_000 {
        let (a, b) = loop {
            let a = rng.gen_range(0..1u64 << 16);
            let b = rng.gen_range(0..1u64 << 16);
            if a != b {
                break (a, b);
            }
        };
        let adj = rado_adjacent(a, b)?;
        coding.record(
            (rado_metric(a, b) == 1) == adj,
            || json!({ "a": a, "b": b }),
        );
    }
    Ok(finish(
        "rado",
        json!({ "seed": seed }),
        &[
            ("extension", &ext),
            ("metric_0_255", &metric),
            ("coding", &coding),
        ],
    ))
}

/// Criterion 8: two rounds from the two-point seed, injectivity over round 1,
/// and back-and-forth probes.
pub fn urysohn_battery(seed: u64, budget: usize, probes: usize) -> Result<WitnessReport> {
    let d = vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]];
    let seed_space = MetricSpace::from_matrix(d, int(1))?;
    let a0 = Approximant::seed(&seed_space, 4, 2)?.with_budget(budget);
    let a1 = fraisse_step(&a0)?;
    let a2 = fraisse_step(&a1)?;
    let snapshot = a2.snapshot(1)?;
    let inj = finite_injectivity_check(&a2, &snapshot, 2, 4)?;
    let valid = a2.to_metric_space().is_ok();

    let mut bf = Tally::default();
    let mut rng = sub_rng(seed, 81);
    let eps = rat(1, 4);
    for _ in 0..probes {
        let x = *snapshot.choose(&mut rng).expect("non-empty");
        let z = loop {
            let z = *snapshot.choose(&mut rng).expect("non-empty");
            if z != x {
                break z;
            }
        };
        let st = BfState::identity(&[x], eps.clone());
        let res = back_and_forth_extend(&a2, &st, z);
        let ok = match &res {
            Ok(out) => {
                let (_, zp) = out.pairs[1];
                a2.dist(z, zp) <= eps && a2.dist(x, zp) == a2.dist(x, z)
            }
            Err(_) => false,
        };
        bf.record(
            ok,
            || json!({ "x": x, "z": z, "outcome": res.as_ref().err().map(err_json) }),
        );
    }
    let ok = inj.is_pass() && valid && bf.ok();
    let params = json!({ "seed_distance": "1/2", "denom": 4, "subset_bound": 2, "budget": budget, "rounds": 2, "seed": seed });
    let witness = json!({
        "round_sizes": a2.round_sizes(),
        "full_space_valid": valid,
        "injectivity": { "verdict": inj.verdict, "witness": inj.witness, "counts": inj.counts },
        "back_and_forth": bf.to_json(),
    });
    Ok(WitnessReport::from_outcome("urysohn", params, ok, witness)
        .with_count("points", a2.len() as u64)
        .with_count("probes", bf.runs)
        .with_count("probe_failures", bf.failures))
}

/// Criterion 9: non-proper witnesses at `lambda = 1/2`.
pub fn nonproper_battery(seed: u64, runs: usize) -> Result<WitnessReport> {
    let mut t = Tally::default();
    let mut rng = sub_rng(seed, 91);
    let lambda = rat(1, 2);
    for _ in 0..runs {
        let n = rng.gen_range(1..=8);
        let q = 2 * rng.gen_range(1..=12);
        let s = random_space(&mut rng, n, q);
        let x = rng.gen_range(0..n);
        let zs: Vec<usize> = (0..n).filter(|&i| i != x && rng.gen_bool(0.6)).collect();
        let res = nonproper_witness(&s, x, &zs, &lambda);
        let ok = match &res {
            Ok(out) => {
                let y = out.point;
                *out.space.dist(y, 0) == lambda
                    && zs.iter().enumerate().all(|(k, &z)| {
                        *out.space.dist(y, k + 1) == s.dist(x, z).max(&lambda).clone()
                    })
                    && validate_metric(out.space.matrix(), out.space.diam_bound())
                        .is_ok_and(|c| c.is_pass())
            }
            Err(_) => false,
        };
        t.record(ok, || json!({ "space": space_to_json(&s), "x": x, "z": zs, "outcome": res.as_ref().err().map(err_json) }));
    }
    Ok(finish(
        "nonproper",
        json!({ "runs": runs, "lambda": "1/2", "seed": seed }),
        &[("instances", &t)],
    ))
}

/// Criterion 10: chains for random `(r, s, diam)`.
pub fn chain_battery(seed: u64, runs: usize) -> Result<WitnessReport> {
    let mut t = Tally::default();
    let mut rng = sub_rng(seed, 101);
    for _ in 0..runs {
        let q = rng.gen_range(1..=24u64);
        let diam_units = rng.gen_range(1..=2 * q);
        let r = from_units(rng.gen_range(1..=diam_units), q);
        let s = from_units(rng.gen_range(1..=diam_units), q);
        let diam = from_units(diam_units, q);
        let res = injectivity_chain(&r, &s, &diam);
        let ok = match &res {
            Ok(c) => {
                let n = c.len() - 1;
                n >= 1
                    && *c.dist(0, n) == s
                    && (0..n).all(|i| *c.dist(i, i + 1) == r)
                    && validate_metric(c.matrix(), &diam).is_ok_and(|v| v.is_pass())
            }
            Err(_) => false,
        };
        t.record(ok, || {
            json!({
                "r": fmt_rational(&r), "s": fmt_rational(&s), "diam": fmt_rational(&diam),
                "outcome": res.as_ref().err().map(err_json),
            })
        });
    }
    Ok(finish(
        "chain",
        json!({ "runs": runs, "seed": seed }),
        &[("triples", &t)],
    ))
}
