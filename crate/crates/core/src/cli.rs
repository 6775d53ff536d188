//! The `mslab` command line. Every subcommand prints one JSON report on
//! stdout and a one-line summary on stderr; the exit code is 0 on pass, 1 on
//! fail and 2 on malformed input or a broken precondition.

use std::ffi::OsString;
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::banach::{
    disjoint_support_identity, hilbert_check, lp_counterexample, profiles_agree_on,
    radial_profile_check, Agreement, RationalVector,
};
use crate::error::{Error, Result};
use crate::io::{
    approximant_from_json, approximant_to_json, katetov_to_json, profile_from_json, read_json,
    read_katetov, read_katetov_values, read_matrix, read_space, seminorm_to_json, space_to_json,
    step2_from_json, write_json,
};
use crate::katetov::{
    enumerate_katetov, extend_by_katetov, is_katetov, truncate_katetov, Truncation,
};
use crate::metric::{validate_metric, validate_pseudometric, Check};
use crate::rado::{
    basis_member, basis_refinement_check, rado_adjacent, rado_extension_witness, rado_metric,
    rado_space, BasisCode, RadoPoint,
};
use crate::random::sub_rng;
use crate::rational::{fmt_rational, fmt_vec, parse_rational, Rational};
use crate::report::{Verdict, WitnessReport};
use crate::suite::{run_suite, SuiteConfig};
use crate::urysohn::{
    back_and_forth_extend, finite_injectivity_check, fraisse_step, injectivity_chain, ma_extension,
    nonproper_witness, prop53_extension, uwmt_extension, Approximant, BfState, MaRequest,
    DEFAULT_BUDGET,
};
use crate::weak::{
    gromov_approximant, proximity_test, restrict_katetov, weak_seminorm, LandmarkSet,
};
use crate::KatetovFn;

#[derive(Debug, Parser)]
#[command(
    name = "mslab",
    version,
    about = "Exact checks on finite metric spaces and their extensions"
)]
pub struct Cli {
    /// Seed for every randomized battery.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Point ceiling for approximant growth.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Float slack where floats occur (default 1e-12; the suite's sphere battery uses 1e-9).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Add wall-clock times to reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a distance matrix file against the metric axioms.
    Validate {
        file: PathBuf,
        /// Allow zero distances between distinct points.
        #[arg(long)]
        pseudo: bool,
    },
    #[command(subcommand)]
    Katetov(KatetovCmd),
    #[command(subcommand)]
    Urysohn(UrysohnCmd),
    #[command(subcommand)]
    Weak(WeakCmd),
    /// Sphere pseudometric identity for three unit vectors.
    Hilbert {
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        u: Vec<Rational>,
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        v: Vec<Rational>,
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        z: Vec<Rational>,
    },
    /// Norm separation of the three step-function witnesses in L^p.
    Lp {
        #[arg(long, value_parser = rational)]
        p: Rational,
        /// Random step functions paired against the witnesses.
        #[arg(long, default_value_t = 100)]
        pairings: usize,
    },
    /// p-th power identity for parts with disjoint supports.
    Disjoint {
        /// `{"x": <step fn>, "parts": [<step fn>, ...]}`
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        p: Rational,
    },
    #[command(subcommand)]
    Profile(ProfileCmd),
    #[command(subcommand)]
    Rado(RadoCmd),
    /// Run every acceptance battery.
    Suite,
}

#[derive(Debug, Subcommand)]
pub enum KatetovCmd {
    Check {
        file: PathBuf,
    },
    /// Add the point the function describes.
    Extend {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All grid Katetov functions over a space.
    Enumerate {
        space: PathBuf,
        #[arg(long)]
        denom: u64,
        /// Functions listed in the report (all are counted).
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    Truncate {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        lambda: Rational,
        #[arg(long, default_value = "max", value_parser = truncation)]
        mode: Truncation,
    },
}

#[derive(Debug, Subcommand)]
pub enum UrysohnCmd {
    /// Grow an approximant from a seed space.
    Build {
        #[arg(value_name = "SEED_SPACE")]
        start: PathBuf,
        #[arg(long)]
        denom: u64,
        #[arg(long, default_value_t = 2)]
        subset_bound: usize,
        #[arg(long, default_value_t = 1)]
        rounds: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full validation plus finite injectivity over a round snapshot.
    Check {
        file: PathBuf,
        /// Snapshot round (default: the one before the last).
        #[arg(long)]
        over_round: Option<u32>,
        #[arg(long)]
        subset_bound: Option<usize>,
        #[arg(long)]
        denom: Option<u64>,
    },
    Ma {
        space: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        #[arg(long, value_parser = rational)]
        delta: Rational,
    },
    Uwmt {
        space: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, value_delimiter = ',')]
        z: Vec<usize>,
    },
    Prop53 {
        space: PathBuf,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        z: usize,
    },
    /// One back-and-forth step inside an approximant.
    Bf {
        file: PathBuf,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        z: usize,
    },
    Chain {
        #[arg(long, value_parser = rational)]
        r: Rational,
        #[arg(long, value_parser = rational)]
        s: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        diam: Rational,
    },
    Nonproper {
        space: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long, value_delimiter = ',')]
        z: Vec<usize>,
        #[arg(long, value_parser = rational)]
        lambda: Rational,
    },
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// `x:y` pairs, comma separated.
    #[arg(long, value_parser = pair, value_delimiter = ',', required = true)]
    pairs: Vec<(usize, usize)>,
    #[arg(long, value_parser = rational)]
    eps: Rational,
}

impl StateArgs {
    fn state(&self) -> BfState {
        BfState::new(self.pairs.clone(), self.eps.clone())
    }
}

#[derive(Debug, Args)]
pub struct LandmarkArgs {
    space: PathBuf,
    /// Landmark indices (default: every point).
    #[arg(long, value_delimiter = ',')]
    landmarks: Vec<usize>,
}

impl LandmarkArgs {
    fn load(&self) -> Result<LandmarkSet> {
        let space = Arc::new(read_space(&self.space)?);
        if self.landmarks.is_empty() {
            LandmarkSet::all(space)
        } else {
            LandmarkSet::new(space, self.landmarks.clone())
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum WeakCmd {
    Seminorm {
        #[command(flatten)]
        l: LandmarkArgs,
    },
    Proximity {
        #[command(flatten)]
        l: LandmarkArgs,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    Net {
        #[command(flatten)]
        l: LandmarkArgs,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    Restrict {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProfileCmd {
    Check {
        file: PathBuf,
        #[arg(long, value_parser = rational, default_value = "4")]
        horizon: Rational,
    },
    Agree {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = rational)]
        lo: Rational,
        #[arg(long, value_parser = rational)]
        hi: Rational,
    },
}

#[derive(Debug, Subcommand)]
pub enum RadoCmd {
    Adj {
        i: u64,
        j: u64,
    },
    /// Validate the path metric on a vertex range.
    Metric {
        #[arg(long, value_parser = range, default_value = "0..16")]
        vertices: Range<u64>,
    },
    Witness {
        #[arg(long, value_delimiter = ',')]
        u: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u64>,
    },
    /// Members of a basic set among scanned vertices, or the base axioms
    /// against a second code.
    Basis {
        #[arg(long, value_parser = code)]
        code: BasisCode,
        #[arg(long, value_parser = code)]
        with: Option<BasisCode>,
        #[arg(long, value_parser = range, default_value = "0..64")]
        scan: Range<u64>,
    },
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn truncation(s: &str) -> std::result::Result<Truncation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn code(s: &str) -> std::result::Result<BasisCode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn pair(p: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = p
        .split_once(':')
        .ok_or_else(|| format!("expected x:y, got {p:?}"))?;
    let index = |t: &str| t.trim().parse().map_err(|_| format!("bad index {t:?}"));
    Ok((index(a)?, index(b)?))
}

fn range(s: &str) -> std::result::Result<Range<u64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u64 = a.parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: u64 = b.parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a >= b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..b)
}

/// What a subcommand hands back before printing.
struct Outcome {
    json: Value,
    verdict: Verdict,
    summary: String,
}

impl Outcome {
    fn report(r: WitnessReport) -> Self {
        let summary = format!("{}: {}", r.check, verdict_word(r.verdict));
        Outcome {
            verdict: r.verdict,
            json: serde_json::to_value(&r).expect("reports serialize"),
            summary,
        }
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Undetermined => "undetermined",
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(
                if code == 0 {
                    &mut *out as &mut dyn Write
                } else {
                    err
                },
                "{e}"
            );
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&o.json).expect("plain json")
            );
            let _ = writeln!(err, "{}", o.summary);
            o.verdict.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Failures that are findings rather than bad input.
fn as_finding(check: &str, params: Value, e: Error) -> Result<Outcome> {
    match e {
        Error::MetricFailure(v) => Ok(Outcome::report(WitnessReport::fail(
            check,
            params,
            json!({ "violation": v.to_json(), "text": v.to_string() }),
        ))),
        Error::Unsaturated => Ok(Outcome::report(WitnessReport::fail(
            check,
            params,
            json!({ "error": "unsaturated" }),
        ))),
        other => Err(other),
    }
}

fn space_report(
    check: &str,
    params: Value,
    space: &crate::MetricSpace,
    extra: Value,
) -> WitnessReport {
    let mut w = json!({ "space": space_to_json(space) });
    if let (Value::Object(m), Value::Object(e)) = (&mut w, extra) {
        m.extend(e);
    }
    WitnessReport::pass(check, params)
        .with_witness(w)
        .with_count("points", space.len() as u64)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol.unwrap_or(1e-12);
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Validate { file, pseudo } => {
            let (d, diam) = read_matrix(file)?;
            let check = if *pseudo {
                validate_pseudometric(&d, &diam)?
            } else {
                validate_metric(&d, &diam)?
            };
            let params = json!({ "file": file, "pseudo": pseudo, "diam": fmt_rational(&diam) });
            let r = match check {
                Check::Pass => WitnessReport::pass("validate", params),
                Check::Fail(v) => WitnessReport::fail(
                    "validate",
                    params,
                    json!({ "violation": v.to_json(), "text": v.to_string() }),
                ),
            };
            Ok(Outcome::report(r.with_count("points", d.len() as u64)))
        }
        Command::Katetov(k) => katetov(k),
        Command::Urysohn(u) => urysohn(u, budget),
        Command::Weak(w) => weak(w),
        Command::Hilbert { u, v, z } => {
            let vec = |c: &Vec<Rational>| RationalVector::new(c.clone());
            Ok(Outcome::report(hilbert_check(
                &vec(u)?,
                &vec(v)?,
                &vec(z)?,
                tol,
            )?))
        }
        Command::Lp { p, pairings } => {
            let mut rng = sub_rng(cli.seed, 0);
            Ok(Outcome::report(lp_counterexample(p, *pairings, &mut rng)?))
        }
        Command::Disjoint { file, p } => {
            let v = read_json(file)?;
            let x = step2_from_json(&v["x"])?;
            let parts = v["parts"]
                .as_array()
                .ok_or_else(|| Error::Parse("\"parts\" must be an array".into()))?
                .iter()
                .map(step2_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::report(disjoint_support_identity(
                &x, &parts, p, tol,
            )?))
        }
        Command::Profile(ProfileCmd::Check { file, horizon }) => {
            let h = profile_from_json(&read_json(file)?)?;
            Ok(Outcome::report(radial_profile_check(&h, horizon)?))
        }
        Command::Profile(ProfileCmd::Agree {
            first,
            second,
            lo,
            hi,
        }) => {
            let h1 = profile_from_json(&read_json(first)?)?;
            let h2 = profile_from_json(&read_json(second)?)?;
            let params = json!({ "lo": fmt_rational(lo), "hi": fmt_rational(hi) });
            let r = match profiles_agree_on(&h1, &h2, lo, hi)? {
                Agreement::Agree => WitnessReport::pass("profile_agree", params),
                Agreement::Differ { at, left, right } => WitnessReport::fail(
                    "profile_agree",
                    params,
                    json!({ "at": fmt_rational(&at), "first": fmt_rational(&left), "second": fmt_rational(&right) }),
                ),
            };
            Ok(Outcome::report(r))
        }
        Command::Rado(r) => rado(r),
        Command::Suite => {
            let mut cfg = SuiteConfig {
                seed: cli.seed,
                budget,
                timing: cli.timing,
                ..SuiteConfig::default()
            };
            if let Some(t) = cli.tol {
                cfg.tol = t;
            }
            let s = run_suite(&cfg)?;
            let lines: Vec<String> = s
                .criteria
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    format!(
                        "criterion {} ({}): {}",
                        i + 1,
                        r.check,
                        verdict_word(r.verdict)
                    )
                })
                .collect();
            Ok(Outcome {
                verdict: s.verdict,
                json: serde_json::to_value(&s).expect("reports serialize"),
                summary: lines.join("\n"),
            })
        }
    }
}

fn katetov(cmd: &KatetovCmd) -> Result<Outcome> {
    match cmd {
        KatetovCmd::Check { file } => {
            let (space, values) = read_katetov_values(file)?;
            let params = json!({ "file": file, "values": fmt_vec(&values) });
            let r = match is_katetov(&values, &space)? {
                Check::Pass => WitnessReport::pass("katetov_check", params),
                Check::Fail(v) => WitnessReport::fail(
                    "katetov_check",
                    params,
                    json!({ "violation": v.to_json(), "text": v.to_string() }),
                ),
            };
            Ok(Outcome::report(r))
        }
        KatetovCmd::Extend { file, out } => {
            let xi = read_katetov(file)?;
            let (space, point) = extend_by_katetov(&xi)?;
            if let Some(p) = out {
                write_json(p, &space_to_json(&space))?;
            }
            let r = space_report(
                "katetov_extend",
                json!({ "file": file }),
                &space,
                json!({ "point": point }),
            );
            Ok(Outcome::report(r))
        }
        KatetovCmd::Enumerate {
            space,
            denom,
            limit,
        } => {
            let s = Arc::new(read_space(space)?);
            let mut listed = Vec::new();
            let mut count = 0u64;
            for xi in enumerate_katetov(&s, *denom)? {
                if listed.len() < *limit {
                    listed.push(fmt_vec(xi.values()));
                }
                count += 1;
            }
            let r = WitnessReport::pass(
                "katetov_enumerate",
                json!({ "space": space, "denom": denom }),
            )
            .with_witness(json!({ "functions": listed }))
            .with_count("functions", count);
            Ok(Outcome::report(r))
        }
        KatetovCmd::Truncate { file, lambda, mode } => {
            let xi = read_katetov(file)?;
            let values = truncate_katetov(&xi, lambda, *mode)?;
            let mode_name = match mode {
                Truncation::Max => "max",
                Truncation::Min => "min",
            };
            let params = json!({ "file": file, "lambda": fmt_rational(lambda), "mode": mode_name });
            let check = is_katetov(&values, xi.space())?;
            let w = json!({ "values": fmt_vec(&values), "violation": check.witness().map(|v| v.to_json()) });
            Ok(Outcome::report(WitnessReport::from_outcome(
                "katetov_truncate",
                params,
                check.is_pass(),
                w,
            )))
        }
    }
}

fn load_approximant(file: &Path) -> Result<Approximant> {
    approximant_from_json(&read_json(file)?)
}

fn urysohn(cmd: &UrysohnCmd, budget: usize) -> Result<Outcome> {
    match cmd {
        UrysohnCmd::Build {
            start,
            denom,
            subset_bound,
            rounds,
            out,
        } => {
            let s = read_space(start)?;
            let mut a = Approximant::seed(&s, *denom, *subset_bound)?.with_budget(budget);
            for _ in 0..*rounds {
                a = fraisse_step(&a)?;
            }
            let params = json!({ "seed": start, "denom": denom, "subset_bound": subset_bound, "rounds": rounds, "budget": budget });
            let mut r =
                WitnessReport::pass("urysohn_build", params).with_count("points", a.len() as u64);
            let v = approximant_to_json(&a);
            r = match out {
                Some(p) => {
                    write_json(p, &v)?;
                    r.with_witness(json!({ "round_sizes": a.round_sizes(), "out": p }))
                }
                None => r.with_witness(json!({ "round_sizes": a.round_sizes(), "approximant": v })),
            };
            Ok(Outcome::report(r))
        }
        UrysohnCmd::Check {
            file,
            over_round,
            subset_bound,
            denom,
        } => {
            let a = load_approximant(file)?;
            let params = json!({ "file": file });
            if let Err(e) = a.to_metric_space() {
                let w = match &e {
                    Error::InvalidMetric(v) => {
                        json!({ "violation": v.to_json(), "text": v.to_string() })
                    }
                    other => return Err(other.clone()),
                };
                return Ok(Outcome::report(WitnessReport::fail(
                    "urysohn_check",
                    params,
                    w,
                )));
            }
            let round = over_round.unwrap_or(a.rounds().saturating_sub(1));
            let over = a.snapshot(round)?;
            let k = subset_bound.unwrap_or(a.subset_bound());
            Ok(Outcome::report(finite_injectivity_check(
                &a,
                &over,
                k,
                denom.unwrap_or(a.denom()),
            )?))
        }
        UrysohnCmd::Ma {
            space,
            x,
            y,
            f,
            delta,
        } => {
            let req = MaRequest {
                space: read_space(space)?,
                f: f.clone(),
                x: *x,
                y: *y,
                delta: delta.clone(),
            };
            let params = json!({ "x": x, "y": y, "f": f, "delta": fmt_rational(delta) });
            match ma_extension(&req) {
                Ok(o) => Ok(Outcome::report(space_report(
                    "ma_extension",
                    params,
                    &o.space,
                    json!({ "point": o.point }),
                ))),
                Err(e) => as_finding("ma_extension", params, e),
            }
        }
        UrysohnCmd::Uwmt { space, x, y, z } => {
            let s = read_space(space)?;
            let params = json!({ "x": x, "y": y, "z": z });
            match uwmt_extension(&s, *x, *y, z) {
                Ok(o) => Ok(Outcome::report(space_report(
                    "uwmt_extension",
                    params,
                    &o.space,
                    json!({ "copies": o.copies }),
                ))),
                Err(e) => as_finding("uwmt_extension", params, e),
            }
        }
        UrysohnCmd::Prop53 { space, state, z } => {
            let s = read_space(space)?;
            let params = json!({ "pairs": state.pairs, "eps": fmt_rational(&state.eps), "z": z });
            match prop53_extension(&s, &state.state(), *z) {
                Ok(o) => Ok(Outcome::report(space_report(
                    "prop53_extension",
                    params,
                    &o.space,
                    json!({ "point": o.point }),
                ))),
                Err(e) => as_finding("prop53_extension", params, e),
            }
        }
        UrysohnCmd::Bf { file, state, z } => {
            let a = load_approximant(file)?;
            let params = json!({ "pairs": state.pairs, "eps": fmt_rational(&state.eps), "z": z });
            match back_and_forth_extend(&a, &state.state(), *z) {
                Ok(st) => {
                    let r = WitnessReport::pass("back_and_forth", params)
                        .with_witness(json!({ "pairs": st.pairs, "eps": fmt_rational(&st.eps) }));
                    Ok(Outcome::report(r))
                }
                Err(e) => as_finding("back_and_forth", params, e),
            }
        }
        UrysohnCmd::Chain { r, s, diam } => {
            let params =
                json!({ "r": fmt_rational(r), "s": fmt_rational(s), "diam": fmt_rational(diam) });
            match injectivity_chain(r, s, diam) {
                Ok(c) => Ok(Outcome::report(space_report(
                    "injectivity_chain",
                    params,
                    &c,
                    json!({}),
                ))),
                Err(e) => as_finding("injectivity_chain", params, e),
            }
        }
        UrysohnCmd::Nonproper {
            space,
            x,
            z,
            lambda,
        } => {
            let s = read_space(space)?;
            let params = json!({ "x": x, "z": z, "lambda": fmt_rational(lambda) });
            match nonproper_witness(&s, *x, z, lambda) {
                Ok(o) => Ok(Outcome::report(space_report(
                    "nonproper_witness",
                    params,
                    &o.space,
                    json!({ "point": o.point }),
                ))),
                Err(e) => as_finding("nonproper_witness", params, e),
            }
        }
    }
}

fn weak(cmd: &WeakCmd) -> Result<Outcome> {
    match cmd {
        WeakCmd::Seminorm { l } => {
            let ls = l.load()?;
            let w = weak_seminorm(&ls);
            let r = WitnessReport::pass("weak_seminorm", json!({ "landmarks": ls.landmarks() }))
                .with_witness(seminorm_to_json(&w));
            Ok(Outcome::report(r))
        }
        WeakCmd::Proximity { l, a, b, eps } => {
            Ok(Outcome::report(proximity_test(a, b, &l.load()?, eps)?))
        }
        WeakCmd::Net { l, eps } => {
            let ls = l.load()?;
            let net = gromov_approximant(&ls, eps)?;
            let ok = net.verify(&ls, eps);
            let params = json!({ "landmarks": ls.landmarks(), "eps": fmt_rational(eps) });
            let w = json!({ "representatives": net.representatives });
            let r = WitnessReport::from_outcome("gromov_net", params, ok, w)
                .with_count("representatives", net.representatives.len() as u64);
            Ok(Outcome::report(r))
        }
        WeakCmd::Restrict { file, subset } => {
            let xi: KatetovFn = read_katetov(file)?;
            let r = restrict_katetov(&xi, subset)?;
            let rep = WitnessReport::pass(
                "restrict_katetov",
                json!({ "file": file, "subset": subset }),
            )
            .with_witness(katetov_to_json(&r));
            Ok(Outcome::report(rep))
        }
    }
}

fn rado(cmd: &RadoCmd) -> Result<Outcome> {
    match cmd {
        RadoCmd::Adj { i, j } => {
            let adj = rado_adjacent(*i, *j)?;
            let r = WitnessReport::pass("rado_adj", json!({ "i": i, "j": j }))
                .with_witness(json!({ "adjacent": adj, "distance": rado_metric(*i, *j) }));
            Ok(Outcome::report(r))
        }
        RadoCmd::Metric { vertices } => {
            let vs: Vec<u64> = vertices.clone().collect();
            let params = json!({ "vertices": format!("{}..{}", vertices.start, vertices.end) });
            let r = match rado_space(&vs) {
                Ok(_) => WitnessReport::pass("rado_metric", params),
                Err(Error::InvalidMetric(v)) => {
                    WitnessReport::fail("rado_metric", params, json!({ "violation": v.to_json() }))
                }
                Err(e) => return Err(e),
            };
            let edges = vs
                .iter()
                .enumerate()
                .flat_map(|(k, &a)| vs[k + 1..].iter().map(move |&b| (a, b)));
            let edges = edges.filter(|&(a, b)| rado_metric(a, b) == 1).count();
            Ok(Outcome::report(
                r.with_count("vertices", vs.len() as u64)
                    .with_count("edges", edges as u64),
            ))
        }
        RadoCmd::Witness { u, v } => {
            let w = rado_extension_witness(u, v)?;
            let ok = u.iter().all(|&x| rado_adjacent(w, x) == Ok(true))
                && v.iter().all(|&x| rado_adjacent(w, x) == Ok(false));
            let r = WitnessReport::from_outcome(
                "rado_witness",
                json!({ "u": u, "v": v }),
                ok,
                json!({ "w": w }),
            );
            Ok(Outcome::report(r))
        }
        RadoCmd::Basis { code, with, scan } => {
            let vertices: Vec<RadoPoint> = scan.clone().map(RadoPoint::Vertex).collect();
            match with {
                Some(q) => {
                    let mut sample = vertices;
                    sample.push(RadoPoint::Code(code.clone()));
                    sample.push(RadoPoint::Code(q.clone()));
                    if let Some(u) = code.union(q) {
                        sample.push(RadoPoint::Code(u));
                    }
                    Ok(Outcome::report(basis_refinement_check(code, q, &sample)?))
                }
                None => {
                    let members = vertices
                        .iter()
                        .filter_map(|x| match x {
                            RadoPoint::Vertex(v) => {
                                basis_member(code, x).ok().filter(|m| *m).map(|_| *v)
                            }
                            RadoPoint::Code(_) => None,
                        })
                        .collect::<Vec<u64>>();
                    let params = json!({ "code": code.to_string(), "scan": format!("{}..{}", scan.start, scan.end) });
                    let r = WitnessReport::pass("rado_basis", params)
                        .with_witness(json!({ "members": members }))
                        .with_count("members", members.len() as u64);
                    Ok(Outcome::report(r))
                }
            }
        }
    }
}
