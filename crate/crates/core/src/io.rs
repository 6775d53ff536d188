//! JSON file formats. Rationals are written as lowest-terms strings `"p/q"`
//! (or `"p"`), so parse followed by serialize is the identity on canonical input.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::banach::{RadialProfile, StepFn1D, StepFn2D};
use crate::error::{Error, Result};
use crate::katetov::KatetovFn;
use crate::metric::MetricSpace;
use crate::rational::{fmt_rational, fmt_vec, parse_rational, Rational};
use crate::urysohn::{Approximant, Realization};
use crate::weak::WeakSeminorm;

fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn parse_matrix(m: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|r| parse_vec(r)).collect()
}

fn fmt_matrix(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| fmt_vec(r)).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub diam: String,
    pub d: Vec<Vec<String>>,
}

impl SpaceFile {
    pub fn from_space(s: &MetricSpace) -> Self {
        SpaceFile {
            points: s.labels().to_vec(),
            diam: fmt_rational(s.diam_bound()),
            d: fmt_matrix(s.matrix()),
        }
    }

    /// Parsed but unvalidated matrix and bound.
    pub fn parts(&self) -> Result<(Vec<Vec<Rational>>, Rational)> {
        Ok((parse_matrix(&self.d)?, parse_rational(&self.diam)?))
    }

    pub fn to_space(&self) -> Result<MetricSpace> {
        let (d, diam) = self.parts()?;
        MetricSpace::new(self.points.clone(), d, diam)
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json(path: &Path, v: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn space_to_json(s: &MetricSpace) -> Value {
    serde_json::to_value(SpaceFile::from_space(s)).expect("plain data")
}

pub fn space_from_json(v: &Value) -> Result<MetricSpace> {
    let f: SpaceFile = serde_json::from_value(v.clone())?;
    f.to_space()
}

pub fn read_space(path: &Path) -> Result<MetricSpace> {
    space_from_json(&read_json(path)?)
}

/// Parsed matrix and bound without validation, for callers that report on
/// invalid input instead of rejecting it.
pub fn read_matrix(path: &Path) -> Result<(Vec<Vec<Rational>>, Rational)> {
    let f: SpaceFile = serde_json::from_value(read_json(path)?)?;
    f.parts()
}

pub fn katetov_to_json(xi: &KatetovFn) -> Value {
    serde_json::json!({ "space": space_to_json(xi.space()), "values": fmt_vec(xi.values()) })
}

/// `{"space": <inline object or path>, "values": [...]}`. A relative path is
/// resolved against `base_dir`.
pub fn katetov_from_json(v: &Value, base_dir: &Path) -> Result<(Arc<MetricSpace>, Vec<Rational>)> {
    let space = match &v["space"] {
        Value::String(p) => {
            let p = PathBuf::from(p);
            read_space(&if p.is_relative() { base_dir.join(p) } else { p })?
        }
        obj @ Value::Object(_) => space_from_json(obj)?,
        _ => return Err(Error::Parse("\"space\" must be an object or a path".into())),
    };
    let values: Vec<String> = serde_json::from_value(v["values"].clone())?;
    Ok((Arc::new(space), parse_vec(&values)?))
}

/// Reads a Katetov function file without checking the Katetov inequalities.
pub fn read_katetov_values(path: &Path) -> Result<(Arc<MetricSpace>, Vec<Rational>)> {
    let dir = path.parent().unwrap_or(Path::new("."));
    katetov_from_json(&read_json(path)?, dir)
}

pub fn read_katetov(path: &Path) -> Result<KatetovFn> {
    let (space, values) = read_katetov_values(path)?;
    KatetovFn::new(space, values)
}

#[derive(Debug, Serialize, Deserialize)]
struct ApproximantFile {
    points: Vec<String>,
    diam: String,
    d: Vec<Vec<String>>,
    denom: u64,
    subset_bound: usize,
    rounds: u32,
    round_sizes: Vec<usize>,
    log: Vec<Value>,
}

pub fn approximant_to_json(a: &Approximant) -> Value {
    let n = a.len();
    let d = (0..n)
        .map(|i| (0..n).map(|j| fmt_rational(&a.dist(i, j))).collect())
        .collect();
    let f = ApproximantFile {
        points: a.labels().to_vec(),
        diam: fmt_rational(&a.diam_bound()),
        d,
        denom: a.denom(),
        subset_bound: a.subset_bound(),
        rounds: a.rounds(),
        round_sizes: a.round_sizes().to_vec(),
        log: a.log().iter().map(|r| r.to_json(a.denom())).collect(),
    };
    serde_json::to_value(f).expect("plain data")
}

/// Loads an approximant with O(n^2) structural checks; no triple scan.
pub fn approximant_from_json(v: &Value) -> Result<Approximant> {
    let f: ApproximantFile = serde_json::from_value(v.clone())?;
    let d = parse_matrix(&f.d)?;
    let diam = parse_rational(&f.diam)?;
    let log = f
        .log
        .iter()
        .map(|e| Realization::from_json(e, f.denom))
        .collect::<Result<_>>()?;
    Approximant::from_parts(
        f.points,
        &d,
        &diam,
        f.denom,
        f.subset_bound,
        f.rounds,
        f.round_sizes,
        log,
    )
}

#[derive(Debug, Serialize, Deserialize)]
struct Step2File {
    x_breaks: Vec<String>,
    y_breaks: Vec<String>,
    values: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Step1File {
    breaks: Vec<String>,
    values: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProfileFile {
    breakpoints: Vec<String>,
    values: Vec<String>,
    tail_slope: String,
}

pub fn step2_from_json(v: &Value) -> Result<StepFn2D> {
    let f: Step2File = serde_json::from_value(v.clone())?;
    StepFn2D::new(
        parse_vec(&f.x_breaks)?,
        parse_vec(&f.y_breaks)?,
        parse_matrix(&f.values)?,
    )
}

pub fn step1_from_json(v: &Value) -> Result<StepFn1D> {
    let f: Step1File = serde_json::from_value(v.clone())?;
    StepFn1D::new(parse_vec(&f.breaks)?, parse_vec(&f.values)?)
}

pub fn step1_to_json(f: &StepFn1D) -> Value {
    serde_json::json!({ "breaks": fmt_vec(&f.breaks), "values": fmt_vec(&f.values) })
}

pub fn profile_from_json(v: &Value) -> Result<RadialProfile> {
    let f: ProfileFile = serde_json::from_value(v.clone())?;
    RadialProfile::new(
        parse_vec(&f.breakpoints)?,
        parse_vec(&f.values)?,
        parse_rational(&f.tail_slope)?,
    )
}

/// Seminorm matrices use the metric-space layout.
pub fn seminorm_to_json(w: &WeakSeminorm) -> Value {
    let s = w.landmarks.space();
    serde_json::json!({
        "points": s.labels(),
        "diam": fmt_rational(s.diam_bound()),
        "d": fmt_matrix(&w.matrix),
        "landmarks": w.landmarks.landmarks(),
    })
}
