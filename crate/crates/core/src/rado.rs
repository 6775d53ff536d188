//! The BIT model of the Rado graph with its `{0,1,2}`-valued path metric, and
//! finitely coded basic sets of the compactification `R ∪ {1,2}^R`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rational::int;
use crate::report::WitnessReport;

/// `i ~ j` iff bit `min(i,j)` of `max(i,j)` is set.
pub fn rado_adjacent(i: u64, j: u64) -> Result<bool> {
    if i == j {
        return Err(Error::SelfLoop(i));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    Ok(lo < 64 && (hi >> lo) & 1 == 1)
}

/// 0 on the diagonal, 1 on edges, 2 otherwise.
pub fn rado_metric(i: u64, j: u64) -> u8 {
    match rado_adjacent(i, j) {
        Err(_) => 0,
        Ok(true) => 1,
        Ok(false) => 2,
    }
}

/// The induced metric space on `vertices` with diameter bound 2.
pub fn rado_space(vertices: &[u64]) -> Result<MetricSpace> {
    let d = vertices
        .iter()
        .map(|&a| {
            vertices
                .iter()
                .map(|&b| int(rado_metric(a, b).into()))
                .collect()
        })
        .collect();
    let labels = vertices.iter().map(|v| v.to_string()).collect();
    MetricSpace::new(labels, d, int(2))
}

/// `w = sum_{u in U} 2^u + 2^N` with `N = max(U ∪ V) + 1` (`N = 0` when both
/// are empty): adjacent to every `u in U` and to no `v in V`.
pub fn rado_extension_witness(u: &[u64], v: &[u64]) -> Result<u64> {
    if let Some(x) = u.iter().find(|x| v.contains(x)) {
        return Err(Error::InvalidArgument(format!(
            "vertex {x} is in both U and V"
        )));
    }
    let n = u.iter().chain(v).max().map_or(0, |m| m + 1);
    if n >= 63 {
        return Err(Error::InvalidArgument(format!(
            "witness needs bit {n}, beyond 64-bit vertices"
        )));
    }
    Ok(u.iter().fold(1u64 << n, |w, &x| w | (1u64 << x)))
}

/// A finite partial map from vertices to `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisCode(pub BTreeMap<u64, u8>);

impl BasisCode {
    pub fn new(map: BTreeMap<u64, u8>) -> Result<Self> {
        if let Some((a, v)) = map.iter().find(|(_, v)| !matches!(v, 1 | 2)) {
            return Err(Error::InvalidArgument(format!(
                "code value {v} at {a} is not 1 or 2"
            )));
        }
        Ok(BasisCode(map))
    }

    pub fn extends(&self, p: &BasisCode) -> bool {
        p.0.iter().all(|(a, v)| self.0.get(a) == Some(v))
    }

    pub fn compatible(&self, q: &BasisCode) -> bool {
        self.0
            .iter()
            .all(|(a, v)| q.0.get(a).is_none_or(|w| w == v))
    }

    /// `p ∪ q`, or `None` when they disagree somewhere.
    pub fn union(&self, q: &BasisCode) -> Option<BasisCode> {
        self.compatible(q).then(|| {
            let mut m = self.0.clone();
            m.extend(q.0.iter().map(|(a, v)| (*a, *v)));
            BasisCode(m)
        })
    }
}

impl FromStr for BasisCode {
    type Err = Error;

    /// `"0:1,1:2"`; the empty string is the empty code.
    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse(format!("bad code entry {part:?}"));
            let (a, v) = part.split_once(':').ok_or_else(bad)?;
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let v: u8 = v.trim().parse().map_err(|_| bad())?;
            if map.insert(a, v).is_some() {
                return Err(Error::Parse(format!("vertex {a} coded twice")));
            }
        }
        BasisCode::new(map)
    }
}

impl fmt::Display for BasisCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, v)| format!("{a}:{v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// A point of `R ∪ {1,2}^R`, the latter known only through finite data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadoPoint {
    Vertex(u64),
    Code(BasisCode),
}

/// Membership in `B_p`. A vertex `b` is in `B_p` iff `d(a, b) = p(a)` on the
/// domain of `p`; a code is in `B_p` iff it extends `p`, which is only
/// decided when its domain covers `p`'s.
pub fn basis_member(p: &BasisCode, point: &RadoPoint) -> Result<bool> {
    match point {
        RadoPoint::Vertex(b) => Ok(p.0.iter().all(|(&a, &v)| rado_metric(a, *b) == v)),
        RadoPoint::Code(q) => {
            if let Some(&a) = p.0.keys().find(|a| !q.0.contains_key(a)) {
                return Err(Error::UndeterminedMembership { vertex: a });
            }
            Ok(q.extends(p))
        }
    }
}

/// On the sample: `B_q ⊆ B_p` when `q` extends `p`, and `B_{p∪q} = B_p ∩ B_q`
/// when they are compatible. Conflicting codes must have empty vertex-level
/// intersection. Codes in the sample that leave membership undetermined are
/// counted and skipped.
pub fn basis_refinement_check(
    p: &BasisCode,
    q: &BasisCode,
    sample: &[RadoPoint],
) -> Result<WitnessReport> {
    let params = json!({ "p": p.to_string(), "q": q.to_string(), "sample": sample.len() });
    let mut skipped = 0u64;
    let mut checked = 0u64;
    let member = |c: &BasisCode, x: &RadoPoint| basis_member(c, x);
    let union = p.union(q);
    let mode = if q.extends(p) {
        "containment"
    } else if union.is_some() {
        "intersection"
    } else {
        "conflict"
    };
    for x in sample {
        let (ip, iq) = match (member(p, x), member(q, x)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::UndeterminedMembership { .. }), _)
            | (_, Err(Error::UndeterminedMembership { .. })) => {
                skipped += 1;
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        checked += 1;
        let bad = match (&union, mode) {
            (_, "containment") => iq && !ip,
            (Some(u), _) => match member(u, x) {
                Ok(iu) => iu != (ip && iq),
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            },
            (None, _) => matches!(x, RadoPoint::Vertex(_)) && ip && iq,
        };
        if bad {
            let w = json!({ "mode": mode, "point": point_json(x), "in_p": ip, "in_q": iq });
            return Ok(WitnessReport::fail("rado_basis", params, w)
                .with_count("checked", checked)
                .with_count("skipped", skipped));
        }
    }
    Ok(WitnessReport::pass("rado_basis", params)
        .with_witness(json!({ "mode": mode }))
        .with_count("checked", checked)
        .with_count("skipped", skipped)
        .with_caveat("checks base axioms on a finite sample only"))
}

fn point_json(x: &RadoPoint) -> serde_json::Value {
    match x {
        RadoPoint::Vertex(v) => json!({ "vertex": v }),
        RadoPoint::Code(c) => json!({ "code": c.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_golden() {
        // 1 = 0b1, 2 = 0b10
        assert!(rado_adjacent(0, 1).unwrap());
        assert!(rado_adjacent(1, 2).unwrap());
        assert!(!rado_adjacent(0, 2).unwrap());
        assert_eq!(rado_adjacent(3, 3).unwrap_err(), Error::SelfLoop(3));
        assert_eq!(rado_metric(5, 5), 0);
        assert_eq!(rado_metric(0, 1), 1);
        assert_eq!(rado_metric(0, 2), 2);
    }

    #[test]
    fn witnesses() {
        assert_eq!(rado_extension_witness(&[0], &[1]).unwrap(), 5);
        assert_eq!(rado_extension_witness(&[], &[]).unwrap(), 1);
        let w = rado_extension_witness(&[1, 3], &[0, 2]).unwrap();
        assert_eq!(w, 26);
        for u in [1, 3] {
            assert!(rado_adjacent(w, u).unwrap());
        }
        for v in [0, 2] {
            assert!(!rado_adjacent(w, v).unwrap());
        }
        assert!(rado_extension_witness(&[1], &[1]).is_err());
    }

    #[test]
    fn small_space_is_metric() {
        let vs: Vec<u64> = (0..32).collect();
        rado_space(&vs).unwrap();
    }

    #[test]
    fn codes() {
        let p: BasisCode = "0:1".parse().unwrap();
        let q: BasisCode = "0:1,1:2".parse().unwrap();
        assert_eq!(q.to_string(), "0:1,1:2");
        assert!(basis_member(&BasisCode::default(), &RadoPoint::Vertex(9)).unwrap());
        assert!(basis_member(&p, &RadoPoint::Vertex(1)).unwrap());
        assert!(basis_member(&p, &RadoPoint::Code(q.clone())).unwrap());
        let r: BasisCode = "0:2".parse().unwrap();
        assert!(!basis_member(&p, &RadoPoint::Code(r)).unwrap());
        assert_eq!(
            basis_member(&q, &RadoPoint::Code(p.clone())).unwrap_err(),
            Error::UndeterminedMembership { vertex: 1 }
        );
        assert!("0:3".parse::<BasisCode>().is_err());
    }

    #[test]
    fn refinement() {
        let sample: Vec<RadoPoint> = (0..64).map(RadoPoint::Vertex).collect();
        let p: BasisCode = "0:1".parse().unwrap();
        let q: BasisCode = "1:2".parse().unwrap();
        assert!(basis_refinement_check(&p, &q, &sample).unwrap().is_pass());
        let pq = p.union(&q).unwrap();
        assert!(basis_refinement_check(&p, &pq, &sample).unwrap().is_pass());
        let r: BasisCode = "0:2".parse().unwrap();
        assert!(basis_refinement_check(&p, &r, &sample).unwrap().is_pass());
    }
}
