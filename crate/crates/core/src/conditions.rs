//! Working Conditions I-VII on dual graphs, the seventeen forbidden
//! configurations on plumbing graphs, and the bad-part decomposition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{find_windows_i64, induced_occurrences, Convention, LinearGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `I`..`V`, `VI.a`..`VI.i` or `VII`.
    pub condition: String,
    pub witness: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WCReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl WCReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self { passed: violations.is_empty(), violations }
    }

    pub fn violates(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for WCReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return f.write_str("passed");
        }
        f.write_str("failed:")?;
        for v in &self.violations {
            write!(f, " {}[", v.condition)?;
            for (i, x) in v.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Adjusted-weight paths forbidden by condition VI.
pub const FORBIDDEN_ADJUSTED: [(&str, &[i64]); 9] = [
    ("a", &[1, 0, 0, 2]),
    ("b", &[1, 0, 0, 3]),
    ("c", &[1, 0, 0, 0, 3]),
    ("d", &[1, 1, 0, 0, 1, 2]),
    ("e", &[3, 1, 0, 0, 1]),
    ("f", &[1, 0, 1, 2]),
    ("g", &[1, 0, 1, 3]),
    ("h", &[1, 1, 0, 2]),
    ("i", &[1, 1, 0, 1, 1, 2]),
];

/// Bad-part shapes of condition VII: adjusted weights and the positions
/// that must be exactly the bad vertices.
pub const BAD_PART_SHAPES: [(&str, &[i64], &[usize]); 13] = [
    ("a", &[1, 0, 1], &[1]),
    ("b", &[1, 0, 2], &[1]),
    ("c", &[1, 0, 3], &[1]),
    ("d", &[1, 1, 1], &[1]),
    ("e", &[1, 1, 2], &[1]),
    ("f", &[1, 2, 1], &[1]),
    ("g", &[1, 0, 1, 0, 1], &[1, 3]),
    ("h", &[1, 0, 1, 0, 2], &[1, 3]),
    ("i", &[1, 0, 1, 1, 1], &[1, 3]),
    ("j", &[1, 0, 1, 1, 2], &[1, 3]),
    ("k", &[1, 1, 1, 1], &[1, 2]),
    ("l", &[1, 1, 1, 1, 1], &[1, 2, 3]),
    ("m", &[1, 1, 2, 1], &[1, 2]),
];

fn require(g: &LinearGraph, c: Convention) -> Result<()> {
    if g.convention() != c {
        return Err(Error::Convention { expected: c.name(), found: g.convention().name() });
    }
    Ok(())
}

/// Evaluates every condition on adjusted weights computed in `g`.
pub fn check_working_conditions(g: &LinearGraph) -> Result<WCReport> {
    require(g, Convention::Dual)?;
    let adj = g.adjusted_weights();
    let w = |v: VertexId| adj.get(v);
    let verts: Vec<VertexId> = g.vertices().collect();
    let bad = g.bad_vertices();
    let mut out = Vec::new();
    let push = |out: &mut Vec<Violation>, c: &str, wit: Vec<VertexId>| {
        out.push(Violation { condition: c.to_string(), witness: wit })
    };

    // I
    for &v in &verts {
        if g.weight(v) < 2 {
            push(&mut out, "I", vec![v]);
        }
    }

    // II
    for &v in &verts {
        if w(v) > 3 {
            push(&mut out, "II", vec![v]);
        }
    }
    let large: Vec<VertexId> = verts.iter().copied().filter(|&v| w(v) > 1).collect();
    if large.len() > 1 {
        push(&mut out, "II", large.clone());
    }

    // III
    for &v in &large {
        for &x in &bad {
            if w(x) == 1 && !g.adjacent(x, v) {
                push(&mut out, "III", vec![v, x]);
            }
        }
    }

    // IV
    let ones: Vec<(VertexId, VertexId)> = verts
        .iter()
        .filter(|&&u| w(u) == 1)
        .flat_map(|&u| {
            g.neighbors(u)
                .into_iter()
                .filter(move |&v| v > u && w(v) == 1)
                .map(move |v| (u, v))
        })
        .collect();
    for &v in &verts {
        if w(v) == 3 {
            for &(a, b) in &ones {
                push(&mut out, "IV", vec![v, a, b]);
            }
        }
    }

    // V
    for &(a, b) in &ones {
        for &x in &bad {
            if w(x) == 2 && !g.adjacent(x, a) && !g.adjacent(x, b) {
                push(&mut out, "V", vec![a, b, x]);
            }
        }
    }

    // VI
    for (id, pat) in FORBIDDEN_ADJUSTED {
        for (c, comp) in adj.components.iter().enumerate() {
            for s in find_windows_i64(comp, pat) {
                let wit = (s..s + pat.len()).map(|i| VertexId::new(c, i)).collect();
                push(&mut out, &format!("VI.{id}"), wit);
            }
        }
    }

    // VII
    if !bad.is_empty() && match_bad_part(g).is_none() {
        push(&mut out, "VII", bad.clone());
    }

    Ok(WCReport::from_violations(out))
}

/// The condition-VII copy containing all bad vertices: its shape id,
/// component and interval.
pub fn match_bad_part(g: &LinearGraph) -> Option<(&'static str, usize, usize, usize)> {
    let bad = g.bad_vertices();
    let first = *bad.first()?;
    let last = *bad.last()?;
    if first.component != last.component {
        return None;
    }
    let c = first.component;
    let (lo, hi) = (first.position.checked_sub(1)?, last.position + 1);
    let comp = &g.adjusted_weights().components[c];
    if hi >= comp.len() {
        return None;
    }
    let window = &comp[lo..=hi];
    let rel: BTreeSet<usize> = bad.iter().map(|v| v.position - lo).collect();
    let len = window.len();
    for (id, shape, circled) in BAD_PART_SHAPES {
        if shape.len() != len {
            continue;
        }
        let fwd: BTreeSet<usize> = circled.iter().copied().collect();
        let rev: BTreeSet<usize> = circled.iter().map(|&i| len - 1 - i).collect();
        if window == shape && rel == fwd {
            return Some((id, c, lo, hi));
        }
        if window.iter().eq(shape.iter().rev()) && rel == rev {
            return Some((id, c, lo, hi));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Forbidden configurations on the plumbing side

/// The seventeen configurations, plumbing magnitudes, ids `a`..`q`.
pub fn forbidden_configurations() -> Vec<(&'static str, LinearGraph)> {
    let table: [(&str, &[&[u32]]); 17] = [
        ("a", &[&[5, 2]]),
        ("b", &[&[6, 2, 2]]),
        ("c", &[&[2], &[2]]),
        ("d", &[&[3], &[2, 2]]),
        ("e", &[&[3, 2, 2, 3]]),
        ("f", &[&[3, 5, 3, 2]]),
        ("g", &[&[2, 2, 3, 5]]),
        ("h", &[&[4, 3, 2]]),
        ("i", &[&[3, 4, 2]]),
        ("j", &[&[4, 4, 2, 2]]),
        ("k", &[&[3, 4, 3, 3, 2]]),
        ("l", &[&[3, 3], &[2]]),
        ("m", &[&[3, 2, 3], &[3]]),
        ("n", &[&[4], &[4]]),
        ("o", &[&[4], &[3, 3]]),
        ("p", &[&[4], &[3, 2, 3]]),
        ("q", &[&[3, 3], &[3, 3]]),
    ];
    table
        .iter()
        .map(|(id, comps)| (*id, LinearGraph::plumbing(comps).expect("valid table")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub config: String,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check17Report {
    pub passed: bool,
    pub hits: Vec<Hit>,
}

/// Induced occurrences of any of `patterns` in `p`.
pub fn check_patterns(p: &LinearGraph, patterns: &[(&str, LinearGraph)]) -> Check17Report {
    let mut hits = Vec::new();
    for (id, pat) in patterns {
        for vertices in induced_occurrences(p, pat) {
            hits.push(Hit { config: id.to_string(), vertices });
        }
    }
    Check17Report { passed: hits.is_empty(), hits }
}

pub fn check_17(p: &LinearGraph) -> Result<Check17Report> {
    require(p, Convention::Plumbing)?;
    Ok(check_patterns(p, &forbidden_configurations()))
}

/// Like [`check_17`] but only answers pass/fail.
pub fn passes_17(p: &LinearGraph) -> bool {
    forbidden_configurations().iter().all(|(_, pat)| !crate::graphs::contains_induced(p, pat))
}

// ---------------------------------------------------------------------------
// Bad structure

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The adjacent pair whose shared coordinate is a screw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrewSlot {
    pub side: Side,
    /// `(v2, v3)` on the left, `(v_{k-2}, v_{k-3})` on the right.
    pub pair: (VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadStructure {
    pub shape: String,
    pub component: usize,
    pub bad_vertices: Vec<VertexId>,
    /// Inclusive position range within `component`.
    pub bad_part: (usize, usize),
    pub inner_bad_part: Vec<VertexId>,
    pub neck_vertices: Vec<VertexId>,
    pub extended_bad_part: (usize, usize),
    pub outside_part: Vec<VertexId>,
    pub screw_slots: Vec<ScrewSlot>,
}

impl BadStructure {
    pub fn bad_part_vertices(&self) -> Vec<VertexId> {
        (self.bad_part.0..=self.bad_part.1).map(|i| VertexId::new(self.component, i)).collect()
    }

    pub fn extended_vertices(&self) -> Vec<VertexId> {
        (self.extended_bad_part.0..=self.extended_bad_part.1)
            .map(|i| VertexId::new(self.component, i))
            .collect()
    }
}

/// `None` when there are no bad vertices; an error when the bad vertices
/// fit none of the condition-VII shapes.
pub fn bad_structure(g: &LinearGraph) -> Result<Option<BadStructure>> {
    require(g, Convention::Dual)?;
    let bad = g.bad_vertices();
    if bad.is_empty() {
        return Ok(None);
    }
    let (shape, c, lo, hi) = match_bad_part(g).ok_or_else(|| {
        Error::Inconsistent(format!("bad vertices of {g} do not form a recognised bad part"))
    })?;
    let (elo, ehi) = crate::embeddings::extend_bad_part(g, c, lo, hi);
    let len = g.components()[c].len();
    let v = |i| VertexId::new(c, i);
    let left_open = elo > 0;
    let right_open = ehi + 1 < len;
    let mut outside: BTreeSet<VertexId> =
        g.vertices().filter(|x| x.component != c || x.position < elo || x.position > ehi).collect();
    let mut screws = Vec::new();
    if left_open {
        outside.extend([v(elo), v(elo + 1), v(elo + 2)]);
        screws.push(ScrewSlot { side: Side::Left, pair: (v(elo + 2), v(elo + 3)) });
    }
    if right_open {
        outside.extend([v(ehi), v(ehi - 1), v(ehi - 2)]);
        screws.push(ScrewSlot { side: Side::Right, pair: (v(ehi - 2), v(ehi - 3)) });
    }
    Ok(Some(BadStructure {
        shape: shape.to_string(),
        component: c,
        bad_vertices: bad,
        bad_part: (lo, hi),
        inner_bad_part: (lo + 1..hi).map(v).collect(),
        neck_vertices: vec![v(lo), v(hi)],
        extended_bad_part: (elo, ehi),
        outside_part: outside.into_iter().collect(),
        screw_slots: screws,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dualize;

    fn d(s: &str) -> LinearGraph {
        LinearGraph::parse(s, Convention::Dual).unwrap()
    }

    fn p(s: &str) -> LinearGraph {
        LinearGraph::parse(s, Convention::Plumbing).unwrap()
    }

    #[test]
    fn wc_examples() {
        assert!(check_working_conditions(&d("4,2,2,2,2,2")).unwrap().passed);
        let r = check_working_conditions(&d("2,2,2,3")).unwrap();
        assert!(r.violates("VI.a"), "{r}");
        assert!(check_working_conditions(&d("2")).unwrap().passed);
        assert!(check_working_conditions(&p("2")).is_err());
    }

    #[test]
    fn check17_examples() {
        assert!(check_17(&p("3,3,3,3")).unwrap().passed);
        let r = check_17(&p("5,2")).unwrap();
        assert!(!r.passed && r.hits.iter().any(|h| h.config == "a"));
        let r = check_17(&p("4;4")).unwrap();
        assert!(!r.passed);
        assert_eq!(r.hits.iter().map(|h| h.config.as_str()).collect::<Vec<_>>(), vec!["n"]);
        assert!(passes_17(&p("4,4")));
    }

    #[test]
    fn bad_structure_small_chain() {
        let s = bad_structure(&d("2,2,2")).unwrap().unwrap();
        assert_eq!(s.shape, "a");
        assert_eq!(s.bad_part, (0, 2));
        assert_eq!(s.inner_bad_part, vec![VertexId::new(0, 1)]);
        assert_eq!(s.neck_vertices, vec![VertexId::new(0, 0), VertexId::new(0, 2)]);
        assert_eq!(s.extended_bad_part, (0, 2));
        assert!(s.outside_part.is_empty());
        assert!(s.screw_slots.is_empty());
        assert!(bad_structure(&d("2,2")).unwrap().is_none());
    }

    #[test]
    fn bad_structure_of_dual_22422() {
        let g = dualize(&p("2,2,4,2,2"));
        assert_eq!(g, d("4,2,4"));
        // adjusted 3,0,3: the middle vertex is bad but fits no shape, and
        // the graph breaks condition II
        assert!(bad_structure(&g).is_err());
        assert!(check_working_conditions(&g).unwrap().violates("II"));
        assert!(!passes_17(&p("2,2,4,2,2")));
    }

    #[test]
    fn screw_slot_after_two_zeros() {
        // 2,3,2,2 on the left of the bad part 2,2,3
        let g = d("2,3,2,2,3,2,3");
        let s = bad_structure(&g).unwrap().unwrap();
        assert_eq!(s.bad_part, (4, 6));
        assert_eq!(s.extended_bad_part, (1, 6));
        assert_eq!(s.screw_slots.len(), 1);
        assert_eq!(s.screw_slots[0].pair, (VertexId::new(0, 3), VertexId::new(0, 4)));
        let outside: Vec<usize> = s.outside_part.iter().map(|v| v.position).collect();
        assert_eq!(outside, vec![0, 1, 2, 3]);
    }
}
