//! Weighted linear graphs: disjoint unions of weighted paths.
//!
//! Weights are always stored as positive magnitudes. The [`Convention`] tag
//! records whether the graph is a plumbing graph (actual weights `-w`) or a
//! dual-side graph (actual weights `+w`).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Plumbing,
    Dual,
}

impl Convention {
    pub fn flipped(self) -> Self {
        match self {
            Convention::Plumbing => Convention::Dual,
            Convention::Dual => Convention::Plumbing,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Plumbing => "plumbing",
            Convention::Dual => "dual",
        }
    }
}

/// `(component index, position index)`, both zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub component: usize,
    pub position: usize,
}

impl VertexId {
    pub const fn new(component: usize, position: usize) -> Self {
        Self { component, position }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.component, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearGraph {
    components: Vec<Vec<u32>>,
    convention: Convention,
}

pub type Pattern = LinearGraph;

impl LinearGraph {
    pub fn new(components: Vec<Vec<u32>>, convention: Convention) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidChain(format!("component {i} is empty")));
            }
            if let Some(w) = c.iter().find(|&&w| w < 2) {
                return Err(Error::InvalidChain(format!(
                    "component {i} has weight {w}; weights must be at least 2"
                )));
            }
        }
        Ok(Self { components, convention })
    }

    pub fn empty(convention: Convention) -> Self {
        Self { components: Vec::new(), convention }
    }

    pub fn chain(weights: &[u32], convention: Convention) -> Result<Self> {
        Self::new(vec![weights.to_vec()], convention)
    }

    pub fn plumbing(components: &[&[u32]]) -> Result<Self> {
        Self::new(components.iter().map(|c| c.to_vec()).collect(), Convention::Plumbing)
    }

    pub fn dual(components: &[&[u32]]) -> Result<Self> {
        Self::new(components.iter().map(|c| c.to_vec()).collect(), Convention::Dual)
    }

    /// Parses `-3,-2,-3;-4`. Leading minus signs are dropped.
    pub fn parse(s: &str, convention: Convention) -> Result<Self> {
        let mut components = Vec::new();
        let mut column = 1;
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Self::empty(convention));
        }
        for comp in trimmed.split(';') {
            let mut weights = Vec::new();
            let mut col = column;
            for tok in comp.split(',') {
                let t = tok.trim();
                let digits = t.strip_prefix('-').unwrap_or(t);
                let w: u32 = digits.parse().map_err(|_| Error::Parse {
                    column: col,
                    message: format!("bad weight `{t}`"),
                })?;
                if w < 2 {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("weight `{t}` has magnitude below 2"),
                    });
                }
                weights.push(w);
                col += tok.len() + 1;
            }
            components.push(weights);
            column += comp.len() + 1;
        }
        Self::new(components, convention)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn weight(&self, v: VertexId) -> u32 {
        self.components[v.component][v.position]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.len()).map(move |i| VertexId::new(c, i)))
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        let len = self.components[v.component].len();
        match (v.position > 0, v.position + 1 < len) {
            (true, true) => 2,
            (false, false) => 0,
            _ => 1,
        }
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) <= 1
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        u.component == v.component && u.position.abs_diff(v.position) == 1
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let len = self.components[v.component].len();
        let mut out = Vec::with_capacity(2);
        if v.position > 0 {
            out.push(VertexId::new(v.component, v.position - 1));
        }
        if v.position + 1 < len {
            out.push(VertexId::new(v.component, v.position + 1));
        }
        out
    }

    /// Flat index of `v` in component-major order.
    pub fn flat_index(&self, v: VertexId) -> usize {
        self.components[..v.component].iter().map(Vec::len).sum::<usize>() + v.position
    }

    pub fn vertex_at(&self, mut flat: usize) -> VertexId {
        for (c, comp) in self.components.iter().enumerate() {
            if flat < comp.len() {
                return VertexId::new(c, flat);
            }
            flat -= comp.len();
        }
        panic!("flat index out of range")
    }

    pub fn total_weight(&self) -> u64 {
        self.components.iter().flatten().map(|&w| w as u64).sum()
    }

    /// The induced subgraph on `vertices`: maximal runs of consecutive chosen
    /// vertices become components, listed in host order.
    pub fn induced(&self, vertices: &[VertexId]) -> LinearGraph {
        let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let mut components: Vec<Vec<u32>> = Vec::new();
        let mut prev: Option<VertexId> = None;
        for &v in &set {
            let extend = matches!(prev, Some(p) if self.adjacent(p, v));
            if extend {
                components.last_mut().expect("run started").push(self.weight(v));
            } else {
                components.push(vec![self.weight(v)]);
            }
            prev = Some(v);
        }
        LinearGraph { components, convention: self.convention }
    }

    /// Disjoint union; the other graph's components follow ours.
    pub fn union(&self, other: &LinearGraph) -> LinearGraph {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        LinearGraph { components, convention: self.convention }
    }

    /// Each component replaced by the smaller of itself and its reversal,
    /// then components sorted.
    pub fn canonical_form(&self) -> LinearGraph {
        let mut components: Vec<Vec<u32>> = self
            .components
            .iter()
            .map(|c| {
                let r: Vec<u32> = c.iter().rev().copied().collect();
                if r < *c {
                    r
                } else {
                    c.clone()
                }
            })
            .collect();
        components.sort();
        LinearGraph { components, convention: self.convention }
    }

    pub fn is_isomorphic(&self, other: &LinearGraph) -> bool {
        self.convention == other.convention && self.canonical_form() == other.canonical_form()
    }

    pub fn adjusted_weights(&self) -> AdjustedView {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                (0..comp.len())
                    .map(|i| {
                        let v = VertexId::new(c, i);
                        self.weight(v) as i64 - self.degree(v) as i64
                    })
                    .collect()
            })
            .collect();
        AdjustedView { components }
    }

    /// Vertices adjacent to two distinct neighbours of positive adjusted
    /// weight.
    pub fn bad_vertices(&self) -> Vec<VertexId> {
        let adj = self.adjusted_weights();
        self.vertices()
            .filter(|&v| {
                let n = self.neighbors(v);
                n.len() == 2 && n.iter().all(|&u| adj.get(u) > 0)
            })
            .collect()
    }
}

impl fmt::Display for LinearGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.convention {
            Convention::Plumbing => "-",
            Convention::Dual => "",
        };
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, w) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{sign}{w}")?;
            }
        }
        Ok(())
    }
}

/// Per-vertex adjusted weights `w'(v) = w(v) − d(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjustedView {
    pub components: Vec<Vec<i64>>,
}

impl AdjustedView {
    pub fn get(&self, v: VertexId) -> i64 {
        self.components[v.component][v.position]
    }
}

impl fmt::Display for AdjustedView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, w) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

/// One placement of a pattern component: a window of a host component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Placement {
    component: usize,
    start: usize,
    end: usize,
}

impl Placement {
    fn compatible(&self, other: &Placement) -> bool {
        self.component != other.component || self.end + 1 < other.start || other.end + 1 < self.start
    }
}

fn windows_matching(host: &[u32], pat: &[u32]) -> Vec<usize> {
    if pat.len() > host.len() {
        return Vec::new();
    }
    (0..=host.len() - pat.len())
        .filter(|&s| {
            let w = &host[s..s + pat.len()];
            w == pat || w.iter().eq(pat.iter().rev())
        })
        .collect()
}

fn placements(host: &LinearGraph, pattern: &LinearGraph) -> Vec<Vec<Placement>> {
    pattern
        .components
        .iter()
        .map(|pc| {
            host.components
                .iter()
                .enumerate()
                .flat_map(|(c, hc)| {
                    windows_matching(hc, pc).into_iter().map(move |s| Placement {
                        component: c,
                        start: s,
                        end: s + pc.len() - 1,
                    })
                })
                .collect()
        })
        .collect()
}

/// Visits every assignment of pattern components to pairwise separated host
/// windows. The visitor returns `false` to stop early.
fn for_each_occurrence(
    host: &LinearGraph,
    pattern: &LinearGraph,
    visit: &mut dyn FnMut(&[Placement]) -> bool,
) {
    if pattern.convention != host.convention {
        return;
    }
    // Sort pattern components so that identical ones are consecutive; those
    // are then placed in increasing order only.
    let mut order: Vec<usize> = (0..pattern.components.len()).collect();
    let canon: Vec<Vec<u32>> = pattern.canonical_form().components;
    let key = |i: usize| {
        let c = &pattern.components[i];
        let r: Vec<u32> = c.iter().rev().copied().collect();
        if r < *c {
            r
        } else {
            c.clone()
        }
    };
    order.sort_by_key(|&i| key(i));
    debug_assert_eq!(order.iter().map(|&i| key(i)).collect::<Vec<_>>(), canon);
    let all = placements(host, pattern);
    let cand: Vec<&Vec<Placement>> = order.iter().map(|&i| &all[i]).collect();
    let same_as_prev: Vec<bool> = (0..order.len())
        .map(|j| j > 0 && key(order[j]) == key(order[j - 1]))
        .collect();

    fn rec(
        j: usize,
        cand: &[&Vec<Placement>],
        same_as_prev: &[bool],
        chosen: &mut Vec<(usize, Placement)>,
        visit: &mut dyn FnMut(&[Placement]) -> bool,
    ) -> bool {
        if j == cand.len() {
            let ps: Vec<Placement> = chosen.iter().map(|&(_, p)| p).collect();
            return visit(&ps);
        }
        let min_idx = if same_as_prev[j] { chosen.last().map(|&(i, _)| i + 1).unwrap_or(0) } else { 0 };
        for (idx, p) in cand[j].iter().enumerate().skip(min_idx) {
            if chosen.iter().all(|(_, q)| p.compatible(q)) {
                chosen.push((idx, *p));
                let go_on = rec(j + 1, cand, same_as_prev, chosen, visit);
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let mut chosen = Vec::new();
    rec(0, &cand, &same_as_prev, &mut chosen, visit);
}

fn placement_vertices(ps: &[Placement]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = ps
        .iter()
        .flat_map(|p| (p.start..=p.end).map(move |i| VertexId::new(p.component, i)))
        .collect();
    out.sort();
    out
}

/// True iff some vertex subset of `host` induces a graph isomorphic to
/// `pattern`.
pub fn contains_induced(host: &LinearGraph, pattern: &Pattern) -> bool {
    if pattern.is_empty() {
        return host.convention == pattern.convention;
    }
    let mut found = false;
    for_each_occurrence(host, pattern, &mut |_| {
        found = true;
        false
    });
    found
}

/// All distinct vertex subsets of `host` inducing a copy of `pattern`.
pub fn induced_occurrences(host: &LinearGraph, pattern: &Pattern) -> Vec<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    for_each_occurrence(host, pattern, &mut |ps| {
        out.insert(placement_vertices(ps));
        true
    });
    out.into_iter().collect()
}

/// Number of distinct vertex subsets inducing a copy of at least one of the
/// patterns.
pub fn count_induced(host: &LinearGraph, patterns: &[Pattern]) -> usize {
    let mut out = BTreeSet::new();
    for pat in patterns {
        for_each_occurrence(host, pat, &mut |ps| {
            out.insert(placement_vertices(ps));
            true
        });
    }
    out.len()
}

/// Positions of windows of `seq` equal to `pattern` read in either
/// direction. Used for adjusted-weight pattern searches along a path.
pub(crate) fn find_windows_i64(seq: &[i64], pattern: &[i64]) -> Vec<usize> {
    if pattern.len() > seq.len() {
        return Vec::new();
    }
    (0..=seq.len() - pattern.len())
        .filter(|&s| {
            let w = &seq[s..s + pattern.len()];
            w == pattern || w.iter().eq(pattern.iter().rev())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LinearGraph {
        LinearGraph::parse(s, Convention::Plumbing).unwrap()
    }

    fn d(s: &str) -> LinearGraph {
        LinearGraph::parse(s, Convention::Dual).unwrap()
    }

    #[test]
    fn adjusted_examples() {
        assert_eq!(d("4,2,2,2,2,2").adjusted_weights().components, vec![vec![3, 0, 0, 0, 0, 1]]);
        assert_eq!(d("2").adjusted_weights().components, vec![vec![2]]);
        assert_eq!(d("2,2,2,3").adjusted_weights().components, vec![vec![1, 0, 0, 2]]);
    }

    #[test]
    fn bad_vertex_examples() {
        assert_eq!(d("2,2,2").bad_vertices(), vec![VertexId::new(0, 1)]);
        assert!(d("2,2").bad_vertices().is_empty());
        // adjusted 1,1,0,1: the third vertex sits between two positive ones
        assert_eq!(d("2,3,2,2").bad_vertices(), vec![VertexId::new(0, 2)]);
        assert!(d("2,2,2,2").bad_vertices().is_empty());
    }

    #[test]
    fn containment_examples() {
        assert!(contains_induced(&p("3,3,3,3"), &p("3,3")));
        assert!(!contains_induced(&p("3,2,3"), &p("3,3")));
        assert!(contains_induced(&p("3,2,2,2"), &p("3;2,2")));
        assert!(!contains_induced(&p("3,2,2"), &p("3;2,2")));
        assert!(!contains_induced(&p("3,3"), &d("3,3")));
    }

    #[test]
    fn count_examples() {
        let pats = [p("4"), p("3,3"), p("3,2,3")];
        assert_eq!(count_induced(&p("3,3,3,3"), &pats), 3);
        assert_eq!(count_induced(&p("4"), &pats), 1);
        assert_eq!(count_induced(&p("3,2,3,3"), &pats), 2);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p("5,2").canonical_form(), p("2,5"));
        assert_eq!(p("3;2,2").canonical_form(), p("2,2;3").canonical_form());
        assert_eq!(p("3,2,2").canonical_form(), p("2,2,3").canonical_form());
    }

    #[test]
    fn parse_errors_point_at_column() {
        match LinearGraph::parse("3,x", Convention::Plumbing) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LinearGraph::parse("3,1", Convention::Plumbing).is_err());
        assert_eq!(p("-3,-2,-3;-4").components(), &[vec![3, 2, 3], vec![4]]);
        assert_eq!(p("-3,-2,-3;-4").to_string(), "-3,-2,-3;-4");
    }

    #[test]
    fn induced_keeps_only_internal_edges() {
        let g = p("3,2,2,2");
        let s = [VertexId::new(0, 0), VertexId::new(0, 2), VertexId::new(0, 3)];
        assert_eq!(g.induced(&s), p("3;2,2"));
    }

    #[test]
    fn occurrences_dedup_symmetric_patterns() {
        // [3,3] in [3,3] matches forwards and backwards but is one subset.
        assert_eq!(induced_occurrences(&p("3,3"), &p("3,3")).len(), 1);
        // {[4],[4]} in [4,2,4]: one subset despite two assignments.
        assert_eq!(induced_occurrences(&p("4,2,4"), &p("4;4")).len(), 1);
        assert_eq!(induced_occurrences(&p("4,4"), &p("4;4")).len(), 0);
    }
}
