//! Embeddings of dual graphs into the standard lattice `Z^n`.
//!
//! An embedding is a matrix whose rows are the vertex vectors. Two
//! embeddings are identified when they differ by a signed permutation of
//! coordinates, i.e. of columns. The canonical representative normalises
//! every column so that its first nonzero entry is positive and sorts the
//! columns lexicographically in decreasing order. The search builds that
//! representative directly, one row at a time.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contfrac::ChainWeights;
use crate::error::{Error, Result};
use crate::graphs::{Convention, LinearGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    graph: LinearGraph,
    dim: usize,
    /// One vector per vertex, in flat (component-major) vertex order.
    vectors: Vec<Vec<i32>>,
}

impl Embedding {
    /// Validates the pairings; full support is not required here.
    pub fn new(graph: LinearGraph, dim: usize, vectors: Vec<Vec<i32>>) -> Result<Self> {
        let e = Self { graph, dim, vectors };
        e.check()?;
        Ok(e)
    }

    pub(crate) fn new_unchecked(graph: LinearGraph, dim: usize, vectors: Vec<Vec<i32>>) -> Self {
        Self { graph, dim, vectors }
    }

    pub fn empty(convention: Convention) -> Self {
        Self { graph: LinearGraph::empty(convention), dim: 0, vectors: Vec::new() }
    }

    pub fn graph(&self) -> &LinearGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<i32>] {
        &self.vectors
    }

    pub fn vector(&self, v: VertexId) -> &[i32] {
        &self.vectors[self.graph.flat_index(v)]
    }

    pub fn support(&self, v: VertexId) -> BTreeSet<usize> {
        support_of(self.vector(v))
    }

    /// Every coordinate is used by some vector.
    pub fn has_full_support(&self) -> bool {
        (0..self.dim).all(|j| self.vectors.iter().any(|v| v[j] != 0))
    }

    /// Re-checks every pairing against the graph.
    pub fn check(&self) -> Result<()> {
        let n = self.graph.num_vertices();
        if self.vectors.len() != n {
            return Err(Error::Inconsistent(format!(
                "{} vectors for {} vertices",
                self.vectors.len(),
                n
            )));
        }
        if let Some(v) = self.vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::Inconsistent(format!("vector of length {} in dim {}", v.len(), self.dim)));
        }
        let gram = dual_gram(&self.graph);
        for i in 0..n {
            for j in 0..=i {
                let d = dot(&self.vectors[i], &self.vectors[j]);
                if d != gram[i][j] {
                    return Err(Error::Inconsistent(format!(
                        "pairing of vertices {} and {} is {d}, expected {}",
                        self.graph.vertex_at(i),
                        self.graph.vertex_at(j),
                        gram[i][j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical representative of the signed-permutation orbit.
    pub fn canonical(&self) -> Embedding {
        let n = self.vectors.len();
        let mut cols: Vec<Vec<i32>> = (0..self.dim)
            .map(|j| {
                let mut c: Vec<i32> = (0..n).map(|i| self.vectors[i][j]).collect();
                if let Some(&f) = c.iter().find(|&&x| x != 0) {
                    if f < 0 {
                        c.iter_mut().for_each(|x| *x = -*x);
                    }
                }
                c
            })
            .filter(|c| c.iter().any(|&x| x != 0))
            .collect();
        cols.sort_by(|a, b| b.cmp(a));
        let dim = cols.len();
        let vectors = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Embedding { graph: self.graph.clone(), dim, vectors }
    }

    /// Adds `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> Embedding {
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.resize(self.dim + extra, 0);
                v
            })
            .collect();
        Embedding { graph: self.graph.clone(), dim: self.dim + extra, vectors }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

fn support_of(v: &[i32]) -> BTreeSet<usize> {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, _)| j).collect()
}

/// Positive-convention Gram matrix in flat vertex order.
pub(crate) fn dual_gram(g: &LinearGraph) -> Vec<Vec<i64>> {
    let n = g.num_vertices();
    let mut m = vec![vec![0i64; n]; n];
    let mut base = 0;
    for comp in g.components() {
        for (i, &w) in comp.iter().enumerate() {
            m[base + i][base + i] = w as i64;
            if i + 1 < comp.len() {
                m[base + i][base + i + 1] = -1;
                m[base + i + 1][base + i] = -1;
            }
        }
        base += comp.len();
    }
    m
}

// ---------------------------------------------------------------------------
// Search

struct Search<'a> {
    gram: &'a [Vec<i64>],
    max_dim: usize,
    /// Column-major; every column has one slot per row.
    cols: Vec<Vec<i32>>,
    /// Nonzero entries `(row, value)` of each column.
    col_nz: Vec<Vec<(usize, i64)>>,
    /// For each finished row: `(column, sum of squares of the row's entries
    /// from that column on)` over its nonzero columns.
    row_suffix: Vec<Vec<(usize, i64)>>,
    /// `starts[j]`: column `j` begins a block of columns with equal prefix.
    starts: Vec<bool>,
    /// Values chosen for the current row in the existing columns.
    assign: Vec<i32>,
    /// Per row: remaining pairings with the earlier rows.
    residual: Vec<Vec<i64>>,
    /// Per row: earlier rows whose residual may be nonzero.
    active: Vec<Vec<usize>>,
    in_active: Vec<Vec<bool>>,
    stop: bool,
}

impl<'a> Search<'a> {
    fn new(gram: &'a [Vec<i64>], max_dim: usize) -> Self {
        let n = gram.len();
        Self {
            gram,
            max_dim,
            cols: Vec::new(),
            col_nz: Vec::new(),
            row_suffix: vec![Vec::new(); n],
            starts: Vec::new(),
            assign: Vec::new(),
            residual: (0..n).map(|i| vec![0; i]).collect(),
            active: vec![Vec::new(); n],
            in_active: (0..n).map(|i| vec![false; i]).collect(),
            stop: false,
        }
    }

    fn nrows(&self) -> usize {
        self.gram.len()
    }

    fn suffix(&self, r: usize, j: usize) -> i64 {
        let s = &self.row_suffix[r];
        let k = s.partition_point(|&(c, _)| c < j);
        s.get(k).map(|&(_, v)| v).unwrap_or(0)
    }

    fn row(&mut self, i: usize, visit: &mut dyn FnMut(&[Vec<i32>]) -> bool) {
        if self.stop {
            return;
        }
        if i == self.nrows() {
            if !visit(&self.cols) {
                self.stop = true;
            }
            return;
        }
        self.active[i].clear();
        for r in 0..i {
            let g = self.gram[i][r];
            self.residual[i][r] = g;
            self.in_active[i][r] = g != 0;
            if g != 0 {
                self.active[i].push(r);
            }
        }
        let budget = self.gram[i][i];
        self.assign.clear();
        self.assign.resize(self.cols.len(), 0);
        stacker::maybe_grow(256 * 1024, 64 * 1024 * 1024, || self.column(i, 0, budget, visit));
    }

    fn column(&mut self, i: usize, j: usize, budget: i64, visit: &mut dyn FnMut(&[Vec<i32>]) -> bool) {
        if self.stop {
            return;
        }
        let ncols = self.cols.len();
        if j == ncols {
            if self.active[i].iter().all(|&r| self.residual[i][r] == 0) {
                let room = self.max_dim - ncols;
                let mut fresh = Vec::new();
                self.fresh(i, budget, isqrt(budget) as i32, room, &mut fresh, visit);
            }
            return;
        }
        let bound = isqrt(budget) as i32;
        let hi = if !self.starts[j] { self.assign[j - 1].min(bound) } else { bound };
        let mut x = hi;
        while x >= -bound {
            let nb = budget - (x as i64) * (x as i64);
            let active_len = self.active[i].len();
            if x != 0 {
                for t in 0..self.col_nz[j].len() {
                    let (r, c) = self.col_nz[j][t];
                    self.residual[i][r] -= c * x as i64;
                    if !self.in_active[i][r] {
                        self.in_active[i][r] = true;
                        self.active[i].push(r);
                    }
                }
            }
            let ok = self.active[i].iter().all(|&r| {
                let res = self.residual[i][r];
                res == 0 || res * res <= nb * self.suffix(r, j + 1)
            });
            if ok {
                self.assign[j] = x;
                stacker::maybe_grow(256 * 1024, 64 * 1024 * 1024, || self.column(i, j + 1, nb, visit));
            }
            if x != 0 {
                for t in 0..self.col_nz[j].len() {
                    let (r, c) = self.col_nz[j][t];
                    self.residual[i][r] += c * x as i64;
                }
                for t in active_len..self.active[i].len() {
                    let r = self.active[i][t];
                    self.in_active[i][r] = false;
                }
                self.active[i].truncate(active_len);
            }
            if self.stop {
                return;
            }
            x -= 1;
        }
    }

    /// Spends the remaining norm on new columns with positive,
    /// non-increasing entries.
    fn fresh(
        &mut self,
        i: usize,
        budget: i64,
        max_val: i32,
        room: usize,
        chosen: &mut Vec<i32>,
        visit: &mut dyn FnMut(&[Vec<i32>]) -> bool,
    ) {
        if self.stop {
            return;
        }
        if budget == 0 {
            self.descend(i, chosen, visit);
            return;
        }
        if room == 0 {
            return;
        }
        let mut x = max_val.min(isqrt(budget) as i32);
        while x >= 1 {
            chosen.push(x);
            self.fresh(i, budget - (x as i64) * (x as i64), x, room - 1, chosen, visit);
            chosen.pop();
            x -= 1;
        }
    }

    fn descend(&mut self, i: usize, fresh: &[i32], visit: &mut dyn FnMut(&[Vec<i32>]) -> bool) {
        let ncols = self.cols.len();
        let nrows = self.nrows();
        let saved_starts = self.starts.clone();
        let assign = self.assign.clone();
        let mut entries: Vec<(usize, i64)> = Vec::new();
        for j in 0..ncols {
            let a = assign[j];
            self.cols[j][i] = a;
            if a != 0 {
                self.col_nz[j].push((i, a as i64));
                entries.push((j, a as i64));
            }
            if j > 0 && !self.starts[j] && a != assign[j - 1] {
                self.starts[j] = true;
            }
        }
        for (k, &x) in fresh.iter().enumerate() {
            let mut c = vec![0i32; nrows];
            c[i] = x;
            self.cols.push(c);
            self.col_nz.push(vec![(i, x as i64)]);
            self.starts.push(k == 0 || fresh[k - 1] != x);
            entries.push((ncols + k, x as i64));
        }
        let mut acc = 0;
        let mut suffix: Vec<(usize, i64)> = entries
            .iter()
            .rev()
            .map(|&(j, v)| {
                acc += v * v;
                (j, acc)
            })
            .collect();
        suffix.reverse();
        self.row_suffix[i] = suffix;

        self.row(i + 1, visit);

        self.cols.truncate(ncols);
        self.col_nz.truncate(ncols);
        for j in 0..ncols {
            if assign[j] != 0 {
                self.col_nz[j].pop();
            }
            self.cols[j][i] = 0;
        }
        self.row_suffix[i].clear();
        self.starts = saved_starts;
        self.assign = assign;
    }
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn cols_to_embedding(g: &LinearGraph, cols: &[Vec<i32>]) -> Embedding {
    let n = g.num_vertices();
    let vectors = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Embedding::new_unchecked(g.clone(), cols.len(), vectors)
}

fn default_max_dim(g: &LinearGraph) -> usize {
    g.total_weight() as usize
}

/// Runs the search, calling `visit` on each canonical representative until
/// it returns `false`.
pub fn for_each_embedding(
    g: &LinearGraph,
    max_dim: Option<usize>,
    visit: &mut dyn FnMut(Embedding) -> bool,
) {
    let gram = dual_gram(g);
    let cap = max_dim.unwrap_or(usize::MAX).min(default_max_dim(g));
    let mut search = Search::new(&gram, cap);
    search.row(0, &mut |cols| visit(cols_to_embedding(g, cols)));
}

/// One representative per signed-permutation orbit of full-support
/// embeddings, over every ambient dimension up to `max_dim`.
pub fn enumerate_embeddings(g: &LinearGraph, max_dim: Option<usize>) -> Vec<Embedding> {
    let mut out = Vec::new();
    for_each_embedding(g, max_dim, &mut |e| {
        out.push(e);
        true
    });
    out
}

pub fn count_embeddings(g: &LinearGraph, max_dim: Option<usize>) -> usize {
    let mut n = 0;
    for_each_embedding(g, max_dim, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Some embedding into dimension at most `max_dim`, if one exists.
pub fn find_embedding(g: &LinearGraph, max_dim: usize) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(g, Some(max_dim), &mut |e| {
        found = Some(e);
        false
    });
    found
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Standard,
    SemiStandard { at: VertexId },
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Standard => f.write_str("standard"),
            Classification::SemiStandard { at } => write!(f, "semi-standard at {at}"),
            Classification::Neither => f.write_str("neither"),
        }
    }
}

/// Classifies `e` restricted to `scope` (all vertices when `None`). The
/// semi-standard test runs at every bad vertex of the graph lying in scope.
pub fn classify(e: &Embedding, scope: Option<&[VertexId]>) -> Classification {
    let bad = e.graph.bad_vertices();
    classify_with_bad(e, scope, &bad)
}

/// As [`classify`], with the candidate bad vertices supplied by the caller.
pub fn classify_with_bad(e: &Embedding, scope: Option<&[VertexId]>, bad: &[VertexId]) -> Classification {
    let scope: Vec<VertexId> = match scope {
        Some(s) => s.to_vec(),
        None => e.graph.vertices().collect(),
    };
    let supports: Vec<BTreeSet<usize>> = scope.iter().map(|&v| e.support(v)).collect();
    if support_pattern_ok(e, &scope, &supports, None) {
        return Classification::Standard;
    }
    for &x in bad {
        if !scope.contains(&x) {
            continue;
        }
        let nbrs = e.graph.neighbors(x);
        if nbrs.len() != 2 || !nbrs.iter().all(|u| scope.contains(u)) {
            continue;
        }
        if support_pattern_ok(e, &scope, &supports, Some((x, nbrs[0], nbrs[1]))) {
            return Classification::SemiStandard { at: x };
        }
    }
    Classification::Neither
}

fn support_pattern_ok(
    e: &Embedding,
    scope: &[VertexId],
    supports: &[BTreeSet<usize>],
    semi: Option<(VertexId, VertexId, VertexId)>,
) -> bool {
    for a in 0..scope.len() {
        for b in a..scope.len() {
            let (u, v) = (scope[a], scope[b]);
            let size = supports[a].intersection(&supports[b]).count();
            let is_pair = matches!(semi, Some((_, p, q)) if (u == p && v == q) || (u == q && v == p));
            let want = if a == b {
                e.graph.weight(u) as usize
            } else if e.graph.adjacent(u, v) {
                1
            } else if is_pair {
                2
            } else {
                0
            };
            if size != want {
                return false;
            }
        }
    }
    if let Some((x, p, q)) = semi {
        let sx = e.support(x);
        let triple = e.support(p).intersection(&e.support(q)).filter(|j| sx.contains(j)).count();
        if triple != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Extended bad part

/// The minimal interval `lo..=hi` of the component containing the bad part
/// `part_lo..=part_hi` whose ends are leaves, or sit just past two
/// consecutive vertices of adjusted weight zero.
pub fn extend_bad_part(g: &LinearGraph, component: usize, part_lo: usize, part_hi: usize) -> (usize, usize) {
    let adj = g.adjusted_weights();
    let a = &adj.components[component];
    let len = a.len();
    let mut lo = part_lo;
    while lo > 0 && !(lo + 2 <= part_lo && a[lo + 1] == 0 && a[lo + 2] == 0) {
        lo -= 1;
    }
    let mut hi = part_hi;
    while hi + 1 < len && !(hi >= part_hi + 2 && a[hi - 1] == 0 && a[hi - 2] == 0) {
        hi += 1;
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Batch driver

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCounts {
    pub configuration: String,
    pub total: usize,
    pub standard: usize,
    pub semi_standard: usize,
    pub neither: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllConfigReport {
    pub total: usize,
    pub standard: usize,
    pub semi_standard: usize,
    pub neither: usize,
    pub configurations: Vec<ConfigCounts>,
}

impl AllConfigReport {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.total, self.standard, self.semi_standard, self.neither)
    }
}

/// One configuration of an [`all_config`] batch: the chain, the positions
/// of its designated bad vertices, and the bad part interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub graph: LinearGraph,
    pub bad: Vec<VertexId>,
    pub part: (usize, usize),
}

impl BatchConfig {
    pub fn extended_part(&self) -> Vec<VertexId> {
        let (lo, hi) = extend_bad_part(&self.graph, 0, self.part.0, self.part.1);
        (lo..=hi).map(|i| VertexId::new(0, i)).collect()
    }
}

/// Builds `left ++ bad ++ right`. An end of the bad part that receives an
/// extension gains one unit of weight so that its adjusted weight is kept.
pub fn build_config(
    bad_weights: &ChainWeights,
    bad_positions: &[usize],
    left: Option<&ChainWeights>,
    right: Option<&ChainWeights>,
) -> Result<BatchConfig> {
    let mut core = bad_weights.as_slice().to_vec();
    let n = core.len();
    for &p in bad_positions {
        if p < 2 || p >= n {
            return Err(Error::InvalidArgument(format!(
                "bad position {p} must be an interior index of a chain of length {n} (1-based)"
            )));
        }
    }
    if left.is_some() {
        core[0] += 1;
    }
    if right.is_some() {
        core[n - 1] += 1;
    }
    let mut weights = Vec::new();
    let offset = left.map(|l| l.len()).unwrap_or(0);
    if let Some(l) = left {
        weights.extend_from_slice(l.as_slice());
    }
    weights.extend_from_slice(&core);
    if let Some(r) = right {
        weights.extend_from_slice(r.as_slice());
    }
    let graph = LinearGraph::chain(&weights, Convention::Dual)?;
    let bad: Vec<VertexId> = bad_positions.iter().map(|&p| VertexId::new(0, offset + p - 1)).collect();
    let actual = graph.bad_vertices();
    if let Some(v) = bad.iter().find(|v| !actual.contains(v)) {
        return Err(Error::Inconsistent(format!(
            "position {} is not a bad vertex of configuration {}",
            v.position + 1,
            graph
        )));
    }
    Ok(BatchConfig { graph, bad, part: (offset, offset + n - 1) })
}

/// Every configuration of a batch, left extensions outermost.
pub fn batch_configs(
    bad_weights: &ChainWeights,
    bad_positions: &[usize],
    lefts: &[ChainWeights],
    rights: &[ChainWeights],
    include_bare: bool,
) -> Result<Vec<BatchConfig>> {
    let mut ls: Vec<Option<&ChainWeights>> = lefts.iter().map(Some).collect();
    let mut rs: Vec<Option<&ChainWeights>> = rights.iter().map(Some).collect();
    if include_bare {
        ls.push(None);
        rs.push(None);
    }
    let mut out = Vec::new();
    for l in &ls {
        for r in &rs {
            out.push(build_config(bad_weights, bad_positions, *l, *r)?);
        }
    }
    Ok(out)
}

pub fn classify_config(config: &BatchConfig) -> ConfigCounts {
    let scope = config.extended_part();
    let mut counts = ConfigCounts {
        configuration: config.graph.to_string(),
        total: 0,
        standard: 0,
        semi_standard: 0,
        neither: 0,
    };
    for_each_embedding(&config.graph, None, &mut |e| {
        counts.total += 1;
        match classify_with_bad(&e, Some(&scope), &config.bad) {
            Classification::Standard => counts.standard += 1,
            Classification::SemiStandard { .. } => counts.semi_standard += 1,
            Classification::Neither => counts.neither += 1,
        }
        true
    });
    counts
}

/// Enumerates and classifies every configuration of the batch. Each
/// embedding is classified on the extended bad part of its configuration.
/// Besides the listed extensions, each side may also stay unextended.
pub fn all_config(
    bad_weights: &ChainWeights,
    bad_positions: &[usize],
    lefts: &[ChainWeights],
    rights: &[ChainWeights],
) -> Result<AllConfigReport> {
    let configs = batch_configs(bad_weights, bad_positions, lefts, rights, true)?;
    Ok(run_batch(&configs))
}

pub fn run_batch(configs: &[BatchConfig]) -> AllConfigReport {
    let configurations: Vec<ConfigCounts> = configs.par_iter().map(classify_config).collect();
    let mut report =
        AllConfigReport { total: 0, standard: 0, semi_standard: 0, neither: 0, configurations: Vec::new() };
    for c in &configurations {
        report.total += c.total;
        report.standard += c.standard;
        report.semi_standard += c.semi_standard;
        report.neither += c.neither;
    }
    report.configurations = configurations;
    report
}
