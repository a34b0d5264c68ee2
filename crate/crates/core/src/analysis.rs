//! Property X_k, the one-vertex extension constructions for embeddings,
//! minimal forbidden configurations, and the shallow/deep vertex labels.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contfrac::{evaluate, ChainWeights, LensSpace};
use crate::duality::dualize;
use crate::embeddings::{classify, find_embedding, for_each_embedding, Classification, Embedding};
use crate::error::{Error, Result};
use crate::graphs::{contains_induced, Convention, LinearGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XkVerdict {
    pub lens_spaces: Vec<LensSpace>,
    pub k: usize,
    pub n_k: i64,
    pub satisfies: bool,
    pub witness: Option<Embedding>,
}

/// The plumbing graph of a connected sum: one chain per summand.
pub fn plumbing_of(lens: &[LensSpace]) -> Result<LinearGraph> {
    let comps: Vec<Vec<u32>> = lens.iter().map(|l| l.chain().into_vec()).collect();
    LinearGraph::new(comps, Convention::Plumbing)
}

/// `b2(P) + b2(P*) - k`.
pub fn n_k(plumbing: &LinearGraph, k: usize) -> i64 {
    let dual = dualize(plumbing);
    (plumbing.num_vertices() + dual.num_vertices()) as i64 - k as i64
}

pub fn property_xk(lens: &[LensSpace], k: usize) -> Result<XkVerdict> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut v = xk_of_graph(&plumbing_of(lens)?, k)?;
    v.lens_spaces = lens.to_vec();
    Ok(v)
}

/// Property X_k for a plumbing graph given directly. The witness, if any,
/// has the smallest possible dimension.
pub fn property_xk_graph(plumbing: &LinearGraph, k: usize) -> Result<XkVerdict> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    xk_of_graph(plumbing, k)
}

fn xk_of_graph(plumbing: &LinearGraph, k: usize) -> Result<XkVerdict> {
    if plumbing.convention() != Convention::Plumbing {
        return Err(Error::Convention { expected: "plumbing", found: plumbing.convention().name() });
    }
    let lens_spaces = plumbing
        .components()
        .iter()
        .map(|c| {
            let (p, q) = evaluate(&ChainWeights::new(c.clone())?)?;
            LensSpace::new(p, q)
        })
        .collect::<Result<Vec<_>>>()?;
    let nk = n_k(plumbing, k);
    let witness = minimal_witness(plumbing, nk);
    Ok(XkVerdict { lens_spaces, k, n_k: nk, satisfies: witness.is_none(), witness })
}

fn minimal_witness(plumbing: &LinearGraph, nk: i64) -> Option<Embedding> {
    let dual = dualize(plumbing);
    if nk < 0 {
        return None;
    }
    if dual.is_empty() {
        return Some(Embedding::empty(Convention::Dual));
    }
    let nk = nk as usize;
    let rank = dual.num_vertices();
    if rank > nk {
        return None;
    }
    // if nothing fits in n_k, nothing fits in smaller dimensions either
    find_embedding(&dual, nk)?;
    (rank..=nk).find_map(|d| find_embedding(&dual, d))
}

pub fn satisfies_xk(plumbing: &LinearGraph, k: usize) -> bool {
    let nk = n_k(plumbing, k);
    let dual = dualize(plumbing);
    nk < 0 || (dual.num_vertices() as i64 > nk) || find_embedding(&dual, nk as usize).is_none()
}

pub fn kprime(k: usize) -> usize {
    if k % 2 == 0 {
        k
    } else {
        k + 1
    }
}

// ---------------------------------------------------------------------------
// The embedding from gluing

/// The embedding of the dual graph of `plumbing` into `Z^{n_0}` in which
/// adjacent vertices share one coordinate and components use disjoint
/// coordinate blocks.
pub fn gluing_embedding(plumbing: &LinearGraph) -> Result<Embedding> {
    let dual = dualize(plumbing);
    let dim: usize = dual.components().iter().map(|c| c.iter().map(|&w| w as usize).sum::<usize>() - c.len() + 1).sum();
    let mut vectors = Vec::with_capacity(dual.num_vertices());
    let mut start = 0;
    for comp in dual.components() {
        for &w in comp {
            let mut v = vec![0i32; dim];
            v[start] = -1;
            for x in &mut v[start + 1..start + w as usize] {
                *x = 1;
            }
            vectors.push(v);
            start += w as usize - 1;
        }
        start += 1;
    }
    Embedding::new(dual, dim, vectors)
}

/// The first standard embedding met by the search into dimension at most
/// `max_dim`.
pub fn find_standard_embedding(dual: &LinearGraph, max_dim: usize) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(dual, Some(max_dim), &mut |e| {
        if classify(&e, None) == Classification::Standard {
            found = Some(e);
            false
        } else {
            true
        }
    });
    found
}

// ---------------------------------------------------------------------------
// Extensions

/// One plumbing vertex added to a graph, described on the dual side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Extension {
    /// A new component of the given weight.
    Isolated { weight: u32 },
    /// Attached to the plumbing end whose dual leaf is `at`.
    Leaf { at: VertexId, weight: u32 },
    /// Joins the ends whose dual leaves are `u1`, `u2`, with weight 2.
    Merge { u1: VertexId, u2: VertexId },
    /// Joins the ends whose dual leaves are `u1`, `u2`, with weight at least 3.
    Bridge { u1: VertexId, u2: VertexId, weight: u32 },
}

fn is_end(g: &LinearGraph, v: VertexId) -> bool {
    v.component < g.num_components()
        && (v.position == 0 || v.position + 1 == g.components()[v.component].len())
}

/// Splits the vectors by component.
fn component_vectors(e: &Embedding) -> Vec<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    let mut it = e.vectors().iter();
    for comp in e.graph().components() {
        out.push(it.by_ref().take(comp.len()).cloned().collect());
    }
    out
}

fn pad_all(vs: &mut [Vec<i32>], dim: usize) {
    for v in vs {
        v.resize(dim, 0);
    }
}

/// Chain of `m` weight-2 vectors `e_i - e_{i+1}` on coordinates `base..`.
fn two_chain(m: usize, base: usize, dim: usize) -> Vec<Vec<i32>> {
    (0..m)
        .map(|i| {
            let mut v = vec![0i32; dim];
            v[base + i] = 1;
            v[base + i + 1] = -1;
            v
        })
        .collect()
}

/// The embedding of the dual graph after adding one plumbing vertex, built
/// from `e` on fresh coordinates. A leaf at the start of a component with
/// more than one vertex is extended at the front; otherwise at the back.
/// Merged components take the place of `u1`'s component, oriented so that
/// `u1`'s end comes first.
pub fn extend_embedding(e: &Embedding, ext: Extension) -> Result<Embedding> {
    let g = e.graph();
    if g.convention() != Convention::Dual {
        return Err(Error::Convention { expected: "dual", found: g.convention().name() });
    }
    let mut comps: Vec<Vec<u32>> = g.components().to_vec();
    let mut vecs = component_vectors(e);
    let dim = e.dim();
    match ext {
        Extension::Isolated { weight } => {
            if weight < 2 {
                return Err(Error::InvalidArgument(format!("weight {weight} < 2")));
            }
            let nd = dim + weight as usize;
            vecs.iter_mut().for_each(|c| pad_all(c, nd));
            comps.push(vec![2; weight as usize - 1]);
            vecs.push(two_chain(weight as usize - 1, dim, nd));
            build(comps, vecs, nd)
        }
        Extension::Leaf { at, weight } => {
            if weight < 2 {
                return Err(Error::InvalidArgument(format!("weight {weight} < 2")));
            }
            if !is_end(g, at) {
                return Err(Error::InvalidArgument(format!("{at} is not an end of the dual graph")));
            }
            let c = at.component;
            let front = at.position == 0 && comps[c].len() > 1;
            if front {
                comps[c].reverse();
                vecs[c].reverse();
            }
            let nd = dim + weight as usize - 1;
            vecs.iter_mut().for_each(|cv| pad_all(cv, nd));
            let last = comps[c].len() - 1;
            comps[c][last] += 1;
            vecs[c][last][dim] -= 1;
            let m = weight as usize - 2;
            comps[c].extend(std::iter::repeat_n(2, m));
            vecs[c].extend(two_chain(m, dim, nd));
            if front {
                comps[c].reverse();
                vecs[c].reverse();
            }
            build(comps, vecs, nd)
        }
        Extension::Merge { u1, u2 } | Extension::Bridge { u1, u2, .. } => {
            let weight = match ext {
                Extension::Bridge { weight, .. } => weight,
                _ => 2,
            };
            if matches!(ext, Extension::Bridge { .. }) && weight < 3 {
                return Err(Error::InvalidArgument("a bridge has weight at least 3; use merge for 2".into()));
            }
            if !is_end(g, u1) || !is_end(g, u2) {
                return Err(Error::InvalidArgument("both vertices must be ends of the dual graph".into()));
            }
            if u1.component == u2.component {
                return Err(Error::InvalidArgument("the two leaves must lie in different components".into()));
            }
            let (c1, c2) = (u1.component, u2.component);
            // u1 last in its component, u2 first in its
            let (mut a, mut va) = (comps[c1].clone(), vecs[c1].clone());
            if u1.position == 0 && a.len() > 1 {
                a.reverse();
                va.reverse();
            }
            let (mut b, mut vb) = (comps[c2].clone(), vecs[c2].clone());
            if u2.position != 0 {
                b.reverse();
                vb.reverse();
            }
            let (merged, mv, nd) = if weight == 2 {
                let la = a.len() - 1;
                a[la] += b[0];
                for (x, y) in va[la].iter_mut().zip(&vb[0]) {
                    *x += y;
                }
                a.extend_from_slice(&b[1..]);
                va.extend_from_slice(&vb[1..]);
                (a, va, dim)
            } else {
                let nd = dim + weight as usize - 2;
                pad_all(&mut va, nd);
                pad_all(&mut vb, nd);
                let la = a.len() - 1;
                a[la] += 1;
                va[la][dim] -= 1;
                b[0] += 1;
                vb[0][nd - 1] += 1;
                let m = weight as usize - 3;
                a.extend(std::iter::repeat_n(2, m));
                va.extend(two_chain(m, dim, nd));
                a.extend_from_slice(&b);
                va.extend(vb);
                (a, va, nd)
            };
            comps[c1] = merged;
            vecs[c1] = mv;
            comps.remove(c2);
            vecs.remove(c2);
            vecs.iter_mut().for_each(|cv| pad_all(cv, nd));
            build(comps, vecs, nd)
        }
    }
}

fn build(comps: Vec<Vec<u32>>, vecs: Vec<Vec<Vec<i32>>>, dim: usize) -> Result<Embedding> {
    let g = LinearGraph::new(comps, Convention::Dual)?;
    Embedding::new(g, dim, vecs.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// Growing a graph one vertex at a time

/// Grows the induced subgraph of `host` on `start` to all of `host`, one
/// vertex at a time, carrying an embedding of the dual graph along with
/// [`extend_embedding`]. Returns the final embedding; every intermediate
/// dual graph is checked against [`dualize`].
pub fn grow_embedding(host: &LinearGraph, start: &[VertexId], e: &Embedding) -> Result<Embedding> {
    if host.convention() != Convention::Plumbing {
        return Err(Error::Convention { expected: "plumbing", found: host.convention().name() });
    }
    // runs of host vertices, each listed in the orientation of the current
    // plumbing component
    let mut runs: Vec<Vec<VertexId>> = induced_runs(host, start);
    let current = |runs: &[Vec<VertexId>]| -> Result<LinearGraph> {
        LinearGraph::new(runs.iter().map(|r| r.iter().map(|&v| host.weight(v)).collect()).collect(), Convention::Plumbing)
    };
    if dualize(&current(&runs)?) != *e.graph() {
        return Err(Error::InvalidArgument("embedding does not match the starting subgraph".into()));
    }
    let mut emb = e.clone();
    let chosen: BTreeSet<VertexId> = start.iter().copied().collect();
    let missing: Vec<VertexId> = host.vertices().filter(|v| !chosen.contains(v)).collect();
    for v in missing {
        let w = host.weight(v);
        let dual = emb.graph().clone();
        // present neighbours: (run index, at run end?)
        let nb: Vec<(usize, bool)> = host
            .neighbors(v)
            .into_iter()
            .filter_map(|u| {
                runs.iter().enumerate().find_map(|(ri, r)| {
                    if r.last() == Some(&u) {
                        Some((ri, true))
                    } else if r.first() == Some(&u) {
                        Some((ri, false))
                    } else {
                        None
                    }
                })
            })
            .collect();
        let dual_end = |ri: usize, at_end: bool| {
            let len = dual.components()[ri].len();
            VertexId::new(ri, if at_end { len - 1 } else { 0 })
        };
        match nb.as_slice() {
            [] => {
                emb = extend_embedding(&emb, Extension::Isolated { weight: w })?;
                runs.push(vec![v]);
            }
            [(ri, at_end)] => {
                let (ri, at_end) = (*ri, *at_end);
                let single = dual.components()[ri].len() == 1;
                let at = dual_end(ri, at_end);
                emb = extend_embedding(&emb, Extension::Leaf { at, weight: w })?;
                if at_end || single {
                    if !at_end {
                        runs[ri].reverse();
                    }
                    runs[ri].push(v);
                } else {
                    runs[ri].insert(0, v);
                }
            }
            [(r1, e1), (r2, e2)] => {
                let (r1, e1, r2, e2) = (*r1, *e1, *r2, *e2);
                let (u1, u2) = (dual_end(r1, e1), dual_end(r2, e2));
                let ext = if w == 2 { Extension::Merge { u1, u2 } } else { Extension::Bridge { u1, u2, weight: w } };
                emb = extend_embedding(&emb, ext)?;
                let mut a = runs[r1].clone();
                if !e1 {
                    a.reverse();
                }
                let mut b = runs[r2].clone();
                if e2 {
                    b.reverse();
                }
                a.push(v);
                a.extend(b);
                runs[r1] = a;
                runs.remove(r2);
            }
            _ => return Err(Error::Inconsistent("a path vertex has at most two neighbours".into())),
        }
        let expect = dualize(&current(&runs)?);
        if expect != *emb.graph() {
            return Err(Error::Inconsistent(format!(
                "extended dual {} differs from the dual {} of the grown graph",
                emb.graph(),
                expect
            )));
        }
    }
    Ok(emb)
}

fn induced_runs(host: &LinearGraph, start: &[VertexId]) -> Vec<Vec<VertexId>> {
    let set: BTreeSet<VertexId> = start.iter().copied().collect();
    let mut runs: Vec<Vec<VertexId>> = Vec::new();
    let mut prev: Option<VertexId> = None;
    for &v in &set {
        if matches!(prev, Some(p) if host.adjacent(p, v)) {
            runs.last_mut().expect("run started").push(v);
        } else {
            runs.push(vec![v]);
        }
        prev = Some(v);
    }
    runs
}

// ---------------------------------------------------------------------------
// Forbidden configurations

/// Fails X_k, and every proper induced subgraph satisfies it.
pub fn verify_minimal_forbidden(config: &LinearGraph, k: usize) -> Result<bool> {
    if config.convention() != Convention::Plumbing {
        return Err(Error::Convention { expected: "plumbing", found: config.convention().name() });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if satisfies_xk(config, k) {
        return Ok(false);
    }
    let n = config.num_vertices();
    if n > 20 {
        return Err(Error::Precondition(format!("{n} vertices is too many for subset enumeration")));
    }
    let verts: Vec<VertexId> = config.vertices().collect();
    let mut seen: HashMap<LinearGraph, bool> = HashMap::new();
    for mask in 0..(1u32 << n) - 1 {
        let subset: Vec<VertexId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let sub = config.induced(&subset).canonical_form();
        let ok = *seen.entry(sub.clone()).or_insert_with(|| satisfies_xk(&sub, k));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Chains with weights in `2..=max_weight` of length `len`, one per
/// reversal class.
fn canonical_chains(len: usize, max_weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![2u32; len];
    if len == 0 || max_weight < 2 {
        return out;
    }
    loop {
        let r: Vec<u32> = cur.iter().rev().copied().collect();
        if cur <= r {
            out.push(cur.clone());
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max_weight {
                cur[i] += 1;
                for x in &mut cur[i + 1..] {
                    *x = 2;
                }
                break;
            }
        }
    }
}

/// Multisets of chains with exactly `size` vertices in total, components
/// sorted as in [`LinearGraph::canonical_form`].
fn multisets_of_size(size: usize, chains: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    fn rec(rem: usize, from: usize, chains: &[Vec<u32>], cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, c) in chains.iter().enumerate().skip(from) {
            if c.len() <= rem {
                cur.push(c.clone());
                rec(rem - c.len(), i, chains, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(size, 0, chains, &mut Vec::new(), &mut out);
    out
}

/// Every minimal configuration failing X_k with weights at most
/// `max_weight` and at most `max_vertices` vertices, in canonical form,
/// smallest first.
pub fn mine_forbidden(k: usize, max_weight: u32, max_vertices: usize) -> Result<Vec<LinearGraph>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut chains: Vec<Vec<u32>> = (1..=max_vertices).flat_map(|l| canonical_chains(l, max_weight)).collect();
    chains.sort();
    let mut found: Vec<LinearGraph> = Vec::new();
    for size in 1..=max_vertices {
        let candidates: Vec<LinearGraph> = multisets_of_size(size, &chains)
            .into_iter()
            .map(|comps| LinearGraph::new(comps, Convention::Plumbing).expect("valid weights"))
            .filter(|g| !found.iter().any(|f| contains_induced(g, f)))
            .collect();
        let mut hits: Vec<LinearGraph> =
            candidates.into_par_iter().filter(|g| !satisfies_xk(g, k)).collect();
        hits.sort_by(|a, b| a.components().cmp(b.components()));
        found.extend(hits);
    }
    Ok(found)
}

/// `k'` isolated `[2]` vertices.
pub fn c_config(kp: usize) -> LinearGraph {
    LinearGraph::new(vec![vec![2]; kp], Convention::Plumbing).expect("valid")
}

/// All graphs with `k'` components, each `[2]`, `[3,3]` or `[4]`.
pub fn d_configs(kp: usize) -> Vec<LinearGraph> {
    let parts: [&[u32]; 3] = [&[2], &[3, 3], &[4]];
    let mut out = Vec::new();
    fn rec(left: usize, from: usize, parts: &[&[u32]; 3], cur: &mut Vec<Vec<u32>>, out: &mut Vec<LinearGraph>) {
        if left == 0 {
            out.push(LinearGraph::new(cur.clone(), Convention::Plumbing).expect("valid"));
            return;
        }
        for i in from..3 {
            cur.push(parts[i].to_vec());
            rec(left - 1, i, parts, cur, out);
            cur.pop();
        }
    }
    rec(kp, 0, &parts, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Vertex labels

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    Shallow,
    Deep,
    Neither1,
    Neither2,
}

fn is_shallow(g: &LinearGraph, v: VertexId) -> bool {
    match g.weight(v) {
        2 | 4 => true,
        3 => g.neighbors(v).iter().any(|&u| matches!(g.weight(u), 2 | 3)),
        _ => false,
    }
}

/// Labels every vertex of a plumbing graph, in vertex order. When several
/// labels apply the first of shallow, deep, type 1, type 2 wins.
pub fn classify_vertices(p: &LinearGraph) -> Vec<(VertexId, VertexClass)> {
    p.vertices()
        .map(|v| {
            let w = p.weight(v);
            let nbrs = p.neighbors(v);
            let near_shallow = nbrs.iter().any(|&u| is_shallow(p, u));
            let class = if is_shallow(p, v) {
                VertexClass::Shallow
            } else if (w >= 5 && !near_shallow) || (w == 3 && nbrs.is_empty()) {
                VertexClass::Deep
            } else if w >= 5 {
                VertexClass::Neither1
            } else {
                debug_assert!(w == 3 && nbrs.iter().any(|&u| p.weight(u) >= 4));
                VertexClass::Neither2
            };
            (v, class)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LinearGraph {
        LinearGraph::parse(s, Convention::Plumbing).unwrap()
    }

    fn lens(p: u64, q: u64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn xk_examples() {
        let v = property_xk(&[lens(4, 1)], 1).unwrap();
        assert_eq!(v.n_k, 3);
        assert!(!v.satisfies);
        let w = v.witness.unwrap();
        assert_eq!(w.dim(), 3);
        w.check().unwrap();

        let v = property_xk(&[lens(4, 1)], 2).unwrap();
        assert!(v.satisfies && v.witness.is_none());

        let v = property_xk(&[lens(9, 8)], 8).unwrap();
        assert_eq!(v.n_k, 1);
        assert!(!v.satisfies);
        assert_eq!(v.witness.unwrap().vectors(), &[vec![3]]);

        assert!(property_xk(&[lens(4, 1)], 0).is_err());
    }

    #[test]
    fn kprime_examples() {
        assert_eq!((kprime(1), kprime(2), kprime(7)), (2, 2, 8));
    }

    #[test]
    fn vertex_class_examples() {
        assert_eq!(classify_vertices(&p("3"))[0].1, VertexClass::Deep);
        let c = classify_vertices(&p("5,2"));
        assert_eq!((c[0].1, c[1].1), (VertexClass::Neither1, VertexClass::Shallow));
        assert!(classify_vertices(&p("2,2")).iter().all(|(_, c)| *c == VertexClass::Shallow));
        assert_eq!(classify_vertices(&p("3,5"))[0].1, VertexClass::Neither2);
    }

    #[test]
    fn minimal_forbidden_examples() {
        assert!(verify_minimal_forbidden(&p("5,2"), 2).unwrap());
        assert!(verify_minimal_forbidden(&p("5,2"), 1).unwrap());
        assert!(!verify_minimal_forbidden(&p("3,3,3,3"), 2).unwrap());
    }

    #[test]
    fn gluing_embedding_is_standard() {
        for (a, b) in [(55u64, 21u64), (4, 1), (9, 2), (64, 23)] {
            let g = plumbing_of(&[lens(a, b)]).unwrap();
            let e = gluing_embedding(&g).unwrap();
            assert_eq!(e.dim() as i64, n_k(&g, 0));
            assert_eq!(classify(&e, None), Classification::Standard);
        }
    }

    #[test]
    fn extension_examples() {
        let e = extend_embedding(&Embedding::empty(Convention::Dual), Extension::Isolated { weight: 2 }).unwrap();
        assert_eq!((e.dim(), e.vectors()), (2, &[vec![1, -1]][..]));

        let base = Embedding::new(LinearGraph::dual(&[&[2]]).unwrap(), 2, vec![vec![1, 1]]).unwrap();
        let e = extend_embedding(&base, Extension::Leaf { at: VertexId::new(0, 0), weight: 3 }).unwrap();
        assert_eq!(e.graph(), &LinearGraph::dual(&[&[3, 2]]).unwrap());

        let two = Embedding::new(LinearGraph::dual(&[&[2], &[3]]).unwrap(), 5, vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]])
            .unwrap();
        let e = extend_embedding(&two, Extension::Merge { u1: VertexId::new(0, 0), u2: VertexId::new(1, 0) }).unwrap();
        assert_eq!(e.graph(), &LinearGraph::dual(&[&[5]]).unwrap());
        assert!(extend_embedding(&two, Extension::Merge { u1: VertexId::new(0, 0), u2: VertexId::new(0, 0) }).is_err());
    }

    #[test]
    fn mining_small() {
        let m = mine_forbidden(1, 3, 2).unwrap();
        assert!(m.contains(&p("3,3")));
        assert!(!m.contains(&p("2,2")));
        assert!(mine_forbidden(2, 6, 0).unwrap().is_empty());
    }
}
