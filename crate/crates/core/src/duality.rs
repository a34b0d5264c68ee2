//! Dual plumbing graphs: `L(p,q)` versus `L(p,p-q)`.

use crate::contfrac::ChainWeights;
use crate::graphs::{LinearGraph, VertexId};

/// Dual of a single chain.
///
/// Writing `c = ([2]^a0, b1, [2]^a1, ..., bk, [2]^ak)` with every `bi >= 3`,
/// the dual has adjusted weights `(a0+1, [0]^(b1-3), a1+1, ..., [0]^(bk-3), ak+1)`.
pub fn dualize_component(c: &ChainWeights) -> ChainWeights {
    ChainWeights::new(dualize_slice(c.as_slice())).expect("dual weights are at least 2")
}

pub(crate) fn dualize_slice(c: &[u32]) -> Vec<u32> {
    let mut runs = vec![0u32];
    let mut bigs = Vec::new();
    for &w in c {
        debug_assert!(w >= 2);
        if w == 2 {
            *runs.last_mut().unwrap() += 1;
        } else {
            bigs.push(w);
            runs.push(0);
        }
    }
    if bigs.is_empty() {
        return vec![runs[0] + 1];
    }
    let mut adjusted: Vec<u32> = Vec::new();
    adjusted.push(runs[0] + 1);
    for (b, run) in bigs.iter().zip(&runs[1..]) {
        adjusted.extend(std::iter::repeat(0).take((*b - 3) as usize));
        adjusted.push(run + 1);
    }
    let n = adjusted.len();
    adjusted
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let deg = match n {
                1 => 0,
                _ if i == 0 || i + 1 == n => 1,
                _ => 2,
            };
            a + deg
        })
        .collect()
}

/// Componentwise dual; the convention tag flips.
pub fn dualize(g: &LinearGraph) -> LinearGraph {
    let comps = g.components().iter().map(|c| dualize_slice(c)).collect();
    LinearGraph::new(comps, g.convention().flipped()).expect("dual weights are at least 2")
}

/// Second Betti number of the plumbing: the vertex count.
pub fn b2(g: &LinearGraph) -> usize {
    g.num_vertices()
}

/// Where a vertex of the dual chain comes from in the original chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualOrigin {
    /// A vertex of adjusted weight `run + 1`, standing for the run of `run`
    /// 2's between the big weights at `before` and `after` (positions in the
    /// original chain; `None` at a chain end).
    Run { before: Option<usize>, after: Option<usize>, run: usize },
    /// A vertex of adjusted weight 0 inside the block of the big weight at
    /// `big`.
    Zero { big: usize },
}

/// Origins of the dual vertices of `c`, in dual order.
pub fn dual_origins(c: &[u32]) -> Vec<DualOrigin> {
    let bigs: Vec<usize> = (0..c.len()).filter(|&i| c[i] > 2).collect();
    if bigs.is_empty() {
        return vec![DualOrigin::Run { before: None, after: None, run: c.len() }];
    }
    let mut out = Vec::new();
    let mut prev: Option<usize> = None;
    for &b in &bigs {
        let start = prev.map(|p| p + 1).unwrap_or(0);
        out.push(DualOrigin::Run { before: prev, after: Some(b), run: b - start });
        for _ in 0..c[b] - 3 {
            out.push(DualOrigin::Zero { big: b });
        }
        prev = Some(b);
    }
    let last = prev.expect("nonempty");
    out.push(DualOrigin::Run { before: Some(last), after: None, run: c.len() - last - 1 });
    out
}

/// The original-chain vertices a bad dual vertex stands for: a `4`, an
/// adjacent pair `3,3`, or `3,2,3`. `None` if `dual_vertex` is not bad.
pub fn bad_vertex_origin(plumbing: &LinearGraph, dual_vertex: VertexId) -> Option<Vec<VertexId>> {
    let dual = dualize(plumbing);
    if !dual.bad_vertices().contains(&dual_vertex) {
        return None;
    }
    let c = dual_vertex.component;
    let origins = dual_origins(&plumbing.components()[c]);
    let positions: Vec<usize> = match origins[dual_vertex.position] {
        DualOrigin::Zero { big } => vec![big],
        DualOrigin::Run { before: Some(a), after: Some(b), .. } => (a..=b).collect(),
        DualOrigin::Run { .. } => return None,
    };
    Some(positions.into_iter().map(|i| VertexId::new(c, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::{evaluate, expand};
    use crate::graphs::Convention;

    fn cw(v: &[u32]) -> ChainWeights {
        ChainWeights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn component_examples() {
        assert_eq!(dualize_component(&cw(&[5, 2])).as_slice(), &[2, 2, 2, 3]);
        assert_eq!(dualize_component(&cw(&[4])).as_slice(), &[2, 2, 2]);
        assert_eq!(dualize_component(&cw(&[2, 2, 2])).as_slice(), &[4]);
        assert_eq!(dualize_component(&cw(&[3, 3, 3, 3])).as_slice(), &[2, 3, 3, 3, 2]);
    }

    #[test]
    fn dual_of_chain_matches_fraction_oracle() {
        for (p, q) in [(9u64, 2u64), (55, 21), (64, 23), (4, 1)] {
            let d = dualize_component(&expand(p, q).unwrap());
            assert_eq!(evaluate(&d).unwrap(), (p, p - q));
        }
    }

    #[test]
    fn graph_examples() {
        let g = LinearGraph::plumbing(&[&[4], &[2]]).unwrap();
        assert_eq!(dualize(&g), LinearGraph::dual(&[&[2, 2, 2], &[2]]).unwrap());
        let h = LinearGraph::plumbing(&[&[3, 5, 3, 2]]).unwrap();
        assert_eq!(dualize(&dualize(&h)), h);
        assert_eq!(b2(&dualize(&LinearGraph::plumbing(&[&[9]]).unwrap())), 8);
        assert_eq!(dualize(&h).convention(), Convention::Dual);
    }

    #[test]
    fn origins_of_bad_vertices() {
        let p = LinearGraph::plumbing(&[&[3, 3, 3, 3]]).unwrap();
        // dual 2,3,3,3,2 with bad vertices at positions 1, 2, 3
        assert_eq!(
            bad_vertex_origin(&p, VertexId::new(0, 1)),
            Some(vec![VertexId::new(0, 0), VertexId::new(0, 1)])
        );
        assert_eq!(
            bad_vertex_origin(&p, VertexId::new(0, 2)),
            Some(vec![VertexId::new(0, 1), VertexId::new(0, 2)])
        );
        let p = LinearGraph::plumbing(&[&[4]]).unwrap();
        assert_eq!(bad_vertex_origin(&p, VertexId::new(0, 1)), Some(vec![VertexId::new(0, 0)]));
        assert_eq!(bad_vertex_origin(&p, VertexId::new(0, 0)), None);
        let p = LinearGraph::plumbing(&[&[2, 3, 2, 3, 5]]).unwrap();
        let d = dualize(&p);
        let bad = d.bad_vertices();
        assert_eq!(bad.len(), 1);
        assert_eq!(
            bad_vertex_origin(&p, bad[0]),
            Some(vec![VertexId::new(0, 1), VertexId::new(0, 2), VertexId::new(0, 3)])
        );
    }

    #[test]
    fn origins_have_dual_length() {
        for c in [vec![2u32, 2], vec![5, 2], vec![3, 5, 3, 2], vec![2, 4, 2, 6]] {
            assert_eq!(dual_origins(&c).len(), dualize_slice(&c).len());
        }
    }

    #[test]
    fn rank_identity_small_chains() {
        fn rec(prefix: &mut Vec<u32>, depth: usize) {
            if !prefix.is_empty() {
                let d = dualize_slice(prefix);
                let total: u32 = prefix.iter().sum();
                assert_eq!((prefix.len() + d.len()) as u32, total - prefix.len() as u32 + 1);
                assert_eq!(dualize_slice(&d), *prefix);
            }
            if depth == 0 {
                return;
            }
            for w in 2..=6 {
                prefix.push(w);
                rec(prefix, depth - 1);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 6);
    }
}
