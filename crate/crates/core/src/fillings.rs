//! Admissible tuples and minimal symplectic fillings of lens spaces with
//! their standard contact structure.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conditions::{check_17, check_working_conditions};
use crate::contfrac::{ChainWeights, LensSpace};
use crate::duality::dualize_component;
use crate::error::{Error, Result};
use crate::graphs::{contains_induced, count_induced, Convention, LinearGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdmissibleTuple {
    entries: Vec<u32>,
}

impl AdmissibleTuple {
    /// Checks admissibility by blowing down to `(0)`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if !reduces_to_zero(&entries) {
            return Err(Error::InvalidArgument(format!("{entries:?} does not blow down to (0)")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for AdmissibleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Removes the entry at `i` (which must be 1) and lowers its neighbours.
pub fn blow_down(t: &[u32], i: usize) -> Option<Vec<u32>> {
    if t.get(i) != Some(&1) || t.len() < 2 {
        return None;
    }
    let mut out = t.to_vec();
    if i > 0 {
        out[i - 1] = out[i - 1].checked_sub(1)?;
    }
    if i + 1 < out.len() {
        out[i + 1] = out[i + 1].checked_sub(1)?;
    }
    out.remove(i);
    Some(out)
}

/// Some sequence of blow-downs of 1 entries reaches `(0)`.
pub fn reduces_to_zero(t: &[u32]) -> bool {
    fn rec(t: Vec<u32>, seen: &mut HashSet<Vec<u32>>) -> bool {
        if t == [0] {
            return true;
        }
        if !seen.insert(t.clone()) {
            return false;
        }
        (0..t.len()).any(|i| blow_down(&t, i).is_some_and(|s| rec(s, seen)))
    }
    rec(t.to_vec(), &mut HashSet::new())
}

/// `(1,2,...,2,1)` of length `k`; `(0)` for `k = 1`.
pub fn standard_tuple(k: usize) -> Result<AdmissibleTuple> {
    match k {
        0 => Err(Error::InvalidArgument("tuple length must be positive".into())),
        1 => Ok(AdmissibleTuple { entries: vec![0] }),
        _ => {
            let mut e = vec![2; k];
            e[0] = 1;
            e[k - 1] = 1;
            Ok(AdmissibleTuple { entries: e })
        }
    }
}

/// The tuple of the filling with one fewer 2-handle, for the bad vertex at
/// 1-based position `j` of the dual chain.
pub fn bad_vertex_tuple(dual_weights: &ChainWeights, j: usize) -> Result<AdmissibleTuple> {
    let b = dual_weights.as_slice();
    let k = b.len();
    let g = LinearGraph::chain(b, Convention::Dual)?;
    if j < 1 || j > k || !g.bad_vertices().contains(&VertexId::new(0, j - 1)) {
        return Err(Error::InvalidArgument(format!("position {j} is not a bad vertex of {g}")));
    }
    let mut n = standard_tuple(k)?.entries;
    n[j - 1] = 1;
    n[j - 2] += 1;
    n[j] += 1;
    if let Some(i) = (0..k).find(|&i| b[i] < n[i]) {
        return Err(Error::Inconsistent(format!("entry {} of {n:?} exceeds the weight {}", i + 1, b[i])));
    }
    AdmissibleTuple::new(n)
}

/// Dual weights of a lens space: the chain of `p/(p-q)`.
pub fn dual_weights(l: &LensSpace) -> ChainWeights {
    dualize_component(&l.chain())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingCount {
    pub count: usize,
    pub n_l: usize,
    pub reduced: bool,
    pub q_squared_is_one: bool,
    /// The alternative reading `q ≡ 1 (mod p)`, reported for comparison.
    pub q_is_one: bool,
    pub contains_44_or_333: bool,
}

pub fn blowdown_patterns() -> [LinearGraph; 3] {
    [
        LinearGraph::plumbing(&[&[4]]).expect("valid"),
        LinearGraph::plumbing(&[&[3, 3]]).expect("valid"),
        LinearGraph::plumbing(&[&[3, 2, 3]]).expect("valid"),
    ]
}

pub fn count_fillings(l: &LensSpace) -> Result<FillingCount> {
    let p = LinearGraph::chain(l.chain().as_slice(), Convention::Plumbing)?;
    let report = check_17(&p)?;
    if !report.passed {
        let ids: Vec<&str> = report.hits.iter().map(|h| h.config.as_str()).collect();
        return Err(Error::Precondition(format!("{p} contains forbidden configurations {ids:?}")));
    }
    let n_l = count_induced(&p, &blowdown_patterns());
    let (pp, q) = (l.p() as u128, l.q() as u128);
    let q_squared_is_one = (q * q) % pp == 1 % pp;
    let q_is_one = q % pp == 1 % pp;
    let contains_44_or_333 = contains_induced(&p, &LinearGraph::plumbing(&[&[4, 4]])?)
        || contains_induced(&p, &LinearGraph::plumbing(&[&[3, 3, 3]])?);
    let reduced = q_squared_is_one && contains_44_or_333;
    Ok(FillingCount {
        count: if reduced { n_l } else { n_l + 1 },
        n_l,
        reduced,
        q_squared_is_one,
        q_is_one,
        contains_44_or_333,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pi1 {
    Trivial,
    Z2,
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pi1::Trivial => "1",
            Pi1::Z2 => "Z/2",
        })
    }
}

/// The bad-vertex tuples of `l`, one per bad vertex of the dual chain, with
/// 1-based positions.
pub fn bad_vertex_tuples(l: &LensSpace) -> Result<Vec<(usize, AdmissibleTuple)>> {
    let b = dual_weights(l);
    let g = LinearGraph::chain(b.as_slice(), Convention::Dual)?;
    g.bad_vertices().into_iter().map(|v| Ok((v.position + 1, bad_vertex_tuple(&b, v.position + 1)?))).collect()
}

/// Fundamental group of the fillings with one fewer 2-handle. Such a
/// filling is simply connected as soon as some 2-handle is attached at an
/// end of the chain, i.e. `n'_1 < b_1` or `n'_k < b_k`.
pub fn filling_pi1(l: &LensSpace) -> Result<Pi1> {
    let b = dual_weights(l);
    let g = LinearGraph::chain(b.as_slice(), Convention::Dual)?;
    if g.bad_vertices().is_empty() {
        return Err(Error::Precondition(format!("the dual graph {g} has no bad vertex")));
    }
    let wc = check_working_conditions(&g)?;
    if !wc.passed {
        return Err(Error::Precondition(format!("the dual graph {g} fails the working conditions: {wc}")));
    }
    let bs = b.as_slice();
    let k = bs.len();
    for (_, t) in bad_vertex_tuples(l)? {
        let n = t.entries();
        if n[0] == bs[0] && n[k - 1] == bs[k - 1] {
            return Ok(Pi1::Z2);
        }
    }
    Ok(Pi1::Trivial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(p: u64, q: u64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn standard_tuples() {
        assert_eq!(standard_tuple(3).unwrap().entries(), &[1, 2, 1]);
        assert_eq!(standard_tuple(2).unwrap().entries(), &[1, 1]);
        assert_eq!(standard_tuple(5).unwrap().entries(), &[1, 2, 2, 2, 1]);
        assert_eq!(standard_tuple(1).unwrap().entries(), &[0]);
        for k in 1..10 {
            assert!(reduces_to_zero(standard_tuple(k).unwrap().entries()));
        }
    }

    #[test]
    fn bad_vertex_tuple_examples() {
        let b = ChainWeights::new(vec![2, 2, 2]).unwrap();
        let t = bad_vertex_tuple(&b, 2).unwrap();
        assert_eq!(t.entries(), &[2, 1, 2]);
        assert_eq!(blow_down(t.entries(), 1).unwrap(), standard_tuple(2).unwrap().entries());
        assert!(bad_vertex_tuple(&b, 1).is_err());

        let l = lens(55, 21);
        for (j, t) in bad_vertex_tuples(&l).unwrap() {
            let k = t.len();
            assert_eq!(t.sum(), standard_tuple(k).unwrap().sum() + 1);
            assert_eq!(blow_down(t.entries(), j - 1).unwrap(), standard_tuple(k - 1).unwrap().entries());
        }
    }

    #[test]
    fn not_admissible() {
        assert!(!reduces_to_zero(&[2, 2]));
        assert!(!reduces_to_zero(&[1, 3]));
        assert!(AdmissibleTuple::new(vec![1, 2]).is_err());
    }

    #[test]
    fn filling_counts() {
        let c = count_fillings(&lens(55, 21)).unwrap();
        assert_eq!((c.count, c.n_l, c.reduced), (3, 3, true));
        let c = count_fillings(&lens(4, 1)).unwrap();
        assert_eq!((c.count, c.n_l, c.reduced), (2, 1, false));
        let c = count_fillings(&lens(5, 1)).unwrap();
        assert_eq!((c.count, c.n_l, c.reduced), (1, 0, false));
        assert!(count_fillings(&lens(9, 2)).is_err());
    }

    #[test]
    fn pi1_examples() {
        assert_eq!(filling_pi1(&lens(8, 3)).unwrap(), Pi1::Z2);
        assert_eq!(filling_pi1(&lens(12, 5)).unwrap(), Pi1::Z2);
        assert_eq!(filling_pi1(&lens(4, 1)).unwrap(), Pi1::Z2);
        assert_eq!(filling_pi1(&lens(55, 21)).unwrap(), Pi1::Trivial);
        assert!(filling_pi1(&lens(5, 1)).is_err());
    }
}
