//! Negative (Hirzebruch–Jung) continued fractions.
//!
//! `p/q = a_1 - 1/(a_2 - 1/(... - 1/a_n))` with every `a_i >= 2`. The chain
//! `[a_1, ..., a_n]` lists the magnitudes of the plumbing weights of the
//! canonical negative-definite plumbing bounded by `L(p, q)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The lens space `L(p, q)` with `p > q > 0` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    p: u64,
    q: u64,
}

impl LensSpace {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p <= q || gcd(p, q) != 1 {
            return Err(Error::InvalidLensSpace { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `L(p, p - q)`, which is `L(p, q)` with the opposite orientation.
    pub fn reversed(&self) -> LensSpace {
        LensSpace { p: self.p, q: self.p - self.q }
    }

    /// `L(p, q̄)` where `q q̄ ≡ 1 (mod p)`.
    pub fn inverse_parameter(&self) -> u64 {
        mod_inverse(self.q, self.p).expect("q is a unit mod p")
    }

    /// Weights of the canonical plumbing chain.
    pub fn chain(&self) -> ChainWeights {
        expand(self.p, self.q).expect("validated lens space")
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((p, q)) = s.split_once('/') else {
            return Err(Error::Parse { column: 1, message: format!("expected p/q, got `{s}`") });
        };
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse {
            column: 1,
            message: format!("bad numerator `{p}`"),
        })?;
        let q: u64 = q.trim().parse().map_err(|_| Error::Parse {
            column: s.find('/').unwrap_or(0) + 2,
            message: format!("bad denominator `{q}`"),
        })?;
        LensSpace::new(p, q)
    }
}

/// A nonempty chain of weight magnitudes, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ChainWeights(Vec<u32>);

impl ChainWeights {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        if let Some(bad) = entries.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidChain(format!("entry {bad} is below 2")));
        }
        Ok(Self(entries))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> ChainWeights {
        let mut v = self.0.clone();
        v.reverse();
        ChainWeights(v)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl TryFrom<Vec<u32>> for ChainWeights {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        ChainWeights::new(v)
    }
}

impl From<ChainWeights> for Vec<u32> {
    fn from(c: ChainWeights) -> Self {
        c.0
    }
}

impl fmt::Display for ChainWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for ChainWeights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut column = 1;
        for tok in s.split(',') {
            let t = tok.trim().trim_start_matches('-');
            let a: u32 = t.parse().map_err(|_| Error::Parse {
                column,
                message: format!("bad weight `{}`", tok.trim()),
            })?;
            out.push(a);
            column += tok.len() + 1;
        }
        ChainWeights::new(out)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Expands `p/q` by the ceiling-quotient recurrence
/// `a = ⌈p/q⌉, (p, q) ← (q, a q − p)`.
pub fn expand(p: u64, q: u64) -> Result<ChainWeights> {
    LensSpace::new(p, q)?;
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        let a = num.div_ceil(den);
        let a32 = u32::try_from(a).map_err(|_| Error::Overflow("expanding a continued fraction"))?;
        out.push(a32);
        (num, den) = (den, a * den - num);
    }
    ChainWeights::new(out)
}

/// Folds the chain from the right: `p/q = a_1 − 1/(p'/q')`.
pub fn evaluate(chain: &ChainWeights) -> Result<(u64, u64)> {
    let mut iter = chain.as_slice().iter().rev();
    let last = *iter.next().expect("nonempty chain") as u64;
    let (mut num, mut den) = (last, 1u64);
    for &a in iter {
        let next = (a as u64)
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(Error::Overflow("evaluating a continued fraction"))?;
        (num, den) = (next, num);
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(v: &[u32]) -> ChainWeights {
        ChainWeights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(9, 2).unwrap(), chain(&[5, 2]));
        assert_eq!(expand(64, 23).unwrap(), chain(&[3, 5, 3, 2]));
        assert_eq!(expand(2, 1).unwrap(), chain(&[2]));
        assert_eq!(expand(4, 3).unwrap(), chain(&[2, 2, 2]));
        assert_eq!(expand(55, 21).unwrap(), chain(&[3, 3, 3, 3]));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&chain(&[5, 2])).unwrap(), (9, 2));
        assert_eq!(evaluate(&chain(&[2, 2, 2])).unwrap(), (4, 3));
        assert_eq!(evaluate(&chain(&[3, 5, 3, 2])).unwrap(), (64, 23));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(expand(6, 4).is_err());
        assert!(expand(3, 3).is_err());
        assert!(expand(3, 0).is_err());
        assert!(expand(2, 5).is_err());
        assert!(ChainWeights::new(vec![]).is_err());
        assert!(ChainWeights::new(vec![3, 1]).is_err());
    }

    #[test]
    fn evaluate_overflow_is_an_error() {
        let long = ChainWeights::new(vec![1000; 20]).unwrap();
        assert!(matches!(evaluate(&long), Err(Error::Overflow(_))));
    }

    #[test]
    fn parse_and_print() {
        let c: ChainWeights = "-3,-2,-3".parse().unwrap();
        assert_eq!(c.to_string(), "3,2,3");
        let l: LensSpace = "55/21".parse().unwrap();
        assert_eq!((l.p(), l.q()), (55, 21));
        assert!("55/22".parse::<LensSpace>().is_err());
        assert!("x/2".parse::<LensSpace>().is_err());
    }

    #[test]
    fn exhaustive_round_trip_and_reversal() {
        for p in 2..=600u64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let c = expand(p, q).unwrap();
                assert!(c.as_slice().iter().all(|&a| a >= 2));
                assert_eq!(evaluate(&c).unwrap(), (p, q));
                let qbar = mod_inverse(q, p).unwrap();
                assert_eq!(evaluate(&c.reversed()).unwrap(), (p, qbar));
            }
        }
    }
}
