//! Integral Gram matrices: determinants, orthogonal complements of
//! embeddings, LLL reduction, short vectors and isometry testing.
//!
//! Computation happens in the positive-definite convention; a
//! [`Sign`] tag records which convention a matrix was given in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embeddings::Embedding;
use crate::error::{Error, Result};
use crate::graphs::{Convention, LinearGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
    sign: Sign,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<i64>>, sign: Sign) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument(format!("not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { entries, sign })
    }

    pub fn empty(sign: Sign) -> Self {
        Self { entries: Vec::new(), sign }
    }

    /// `⟨±1⟩^m` in the given convention.
    pub fn units(m: usize, sign: Sign) -> Self {
        let s = match sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
        };
        let entries = (0..m).map(|i| (0..m).map(|j| if i == j { s } else { 0 }).collect()).collect();
        Self { entries, sign }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn negated(&self) -> GramMatrix {
        let entries = self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let sign = match self.sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        };
        GramMatrix { entries, sign }
    }

    pub fn to_positive(&self) -> GramMatrix {
        match self.sign {
            Sign::Positive => self.clone(),
            Sign::Negative => self.negated(),
        }
    }

    pub fn direct_sum(&self, other: &GramMatrix) -> GramMatrix {
        let other = if other.sign == self.sign { other.clone() } else { other.negated() };
        let (a, b) = (self.rank(), other.rank());
        let mut entries = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            entries[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            entries[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        GramMatrix { entries, sign: self.sign }
    }

    pub fn det(&self) -> i128 {
        let m: Vec<Vec<i128>> = self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        bareiss(m).0
    }

    /// Leading principal minors have the signs the convention requires.
    pub fn is_definite(&self) -> bool {
        let m: Vec<Vec<i128>> = self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let (_, minors) = bareiss(m);
        minors.iter().enumerate().all(|(k, &d)| match self.sign {
            Sign::Positive => d > 0,
            Sign::Negative => (if k % 2 == 0 { -d } else { d }) > 0,
        })
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&s.join(","))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination: the determinant and all leading principal
/// minors (stopping early at a zero pivot).
fn bareiss(mut m: Vec<Vec<i128>>) -> (i128, Vec<i128>) {
    let n = m.len();
    if n == 0 {
        return (1, Vec::new());
    }
    let mut minors = Vec::with_capacity(n);
    let mut sign = 1i128;
    let mut prev = 1i128;
    let mut leading_ok = true;
    for k in 0..n {
        if m[k][k] == 0 {
            leading_ok = false;
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return (0, minors),
            }
        }
        if leading_ok {
            minors.push(m[k][k]);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1], minors)
}

/// Diagonal `w`, `-1` for edges (dual graphs); the negation for plumbing
/// graphs.
pub fn gram_of_graph(g: &LinearGraph) -> GramMatrix {
    let pos = crate::embeddings::dual_gram(g);
    let m = GramMatrix { entries: pos, sign: Sign::Positive };
    match g.convention() {
        Convention::Dual => m,
        Convention::Plumbing => m.negated(),
    }
}

// ---------------------------------------------------------------------------
// Integer linear algebra

fn gcdext(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a x + b y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A basis (as columns, returned as row vectors) of `{x in Z^n : A x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // u: n columns of length n, stored column-major
    let mut u: Vec<Vec<i128>> = (0..n).map(|j| (0..n).map(|i| (i == j) as i128).collect()).collect();
    let mut k = 0;
    for r in 0..m.len() {
        if k == n {
            break;
        }
        for c in k + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            if m[r][k] == 0 {
                swap_cols(&mut m, &mut u, k, c);
                continue;
            }
            let (g, x, y) = gcdext(m[r][k], m[r][c]);
            let (p, q) = (m[r][k] / g, m[r][c] / g);
            // [col_k, col_c] <- [x col_k + y col_c, -q col_k + p col_c]
            combine_cols(&mut m, &mut u, k, c, x, y, -q, p);
        }
        if m[r][k] != 0 {
            k += 1;
        }
    }
    let mut basis: Vec<Vec<i128>> = (k..n).map(|j| u[j].clone()).collect();
    reduce_rows(&mut basis);
    basis
}

fn swap_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

#[allow(clippy::too_many_arguments)]
fn combine_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize, x: i128, y: i128, z: i128, w: i128) {
    for row in m.iter_mut() {
        let (ca, cb) = (row[a], row[b]);
        row[a] = x * ca + y * cb;
        row[b] = z * ca + w * cb;
    }
    let (ua, ub) = (u[a].clone(), u[b].clone());
    for i in 0..ua.len() {
        u[a][i] = x * ua[i] + y * ub[i];
        u[b][i] = z * ua[i] + w * ub[i];
    }
}

/// Size-reduces a kernel basis with LLL under the standard inner product.
fn reduce_rows(basis: &mut Vec<Vec<i128>>) {
    if basis.is_empty() {
        return;
    }
    let gram = row_gram(basis);
    let (_, t) = lll_with_transform(&gram);
    let old = basis.clone();
    for (i, row) in basis.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = (0..old.len()).map(|j| t[i][j] as i128 * old[j][c]).sum();
        }
    }
}

fn row_gram(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let r = rows.len();
    let mut g = vec![vec![0i128; r]; r];
    for i in 0..r {
        for j in 0..=i {
            let d: i128 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            g[i][j] = d;
            g[j][i] = d;
        }
    }
    g
}

/// Smith invariant factors of an integer matrix (nonzero ones only).
pub fn smith_invariants(a: &[Vec<i64>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// The vertex vectors span a primitive sublattice of `Z^n`.
pub fn is_primitive(e: &Embedding) -> bool {
    smith_invariants(&e.vectors().iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>())
        .iter()
        .all(|&d| d == 1)
}

// ---------------------------------------------------------------------------
// Complements

/// A basis of the orthogonal complement of the embedded vectors, as
/// vectors in `Z^n`.
pub fn complement_basis(e: &Embedding) -> Vec<Vec<i64>> {
    let a: Vec<Vec<i64>> = e.vectors().iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
    integer_kernel(&a, e.dim())
        .into_iter()
        .map(|v| v.into_iter().map(|x| i64::try_from(x).expect("complement entry fits in i64")).collect())
        .collect()
}

/// Gram matrix of the orthogonal complement (positive convention).
pub fn complement(e: &Embedding) -> GramMatrix {
    let basis = complement_basis(e);
    let r = basis.len();
    let mut entries = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            entries[i][j] = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
        }
    }
    GramMatrix { entries, sign: Sign::Positive }
}

// ---------------------------------------------------------------------------
// LLL and short vectors

fn gso(g: &[Vec<i128>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.len();
    let mut mu = vec![vec![0f64; n]; n];
    let mut b = vec![0f64; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j] as f64;
            for k in 0..j {
                s -= mu[j][k] * mu[i][k] * b[k];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = g[i][i] as f64;
        for k in 0..i {
            s -= mu[i][k] * mu[i][k] * b[k];
        }
        b[i] = s;
    }
    (mu, b)
}

/// LLL (δ = 0.99) on a positive-definite Gram matrix. Returns the reduced
/// Gram matrix and the transform `T` (rows = new basis in old coordinates).
fn lll_with_transform(g0: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i64>>) {
    let n = g0.len();
    let mut g: Vec<Vec<i128>> = g0.to_vec();
    let mut t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n <= 1 {
        return (g, t);
    }
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL did not terminate");
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i128;
                // b_k -= q b_j
                for i in 0..n {
                    g[k][i] -= q * g[j][i];
                }
                for i in 0..n {
                    g[i][k] = if i == k { g[k][k] - q * g[k][j] } else { g[k][i] };
                }
                let qq = q as i64;
                for c in 0..n {
                    t[k][c] -= qq * t[j][c];
                }
            }
        }
        let (mu, b) = gso(&g);
        if b[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            k = k.max(2) - 1;
        } else {
            k += 1;
        }
    }
    (g, t)
}

pub fn lll_reduce(a: &GramMatrix) -> GramMatrix {
    let p = a.to_positive();
    let g: Vec<Vec<i128>> = p.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (r, _) = lll_with_transform(&g);
    let entries = r.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect();
    let out = GramMatrix { entries, sign: Sign::Positive };
    match a.sign {
        Sign::Positive => out,
        Sign::Negative => out.negated(),
    }
}

/// Every nonzero `x` with `x^T A x <= bound` (positive convention), one of
/// each `±x` pair, with its norm.
pub fn short_vectors(a: &GramMatrix, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let p = a.to_positive();
    let n = p.rank();
    if n == 0 || bound <= 0 {
        return Vec::new();
    }
    let g: Vec<Vec<i128>> = p.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (mu, b) = gso(&g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let c = bound as f64 + 1e-6;
    fincke_pohst(&mu, &b, n, c, &mut x, 0.0, &p.entries, bound, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fincke_pohst(
    mu: &[Vec<f64>],
    b: &[f64],
    level: usize,
    c: f64,
    x: &mut Vec<i64>,
    acc: f64,
    g: &[Vec<i64>],
    bound: i64,
    out: &mut Vec<(Vec<i64>, i64)>,
) {
    let n = x.len();
    if level == 0 {
        if x.iter().all(|&v| v == 0) {
            return;
        }
        // keep one of ±x: last nonzero coordinate positive
        if *x.iter().rev().find(|&&v| v != 0).expect("nonzero") < 0 {
            return;
        }
        let norm: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
        if norm <= bound {
            out.push((x.clone(), norm));
        }
        return;
    }
    let i = level - 1;
    // centre: -sum_{j>i} mu[j][i] x_j
    let centre: f64 = -(i + 1..n).map(|j| mu[j][i] * x[j] as f64).sum::<f64>();
    let room = (c - acc) / b[i];
    if room < 0.0 {
        return;
    }
    let r = room.sqrt();
    let lo = (centre - r).ceil() as i64;
    let hi = (centre + r).floor() as i64;
    for v in lo..=hi {
        let d = v as f64 - centre;
        let nacc = acc + d * d * b[i];
        if nacc > c {
            continue;
        }
        x[i] = v;
        fincke_pohst(mu, b, level - 1, c, x, nacc, g, bound, out);
    }
    x[i] = 0;
}

/// Some nonzero vector has norm exactly `m` (in absolute value).
pub fn represents(a: &GramMatrix, m: i64) -> bool {
    let r = lll_reduce(&a.to_positive());
    short_vectors(&r, m).iter().any(|(_, n)| *n == m)
}

// ---------------------------------------------------------------------------
// Isometry

/// Splits off the unimodular part spanned by norm-1 vectors. Returns the
/// number of unit summands and the Gram matrix of the rest.
pub fn split_units(a: &GramMatrix) -> (usize, GramMatrix) {
    let p = lll_reduce(&a.to_positive());
    let units: Vec<Vec<i64>> = short_vectors(&p, 1).into_iter().map(|(v, _)| v).collect();
    if units.is_empty() {
        return (0, p);
    }
    let n = p.rank();
    // rows: (G u)^T, kernel = vectors orthogonal to every unit
    let rows: Vec<Vec<i64>> = units
        .iter()
        .map(|u| (0..n).map(|j| (0..n).map(|i| u[i] * p.entries[i][j]).sum()).collect())
        .collect();
    let ker = integer_kernel(&rows, n);
    let r = ker.len();
    let mut entries = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = 0i128;
            for x in 0..n {
                for y in 0..n {
                    s += ker[i][x] * p.entries[x][y] as i128 * ker[j][y];
                }
            }
            entries[i][j] = i64::try_from(s).expect("Gram entry fits in i64");
        }
    }
    (units.len(), lll_reduce(&GramMatrix { entries, sign: Sign::Positive }))
}

/// Integral isometry of definite lattices of the same sign.
pub fn is_isomorphic(a: &GramMatrix, b: &GramMatrix) -> bool {
    if a.sign != b.sign || a.rank() != b.rank() {
        return false;
    }
    if a.det() != b.det() {
        return false;
    }
    let (ua, a0) = split_units(a);
    let (ub, b0) = split_units(b);
    if ua != ub {
        return false;
    }
    isometric_unit_free(&a0, &b0)
}

fn isometric_unit_free(a: &GramMatrix, b: &GramMatrix) -> bool {
    let n = a.rank();
    if n != b.rank() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let max_norm = (0..n).map(|i| b.entries[i][i]).max().expect("nonempty");
    let sv_a = short_vectors(a, max_norm);
    let sv_b = short_vectors(b, max_norm);
    // norm spectrum up to the largest diagonal entry of the reduced basis
    let spectrum = |sv: &[(Vec<i64>, i64)]| {
        let mut counts = vec![0usize; max_norm as usize + 1];
        for (_, m) in sv {
            counts[*m as usize] += 1;
        }
        counts
    };
    if spectrum(&sv_a) != spectrum(&sv_b) {
        return false;
    }
    // candidate images, both signs
    let mut cands: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::with_capacity(n);
    for i in 0..n {
        let target = b.entries[i][i];
        let mut list = Vec::new();
        for (v, m) in &sv_a {
            if *m == target {
                let av: Vec<i64> = (0..n).map(|r| (0..n).map(|c| a.entries[r][c] * v[c]).sum()).collect();
                list.push((v.clone(), av.clone()));
                if i > 0 {
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    let nav: Vec<i64> = av.iter().map(|x| -x).collect();
                    list.push((neg, nav));
                }
            }
        }
        cands.push(list);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        i: usize,
        n: usize,
        b: &GramMatrix,
        cands: &[Vec<(Vec<i64>, Vec<i64>)>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if i == n {
            return true;
        }
        'cand: for (k, (v, _)) in cands[i].iter().enumerate() {
            for (j, &cj) in chosen.iter().enumerate() {
                let (_, av_j) = &cands[j][cj];
                let d: i64 = av_j.iter().zip(v).map(|(x, y)| x * y).sum();
                if d != b.entries[i][j] {
                    continue 'cand;
                }
            }
            chosen.push(k);
            if rec(i + 1, n, b, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(0, n, b, &cands, &mut chosen)
}

// ---------------------------------------------------------------------------
// Rational blowdown blocks

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowdownCase {
    Four,
    ThreeThree,
    ThreeTwoThree,
}

impl BlowdownCase {
    pub fn from_weights(w: &[u32]) -> Option<Self> {
        match w {
            [4] => Some(Self::Four),
            [3, 3] => Some(Self::ThreeThree),
            [3, 2, 3] => Some(Self::ThreeTwoThree),
            _ => None,
        }
    }

    pub fn len(self) -> usize {
        match self {
            Self::Four => 1,
            Self::ThreeThree => 2,
            Self::ThreeTwoThree => 3,
        }
    }
}

/// Replacement block for `a2, a1, <configuration>, b1` (negative
/// convention, all parameters at most -2).
pub fn blowdown_gram(case: BlowdownCase, a1: i64, a2: i64, b1: i64) -> Result<GramMatrix> {
    for (name, v) in [("a1", a1), ("a2", a2), ("b1", b1)] {
        if v > -2 {
            return Err(Error::InvalidArgument(format!("{name} = {v}; plumbing weights are at most -2")));
        }
    }
    Ok(GramMatrix { entries: blowdown_block(case, a1, Some(a2), b1), sign: Sign::Negative })
}

/// As [`blowdown_gram`], without the `a2` row when `a2` is `None`.
fn blowdown_block(case: BlowdownCase, a1: i64, a2: Option<i64>, b1: i64) -> Vec<Vec<i64>> {
    let a2v = a2.unwrap_or(0);
    let full: Vec<Vec<i64>> = match case {
        BlowdownCase::Four => vec![
            vec![a2v, 2, 1],
            vec![2, 1 + 4 * a1, 2 * a1],
            vec![1, 2 * a1, a1 + b1],
        ],
        BlowdownCase::ThreeThree => vec![
            vec![a2v, 2, 2, -1],
            vec![2, 1 + 4 * a1, 4 * a1, -2 * a1],
            vec![2, 4 * a1, -3 + 4 * a1, 1 - 2 * a1],
            vec![-1, -2 * a1, 1 - 2 * a1, a1 + b1],
        ],
        BlowdownCase::ThreeTwoThree => vec![
            vec![a2v, 2, 2, 0, -1],
            vec![2, 1 + 4 * a1, 4 * a1, 0, -2 * a1],
            vec![2, 4 * a1, -3 + 4 * a1, 1, 1 - 2 * a1],
            vec![0, 0, 1, -2, 0],
            vec![-1, -2 * a1, 1 - 2 * a1, 0, a1 + b1],
        ],
    };
    if a2.is_some() {
        full
    } else {
        full[1..].iter().map(|r| r[1..].to_vec()).collect()
    }
}

/// The intersection form of the plumbing `p` after blowing down the
/// configuration at `config` (consecutive vertices of one component forming
/// `[4]`, `[3,3]` or `[3,2,3]`). Requires both flanking neighbours `a1`, `b1`.
/// Negative convention.
pub fn blowdown_form(p: &LinearGraph, config: &[VertexId]) -> Result<GramMatrix> {
    if p.convention() != Convention::Plumbing {
        return Err(Error::Convention { expected: "plumbing", found: p.convention().name() });
    }
    let c = config.first().ok_or_else(|| Error::InvalidArgument("empty configuration".into()))?.component;
    let lo = config[0].position;
    let hi = config[config.len() - 1].position;
    let comp = &p.components()[c];
    let weights: Vec<u32> = comp[lo..=hi].to_vec();
    let case = BlowdownCase::from_weights(&weights)
        .ok_or_else(|| Error::InvalidArgument(format!("{weights:?} is not a blow-down configuration")))?;
    if lo == 0 || hi + 1 >= comp.len() {
        return Err(Error::Precondition("the configuration needs neighbours on both sides".into()));
    }
    let a1 = -(comp[lo - 1] as i64);
    let b1 = -(comp[hi + 1] as i64);
    let a2 = (lo >= 2).then(|| -(comp[lo - 2] as i64));
    let block = blowdown_block(case, a1, a2, b1);

    // new basis: untouched vertices, with the block standing in for
    // a2 (if any), a1, the configuration and b1
    let full = gram_of_graph(p).entries;
    let n = p.num_vertices();
    let base = p.flat_index(VertexId::new(c, 0));
    let block_first = base + if a2.is_some() { lo - 2 } else { lo - 1 };
    let block_last = base + hi + 1;
    let keep_before: Vec<usize> = (0..block_first).collect();
    let keep_after: Vec<usize> = (block_last + 1..n).collect();
    let k = block.len();
    let size = keep_before.len() + k + keep_after.len();
    let mut m = vec![vec![0i64; size]; size];
    let idx_after = |t: usize| keep_before.len() + k + t;
    for (x, &i) in keep_before.iter().enumerate() {
        for (y, &j) in keep_before.iter().enumerate() {
            m[x][y] = full[i][j];
        }
    }
    for (x, &i) in keep_after.iter().enumerate() {
        for (y, &j) in keep_after.iter().enumerate() {
            m[idx_after(x)][idx_after(y)] = full[i][j];
        }
    }
    for x in 0..k {
        for y in 0..k {
            m[keep_before.len() + x][keep_before.len() + y] = block[x][y];
        }
    }
    // the outer neighbours keep their single edge to the block ends
    if block_first > base {
        let o = keep_before.len() - 1;
        m[o][o + 1] = 1;
        m[o + 1][o] = 1;
    }
    if block_last + 1 < base + comp.len() {
        let o = idx_after(0);
        m[o - 1][o] = 1;
        m[o][o - 1] = 1;
    }
    Ok(GramMatrix { entries: m, sign: Sign::Negative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Convention;

    fn pos(m: Vec<Vec<i64>>) -> GramMatrix {
        GramMatrix::new(m, Sign::Positive).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = LinearGraph::parse("2,2", Convention::Dual).unwrap();
        assert_eq!(gram_of_graph(&g).entries(), &[vec![2, -1], vec![-1, 2]]);
        let g = LinearGraph::parse("5,2", Convention::Plumbing).unwrap();
        assert_eq!(gram_of_graph(&g).entries(), &[vec![-5, 1], vec![1, -2]]);
        assert!(gram_of_graph(&g).is_definite());
    }

    #[test]
    fn determinants() {
        assert_eq!(pos(vec![vec![2, -1], vec![-1, 2]]).det(), 3);
        assert_eq!(pos(vec![vec![0, 1], vec![1, 0]]).det(), -1);
        assert_eq!(GramMatrix::empty(Sign::Positive).det(), 1);
    }

    #[test]
    fn kernel_is_orthogonal_and_saturated() {
        let a = vec![vec![1i64, 1, 0], vec![0, -1, 1]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0] + v[1], 0);
        assert_eq!(v[2] - v[1], 0);
        assert_eq!(v.iter().map(|x| x.abs()).max(), Some(1));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![1, 1, 0], vec![0, 1, 1]]), vec![1, 1]);
        assert_eq!(smith_invariants(&[vec![2, 4], vec![4, 2]]), vec![2, 6]);
    }

    #[test]
    fn isomorphism_examples() {
        let a2 = pos(vec![vec![2, -1], vec![-1, 2]]);
        let other = pos(vec![vec![2, 1], vec![1, 2]]);
        assert!(is_isomorphic(&a2, &other));
        assert!(!is_isomorphic(&a2, &pos(vec![vec![2, 0], vec![0, 2]])));
        let z2 = pos(vec![vec![1, 0], vec![0, 1]]);
        let skew = pos(vec![vec![2, 1], vec![1, 1]]);
        assert!(is_isomorphic(&z2, &skew));
    }

    #[test]
    fn represents_examples() {
        assert!(represents(&pos(vec![vec![2, -1], vec![-1, 2]]), 2));
        assert!(!represents(&pos(vec![vec![4]]), 3));
        assert!(represents(&pos(vec![vec![4]]), 16));
    }

    #[test]
    fn blowdown_examples() {
        let m = blowdown_gram(BlowdownCase::Four, -2, -2, -2).unwrap();
        assert_eq!(m.entries(), &[vec![-2, 2, 1], vec![2, -7, -4], vec![1, -4, -4]]);
        let m = blowdown_gram(BlowdownCase::ThreeThree, -2, -2, -2).unwrap();
        assert_eq!((m.get(1, 1), m.get(2, 2)), (-7, -11));
        let m = blowdown_gram(BlowdownCase::ThreeTwoThree, -3, -5, -2).unwrap();
        assert_eq!(m.get(3, 3), -2);
        assert!(blowdown_gram(BlowdownCase::Four, -1, -2, -2).is_err());
    }
}
