//! Library results against slow independent computations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plumbkit::analysis::{c_config, d_configs, kprime, satisfies_xk};
use plumbkit::embeddings::{enumerate_embeddings, Embedding};
use plumbkit::fillings::{bad_vertex_tuples, blow_down, count_fillings, dual_weights, reduces_to_zero, standard_tuple};
use plumbkit::graphs::{contains_induced, induced_occurrences};
use plumbkit::lattice::{
    complement, complement_basis, gram_of_graph, is_isomorphic, is_primitive, smith_invariants, GramMatrix, Sign,
};
use plumbkit::{dualize_component, evaluate, expand, ChainWeights, Convention, LensSpace, LinearGraph, VertexId};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Embeddings by exhaustive search over coordinate vectors

fn vectors_of_norm(n: usize, norm: i64) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut x = 0i32;
        while (x as i64) * (x as i64) <= left {
            for s in if x == 0 { vec![0] } else { vec![x, -x] } {
                cur[i] = s;
                rec(i + 1, left - (x as i64) * (x as i64), cur, out);
            }
            x += 1;
        }
        cur[i] = 0;
    }
    rec(0, norm, &mut cur, &mut out);
    out
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// Canonical forms of all full-support embeddings in every dimension up to
/// the total weight.
fn brute_orbits(g: &LinearGraph) -> BTreeSet<Vec<Vec<i32>>> {
    let weights: Vec<u32> = g.vertices().map(|v| g.weight(v)).collect();
    let n = weights.len();
    let adjacent = |i: usize, j: usize| g.adjacent(g.vertex_at(i), g.vertex_at(j));
    let mut out = BTreeSet::new();
    for dim in 1..=g.total_weight() as usize {
        let pools: Vec<Vec<Vec<i32>>> = weights.iter().map(|&w| vectors_of_norm(dim, w as i64)).collect();
        let mut chosen: Vec<Vec<i32>> = Vec::new();
        fn rec(
            i: usize,
            n: usize,
            dim: usize,
            pools: &[Vec<Vec<i32>>],
            adjacent: &dyn Fn(usize, usize) -> bool,
            chosen: &mut Vec<Vec<i32>>,
            g: &LinearGraph,
            out: &mut BTreeSet<Vec<Vec<i32>>>,
        ) {
            if i == n {
                if (0..dim).all(|j| chosen.iter().any(|v| v[j] != 0)) {
                    let e = Embedding::new(g.clone(), dim, chosen.clone()).unwrap();
                    out.insert(e.canonical().vectors().to_vec());
                }
                return;
            }
            for v in &pools[i] {
                let ok = (0..i).all(|j| dot(&chosen[j], v) == if adjacent(j, i) { -1 } else { 0 });
                if ok {
                    chosen.push(v.clone());
                    rec(i + 1, n, dim, pools, adjacent, chosen, g, out);
                    chosen.pop();
                }
            }
        }
        rec(0, n, dim, &pools, &adjacent, &mut chosen, g, &mut out);
    }
    out
}

#[test]
fn embedding_orbits_match_brute_force() {
    for s in ["2", "3", "4", "5", "2,2", "2,3", "3,3", "2,2,2", "2;2", "2;3", "2,4", "3,2,2", "2,2;2", "2,3,2"] {
        let g = LinearGraph::parse(s, Convention::Dual).unwrap();
        let brute = brute_orbits(&g);
        let fast: BTreeSet<Vec<Vec<i32>>> =
            enumerate_embeddings(&g, None).iter().map(|e| e.canonical().vectors().to_vec()).collect();
        assert_eq!(fast.len(), enumerate_embeddings(&g, None).len(), "{s}: duplicate orbits");
        assert_eq!(fast, brute, "{s}");
    }
}

// ---------------------------------------------------------------------------
// Induced subgraphs by subset enumeration

fn random_graph(rng: &mut ChaCha8Rng, max_v: usize, max_w: u32) -> LinearGraph {
    let n = rng.gen_range(1..=max_v);
    let mut comps: Vec<Vec<u32>> = vec![vec![]];
    for i in 0..n {
        if i > 0 && rng.gen_bool(0.3) {
            comps.push(vec![]);
        }
        comps.last_mut().unwrap().push(rng.gen_range(2..=max_w));
    }
    LinearGraph::new(comps, Convention::Plumbing).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

#[test]
fn induced_matching_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..400 {
        let host = random_graph(&mut rng, 8, 4);
        let pat = random_graph(&mut rng, 3, 4);
        let vs: Vec<VertexId> = host.vertices().collect();
        let brute: BTreeSet<Vec<VertexId>> = subsets(vs.len(), pat.num_vertices())
            .into_iter()
            .map(|s| s.iter().map(|&i| vs[i]).collect::<Vec<_>>())
            .filter(|s| host.induced(s).is_isomorphic(&pat))
            .collect();
        let fast: BTreeSet<Vec<VertexId>> = induced_occurrences(&host, &pat)
            .into_iter()
            .map(|mut s| {
                s.sort();
                s
            })
            .collect();
        assert_eq!(fast, brute, "{pat} in {host}");
        assert_eq!(contains_induced(&host, &pat), !brute.is_empty());
    }
}

// ---------------------------------------------------------------------------
// Continued fractions

#[test]
fn expansion_round_trip_and_determinant() {
    for p in 2..=200u64 {
        for q in 1..p {
            if gcd(p, q) != 1 {
                continue;
            }
            let c = expand(p, q).unwrap();
            assert_eq!(evaluate(&c).unwrap(), (p, q));
            let g = LinearGraph::chain(c.as_slice(), Convention::Plumbing).unwrap();
            assert_eq!(gram_of_graph(&g).det().unsigned_abs(), p as u128, "{p}/{q}");
            let d = dualize_component(&c);
            assert_eq!(evaluate(&d).unwrap(), (p, p - q));
            assert_eq!(dualize_component(&d), c);
        }
    }
}

#[test]
fn expansion_by_direct_recursion() {
    // [a1,...,an] with a1 = ceil(p/q) and the tail expanding q/(a1 q - p)
    fn naive(p: u64, q: u64) -> Vec<u32> {
        if q == 1 {
            return vec![p as u32];
        }
        let a = p.div_ceil(q);
        let mut v = vec![a as u32];
        v.extend(naive(q, a * q - p));
        v
    }
    for p in 2..=120u64 {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            assert_eq!(expand(p, q).unwrap().as_slice(), naive(p, q).as_slice());
        }
    }
}

// ---------------------------------------------------------------------------
// Complements

fn det_abs(g: &LinearGraph) -> u128 {
    gram_of_graph(g).det().unsigned_abs()
}

#[test]
fn complement_is_orthogonal_and_has_expected_determinant() {
    for s in ["2,2,2", "2,2,2,3", "3,3", "2,4,2", "5,2", "2,2;3", "4", "2,3,2,2", "3,3,3"] {
        let g = LinearGraph::parse(s, Convention::Dual).unwrap();
        for e in enumerate_embeddings(&g, None) {
            let basis = complement_basis(&e);
            assert_eq!(basis.len(), e.dim() - g.num_vertices(), "{s}: {e}");
            for b in &basis {
                for v in e.vectors() {
                    let d: i64 = b.iter().zip(v).map(|(&x, &y)| x * y as i64).sum();
                    assert_eq!(d, 0);
                }
            }
            let c = complement(&e);
            let vecs: Vec<Vec<i64>> = e.vectors().iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
            let index: i128 = smith_invariants(&vecs).iter().product();
            // det L = det(saturation) * index^2 and the complement has the
            // determinant of the saturation
            assert_eq!(det_abs(&g), c.det().unsigned_abs() * (index * index) as u128, "{s}: {e}");
            assert_eq!(is_primitive(&e), index == 1);
        }
    }
}

// ---------------------------------------------------------------------------
// Lattice isomorphism

/// GL_2(Z)-reduced binary form: 0 <= 2b <= a <= c.
fn reduce_binary(mut a: i64, mut b: i64, mut c: i64) -> (i64, i64, i64) {
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        let m = (2 * b + a).div_euclid(2 * a);
        c = c - 2 * m * b + m * m * a;
        b -= m * a;
        b = b.abs();
        if a <= c {
            return (a, b, c);
        }
    }
}

#[test]
fn binary_forms_against_reduction() {
    let mut forms = Vec::new();
    for a in 1..=7i64 {
        for c in 1..=7i64 {
            for b in -4..=4i64 {
                if a * c - b * b > 0 {
                    forms.push((a, b, c));
                }
            }
        }
    }
    let gm = |(a, b, c): (i64, i64, i64)| GramMatrix::new(vec![vec![a, b], vec![b, c]], Sign::Positive).unwrap();
    for &f in &forms {
        for &h in &forms {
            let expect = reduce_binary(f.0, f.1, f.2) == reduce_binary(h.0, h.1, h.2);
            assert_eq!(is_isomorphic(&gm(f), &gm(h)), expect, "{f:?} {h:?}");
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            u[i].iter_mut().for_each(|x| *x = -*x);
            continue;
        }
        let m = rng.gen_range(-2..=2);
        for k in 0..n {
            u[i][k] += m * u[j][k];
        }
    }
    u
}

#[test]
fn transformed_forms_are_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in ["2,2,2", "3,2,3", "2,2,2,2", "4,2,4", "2;3;5", "5,2,2"] {
        let g = LinearGraph::parse(s, Convention::Dual).unwrap();
        let a = gram_of_graph(&g);
        let n = a.rank();
        for _ in 0..10 {
            let u = random_unimodular(&mut rng, n);
            let b: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| u[i][k] * a.get(k, l) * u[j][l]).sum())
                        .collect()
                })
                .collect();
            let b = GramMatrix::new(b, a.sign()).unwrap();
            assert!(is_isomorphic(&a, &b), "{s}");
        }
    }
    // same rank and determinant, different forms
    let a = GramMatrix::new(vec![vec![1, 0], vec![0, 6]], Sign::Positive).unwrap();
    let b = GramMatrix::new(vec![vec![2, 0], vec![0, 3]], Sign::Positive).unwrap();
    assert!(!is_isomorphic(&a, &b));
}

// ---------------------------------------------------------------------------
// Families failing X_k

#[test]
fn c_and_d_families() {
    for k in 1..=3 {
        let kp = kprime(k);
        assert!(!satisfies_xk(&c_config(kp), k), "C at k={k}");
        for d in d_configs(kp) {
            let exception = k == 2 && d.is_isomorphic(&LinearGraph::plumbing(&[&[2], &[4]]).unwrap());
            assert_eq!(satisfies_xk(&d, k), exception, "{d} at k={k}");
        }
    }
}

// ---------------------------------------------------------------------------
// Fillings

fn inverse_mod(q: u64, p: u64) -> u64 {
    (1..p).find(|&x| (x * q) % p == 1).unwrap()
}

#[test]
fn filling_count_is_symmetric_under_q_inverse() {
    for p in 2..=80u64 {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            let l = LensSpace::new(p, q).unwrap();
            let lb = LensSpace::new(p, inverse_mod(q, p)).unwrap();
            let c = count_fillings(&l).ok();
            let cb = count_fillings(&lb).ok();
            assert_eq!(c, cb, "L({p},{q})");
        }
    }
}

#[test]
fn bad_vertex_tuples_are_admissible_perturbations() {
    for p in 3..=100u64 {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            let l = LensSpace::new(p, q).unwrap();
            let b: ChainWeights = dual_weights(&l);
            let k = b.len();
            for (j, t) in bad_vertex_tuples(&l).unwrap() {
                assert!(reduces_to_zero(t.entries()));
                assert_eq!(t.len(), k);
                assert_eq!(t.sum(), standard_tuple(k).unwrap().sum() + 1);
                assert_eq!(t.entries()[j - 1], 1);
                assert!(t.entries().iter().zip(b.as_slice()).all(|(n, w)| n <= w), "L({p},{q}) {t}");
                let down = blow_down(t.entries(), j - 1).unwrap();
                assert_eq!(down, standard_tuple(k - 1).unwrap().entries());
            }
        }
    }
}
