//! Shared generators and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's elimination code:
//! signatures come from characteristic polynomials, cokernels from
//! determinantal divisors.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use plumbook_core::{ConfigGraph, HomologyGroup, Sign};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Case generation always uses fixed seeds; `PLUMBOOK_SEED` only permutes
/// the order in which generated cases are checked.
pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

pub fn shuffled<T>(mut cases: Vec<T>) -> Vec<T> {
    if let Some(seed) = std::env::var("PLUMBOOK_SEED").ok().and_then(|s| s.parse::<u64>().ok()) {
        cases.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    cases
}

pub fn name(i: usize) -> String {
    format!("v{i}")
}

/// Random tree on `1..=max_vertices` vertices built by attaching each new
/// vertex to an earlier one.
pub fn random_tree(rng: &mut ChaCha8Rng, max_vertices: usize, max_genus: i64, m_range: (i64, i64), signed: bool) -> ConfigGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = ConfigGraph::new();
    for i in 0..n {
        g = g.vertex(&name(i), rng.gen_range(0..=max_genus), rng.gen_range(m_range.0..=m_range.1));
    }
    for i in 1..n {
        let p = rng.gen_range(0..i);
        let sign = if signed && rng.gen_bool(0.5) { Sign::Minus } else { Sign::Plus };
        // random endpoint order too
        if rng.gen_bool(0.5) {
            g = g.signed_edge(&name(p), &name(i), sign);
        } else {
            g = g.signed_edge(&name(i), &name(p), sign);
        }
    }
    g
}

/// Random multigraph without self-loops; may be disconnected.
pub fn random_multigraph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize, max_genus: i64) -> (usize, Vec<i64>, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_vertices);
    let genera = (0..n).map(|_| rng.gen_range(0..=max_genus)).collect();
    let e = if n > 1 { rng.gen_range(0..=max_edges) } else { 0 };
    let edges = (0..e)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    (n, genera, edges)
}

/// Random positive graph: margins `mᵢ + dᵢ` drawn in `1..=3`.
pub fn random_positive(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize, max_genus: i64) -> ConfigGraph {
    let (n, genera, edges) = random_multigraph(rng, max_vertices, max_edges, max_genus);
    let mut degree = vec![0i64; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut g = ConfigGraph::new();
    for i in 0..n {
        let margin = rng.gen_range(1..=3);
        g = g.vertex(&name(i), genera[i], margin - degree[i]);
    }
    for &(u, v) in &edges {
        g = g.edge(&name(u), &name(v));
    }
    g
}

pub fn chain(vertices: &[(i64, i64)]) -> ConfigGraph {
    let mut g = ConfigGraph::new();
    for (i, &(genus, m)) in vertices.iter().enumerate() {
        g = g.vertex(&name(i), genus, m);
    }
    for i in 1..vertices.len() {
        g = g.edge(&name(i - 1), &name(i));
    }
    g
}

/// `Q(G)` assembled directly from the edge list.
pub fn q_matrix(g: &ConfigGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut q = vec![vec![0i64; n]; n];
    for (i, v) in g.vertices().iter().enumerate() {
        q[i][i] = v.m;
    }
    for e in g.edges() {
        let u = g.index_of(&e.u).unwrap();
        let v = g.index_of(&e.v).unwrap();
        q[u][v] += e.sign.value();
        q[v][u] += e.sign.value();
    }
    q
}

fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= pivot.clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / pivot.clone();
            for k in c..n {
                let t = a[c][k].clone() * f.clone();
                a[r][k] -= t;
            }
        }
    }
    det
}

fn det_int(m: &[Vec<i64>]) -> BigInt {
    let r: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let d = det_rational(&r);
    assert!(d.is_integer());
    d.to_integer()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `gcd` of all `k × k` minors (0 when they all vanish).
pub fn determinantal_divisor(m: &[Vec<i64>], cols: usize, k: usize) -> BigInt {
    let rows = m.len();
    let mut g = BigInt::zero();
    let col_sets = subsets(cols, k);
    for rs in subsets(rows, k) {
        for cs in &col_sets {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&det_int(&minor));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Invariant factors `dₖ/dₖ₋₁` for `k ≤ rank`.
pub fn invariant_factors(m: &[Vec<i64>], cols: usize) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.len().min(cols) {
        let d = determinantal_divisor(m, cols, k);
        if d.is_zero() {
            break;
        }
        out.push((&d / &prev).abs().to_biguint().unwrap());
        prev = d;
    }
    out
}

/// Cokernel of `Z^cols → Z^rows` from determinantal divisors.
pub fn cokernel_oracle(m: &[Vec<i64>], cols: usize) -> HomologyGroup {
    let factors = invariant_factors(m, cols);
    let free = m.len() - factors.len();
    let torsion: Vec<BigUint> = factors.into_iter().filter(|d| !d.is_one()).collect();
    HomologyGroup::free(free).direct_sum(&HomologyGroup::from_cyclic_orders(&torsion))
}

/// `Z^(2Σg) ⊕ coker Q`, computed without the library's elimination.
pub fn tree_oracle(g: &ConfigGraph) -> HomologyGroup {
    let q = q_matrix(g);
    let genus: i64 = g.vertices().iter().map(|v| v.genus).sum();
    cokernel_oracle(&q, q.len()).direct_sum(&HomologyGroup::free(2 * genus as usize))
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier; index `k`
/// holds the coefficient of `x^k`.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let am: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + x[i][k].clone() * y[k][j].clone()))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(&am, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += coeffs[n - k + 1].clone();
        }
        m = next;
        let am_k = mul(&am, &m);
        let trace = (0..n).fold(BigRational::zero(), |s, i| s + am_k[i][i].clone());
        coeffs[n - k] = -trace / BigRational::from_integer((k as i64).into());
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn sign_changes(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric matrix via
/// Descartes' rule, which is exact for real-rooted polynomials.
pub fn inertia_oracle(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let p = char_poly(a);
    let zero = p.iter().position(|c| !c.is_zero()).unwrap();
    let tail = &p[zero..];
    let pos = sign_changes(tail);
    let neg_poly: Vec<BigInt> = tail
        .iter()
        .enumerate()
        .map(|(k, c)| if (k + zero) % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let neg = sign_changes(&neg_poly);
    (pos, neg, zero)
}

pub fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().unwrap()
}

/// Random symmetric matrix of dimension `1..=max_dim` with entries in `[-r, r]`.
pub fn random_symmetric(rng: &mut ChaCha8Rng, max_dim: usize, r: i64) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=max_dim);
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-r..=r);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}
