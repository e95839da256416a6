//! Smith normal form over the integers and canonical finitely generated
//! abelian groups.
//!
//! Elimination first runs in checked `i128` arithmetic and restarts in
//! `BigInt` if any intermediate entry overflows.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::matrix::IntMatrix;

/// Invariant factors `d₁ | d₂ | … | d_rank` (all positive) of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigUint>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

trait SnfEntry: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub> SnfEntry for T {}

/// Diagonalizes `a` in place; returns the nonzero diagonal in divisibility
/// order, or `None` on arithmetic overflow.
fn eliminate<T: SnfEntry>(a: &mut [Vec<T>], cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            let pivot_row = a[t].clone();
            for row in a.iter_mut().skip(t + 1) {
                if row[t].is_zero() {
                    continue;
                }
                let q = row[t].div_floor(&pivot_row[t]);
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(t) {
                    let delta = q.checked_mul(p)?;
                    *x = x.checked_sub(&delta)?;
                }
                if !row[t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = q.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&delta)?;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // row and column are clear; enforce divisibility of the block
            let p = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(row).skip(t) {
                        *x = x.clone() + y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

fn to_biguint(x: BigInt) -> BigUint {
    x.abs().to_biguint().expect("absolute value is nonnegative")
}

fn smith_big(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> SmithForm {
    let diag = eliminate(&mut a, cols).expect("bigint elimination cannot overflow");
    SmithForm {
        divisors: diag.into_iter().map(to_biguint).collect(),
        rows,
        cols,
    }
}

/// Smith normal form of an `i64` matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut small: Vec<Vec<i128>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    if let Some(diag) = eliminate(&mut small, cols) {
        return SmithForm {
            divisors: diag.into_iter().map(|d| to_biguint(BigInt::from(d))).collect(),
            rows,
            cols,
        };
    }
    let big = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    smith_big(big, rows, cols)
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n` for `n ≥ 0` (with `Z/0 = Z`, `Z/1 = 0`).
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[BigUint::from(n)])
    }

    /// Canonical form of `⊕ Z/nᵢ`; an order of zero contributes a free summand.
    pub fn from_cyclic_orders(orders: &[BigUint]) -> Self {
        let k = orders.len();
        let mut diag = vec![vec![BigInt::zero(); k]; k];
        for (i, n) in orders.iter().enumerate() {
            diag[i][i] = BigInt::from(n.clone());
        }
        let snf = smith_big(diag, k, k);
        Self::from_smith(&snf)
    }

    fn from_smith(snf: &SmithForm) -> Self {
        HomologyGroup {
            free_rank: snf.rows - snf.rank(),
            torsion: snf.divisors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    /// Cokernel of `m : Z^cols → Z^rows`, i.e. `Z^rows / (column span)`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        Self::from_smith(&smith_normal_form(m))
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> Self {
        let orders: Vec<BigUint> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let mut out = Self::from_cyclic_orders(&orders);
        out.free_rank += self.free_rank + other.free_rank;
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_canonical(&self) -> bool {
        let two = BigUint::from(2u8);
        self.torsion.iter().all(|d| *d >= two)
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Divisor {
            Small(u128),
            Large(String),
        }
        let torsion: Vec<Divisor> = self
            .torsion
            .iter()
            .map(|d| d.to_u128().map_or_else(|| Divisor::Large(d.to_string()), Divisor::Small))
            .collect();
        let mut st = s.serialize_struct("HomologyGroup", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("group", &self.to_string())?;
        st.end()
    }
}
