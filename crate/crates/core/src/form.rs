//! Intersection form `Q(G)` and its exact inertia.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::graph::ConfigGraph;
use crate::matrix::IntMatrix;
use crate::snf::HomologyGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: IntMatrix,
    pub vertex_order: Vec<String>,
}

fn ser_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

impl IntersectionForm {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn signature(&self) -> Inertia {
        signature_counts(&self.matrix)
    }

    pub fn cokernel(&self) -> HomologyGroup {
        HomologyGroup::cokernel(&self.matrix)
    }
}

/// `qᵢᵢ = mᵢ`, `qᵢⱼ` = signed number of edges between `vᵢ` and `vⱼ`.
pub fn intersection_form(g: &ConfigGraph) -> Result<IntersectionForm> {
    g.require_valid()?;
    let n = g.vertex_count();
    let mut q = IntMatrix::zeros(n, n);
    for (i, v) in g.vertices().iter().enumerate() {
        q[(i, i)] = v.m;
    }
    for ((u, v), e) in g.edge_endpoints()?.into_iter().zip(g.edges()) {
        q[(u, v)] += e.sign.value();
        q[(v, u)] += e.sign.value();
    }
    Ok(IntersectionForm {
        matrix: q,
        vertex_order: g.vertices().iter().map(|v| v.id.clone()).collect(),
    })
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Inertia of a symmetric integer matrix by congruence reduction over the
/// rationals. A zero diagonal is handled by splitting off a hyperbolic 2×2
/// block `[[0, b], [b, 0]]`, which contributes one positive and one negative
/// eigenvalue.
pub fn signature_counts(q: &IntMatrix) -> Inertia {
    assert!(q.is_symmetric(), "signature_counts needs a symmetric matrix");
    let n = q.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(q[(i, j)]))).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.swap_remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &j in &active {
                if a[j][p].is_zero() {
                    continue;
                }
                let f = &a[j][p] / &pivot;
                for &k in &active {
                    let delta = &f * &a[p][k];
                    a[j][k] -= delta;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += active.len();
            break;
        };
        active.retain(|&k| k != i && k != j);
        out.positive += 1;
        out.negative += 1;
        // Schur complement with B⁻¹ = [[0, 1/b], [1/b, 0]]
        let b = a[i][j].clone();
        for &r in &active {
            for &c in &active {
                let correction = (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &b;
                a[r][c] -= correction;
            }
        }
    }
    out
}
