//! The page `Σ(G)`: one surface `Fᵢ` per vertex, connect-summed along every
//! edge, with an explicit integral basis of `H₁`.
//!
//! Per connected component the basis is, in order:
//!
//! * a symplectic pair `(aₖ, bₖ)` for every handle of every `Fᵢ`;
//! * every page boundary class except the component's base boundary
//!   (the boundary classes of a component sum to zero);
//! * the neck curve `c_e` of every edge outside the spanning tree;
//! * a tube class `z_e` dual to each such neck, `⟨c_e, z_e⟩ = 1`.
//!
//! Neck curves of tree edges are not basis elements. Summing the vertex
//! relations `Σ bᵢ,ₛ + Σ ±c_e = 0` over one side of the tree cut at `e`
//! writes `c_e` as minus the boundary classes on that side minus the
//! signed non-tree necks crossing the cut. A neck `c_e` is oriented as a
//! boundary circle of `F_u` where `u` is the edge's first endpoint.
//!
//! The tube classes are normalised to be pairwise orthogonal and
//! orthogonal to the handle pairs, and the reference arc from the base
//! boundary to boundary `j` is routed so that its intersection with a basis
//! class is the coefficient of `b_j`. Both normalisations are changes of
//! basis or of arc within their homology classes.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, ConfigGraph, DisjointSets};
use crate::matrix::{pair, IntMatrix};
use crate::snf::{smith_normal_form, SmithForm};

/// Which construction the pieces follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// Symplectic configuration graphs: `rᵢ = mᵢ + dᵢ > 0`, unsigned edges.
    Positive,
    /// Signed plumbing graphs: `rᵢ = |mᵢ + dᵢ|`, or one boundary to be
    /// capped when `mᵢ + dᵢ = 0`.
    Plumbing,
}

/// A named simple closed curve on the page.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveId {
    /// Neck circle of edge `k` (input order).
    Edge { edge: usize },
    Boundary { vertex: String, slot: usize },
    HandleA { vertex: String, handle: usize },
    HandleB { vertex: String, handle: usize },
    /// Tube class dual to the neck of the non-tree edge `edge`.
    Tube { edge: usize },
}

impl CurveId {
    pub fn boundary(vertex: &str, slot: usize) -> Self {
        CurveId::Boundary {
            vertex: vertex.to_string(),
            slot,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, CurveId::Boundary { .. })
    }

    pub fn vertex(&self) -> Option<&str> {
        match self {
            CurveId::Boundary { vertex, .. } | CurveId::HandleA { vertex, .. } | CurveId::HandleB { vertex, .. } => {
                Some(vertex)
            }
            _ => None,
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::Edge { edge } => write!(f, "e{edge}"),
            CurveId::Boundary { vertex, slot } => write!(f, "{vertex}:{slot}"),
            CurveId::HandleA { vertex, handle } => write!(f, "{vertex}.a{handle}"),
            CurveId::HandleB { vertex, handle } => write!(f, "{vertex}.b{handle}"),
            CurveId::Tube { edge } => write!(f, "z{edge}"),
        }
    }
}

/// `Fᵢ` before any gluing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub vertex: String,
    pub genus: usize,
    /// Components of `∂Fᵢ`, including one flagged for capping.
    pub boundary_count: usize,
    pub to_be_capped: bool,
}

impl Piece {
    /// Boundary components that survive on the capped page.
    pub fn page_boundary_count(&self, capped: bool) -> usize {
        if capped && self.to_be_capped {
            0
        } else {
            self.boundary_count
        }
    }
}

pub fn build_pieces(g: &ConfigGraph, pipeline: Pipeline) -> Result<Vec<Piece>> {
    match pipeline {
        Pipeline::Positive => graph::require_positive(g)?,
        Pipeline::Plumbing => g.require_valid()?,
    }
    let margins = graph::margins(g)?;
    Ok(g
        .vertices()
        .iter()
        .zip(margins)
        .map(|(v, margin)| {
            let zero = margin == 0;
            Piece {
                vertex: v.id.clone(),
                genus: v.genus as usize,
                boundary_count: if zero { 1 } else { margin.unsigned_abs() as usize },
                to_be_capped: zero,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    /// Vertex indices.
    pub vertices: Vec<usize>,
    pub genus: usize,
    pub boundary: Vec<CurveId>,
    pub base_boundary: Option<CurveId>,
    #[serde(skip)]
    pub basis_range: Range<usize>,
}

impl SurfaceComponent {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn h1_rank(&self) -> usize {
        self.basis_range.len()
    }
}

/// Reference arc from a component's base boundary to another boundary,
/// stored as the functional `x ↦ ⟨arc, x⟩` on `H₁(Σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFunctional {
    pub target: CurveId,
    pub component: usize,
    pub functional: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pieces: Vec<Piece>,
    capped: bool,
    capped_boundaries: Vec<CurveId>,
    edge_count: usize,
    components: Vec<SurfaceComponent>,
    basis: Vec<CurveId>,
    pairing: IntMatrix,
    curves: Vec<(CurveId, Vec<i64>)>,
    curve_index: HashMap<CurveId, usize>,
    arcs: Vec<ArcFunctional>,
}

/// Compact description used to compare surfaces built from relabelled input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSummary {
    /// `(genus, boundary count)` per component, sorted.
    pub components: Vec<(usize, usize)>,
    pub h1_rank: usize,
    pub pairing_divisors: Vec<String>,
}

/// Construction knobs that do not change the surface up to homeomorphism.
#[derive(Debug, Clone, Copy, Default)]
pub struct SurfaceOptions {
    /// Each component uses its `(base_rotation mod B)`-th boundary as base.
    pub base_rotation: usize,
    /// Cap the boundaries flagged by [`build_pieces`].
    pub cap_flagged: bool,
}

pub fn build_surface(g: &ConfigGraph, pipeline: Pipeline) -> Result<SurfaceModel> {
    build_surface_with(g, pipeline, SurfaceOptions::default())
}

pub fn build_surface_with(g: &ConfigGraph, pipeline: Pipeline, opts: SurfaceOptions) -> Result<SurfaceModel> {
    let pieces = build_pieces(g, pipeline)?;
    SurfaceModel::from_pieces(g, pieces, opts)
}

/// Spanning forest by Kruskal over edges keyed `(min end, max end, index)`.
fn spanning_forest(n: usize, ends: &[(usize, usize)]) -> Vec<bool> {
    let mut order: Vec<usize> = (0..ends.len()).collect();
    order.sort_by_key(|&k| {
        let (u, v) = ends[k];
        (u.min(v), u.max(v), k)
    });
    let mut dsu = DisjointSets::new(n);
    let mut in_tree = vec![false; ends.len()];
    for k in order {
        let (u, v) = ends[k];
        in_tree[k] = dsu.union(u, v);
    }
    in_tree
}

/// Vertices on the `from` side of the tree after deleting tree edge `cut`.
fn tree_side(n: usize, ends: &[(usize, usize)], in_tree: &[bool], cut: usize, from: usize) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for (k, &(u, v)) in ends.iter().enumerate() {
        if in_tree[k] && k != cut {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut side = vec![false; n];
    let mut stack = vec![from];
    side[from] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !side[y] {
                side[y] = true;
                stack.push(y);
            }
        }
    }
    side
}

impl SurfaceModel {
    pub fn from_pieces(g: &ConfigGraph, pieces: Vec<Piece>, opts: SurfaceOptions) -> Result<SurfaceModel> {
        g.require_valid()?;
        assert_eq!(pieces.len(), g.vertex_count(), "one piece per vertex");
        let n = g.vertex_count();
        let ends = g.edge_endpoints()?;
        let in_tree = spanning_forest(n, &ends);
        let comps = g.components()?;
        let mut comp_of = vec![0; n];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }

        let boundary_of = |i: usize| -> Vec<CurveId> {
            let p = &pieces[i];
            (0..p.page_boundary_count(opts.cap_flagged))
                .map(|s| CurveId::boundary(&p.vertex, s))
                .collect()
        };
        let capped_boundaries: Vec<CurveId> = pieces
            .iter()
            .filter(|p| opts.cap_flagged && p.to_be_capped)
            .map(|p| CurveId::boundary(&p.vertex, 0))
            .collect();

        // lay out the basis component by component
        let mut basis: Vec<CurveId> = Vec::new();
        let mut components = Vec::with_capacity(comps.len());
        for (c, vs) in comps.iter().enumerate() {
            let start = basis.len();
            for &i in vs {
                for k in 0..pieces[i].genus {
                    basis.push(CurveId::HandleA {
                        vertex: pieces[i].vertex.clone(),
                        handle: k,
                    });
                    basis.push(CurveId::HandleB {
                        vertex: pieces[i].vertex.clone(),
                        handle: k,
                    });
                }
            }
            let boundary: Vec<CurveId> = vs.iter().flat_map(|&i| boundary_of(i)).collect();
            let base = (!boundary.is_empty()).then(|| boundary[opts.base_rotation % boundary.len()].clone());
            basis.extend(boundary.iter().filter(|b| Some(*b) != base.as_ref()).cloned());
            let cycle_edges: Vec<usize> = (0..ends.len()).filter(|&k| !in_tree[k] && comp_of[ends[k].0] == c).collect();
            basis.extend(cycle_edges.iter().map(|&edge| CurveId::Edge { edge }));
            basis.extend(cycle_edges.iter().map(|&edge| CurveId::Tube { edge }));

            let handles: usize = vs.iter().map(|&i| pieces[i].genus).sum();
            let edges_here = ends.iter().filter(|(u, _)| comp_of[*u] == c).count();
            components.push(SurfaceComponent {
                vertices: vs.clone(),
                genus: handles + edges_here + 1 - vs.len(),
                boundary,
                base_boundary: base,
                basis_range: start..basis.len(),
            });
        }
        let dim = basis.len();
        let index: HashMap<CurveId, usize> = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

        let mut pairing = IntMatrix::zeros(dim, dim);
        for (i, b) in basis.iter().enumerate() {
            let partner = match b {
                CurveId::HandleA { vertex, handle } => Some(CurveId::HandleB {
                    vertex: vertex.clone(),
                    handle: *handle,
                }),
                CurveId::Edge { edge } => Some(CurveId::Tube { edge: *edge }),
                _ => None,
            };
            if let Some(p) = partner {
                let j = index[&p];
                pairing[(i, j)] = 1;
                pairing[(j, i)] = -1;
            }
        }

        let unit = |i: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        };
        let boundary_class = |id: &CurveId, comp: &SurfaceComponent| -> Vec<i64> {
            if Some(id) == comp.base_boundary.as_ref() {
                let mut v = vec![0; dim];
                for b in comp.boundary.iter().filter(|b| Some(*b) != comp.base_boundary.as_ref()) {
                    v[index[b]] -= 1;
                }
                v
            } else {
                unit(index[id])
            }
        };

        let mut curves: Vec<(CurveId, Vec<i64>)> = Vec::new();
        for (k, &(u, _)) in ends.iter().enumerate() {
            let id = CurveId::Edge { edge: k };
            let class = if !in_tree[k] {
                unit(index[&id])
            } else {
                let comp = &components[comp_of[u]];
                let side = tree_side(n, &ends, &in_tree, k, u);
                let mut v = vec![0; dim];
                for (i, _) in side.iter().enumerate().filter(|(_, &s)| s) {
                    for b in boundary_of(i) {
                        for (x, y) in v.iter_mut().zip(boundary_class(&b, comp)) {
                            *x -= y;
                        }
                    }
                }
                for (f, &(a, b)) in ends.iter().enumerate() {
                    if in_tree[f] || side[a] == side[b] {
                        continue;
                    }
                    let s = if side[a] { 1 } else { -1 };
                    v[index[&CurveId::Edge { edge: f }]] -= s;
                }
                v
            };
            curves.push((id, class));
        }
        for comp in &components {
            for b in &comp.boundary {
                curves.push((b.clone(), boundary_class(b, comp)));
            }
        }
        for (i, b) in basis.iter().enumerate() {
            if matches!(b, CurveId::HandleA { .. } | CurveId::HandleB { .. } | CurveId::Tube { .. }) {
                curves.push((b.clone(), unit(i)));
            }
        }
        let curve_index = curves.iter().enumerate().map(|(i, (c, _))| (c.clone(), i)).collect();

        let mut arcs = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            for b in comp.boundary.iter().filter(|b| Some(*b) != comp.base_boundary.as_ref()) {
                arcs.push(ArcFunctional {
                    target: b.clone(),
                    component: c,
                    functional: unit(index[b]),
                });
            }
        }

        Ok(SurfaceModel {
            pieces,
            capped: opts.cap_flagged,
            capped_boundaries,
            edge_count: ends.len(),
            components,
            basis,
            pairing,
            curves,
            curve_index,
            arcs,
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    pub fn basis(&self) -> &[CurveId] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Skew intersection matrix `J` on the basis.
    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        pair(&self.pairing, x, y)
    }

    pub fn curves(&self) -> &[(CurveId, Vec<i64>)] {
        &self.curves
    }

    pub fn class_of(&self, id: &CurveId) -> Result<&[i64]> {
        self.curve_index
            .get(id)
            .map(|&i| self.curves[i].1.as_slice())
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn has_curve(&self, id: &CurveId) -> bool {
        self.curve_index.contains_key(id)
    }

    pub fn edge_curves(&self) -> Vec<CurveId> {
        (0..self.edge_count).map(|edge| CurveId::Edge { edge }).collect()
    }

    /// Page boundary components in vertex/slot order.
    pub fn boundary_curves(&self) -> Vec<CurveId> {
        self.pieces
            .iter()
            .flat_map(|p| (0..p.page_boundary_count(self.capped)).map(|s| CurveId::boundary(&p.vertex, s)))
            .collect()
    }

    pub fn capped_boundaries(&self) -> &[CurveId] {
        &self.capped_boundaries
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    pub fn arcs(&self) -> &[ArcFunctional] {
        &self.arcs
    }

    pub fn component_of_curve(&self, id: &CurveId) -> Option<usize> {
        let v = self.class_of(id).ok()?;
        self.components
            .iter()
            .position(|c| v.iter().enumerate().any(|(i, &x)| x != 0 && c.basis_range.contains(&i)))
    }

    pub fn genus(&self) -> usize {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn boundary_count(&self) -> usize {
        self.components.iter().map(|c| c.boundary.len()).sum()
    }

    pub fn summary(&self) -> SurfaceSummary {
        let mut components: Vec<(usize, usize)> = self.components.iter().map(|c| (c.genus, c.boundary.len())).collect();
        components.sort_unstable();
        let SmithForm { divisors, .. } = smith_normal_form(&self.pairing);
        SurfaceSummary {
            components,
            h1_rank: self.rank(),
            pairing_divisors: divisors.iter().map(ToString::to_string).collect(),
        }
    }
}

/// `χ = Σ (2 − 2g − b)` over the page components.
pub fn euler_characteristic(s: &SurfaceModel) -> i64 {
    s.components.iter().map(SurfaceComponent::euler_characteristic).sum()
}

/// `Σ χ(Fᵢ) − 2E`, the same number computed from the pieces.
pub fn euler_characteristic_from_pieces(s: &SurfaceModel) -> i64 {
    s.pieces
        .iter()
        .map(|p| 2 - 2 * p.genus as i64 - p.page_boundary_count(s.capped) as i64)
        .sum::<i64>()
        - 2 * s.edge_count as i64
}
