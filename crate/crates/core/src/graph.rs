//! Labelled configuration / plumbing graphs.
//!
//! A vertex carries a genus `g`, a self-intersection `m` and optionally an
//! area `a`. Edges are kept as an explicit list so that parallel edges stay
//! distinguishable; each edge later names its own neck curve on the page.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// May be negative in an invalid graph; `validate` reports it.
    pub genus: i64,
    pub m: i64,
    pub area: Option<BigRational>,
    /// Added by [`augment_to_positive`].
    pub auxiliary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: String,
    pub v: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl ConfigGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        ConfigGraph { vertices, edges }
    }

    pub fn vertex(mut self, id: &str, genus: i64, m: i64) -> Self {
        self.push_vertex(id, genus, m, None);
        self
    }

    pub fn vertex_with_area(mut self, id: &str, genus: i64, m: i64, area: BigRational) -> Self {
        self.push_vertex(id, genus, m, Some(area));
        self
    }

    pub fn edge(self, u: &str, v: &str) -> Self {
        self.signed_edge(u, v, Sign::Plus)
    }

    pub fn signed_edge(mut self, u: &str, v: &str, sign: Sign) -> Self {
        self.edges.push(Edge {
            u: u.to_string(),
            v: v.to_string(),
            sign,
        });
        self
    }

    /// `count` parallel positive edges.
    pub fn edges_between(mut self, u: &str, v: &str, count: usize) -> Self {
        for _ in 0..count {
            self = self.edge(u, v);
        }
        self
    }

    pub fn push_vertex(&mut self, id: &str, genus: i64, m: i64, area: Option<BigRational>) {
        self.vertices.push(Vertex {
            id: id.to_string(),
            genus,
            m,
            area,
            auxiliary: false,
        });
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Endpoint indices of every edge. Only meaningful on a valid graph.
    pub fn edge_endpoints(&self) -> Result<Vec<(usize, usize)>> {
        self.edges
            .iter()
            .map(|e| Ok((self.require_index(&e.u)?, self.require_index(&e.v)?)))
            .collect()
    }

    pub fn is_unsigned(&self) -> bool {
        self.edges.iter().all(|e| e.sign == Sign::Plus)
    }

    fn require_unsigned(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.sign == Sign::Minus) {
            Some(k) => Err(Error::SignedGraph(k)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.to_string()))
        }
    }

    /// Connected components as sorted lists of vertex indices, ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.vertices.len();
        let mut dsu = DisjointSets::new(n);
        for (u, v) in self.edge_endpoints()? {
            dsu.union(u, v);
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = dsu.find(i);
            let key = *first.entry(r).or_insert(i);
            by_root.entry(key).or_default().push(i);
        }
        Ok(by_root.into_values().collect())
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.components()?.len() <= 1)
    }

    /// No cycles, counting parallel edges as cycles.
    pub fn is_forest(&self) -> Result<bool> {
        let c = self.components()?.len();
        Ok(self.edges.len() + c == self.vertices.len())
    }

    /// Same graph with the edge list permuted: `perm[k]` is the old index of
    /// the new edge `k`.
    pub fn with_edge_order(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.edges.len());
        let edges = perm.iter().map(|&k| self.edges[k].clone()).collect();
        ConfigGraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Drops all areas.
    pub fn without_areas(&self) -> Self {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.area = None;
        }
        g
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    SelfLoop { edge: usize, vertex: String },
    NegativeGenus { vertex: String, genus: i64 },
    NonPositiveArea { vertex: String, area: String },
    DuplicateVertex { vertex: String },
    UnknownEndpoint { edge: usize, vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { edge, vertex } => write!(f, "self-loop: edge {edge} joins `{vertex}` to itself"),
            Violation::NegativeGenus { vertex, genus } => write!(f, "negative genus: vertex `{vertex}` has genus {genus}"),
            Violation::NonPositiveArea { vertex, area } => write!(f, "non-positive area: vertex `{vertex}` has area {area}"),
            Violation::DuplicateVertex { vertex } => write!(f, "duplicate vertex id `{vertex}`"),
            Violation::UnknownEndpoint { edge, vertex } => write!(f, "unknown endpoint: edge {edge} names missing vertex `{vertex}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("; "))
    }
}

pub fn validate(g: &ConfigGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for v in &g.vertices {
        if !seen.insert(v.id.as_str()) {
            violations.push(Violation::DuplicateVertex { vertex: v.id.clone() });
        }
        if v.genus < 0 {
            violations.push(Violation::NegativeGenus {
                vertex: v.id.clone(),
                genus: v.genus,
            });
        }
        if let Some(a) = &v.area {
            if !a.is_positive() {
                violations.push(Violation::NonPositiveArea {
                    vertex: v.id.clone(),
                    area: a.to_string(),
                });
            }
        }
    }
    for (k, e) in g.edges.iter().enumerate() {
        for end in [&e.u, &e.v] {
            if !seen.contains(end.as_str()) {
                violations.push(Violation::UnknownEndpoint {
                    edge: k,
                    vertex: end.clone(),
                });
            }
        }
        if e.u == e.v {
            violations.push(Violation::SelfLoop {
                edge: k,
                vertex: e.u.clone(),
            });
        }
    }
    ValidationReport { violations }
}

/// Sum of edge signs over the edges incident to `v`.
pub fn signed_degree(g: &ConfigGraph, v: &str) -> Result<i64> {
    g.require_index(v)?;
    Ok(g
        .edges
        .iter()
        .map(|e| (i64::from(e.u == v) + i64::from(e.v == v)) * e.sign.value())
        .sum())
}

/// Signed degrees in vertex order.
pub fn signed_degrees(g: &ConfigGraph) -> Result<Vec<i64>> {
    let mut d = vec![0; g.vertex_count()];
    for ((u, v), e) in g.edge_endpoints()?.into_iter().zip(&g.edges) {
        d[u] += e.sign.value();
        d[v] += e.sign.value();
    }
    Ok(d)
}

/// `mᵢ + dᵢ` per vertex, in vertex order.
pub fn margins(g: &ConfigGraph) -> Result<Vec<i64>> {
    Ok(signed_degrees(g)?
        .into_iter()
        .zip(&g.vertices)
        .map(|(d, v)| v.m + d)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub positive: bool,
    /// `(vertex id, mᵢ + dᵢ)` in vertex order.
    pub margins: Vec<(String, i64)>,
}

impl Positivity {
    pub fn first_failure(&self) -> Option<(&str, i64)> {
        self.margins
            .iter()
            .find(|(_, m)| *m <= 0)
            .map(|(id, m)| (id.as_str(), *m))
    }
}

pub fn is_positive(g: &ConfigGraph) -> Result<Positivity> {
    g.require_unsigned()?;
    let margins: Vec<(String, i64)> = g
        .vertices
        .iter()
        .map(|v| v.id.clone())
        .zip(margins(g)?)
        .collect();
    Ok(Positivity {
        positive: margins.iter().all(|(_, m)| *m > 0),
        margins,
    })
}

/// Positive, unsigned, valid; otherwise the first reason it is not.
pub(crate) fn require_positive(g: &ConfigGraph) -> Result<()> {
    g.require_valid()?;
    let p = is_positive(g)?;
    match p.first_failure() {
        Some((vertex, margin)) => Err(Error::NotPositive {
            vertex: vertex.to_string(),
            margin,
        }),
        None => Ok(()),
    }
}

/// Outcome of the area condition `aᵢ = λ(mᵢ + dᵢ)` for one `λ > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AreaAdmissibility {
    Admissible { lambda: BigRational },
    /// Two vertices whose ratios `aᵢ/(mᵢ+dᵢ)` differ.
    Inadmissible {
        witness: (String, String),
        ratios: (BigRational, BigRational),
    },
    AreasAbsent,
    AreasIncomplete { missing: Vec<String> },
    /// Some `mᵢ + dᵢ ≤ 0`; no positive λ can exist.
    NotPositive { vertex: String, margin: i64 },
}

impl AreaAdmissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, AreaAdmissibility::Admissible { .. })
    }
}

impl fmt::Display for AreaAdmissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AreaAdmissibility::Admissible { lambda } => write!(f, "admissible, lambda = {lambda}"),
            AreaAdmissibility::Inadmissible { witness, ratios } => write!(
                f,
                "area inadmissible: a/(m+d) is {} at `{}` but {} at `{}`",
                ratios.0, witness.0, ratios.1, witness.1
            ),
            AreaAdmissibility::AreasAbsent => write!(f, "areas absent"),
            AreaAdmissibility::AreasIncomplete { missing } => {
                write!(f, "areas incomplete: missing on {}", missing.join(", "))
            }
            AreaAdmissibility::NotPositive { vertex, margin } => write!(
                f,
                "area condition unsatisfiable: vertex `{vertex}` has m + d = {margin} <= 0"
            ),
        }
    }
}

pub fn check_area_admissibility(g: &ConfigGraph) -> Result<AreaAdmissibility> {
    g.require_valid()?;
    g.require_unsigned()?;
    let missing: Vec<String> = g
        .vertices
        .iter()
        .filter(|v| v.area.is_none())
        .map(|v| v.id.clone())
        .collect();
    if missing.len() == g.vertex_count() {
        return Ok(AreaAdmissibility::AreasAbsent);
    }
    if !missing.is_empty() {
        return Ok(AreaAdmissibility::AreasIncomplete { missing });
    }
    let margins = margins(g)?;
    if let Some((v, &margin)) = g.vertices.iter().zip(&margins).find(|(_, &m)| m <= 0) {
        return Ok(AreaAdmissibility::NotPositive {
            vertex: v.id.clone(),
            margin,
        });
    }
    let ratios: Vec<BigRational> = g
        .vertices
        .iter()
        .zip(&margins)
        .map(|(v, &m)| v.area.clone().expect("checked above") / BigRational::from_integer(m.into()))
        .collect();
    let Some(first) = ratios.first() else {
        return Ok(AreaAdmissibility::AreasAbsent);
    };
    for (i, r) in ratios.iter().enumerate().skip(1) {
        if r != first {
            return Ok(AreaAdmissibility::Inadmissible {
                witness: (g.vertices[0].id.clone(), g.vertices[i].id.clone()),
                ratios: (first.clone(), r.clone()),
            });
        }
    }
    debug_assert!(!first.is_zero());
    Ok(AreaAdmissibility::Admissible {
        lambda: first.clone(),
    })
}

/// Attaches auxiliary `(0, 0, 1)` spheres by single positive edges until
/// every vertex has `mᵢ + dᵢ = max(1, original margin)`.
pub fn augment_to_positive(g: &ConfigGraph) -> Result<ConfigGraph> {
    g.require_valid()?;
    g.require_unsigned()?;
    let margins = margins(g)?;
    let mut out = g.clone();
    let mut taken: HashSet<String> = g.vertices.iter().map(|v| v.id.clone()).collect();
    for (v, margin) in g.vertices.iter().zip(margins) {
        let needed = (1 - margin).max(0);
        for k in 0..needed {
            let mut id = format!("{}~aux{}", v.id, k);
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            out.vertices.push(Vertex {
                id: id.clone(),
                genus: 0,
                m: 0,
                area: Some(BigRational::from_integer(1.into())),
                auxiliary: true,
            });
            out.edges.push(Edge {
                u: v.id.clone(),
                v: id,
                sign: Sign::Plus,
            });
        }
    }
    Ok(out)
}
