//! Adjunction-type obstructions to fillability and to disconnected convex
//! boundaries.
//!
//! Both criteria only ever rule things out. A graph they do not fire on is
//! reported as not obstructed by these criteria, never as fillable.

use serde::Serialize;

use crate::error::Result;
use crate::form::intersection_form;
use crate::graph::{self, ConfigGraph};
use crate::surface::{build_surface, Pipeline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Obstructed,
    NotObstructedByTheseCriteria,
}

/// Conditions evaluated on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriteriaTrace {
    pub connected: bool,
    pub unsigned: bool,
    pub positive: bool,
    /// `None` when the graph is invalid.
    pub b_plus: Option<usize>,
    /// First vertex with `mᵢ > 2gᵢ − 2`.
    pub adjunction_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub traces: Vec<CriteriaTrace>,
    pub certificate: String,
    /// Set when `b⁺ = 1` leaves the question open.
    pub undetermined: bool,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }
}

fn trace(g: &ConfigGraph) -> CriteriaTrace {
    let valid = graph::validate(g).is_ok();
    let unsigned = g.is_unsigned();
    CriteriaTrace {
        connected: valid && g.is_connected().unwrap_or(false),
        unsigned,
        positive: valid && unsigned && graph::is_positive(g).is_ok_and(|p| p.positive),
        b_plus: valid
            .then(|| intersection_form(g).ok().map(|q| q.signature().positive))
            .flatten(),
        adjunction_witness: g
            .vertices()
            .iter()
            .find(|v| v.m > 2 * v.genus - 2)
            .map(|v| v.id.clone()),
    }
}

fn describe(t: &CriteriaTrace) -> String {
    format!(
        "connected={}, positive={}, b+={}, adjunction witness={}",
        t.connected,
        t.positive,
        t.b_plus.map_or("n/a".to_string(), |b| b.to_string()),
        t.adjunction_witness.as_deref().unwrap_or("none"),
    )
}

/// Fires when `G` is connected and positive with `b⁺(G) > 1` and some
/// vertex has `mᵢ > 2gᵢ − 2`.
pub fn fillability_obstruction(g: &ConfigGraph) -> ObstructionReport {
    let t = trace(g);
    let b_plus = t.b_plus.unwrap_or(0);
    let fires = t.connected && t.positive && b_plus > 1 && t.adjunction_witness.is_some();
    let certificate = if fires {
        format!(
            "adjunction obstruction applies ({}): the contact boundary B(Sigma(G), h(G)) is not strongly \
             symplectically fillable, hence h(G) is not a product of right-handed Dehn twists",
            describe(&t)
        )
    } else {
        format!("criteria not met ({})", describe(&t))
    };
    let undetermined = !fires && t.connected && t.positive && b_plus == 1 && t.adjunction_witness.is_some();
    ObstructionReport {
        verdict: if fires { Verdict::Obstructed } else { Verdict::NotObstructedByTheseCriteria },
        traces: vec![t],
        certificate,
        undetermined,
    }
}

/// Fires when both graphs are connected and positive with `b⁺ > 0` and the
/// first one has a vertex with `mᵢ > 2gᵢ − 2`.
pub fn disconnected_boundary_obstruction(g1: &ConfigGraph, g2: &ConfigGraph) -> ObstructionReport {
    let (t1, t2) = (trace(g1), trace(g2));
    let ok = |t: &CriteriaTrace| t.connected && t.positive && t.b_plus.unwrap_or(0) > 0;
    let fires = ok(&t1) && ok(&t2) && t1.adjunction_witness.is_some();
    let certificate = if fires {
        format!(
            "no connected symplectic 4-manifold has disconnected convex boundary \
             B(Sigma(G1), h(G1)) + B(Sigma(G2), h(G2)) (G1: {}; G2: {})",
            describe(&t1),
            describe(&t2)
        )
    } else {
        format!("criteria not met (G1: {}; G2: {})", describe(&t1), describe(&t2))
    };
    ObstructionReport {
        verdict: if fires { Verdict::Obstructed } else { Verdict::NotObstructedByTheseCriteria },
        traces: vec![t1, t2],
        certificate,
        undetermined: false,
    }
}

/// Statements about boundary-interior relations `δ = w` on `Σ(G)` that
/// follow from a fired fillability obstruction. Empty when it does not fire.
pub fn relation_probe(g: &ConfigGraph) -> Result<Vec<String>> {
    if !fillability_obstruction(g).is_obstructed() {
        return Ok(Vec::new());
    }
    let page = build_surface(g, Pipeline::Positive)?;
    let (genus, n) = (page.genus(), page.boundary_count());
    let mut findings = vec![format!(
        "no boundary-interior relation delta = w in the mapping class group of Sigma_{genus}^{n} \
         has w containing all {} twists of sigma(G)",
        g.edge_count()
    )];

    // two spheres joined by k parallel edges
    let vs = g.vertices();
    if vs.len() == 2 && vs.iter().all(|v| v.genus == 0) && g.edge_count() > 0 {
        let margins = graph::margins(g)?;
        let k = g.edge_count();
        findings.push(format!(
            "no boundary-interior relation on Sigma_{}^{} with {} disjoint curves separating it into two \
             genus-0 pieces holding {} | {} boundary components",
            k - 1,
            n,
            k,
            margins[0],
            margins[1]
        ));
    }
    if genus == 0 {
        findings.push(format!("no lantern-type relation on Sigma_0^{n}"));
    }
    Ok(findings)
}
