//! Full pipeline report for one graph.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::graph::{self, AreaAdmissibility, ConfigGraph};
use crate::mapping::OrientationSide;
use crate::obstruction::{self, ObstructionReport};
use crate::open_book::{self, FramingEntry, OpenBookPresentation};
use crate::snf::HomologyGroup;
use crate::surface::Pipeline;

/// A pipeline precondition that does not hold, or a failure inside it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("positive pipeline requires an unsigned graph (edge {0} has sign -1)")]
    Signed(usize),
    #[error("not positive: vertex `{vertex}` has m + d = {margin}")]
    NotPositive { vertex: String, margin: i64 },
    #[error("{0}")]
    Area(String),
    #[error(transparent)]
    Pipeline(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageComponent {
    pub vertices: Vec<String>,
    pub genus: usize,
    pub boundary_count: usize,
    pub boundary: Vec<String>,
    pub base_boundary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistEntry {
    pub curve: String,
    pub handedness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BindingEntry {
    pub curve: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub oracle: HomologyGroup,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AreaSection {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pipeline: Pipeline,
    pub vertices: usize,
    pub edges: usize,
    pub margins: Vec<(String, i64)>,
    pub page: Vec<PageComponent>,
    pub euler_characteristic: i64,
    pub orientation: String,
    pub monodromy: Vec<TwistEntry>,
    pub binding: Vec<BindingEntry>,
    pub empty_binding: bool,
    pub ledger: Vec<FramingEntry>,
    pub audit: Vec<(String, i64)>,
    pub boundary_h1: HomologyGroup,
    pub oracle: Option<OracleComparison>,
    pub area: Option<AreaSection>,
    pub obstruction: Option<ObstructionReport>,
    pub findings: Vec<String>,
}

fn area_section(a: &AreaAdmissibility) -> AreaSection {
    let (lambda, witness) = match a {
        AreaAdmissibility::Admissible { lambda } => (Some(lambda.to_string()), None),
        AreaAdmissibility::Inadmissible { witness, .. } => (None, Some(witness.clone())),
        _ => (None, None),
    };
    AreaSection {
        status: a.to_string(),
        lambda,
        witness,
    }
}

fn check_preconditions(g: &ConfigGraph, pipeline: Pipeline) -> Result<Option<AreaAdmissibility>, ReportError> {
    let v = graph::validate(g);
    if !v.is_ok() {
        return Err(ReportError::Invalid(v.to_string()));
    }
    if !g.is_unsigned() {
        return match pipeline {
            Pipeline::Positive => {
                let k = g.edges().iter().position(|e| e.sign == graph::Sign::Minus).unwrap_or(0);
                Err(ReportError::Signed(k))
            }
            Pipeline::Plumbing => Ok(None),
        };
    }
    let area = graph::check_area_admissibility(g)?;
    if pipeline == Pipeline::Positive {
        let p = graph::is_positive(g)?;
        if let Some((vertex, margin)) = p.first_failure() {
            return Err(ReportError::NotPositive {
                vertex: vertex.to_string(),
                margin,
            });
        }
        match &area {
            AreaAdmissibility::Inadmissible { .. } | AreaAdmissibility::AreasIncomplete { .. } => {
                return Err(ReportError::Area(area.to_string()))
            }
            _ => {}
        }
    }
    Ok(Some(area))
}

fn assemble(g: &ConfigGraph, pipeline: Pipeline) -> Result<OpenBookPresentation, Error> {
    match pipeline {
        Pipeline::Positive => open_book::assemble_positive(g),
        Pipeline::Plumbing => open_book::assemble_plumbing(g),
    }
}

pub fn build_report(g: &ConfigGraph, pipeline: Pipeline) -> Result<Report, ReportError> {
    let area = check_preconditions(g, pipeline)?;
    let ob = assemble(g, pipeline)?;
    let h1 = open_book::boundary_h1(&ob)?;
    let oracle = if g.is_forest()? {
        let oracle = open_book::plumbing_boundary_h1_oracle(g)?;
        Some(OracleComparison {
            agrees: oracle == h1,
            oracle,
        })
    } else {
        None
    };
    let names = |idx: &[usize]| idx.iter().map(|&i| g.vertices()[i].id.clone()).collect();
    let page = ob
        .page
        .components()
        .iter()
        .map(|c| PageComponent {
            vertices: names(&c.vertices),
            genus: c.genus,
            boundary_count: c.boundary.len(),
            boundary: c.boundary.iter().map(ToString::to_string).collect(),
            base_boundary: c.base_boundary.as_ref().map(ToString::to_string),
        })
        .collect();
    let (obstruction, findings) = if g.is_unsigned() {
        let report = obstruction::fillability_obstruction(g);
        let findings = if report.is_obstructed() {
            obstruction::relation_probe(g)?
        } else {
            Vec::new()
        };
        (Some(report), findings)
    } else {
        (None, Vec::new())
    };
    let margins = g
        .vertices()
        .iter()
        .zip(graph::margins(g)?)
        .map(|(v, m)| (v.id.clone(), m))
        .collect();
    Ok(Report {
        pipeline,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        margins,
        euler_characteristic: crate::surface::euler_characteristic(&ob.page),
        page,
        orientation: match ob.word.orientation_side {
            OrientationSide::BoundaryOfX => "describes the boundary of X",
            OrientationSide::MinusBoundaryOfX => "describes minus the boundary of X",
        }
        .to_string(),
        monodromy: ob
            .word
            .twists
            .iter()
            .map(|t| TwistEntry {
                curve: t.curve.to_string(),
                handedness: format!("{:?}", t.handedness).to_lowercase(),
            })
            .collect(),
        binding: ob
            .binding
            .iter()
            .map(|c| BindingEntry {
                curve: c.to_string(),
                sign: ob.signed_labels.as_ref().and_then(|l| l.get(c)).map(ToString::to_string),
            })
            .collect(),
        empty_binding: ob.empty_binding,
        audit: open_book::self_intersection_audit(g, &ob.ledger)?,
        ledger: ob.ledger.entries,
        boundary_h1: h1,
        oracle,
        area: area.as_ref().map(area_section),
        obstruction,
        findings,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let pipeline = match self.pipeline {
            Pipeline::Positive => "positive",
            Pipeline::Plumbing => "plumbing",
        };
        let _ = writeln!(out, "pipeline: {pipeline}");
        let _ = writeln!(out, "graph: {} vertices, {} edges", self.vertices, self.edges);
        for (k, c) in self.page.iter().enumerate() {
            let _ = writeln!(
                out,
                "page[{k}]: Sigma_{}^{} over {{{}}}",
                c.genus,
                c.boundary_count,
                c.vertices.join(", ")
            );
        }
        let _ = writeln!(out, "euler characteristic: {}", self.euler_characteristic);
        let word: Vec<String> = self
            .monodromy
            .iter()
            .map(|t| match t.handedness.as_str() {
                "right" => format!("T({})", t.curve),
                _ => format!("T({})^-1", t.curve),
            })
            .collect();
        let _ = writeln!(
            out,
            "monodromy ({} twists, {}): {}",
            word.len(),
            self.orientation,
            if word.is_empty() { "identity".to_string() } else { word.join(" ") }
        );
        if self.empty_binding {
            let _ = writeln!(out, "binding: empty");
        } else {
            let binding: Vec<String> = self
                .binding
                .iter()
                .map(|b| match &b.sign {
                    Some(s) => format!("{}[{s}]", b.curve),
                    None => b.curve.clone(),
                })
                .collect();
            let _ = writeln!(out, "binding: {}", binding.join(" "));
        }
        let _ = writeln!(out, "framing ledger:");
        for e in &self.ledger {
            let handle = e.handle.map_or("-".to_string(), |h| h.to_string());
            let _ = writeln!(out, "  {}:{} cf-pf={} handle={}", e.vertex, e.slot, e.cf_minus_pf, handle);
        }
        let _ = writeln!(out, "H1(boundary) = {}", self.boundary_h1);
        match &self.oracle {
            Some(o) => {
                let verdict = if o.agrees { "agrees" } else { "DISAGREES" };
                let _ = writeln!(out, "tree oracle: {} ({verdict})", o.oracle);
            }
            None => {
                let _ = writeln!(out, "tree oracle: not applicable (graph has a cycle)");
            }
        }
        if let Some(a) = &self.area {
            let _ = writeln!(out, "areas: {}", a.status);
        }
        if let Some(o) = &self.obstruction {
            let _ = writeln!(out, "obstruction: {}", o.certificate);
        }
        for f in &self.findings {
            let _ = writeln!(out, "finding: {f}");
        }
        out
    }
}
