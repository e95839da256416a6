//! Open books on the boundary of the plumbing and the homology of the
//! 3-manifold they present.
//!
//! `H₁` of the open book `(Σ, h)` is computed per page component. The
//! mapping torus contributes `H₁(Σ) / im(h_* − 1)` plus one section class
//! `t`. Filling the binding kills the fibre circle over every binding
//! component: over the base boundary this is `t` itself, over boundary `j`
//! it is `t` plus the drift `h(arcⱼ) − arcⱼ`. A component without binding
//! is a surface bundle over the circle and keeps `t` as a free summand.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::intersection_form;
use crate::graph::{self, ConfigGraph};
use crate::mapping::{self, DehnTwist, MonodromyWord, OrientationSide};
use crate::matrix::IntMatrix;
use crate::snf::HomologyGroup;
use crate::surface::{self, CurveId, Pipeline, SurfaceModel, SurfaceOptions};

/// Framing of a 2-handle relative to the page framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HandleFraming {
    #[serde(rename = "pf-1")]
    PfMinusOne,
    #[serde(rename = "pf")]
    Pf,
    #[serde(rename = "pf+1")]
    PfPlusOne,
}

impl HandleFraming {
    pub fn offset(self) -> i64 {
        match self {
            HandleFraming::PfMinusOne => -1,
            HandleFraming::Pf => 0,
            HandleFraming::PfPlusOne => 1,
        }
    }

    /// Handle framing used on a vertex with the given `m + d`.
    pub fn for_margin(margin: i64) -> Self {
        match margin.signum() {
            -1 => HandleFraming::PfMinusOne,
            0 => HandleFraming::Pf,
            _ => HandleFraming::PfPlusOne,
        }
    }
}

impl fmt::Display for HandleFraming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HandleFraming::PfMinusOne => "pf-1",
            HandleFraming::Pf => "pf",
            HandleFraming::PfPlusOne => "pf+1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramingEntry {
    pub vertex: String,
    pub slot: usize,
    /// `cf(K) − pf(K)`; the page framing is the zero point.
    pub cf_minus_pf: i64,
    /// `None` when no 2-handle is attached along this component.
    pub handle: Option<HandleFraming>,
}

/// One entry per component of every `∂Fᵢ`, capped ones included.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FramingLedger {
    pub entries: Vec<FramingEntry>,
}

impl FramingLedger {
    /// Slot 0 of each vertex carries `cf − pf = dᵢ`, the rest zero.
    fn step_one(g: &ConfigGraph, pieces: &[surface::Piece], handle: impl Fn(usize, usize) -> Option<HandleFraming>) -> Result<Self> {
        let degrees = graph::signed_degrees(g)?;
        let mut entries = Vec::new();
        for (i, p) in pieces.iter().enumerate() {
            for slot in 0..p.boundary_count {
                entries.push(FramingEntry {
                    vertex: p.vertex.clone(),
                    slot,
                    cf_minus_pf: if slot == 0 { degrees[i] } else { 0 },
                    handle: handle(i, slot),
                });
            }
        }
        Ok(FramingLedger { entries })
    }

    pub fn for_vertex<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a FramingEntry> + 'a {
        self.entries.iter().filter(move |e| e.vertex == id)
    }
}

/// Sign attached to a binding component of a signed open book.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BindingSign {
    #[serde(rename = "L+")]
    Plus,
    #[serde(rename = "L-")]
    Minus,
}

impl fmt::Display for BindingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BindingSign::Plus => "L+",
            BindingSign::Minus => "L-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookPresentation {
    pub page: SurfaceModel,
    pub word: MonodromyWord,
    pub binding: Vec<CurveId>,
    pub signed_labels: Option<BTreeMap<CurveId, BindingSign>>,
    pub ledger: FramingLedger,
    pub empty_binding: bool,
}

impl OpenBookPresentation {
    fn new(page: SurfaceModel, word: MonodromyWord, ledger: FramingLedger) -> Self {
        let binding = page.boundary_curves();
        OpenBookPresentation {
            empty_binding: binding.is_empty(),
            page,
            word,
            binding,
            signed_labels: None,
            ledger,
        }
    }
}

/// `Σᵢ over handled components of (framing − cf)` per vertex, which must
/// equal `mᵢ`. Vertices with an unhandled component are skipped.
pub fn self_intersection_audit(g: &ConfigGraph, ledger: &FramingLedger) -> Result<Vec<(String, i64)>> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let entries: Vec<&FramingEntry> = ledger.for_vertex(&v.id).collect();
        if entries.is_empty() || entries.iter().any(|e| e.handle.is_none()) {
            continue;
        }
        let total: i64 = entries
            .iter()
            .map(|e| e.handle.map_or(0, HandleFraming::offset) - e.cf_minus_pf)
            .sum();
        if total != v.m {
            return Err(Error::AuditMismatch {
                vertex: v.id.clone(),
                got: total,
                expected: v.m,
            });
        }
        out.push((v.id.clone(), total));
    }
    Ok(out)
}

pub fn assemble_positive(g: &ConfigGraph) -> Result<OpenBookPresentation> {
    assemble_positive_with(g, SurfaceOptions::default())
}

pub fn assemble_positive_with(g: &ConfigGraph, opts: SurfaceOptions) -> Result<OpenBookPresentation> {
    let page = surface::build_surface_with(g, Pipeline::Positive, opts)?;
    let word = mapping::h_positive(g, &page)?;
    let ledger = FramingLedger::step_one(g, page.pieces(), |_, _| Some(HandleFraming::PfPlusOne))?;
    self_intersection_audit(g, &ledger)?;
    Ok(OpenBookPresentation::new(page, word, ledger))
}

pub fn assemble_plumbing(g: &ConfigGraph) -> Result<OpenBookPresentation> {
    assemble_plumbing_with(g, SurfaceOptions::default())
}

pub fn assemble_plumbing_with(g: &ConfigGraph, opts: SurfaceOptions) -> Result<OpenBookPresentation> {
    let opts = SurfaceOptions {
        cap_flagged: true,
        ..opts
    };
    let page = surface::build_surface_with(g, Pipeline::Plumbing, opts)?;
    let word = mapping::h_plumbing(g, &page)?;
    let margins = graph::margins(g)?;
    let ledger = FramingLedger::step_one(g, page.pieces(), |i, _| Some(HandleFraming::for_margin(margins[i])))?;
    self_intersection_audit(g, &ledger)?;
    Ok(OpenBookPresentation::new(page, word, ledger))
}

/// Signed open book of a non-positive graph: `g_aug` comes from
/// [`graph::augment_to_positive`]. Bindings in `caps` receive `pf + 1`
/// handles and keep their right boundary twist (`L⁻`); the rest stay open
/// and lose it (`L⁺`). `None` caps every binding of a non-auxiliary vertex.
pub fn partial_cap(g_aug: &ConfigGraph, caps: Option<&[CurveId]>) -> Result<OpenBookPresentation> {
    let page = surface::build_surface(g_aug, Pipeline::Positive)?;
    let auxiliary: BTreeMap<&str, bool> = g_aug.vertices().iter().map(|v| (v.id.as_str(), v.auxiliary)).collect();
    let all = page.boundary_curves();
    let capped: Vec<CurveId> = match caps {
        Some(list) => {
            for c in list {
                if !all.contains(c) {
                    return Err(Error::UnknownCurve(c.to_string()));
                }
                if c.vertex().is_some_and(|v| auxiliary[v]) {
                    return Err(Error::AuxiliaryCap(c.to_string()));
                }
            }
            list.to_vec()
        }
        None => all.iter().filter(|c| !c.vertex().is_some_and(|v| auxiliary[v])).cloned().collect(),
    };

    let caps_word = MonodromyWord::new(
        all.iter().filter(|c| capped.contains(c)).cloned().map(DehnTwist::right).collect(),
        OrientationSide::MinusBoundaryOfX,
    );
    let word = mapping::sigma_inverse(g_aug, &page)?.then(&caps_word);

    let pieces = page.pieces().to_vec();
    let ledger = FramingLedger::step_one(g_aug, &pieces, |i, slot| {
        capped
            .contains(&CurveId::boundary(&pieces[i].vertex, slot))
            .then_some(HandleFraming::PfPlusOne)
    })?;
    self_intersection_audit(g_aug, &ledger)?;

    let labels = all
        .iter()
        .map(|c| {
            let sign = if capped.contains(c) { BindingSign::Minus } else { BindingSign::Plus };
            (c.clone(), sign)
        })
        .collect();
    let mut ob = OpenBookPresentation::new(page, word, ledger);
    ob.signed_labels = Some(labels);
    Ok(ob)
}

/// `H₁` of the closed 3-manifold presented by the open book.
pub fn boundary_h1(ob: &OpenBookPresentation) -> Result<HomologyGroup> {
    let s = &ob.page;
    let h = mapping::homology_action(s, &ob.word)?;
    let drifts = mapping::relative_action_defect(s, &ob.word)?;
    let mut total = HomologyGroup::trivial();
    for (c, comp) in s.components().iter().enumerate() {
        let range = comp.basis_range.clone();
        let dim = range.len();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for col in range.clone() {
            let rel: Vec<i64> = range.clone().map(|row| h[(row, col)] - i64::from(row == col)).collect();
            if rel.iter().any(|&x| x != 0) {
                relations.push(rel);
            }
        }
        for (arc, (target, drift)) in s.arcs().iter().zip(&drifts) {
            debug_assert_eq!(&arc.target, target);
            if arc.component == c {
                relations.push(drift[range.clone()].to_vec());
            }
        }
        let mut group = HomologyGroup::cokernel(&IntMatrix::from_columns(dim, &relations));
        if comp.boundary.is_empty() {
            group = group.direct_sum(&HomologyGroup::free(1));
        }
        total = total.direct_sum(&group);
    }
    Ok(total)
}

/// `Z^(2Σgᵢ) ⊕ coker Q(G)` for forests.
pub fn plumbing_boundary_h1_oracle(g: &ConfigGraph) -> Result<HomologyGroup> {
    g.require_valid()?;
    if !g.is_forest()? {
        return Err(Error::OracleUndefined);
    }
    let genus: i64 = g.vertices().iter().map(|v| v.genus).sum();
    Ok(intersection_form(g)?.cokernel().direct_sum(&HomologyGroup::free(2 * genus as usize)))
}

/// One line of the surgery export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryLine {
    pub vertex: String,
    pub slot: usize,
    pub framing: HandleFraming,
    pub margin: i64,
    pub cf_minus_pf: i64,
}

/// Handle framings on every `∂Fᵢ` component for the plumbing construction.
pub fn surgery_framings(g: &ConfigGraph) -> Result<Vec<SurgeryLine>> {
    let pieces = surface::build_pieces(g, Pipeline::Plumbing)?;
    let margins = graph::margins(g)?;
    let ledger = FramingLedger::step_one(g, &pieces, |i, _| Some(HandleFraming::for_margin(margins[i])))?;
    self_intersection_audit(g, &ledger)?;
    let index: BTreeMap<&str, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    Ok(ledger
        .entries
        .into_iter()
        .map(|e| SurgeryLine {
            margin: margins[index[e.vertex.as_str()]],
            framing: e.handle.expect("every component is handled"),
            cf_minus_pf: e.cf_minus_pf,
            vertex: e.vertex,
            slot: e.slot,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;
    use crate::mapping::Handedness;

    fn h1(ob: &OpenBookPresentation) -> String {
        boundary_h1(ob).unwrap().to_string()
    }

    #[test]
    fn trivial_pages() {
        let disk = assemble_positive(&ConfigGraph::new().vertex("v", 0, 1)).unwrap();
        assert_eq!(h1(&disk), "0");
        let mut annulus = assemble_positive(&ConfigGraph::new().vertex("v", 0, 2)).unwrap();
        annulus.word.twists.clear();
        assert_eq!(h1(&annulus), "Z");
    }

    #[test]
    fn lens_spaces() {
        for m in 1..8u64 {
            let ob = assemble_positive(&ConfigGraph::new().vertex("v", 0, m as i64)).unwrap();
            assert_eq!(boundary_h1(&ob).unwrap(), HomologyGroup::cyclic(m));
            assert_eq!(ob.word.len(), m as usize);
        }
    }

    #[test]
    fn two_unit_spheres() {
        let g = ConfigGraph::new().vertex("a", 0, 1).vertex("b", 0, 1).edge("a", "b");
        let ob = assemble_positive(&g).unwrap();
        assert_eq!(ob.page.boundary_count(), 4);
        assert_eq!(ob.page.genus(), 0);
        assert_eq!(ob.word.count(Handedness::Left), 1);
        assert_eq!(ob.word.count(Handedness::Right), 4);
        // det [[1,1],[1,1]] = 0
        assert_eq!(h1(&ob), "Z");
        let audit = self_intersection_audit(&g, &ob.ledger).unwrap();
        assert_eq!(audit, vec![("a".to_string(), 1), ("b".to_string(), 1)]);
    }

    #[test]
    fn sphere_bundle() {
        let ob = assemble_plumbing(&ConfigGraph::new().vertex("v", 0, 0)).unwrap();
        assert!(ob.empty_binding);
        assert_eq!(ob.page.boundary_count(), 0);
        assert_eq!(h1(&ob), "Z");
        assert_eq!(ob.ledger.entries[0].handle, Some(HandleFraming::Pf));
    }

    #[test]
    fn negative_single_vertex() {
        let ob = assemble_plumbing(&ConfigGraph::new().vertex("v", 0, -3)).unwrap();
        assert_eq!(ob.page.boundary_count(), 3);
        assert_eq!(ob.word.count(Handedness::Right), 3);
        assert_eq!(h1(&ob), "Z/3");
    }

    #[test]
    fn negative_edge() {
        let g = ConfigGraph::new().vertex("a", 0, 3).vertex("b", 0, 2).signed_edge("a", "b", Sign::Minus);
        let ob = assemble_plumbing(&g).unwrap();
        assert_eq!(boundary_h1(&ob).unwrap(), plumbing_boundary_h1_oracle(&g).unwrap());
        assert_eq!(h1(&ob), "Z/5");
    }

    #[test]
    fn audits() {
        let g3 = ConfigGraph::new().vertex("a", 0, -3).vertex("b", 0, -3).edges_between("a", "b", 4);
        let ob = assemble_positive(&g3).unwrap();
        let a: Vec<&FramingEntry> = ob.ledger.for_vertex("a").collect();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].cf_minus_pf, 4);
        assert_eq!(self_intersection_audit(&g3, &ob.ledger).unwrap()[0].1, -3);

        let mut broken = ob.ledger.clone();
        broken.entries[0].cf_minus_pf = 0;
        assert!(matches!(
            self_intersection_audit(&g3, &broken),
            Err(Error::AuditMismatch { .. })
        ));
    }

    #[test]
    fn oracle_rejects_cycles() {
        let g = ConfigGraph::new().vertex("a", 0, 1).vertex("b", 0, 1).edges_between("a", "b", 2);
        assert_eq!(plumbing_boundary_h1_oracle(&g), Err(Error::OracleUndefined));
    }

    #[test]
    fn partial_capping() {
        let g = graph::augment_to_positive(&ConfigGraph::new().vertex("v", 0, 0)).unwrap();
        let ob = partial_cap(&g, None).unwrap();
        let labels = ob.signed_labels.as_ref().unwrap();
        assert_eq!(labels[&CurveId::boundary("v", 0)], BindingSign::Minus);
        assert_eq!(labels.values().filter(|s| **s == BindingSign::Plus).count(), 1);
        assert_eq!(h1(&ob), "Z");

        let g = graph::augment_to_positive(&ConfigGraph::new().vertex("v", 0, -1)).unwrap();
        let ob = partial_cap(&g, None).unwrap();
        assert_eq!(ob.signed_labels.unwrap().values().filter(|s| **s == BindingSign::Plus).count(), 2);

        let aux = g.vertices()[1].id.clone();
        assert!(matches!(
            partial_cap(&g, Some(&[CurveId::boundary(&aux, 0)])),
            Err(Error::AuxiliaryCap(_))
        ));

        let pos = ConfigGraph::new().vertex("v", 0, 3);
        let full = partial_cap(&pos, None).unwrap();
        let plain = assemble_positive(&pos).unwrap();
        assert_eq!(full.word, plain.word);
        assert!(full.signed_labels.unwrap().values().all(|s| *s == BindingSign::Minus));
    }

    #[test]
    fn surgery_lines() {
        let lines = surgery_framings(&ConfigGraph::new().vertex("v", 0, 0)).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].framing, HandleFraming::Pf);
        let lines = surgery_framings(&ConfigGraph::new().vertex("v", 0, -3)).unwrap();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.framing == HandleFraming::PfMinusOne));
    }
}
