//! Open books and plumbed 4-manifolds built from configuration graphs of
//! surfaces: page construction, Dehn-twist monodromies, exact boundary
//! homology, framing bookkeeping and adjunction-type obstructions.

pub mod batch;
pub mod error;
pub mod export;
pub mod form;
pub mod graph;
pub mod io;
pub mod mapping;
pub mod matrix;
pub mod obstruction;
pub mod open_book;
pub mod report;
pub mod snf;
pub mod surface;

pub use error::{Error, Result};
pub use form::{intersection_form, signature_counts, Inertia, IntersectionForm};
pub use graph::{
    augment_to_positive, check_area_admissibility, is_positive, validate, AreaAdmissibility, ConfigGraph, Edge,
    Sign, Vertex,
};
pub use mapping::{homology_action, invert, DehnTwist, Handedness, MonodromyWord};
pub use matrix::IntMatrix;
pub use obstruction::{disconnected_boundary_obstruction, fillability_obstruction, ObstructionReport, Verdict};
pub use open_book::{
    assemble_plumbing, assemble_positive, boundary_h1, partial_cap, plumbing_boundary_h1_oracle,
    self_intersection_audit, OpenBookPresentation,
};
pub use snf::{smith_normal_form, HomologyGroup};
pub use surface::{build_surface, CurveId, Pipeline, SurfaceModel};
