//! Dehn-twist words on the page and their action on homology.
//!
//! A word lists twists in application order: the first twist acts first.
//! The composite `σ(G)⁻¹ ∘ δ(G)` is stored as the twists of `σ⁻¹` followed
//! by those of `δ`; the two factors twist disjoint curves and commute, so
//! either reading gives the same mapping class.
//!
//! A twist of handedness `ε` (`+1` right, `−1` left) about `c` acts on
//! `H₁(Σ)` by the transvection `x ↦ x + ε⟨x, c⟩ c`.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{self, ConfigGraph};
use crate::matrix::IntMatrix;
use crate::surface::{CurveId, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    pub fn sign(self) -> i64 {
        match self {
            Handedness::Right => 1,
            Handedness::Left => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Handedness::Right => Handedness::Left,
            Handedness::Left => Handedness::Right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DehnTwist {
    pub curve: CurveId,
    pub handedness: Handedness,
}

impl DehnTwist {
    pub fn right(curve: CurveId) -> Self {
        DehnTwist {
            curve,
            handedness: Handedness::Right,
        }
    }

    pub fn left(curve: CurveId) -> Self {
        DehnTwist {
            curve,
            handedness: Handedness::Left,
        }
    }
}

impl fmt::Display for DehnTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp = match self.handedness {
            Handedness::Right => "",
            Handedness::Left => "^-1",
        };
        write!(f, "T({}){}", self.curve, exp)
    }
}

/// Which oriented 3-manifold a word describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationSide {
    BoundaryOfX,
    MinusBoundaryOfX,
}

impl OrientationSide {
    pub fn reversed(self) -> Self {
        match self {
            OrientationSide::BoundaryOfX => OrientationSide::MinusBoundaryOfX,
            OrientationSide::MinusBoundaryOfX => OrientationSide::BoundaryOfX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonodromyWord {
    pub twists: Vec<DehnTwist>,
    pub orientation_side: OrientationSide,
}

impl MonodromyWord {
    pub fn new(twists: Vec<DehnTwist>, orientation_side: OrientationSide) -> Self {
        MonodromyWord {
            twists,
            orientation_side,
        }
    }

    /// Checks that every curve is registered on `s`.
    pub fn on(s: &SurfaceModel, twists: Vec<DehnTwist>, orientation_side: OrientationSide) -> Result<Self> {
        for t in &twists {
            s.class_of(&t.curve)?;
        }
        Ok(Self::new(twists, orientation_side))
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &MonodromyWord) -> MonodromyWord {
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().cloned());
        MonodromyWord::new(twists, self.orientation_side)
    }

    pub fn count(&self, handedness: Handedness) -> usize {
        self.twists.iter().filter(|t| t.handedness == handedness).count()
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.twists.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Reversed order, flipped handedness.
pub fn invert(w: &MonodromyWord) -> MonodromyWord {
    MonodromyWord::new(
        w.twists
            .iter()
            .rev()
            .map(|t| DehnTwist {
                curve: t.curve.clone(),
                handedness: t.handedness.flip(),
            })
            .collect(),
        w.orientation_side,
    )
}

fn require_positive_surface(g: &ConfigGraph) -> Result<()> {
    graph::require_positive(g)
}

/// One right twist about every edge circle, in edge order.
pub fn sigma(g: &ConfigGraph, s: &SurfaceModel) -> Result<MonodromyWord> {
    require_positive_surface(g)?;
    Ok(MonodromyWord::new(
        s.edge_curves().into_iter().map(DehnTwist::right).collect(),
        OrientationSide::MinusBoundaryOfX,
    ))
}

/// One right twist about every page boundary component, in vertex/slot order.
pub fn delta(g: &ConfigGraph, s: &SurfaceModel) -> Result<MonodromyWord> {
    require_positive_surface(g)?;
    Ok(MonodromyWord::new(
        s.boundary_curves().into_iter().map(DehnTwist::right).collect(),
        OrientationSide::MinusBoundaryOfX,
    ))
}

/// `σ(G)⁻¹` as left twists in edge order; the edge circles are pairwise
/// disjoint, so this equals [`invert`] of [`sigma`].
pub fn sigma_inverse(g: &ConfigGraph, s: &SurfaceModel) -> Result<MonodromyWord> {
    let mut w = sigma(g, s)?;
    for t in &mut w.twists {
        t.handedness = t.handedness.flip();
    }
    Ok(w)
}

/// `σ(G)⁻¹ ∘ δ(G)`, describing `−∂X`. Words list twists in application
/// order, so `σ⁻¹` comes first; the two factors commute anyway.
pub fn h_positive(g: &ConfigGraph, s: &SurfaceModel) -> Result<MonodromyWord> {
    Ok(sigma_inverse(g, s)?.then(&delta(g, s)?))
}

/// Monodromy on `∂X` for a signed plumbing graph: right (left) twists on
/// `+` (`−`) edge circles, then left twists on the boundary of vertices with
/// `m + d > 0` and right twists where `m + d < 0`. Capped vertices
/// (`m + d = 0`) contribute nothing.
pub fn h_plumbing(g: &ConfigGraph, s: &SurfaceModel) -> Result<MonodromyWord> {
    g.require_valid()?;
    let margins = graph::margins(g)?;
    let mut twists: Vec<DehnTwist> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(edge, e)| DehnTwist {
            curve: CurveId::Edge { edge },
            handedness: if e.sign.value() > 0 { Handedness::Right } else { Handedness::Left },
        })
        .collect();
    for (v, margin) in g.vertices().iter().zip(margins) {
        let handedness = match margin.signum() {
            1 => Handedness::Left,
            -1 => Handedness::Right,
            _ => continue,
        };
        for b in s.boundary_curves().into_iter().filter(|b| b.vertex() == Some(v.id.as_str())) {
            twists.push(DehnTwist { curve: b, handedness });
        }
    }
    MonodromyWord::on(s, twists, OrientationSide::BoundaryOfX)
}

/// Matrix of `h_*` on `H₁(Σ)`; column `i` is the image of basis vector `i`.
pub fn homology_action(s: &SurfaceModel, w: &MonodromyWord) -> Result<IntMatrix> {
    let n = s.rank();
    let j = s.pairing();
    let mut h = IntMatrix::identity(n);
    for t in &w.twists {
        let c = s.class_of(&t.curve)?;
        let jc = j.mul_vec(c);
        if jc.iter().all(|&x| x == 0) {
            continue;
        }
        let eps = t.handedness.sign();
        // h ← T_c h, column by column
        for col in 0..n {
            let coef: i64 = (0..n).map(|r| h[(r, col)] * jc[r]).sum();
            if coef == 0 {
                continue;
            }
            for (r, &cr) in c.iter().enumerate() {
                h[(r, col)] += eps * coef * cr;
            }
        }
    }
    Ok(h)
}

/// For each non-base boundary `j`, the class `h(arcⱼ) − arcⱼ ∈ H₁(Σ)` of the
/// reference arc from the base boundary to `j`.
pub fn relative_action_defect(s: &SurfaceModel, w: &MonodromyWord) -> Result<Vec<(CurveId, Vec<i64>)>> {
    let n = s.rank();
    let j = s.pairing();
    let classes: Vec<(&[i64], Vec<i64>, i64)> = w
        .twists
        .iter()
        .map(|t| {
            let c = s.class_of(&t.curve)?;
            Ok((c, j.mul_vec(c), t.handedness.sign()))
        })
        .collect::<Result<_>>()?;
    Ok(s.arcs()
        .iter()
        .map(|arc| {
            let mut drift = vec![0i64; n];
            for (c, jc, eps) in &classes {
                let hit: i64 = arc.functional.iter().zip(*c).map(|(a, b)| a * b).sum::<i64>()
                    + drift.iter().zip(jc).map(|(a, b)| a * b).sum::<i64>();
                if hit != 0 {
                    for (d, &x) in drift.iter_mut().zip(c.iter()) {
                        *d += eps * hit * x;
                    }
                }
            }
            (arc.target.clone(), drift)
        })
        .collect())
}
