//! Crystallizations of mapping tori.
//!
//! Given a crystallization `Γ` of a closed `d`-manifold on colors `0..=d`
//! and shift-1 automorphisms `I`, `Ĩ` of it, the result lives on colors
//! `0..=d+1` (all color arithmetic mod `d + 2`) and has `d + 2` copies of
//! the vertex set, named `"{k}:{j}"` for copy `k` and base vertex `j`:
//!
//! * copy `k` carries the base edges of colors `0..d`, each color `c`
//!   becoming `c + k`;
//! * gluing stage `k = 1..=d+1` joins `(k-1):I(j)` to `k:j` with color
//!   `k - 2` (so stage 1 uses color `d + 1` and stage `d + 1` uses `d - 1`);
//! * the closing stage joins `0:j` to `(d+1):Ĩ(j)` with color `d`.
//!
//! Copy `k` then misses exactly colors `k - 2` and `k - 1` before gluing,
//! and the stages supply them.

use serde::Serialize;

use crate::catalog::{class_behavior, ClassBehavior};
use crate::error::{Error, Result};
use crate::graph::{Bipartiteness, ColoredGraph, GraphBuilder};
use crate::iso::ShiftIsomorphism;

#[derive(Debug, Clone)]
pub struct TorusBuild {
    pub result: ColoredGraph,
    pub base: ColoredGraph,
    /// The isomorphism used by the gluing stages.
    pub iso: ShiftIsomorphism,
    /// The isomorphism used by the closing stage.
    pub closing: ShiftIsomorphism,
    /// `intermediates[k - 1]` is the partial graph on copies `0..=k` after
    /// gluing stages `1..=k`; empty unless requested.
    pub intermediates: Vec<ColoredGraph>,
}

impl TorusBuild {
    /// Dimension `d` of the base manifold.
    pub fn base_dimension(&self) -> usize {
        self.base.color_count() - 1
    }

    /// Index of vertex `k:j` in the result.
    pub fn vertex(&self, copy: usize, base_vertex: usize) -> usize {
        copy * self.base.vertex_count() + base_vertex
    }
}

fn check_iso(base: &ColoredGraph, iso: &ShiftIsomorphism, what: &str) -> Result<()> {
    if iso.shift() != 1 {
        return Err(Error::IsomorphismMismatch(format!(
            "{what} shifts colors by {}, expected 1",
            iso.shift()
        )));
    }
    iso.validate(base)
        .map_err(|e| Error::IsomorphismMismatch(format!("{what}: {e}")))
}

/// Copies `0..copies`, gluing stages `1..copies`, and the closing stage when
/// `close` is set.
fn assemble(
    base: &ColoredGraph,
    iso: &ShiftIsomorphism,
    closing: &ShiftIsomorphism,
    copies: usize,
    close: bool,
) -> Result<ColoredGraph> {
    let d = base.color_count() - 1;
    let n = d + 2;
    let p = base.vertex_count();
    let names = (0..copies).flat_map(|k| (0..p).map(move |j| format!("{k}:{j}")));
    let mut b = GraphBuilder::with_vertices(n, names)?;
    let at = |k: usize, j: usize| k * p + j;

    for k in 0..copies {
        for (u, v, c) in base.edges() {
            if c < d {
                b.add_edge(at(k, u), at(k, v), (c + k) % n)?;
            }
        }
    }
    for k in 1..copies {
        for j in 0..p {
            b.add_edge(at(k - 1, iso.apply(j)), at(k, j), (k + n - 2) % n)?;
        }
    }
    if close {
        for j in 0..p {
            b.add_edge(at(0, j), at(d + 1, closing.apply(j)), d)?;
        }
    }
    Ok(b.build())
}

pub fn build_mapping_torus(
    base: &ColoredGraph,
    iso: &ShiftIsomorphism,
    closing: &ShiftIsomorphism,
    emit_intermediates: bool,
) -> Result<TorusBuild> {
    base.ensure_regular()?;
    base.ensure_connected()?;
    base.ensure_contracted()?;
    check_iso(base, iso, "gluing isomorphism")?;
    check_iso(base, closing, "closing isomorphism")?;

    let d = base.color_count() - 1;
    let result = assemble(base, iso, closing, d + 2, true)?;
    result
        .ensure_regular()
        .map_err(|e| Error::ConstructionInvalid(e.to_string()))?;
    result.ensure_contracted()?;

    let intermediates = if emit_intermediates {
        (1..=d + 1)
            .map(|k| assemble(base, iso, closing, k + 1, false))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    Ok(TorusBuild {
        result,
        base: base.clone(),
        iso: iso.clone(),
        closing: closing.clone(),
        intermediates,
    })
}

/// The automorphism `k:j ↦ (k+1):j` (copies mod `d + 2`) of the result,
/// shifting colors by one. It is an automorphism whenever the closing
/// isomorphism equals the gluing one, which is what lets the construction be
/// iterated.
pub fn induced_shift_isomorphism(build: &TorusBuild) -> Result<ShiftIsomorphism> {
    let n = build.result.color_count();
    let p = build.base.vertex_count();
    let map = (0..n).flat_map(|k| (0..p).map(move |j| ((k + 1) % n) * p + j)).collect();
    let candidate = ShiftIsomorphism::new(1, n, map);
    candidate
        .validate(&build.result)
        .map_err(|e| Error::PreconditionViolated(format!("induced map is not an automorphism: {e}")))?;
    Ok(candidate)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrientabilityEvidence {
    /// Sizes of the two color classes.
    Bipartition { class_sizes: [usize; 2] },
    /// Vertex names along an odd closed walk.
    OddCycle { vertices: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientabilityReport {
    pub orientable: bool,
    pub evidence: OrientabilityEvidence,
    pub base_bipartite: bool,
    pub iso_behavior: Option<ClassBehavior>,
    pub closing_behavior: Option<ClassBehavior>,
    /// Prediction from the base classes (always `false` for a non-bipartite
    /// base).
    pub predicted: bool,
    pub matches: bool,
}

/// Orientability of a mapping-torus build, read from bipartiteness of the
/// result and cross-checked against the prediction from the base.
///
/// Walking once around the copies, a vertex of copy `k` is joined to copy
/// `k + 1` through `I`, so `d + 1` applications of `I` and one of `Ĩ` bring
/// a 2-coloring back to copy 0. The result is bipartite exactly when the
/// accumulated class flips are consistent: with `a`, `b` set when `I`, `Ĩ`
/// preserve the classes, that is `a·(d+1) ≡ b (mod 2)`. A non-bipartite
/// base always gives a non-bipartite result.
pub fn classify_orientability(build: &TorusBuild) -> OrientabilityReport {
    let d = build.base_dimension();
    let base_classes = build.base.bipartition();
    let (iso_behavior, closing_behavior, predicted) = match base_classes.classes() {
        Some(classes) => {
            let a = class_behavior(classes, &build.iso);
            let b = class_behavior(classes, &build.closing);
            let a_bit = usize::from(a == ClassBehavior::Preserving);
            let b_bit = usize::from(b == ClassBehavior::Preserving);
            (Some(a), Some(b), (a_bit * (d + 1)) % 2 == b_bit)
        }
        None => (None, None, false),
    };
    let (orientable, evidence) = match build.result.bipartition() {
        Bipartiteness::Bipartite(classes) => {
            let ones = classes.iter().filter(|&&c| c == 1).count();
            (
                true,
                OrientabilityEvidence::Bipartition {
                    class_sizes: [classes.len() - ones, ones],
                },
            )
        }
        Bipartiteness::OddCycle(walk) => (
            false,
            OrientabilityEvidence::OddCycle {
                vertices: walk.iter().map(|&v| build.result.name(v).to_string()).collect(),
            },
        ),
    };
    OrientabilityReport {
        orientable,
        evidence,
        base_bipartite: base_classes.is_bipartite(),
        iso_behavior,
        closing_behavior,
        predicted,
        matches: orientable == predicted,
    }
}
