//! Explicit crystallizations: spheres, sphere bundles over the circle, lens
//! spaces `L(q,1)`, projective spaces and small closed surfaces.
//!
//! Every entry is validated on construction (regular, contracted,
//! connected) and carries all of its color-shift-by-one automorphisms, each
//! tagged with how it acts on the bipartition when there is one.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, GraphBuilder};
use crate::iso::{find_shift_isomorphisms, ShiftIsomorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Rp2,
    Klein,
    Torus,
    Genus2,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 4] = [SurfaceKind::Rp2, SurfaceKind::Klein, SurfaceKind::Torus, SurfaceKind::Genus2];

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Rp2 => "rp2",
            SurfaceKind::Klein => "klein",
            SurfaceKind::Torus => "torus",
            SurfaceKind::Genus2 => "genus2",
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, SurfaceKind::Torus | SurfaceKind::Genus2)
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SurfaceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown surface kind {s:?} (expected rp2, klein, torus or genus2)")))
    }
}

/// A catalog family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Sphere { d: usize },
    SphereBundle { d: usize, orientable: bool },
    Lens { q: usize },
    Projective { d: usize },
    Surface { kind: SurfaceKind },
}

impl Family {
    pub fn build(self) -> Result<CatalogEntry> {
        match self {
            Family::Sphere { d } => sphere(d),
            Family::SphereBundle { d, orientable } => sphere_bundle(d, orientable),
            Family::Lens { q } => lens(q),
            Family::Projective { d } => projective(d),
            Family::Surface { kind } => surface(kind),
        }
    }

    /// Human-readable name of the represented manifold.
    pub fn manifold(self) -> String {
        match self {
            Family::Sphere { d } => format!("S^{d}"),
            Family::SphereBundle { d, orientable: true } => format!("S^{} x S^1", d - 1),
            Family::SphereBundle { d, orientable: false } => format!("S^{} ~x S^1", d - 1),
            Family::Lens { q } => format!("L({q},1)"),
            Family::Projective { d } => format!("RP^{d}"),
            Family::Surface { kind } => match kind {
                SurfaceKind::Rp2 => "RP^2".into(),
                SurfaceKind::Klein => "Klein bottle".into(),
                SurfaceKind::Torus => "T^2".into(),
                SurfaceKind::Genus2 => "T^2 # T^2".into(),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sphere { d } => write!(f, "sphere(d={d})"),
            Family::SphereBundle { d, orientable } => write!(
                f,
                "sphere_bundle(d={d}, {})",
                if *orientable { "orientable" } else { "non-orientable" }
            ),
            Family::Lens { q } => write!(f, "lens(q={q})"),
            Family::Projective { d } => write!(f, "projective(d={d})"),
            Family::Surface { kind } => write!(f, "surface({kind})"),
        }
    }
}

/// How an automorphism of a bipartite graph acts on the two classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassBehavior {
    Preserving,
    Swapping,
}

/// Class behavior of `iso` on a connected graph with the given 2-coloring.
pub fn class_behavior(classes: &[u8], iso: &ShiftIsomorphism) -> ClassBehavior {
    if classes[iso.apply(0)] == classes[0] {
        ClassBehavior::Preserving
    } else {
        ClassBehavior::Swapping
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedIsomorphism {
    pub iso: ShiftIsomorphism,
    /// `None` when the graph is not bipartite.
    pub behavior: Option<ClassBehavior>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub family: Family,
    pub graph: ColoredGraph,
    pub shift_isomorphisms: Vec<TaggedIsomorphism>,
}

impl CatalogEntry {
    fn new(family: Family, graph: ColoredGraph) -> Result<Self> {
        let invalid = |what: &str| Error::ConstructionInvalid(format!("{family}: {what}"));
        graph.ensure_regular().map_err(|e| invalid(&e.to_string()))?;
        graph.ensure_connected().map_err(|e| invalid(&e.to_string()))?;
        graph.ensure_contracted().map_err(|e| invalid(&e.to_string()))?;
        let classes = graph.bipartition();
        let shift_isomorphisms: Vec<TaggedIsomorphism> = find_shift_isomorphisms(&graph, 1)?
            .into_iter()
            .map(|iso| TaggedIsomorphism {
                behavior: classes.classes().map(|c| class_behavior(c, &iso)),
                iso,
            })
            .collect();
        if shift_isomorphisms.is_empty() {
            return Err(invalid("no shift-1 isomorphism"));
        }
        Ok(CatalogEntry {
            family,
            graph,
            shift_isomorphisms,
        })
    }

    pub fn manifold(&self) -> String {
        self.family.manifold()
    }

    /// The lexicographically least shift-1 isomorphism.
    pub fn default_isomorphism(&self) -> &ShiftIsomorphism {
        &self.shift_isomorphisms[0].iso
    }

    /// The least shift-1 isomorphism with the given class behavior.
    pub fn isomorphism_with(&self, behavior: ClassBehavior) -> Option<&ShiftIsomorphism> {
        self.shift_isomorphisms
            .iter()
            .find(|t| t.behavior == Some(behavior))
            .map(|t| &t.iso)
    }
}

fn x(j: usize) -> String {
    format!("x{j}")
}

fn vertices(count: usize) -> impl Iterator<Item = String> {
    (0..count).map(x)
}

/// The 2-vertex crystallization of `S^d`: one edge per color.
pub fn sphere(d: usize) -> Result<CatalogEntry> {
    if d < 1 {
        return Err(Error::BadParameter(format!("sphere needs d >= 1, got {d}")));
    }
    let mut b = GraphBuilder::with_vertices(d + 1, vertices(2))?;
    for c in 0..=d {
        b.add_edge(0, 1, c)?;
    }
    CatalogEntry::new(Family::Sphere { d }, b.build())
}

fn sphere_bundle_graph(d: usize, crossed: bool) -> Result<ColoredGraph> {
    let n = d + 1;
    let mut b = GraphBuilder::with_vertices(n, vertices(2 * d + 2))?;
    // x(2i) and x(2i+1) share the d-1 colors i, i+1, ..., i+d-2.
    for i in 0..=d {
        for t in 0..d - 1 {
            b.add_edge(2 * i, 2 * i + 1, (i + t) % n)?;
        }
    }
    // Two parallel chains, step i carrying color i-1.
    for i in 0..d {
        let color = (i + n - 1) % n;
        b.add_edge(2 * i, 2 * i + 2, color)?;
        b.add_edge(2 * i + 1, 2 * i + 3, color)?;
    }
    let (a, c) = if crossed { (2 * d + 1, 2 * d) } else { (2 * d, 2 * d + 1) };
    b.add_edge(0, a, d - 1)?;
    b.add_edge(1, c, d - 1)?;
    Ok(b.build())
}

/// The `2(d+1)`-vertex crystallization of `S^{d-1} x S^1` (orientable) or the
/// twisted bundle (non-orientable). The closing color-`(d-1)` edges are laid
/// straight or crossed, whichever makes bipartiteness match the request.
pub fn sphere_bundle(d: usize, orientable: bool) -> Result<CatalogEntry> {
    if d < 3 {
        return Err(Error::BadParameter(format!("sphere_bundle needs d >= 3, got {d}")));
    }
    let family = Family::SphereBundle { d, orientable };
    for crossed in [false, true] {
        let graph = sphere_bundle_graph(d, crossed)?;
        if graph.is_bipartite() == orientable {
            return CatalogEntry::new(family, graph);
        }
    }
    Err(Error::ConstructionInvalid(format!(
        "{family}: neither closing gives the requested orientability"
    )))
}

/// The `4q`-vertex crystallization of `L(q,1)`: two `2q`-cycles in colors
/// 0/2 joined by color-1 and color-3 rungs.
pub fn lens(q: usize) -> Result<CatalogEntry> {
    if q < 2 {
        return Err(Error::BadParameter(format!("lens needs q >= 2, got {q}")));
    }
    let m = 2 * q;
    let mut b = GraphBuilder::with_vertices(4, vertices(4 * q))?;
    for j in 0..m {
        let (inner, outer) = if j % 2 == 0 { (0, 2) } else { (2, 0) };
        b.add_edge(j, (j + 1) % m, inner)?;
        b.add_edge(m + j, m + (j + 1) % m, outer)?;
        b.add_edge(j, m + (j + m - 1) % m, 1)?;
        b.add_edge(j, m + (j + 1) % m, 3)?;
    }
    CatalogEntry::new(Family::Lens { q }, b.build())
}

/// The `2^d`-vertex crystallization of `RP^d` on the vertices of the cube:
/// color `j < d` flips coordinate `j`, color `d` flips all of them. Vertex
/// `x{k}` is the 0/1 vector whose coordinate `i` is bit `i` of `k`.
pub fn projective(d: usize) -> Result<CatalogEntry> {
    if d < 2 {
        return Err(Error::BadParameter(format!("projective needs d >= 2, got {d}")));
    }
    if d > 20 {
        return Err(Error::BadParameter(format!("projective(d={d}) is too large")));
    }
    let count = 1usize << d;
    let all = count - 1;
    let mut b = GraphBuilder::with_vertices(d + 1, vertices(count))?;
    for v in 0..count {
        for j in 0..d {
            let w = v ^ (1 << j);
            if v < w {
                b.add_edge(v, w, j)?;
            }
        }
        if v < v ^ all {
            b.add_edge(v, v ^ all, d)?;
        }
    }
    CatalogEntry::new(Family::Projective { d }, b.build())
}

/// Crystallizations of `RP^2`, the Klein bottle, the torus and the genus-2
/// surface: a cycle alternating colors 0/1 plus a perfect matching in
/// color 2.
pub fn surface(kind: SurfaceKind) -> Result<CatalogEntry> {
    let (len, chords): (usize, &[(usize, usize)]) = match kind {
        SurfaceKind::Rp2 => (4, &[(0, 2), (1, 3)]),
        SurfaceKind::Klein => (6, &[(0, 3), (1, 5), (2, 4)]),
        SurfaceKind::Torus => (6, &[(0, 3), (1, 4), (2, 5)]),
        SurfaceKind::Genus2 => (10, &[(0, 5), (1, 8), (2, 9), (3, 6), (4, 7)]),
    };
    let mut b = GraphBuilder::with_vertices(3, vertices(len))?;
    for j in 0..len {
        b.add_edge(j, (j + 1) % len, j % 2)?;
    }
    for &(u, v) in chords {
        b.add_edge(u, v, 2)?;
    }
    CatalogEntry::new(Family::Surface { kind }, b.build())
}

/// The default listing shown by `catalog list`.
pub fn families() -> Vec<Family> {
    let mut out = vec![Family::Sphere { d: 2 }, Family::Sphere { d: 3 }];
    for d in 3..=6 {
        out.push(Family::SphereBundle { d, orientable: true });
        out.push(Family::SphereBundle { d, orientable: false });
    }
    out.extend((2..=5).map(|q| Family::Lens { q }));
    out.extend((2..=5).map(|d| Family::Projective { d }));
    out.extend(SurfaceKind::ALL.into_iter().map(|kind| Family::Surface { kind }));
    out
}
