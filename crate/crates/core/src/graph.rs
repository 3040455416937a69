//! Properly edge-colored multigraphs on the color set `0..n`.
//!
//! Every color class is a partial matching, so a vertex is described by a
//! row of `n` optional neighbors. Parallel edges of different colors are
//! allowed; loops are not. A graph where every row is full is *regular*;
//! a crystallization of a closed d-manifold is a regular, contracted graph
//! on `d + 1` colors.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Incremental constructor for [`ColoredGraph`]. Edges are validated as they
/// are added.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    color_count: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Option<usize>>,
}

impl GraphBuilder {
    pub fn new(color_count: usize) -> Result<Self> {
        if color_count < 2 {
            return Err(Error::TooFewColors(color_count));
        }
        Ok(GraphBuilder {
            color_count,
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        })
    }

    pub fn with_vertices<I, S>(color_count: usize, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut builder = GraphBuilder::new(color_count)?;
        for name in names {
            builder.add_vertex(name)?;
        }
        Ok(builder)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adj.extend(std::iter::repeat_n(None, self.color_count));
        Ok(id)
    }

    /// Index of `name`, adding the vertex if it is new.
    pub fn vertex(&mut self, name: &str) -> usize {
        match self.index.get(name) {
            Some(&id) => id,
            None => self.add_vertex(name).expect("fresh vertex"),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: usize) -> Result<()> {
        let n = self.color_count;
        if color >= n {
            return Err(Error::ColorOutOfRange {
                color,
                color_count: n,
            });
        }
        for &w in &[u, v] {
            if w >= self.names.len() {
                return Err(Error::UnknownVertex(format!("#{w}")));
            }
        }
        if u == v {
            return Err(Error::LoopEdge {
                vertex: self.names[u].clone(),
                color,
            });
        }
        for &w in &[u, v] {
            if self.adj[w * n + color].is_some() {
                return Err(Error::ColorClash {
                    vertex: self.names[w].clone(),
                    color,
                    u: self.names[u].clone(),
                    v: self.names[v].clone(),
                });
            }
        }
        self.adj[u * n + color] = Some(v);
        self.adj[v * n + color] = Some(u);
        Ok(())
    }

    pub fn add_named_edge(&mut self, u: &str, v: &str, color: usize) -> Result<()> {
        let u = self.vertex(u);
        let v = self.vertex(v);
        self.add_edge(u, v, color)
    }

    pub fn build(self) -> ColoredGraph {
        ColoredGraph {
            color_count: self.color_count,
            names: self.names,
            index: self.index,
            adj: self.adj,
        }
    }
}

/// An immutable properly edge-colored multigraph.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    color_count: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Option<usize>>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.color_count == other.color_count && self.names == other.names && self.adj == other.adj
    }
}

impl Eq for ColoredGraph {}

/// Summary flags reported alongside a freshly built graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphFlags {
    pub regular: bool,
    pub connected: bool,
    /// `None` when the graph is not regular (contractedness is only
    /// defined for regular graphs).
    pub contracted: Option<bool>,
}

impl ColoredGraph {
    /// Builds a graph from named edges; vertices are ordered by first
    /// appearance.
    pub fn from_edges<'a, I>(color_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, usize)>,
    {
        let mut builder = GraphBuilder::new(color_count)?;
        for (u, v, c) in edges {
            builder.add_named_edge(u, v, c)?;
        }
        Ok(builder.build())
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn neighbor(&self, v: usize, color: usize) -> Option<usize> {
        self.adj[v * self.color_count + color]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|w| w.is_some()).count()
    }

    fn row(&self, v: usize) -> &[Option<usize>] {
        &self.adj[v * self.color_count..(v + 1) * self.color_count]
    }

    /// Edges as `(u, v, color)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for c in 0..self.color_count {
                if let Some(v) = self.neighbor(u, c) {
                    if u < v {
                        out.push((u, v, c));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|w| w.is_some()).count() / 2
    }

    pub fn is_regular(&self) -> bool {
        self.adj.iter().all(Option::is_some)
    }

    pub fn ensure_regular(&self) -> Result<()> {
        for v in 0..self.vertex_count() {
            if let Some(c) = self.row(v).iter().position(Option::is_none) {
                return Err(Error::NotRegular {
                    vertex: self.names[v].clone(),
                    color: c,
                });
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.color_count).collect();
        self.residue_count(&all) <= 1
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn flags(&self) -> GraphFlags {
        let regular = self.is_regular();
        GraphFlags {
            regular,
            connected: self.is_connected(),
            contracted: regular.then(|| self.contracted_unchecked()),
        }
    }

    fn check_colors(&self, colors: &[usize]) -> Result<()> {
        match colors.iter().find(|&&c| c >= self.color_count) {
            Some(&color) => Err(Error::ColorOutOfRange {
                color,
                color_count: self.color_count,
            }),
            None => Ok(()),
        }
    }

    /// Component labels of the subgraph keeping only `colors`. Labels are
    /// assigned in order of each component's least vertex.
    fn label_components(&self, colors: &[usize]) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &c in colors {
                    if let Some(w) = self.neighbor(u, c) {
                        if label[w] == usize::MAX {
                            label[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// `g_B`: the number of connected components of the residue on `colors`.
    /// Colors must be in range.
    pub fn residue_count(&self, colors: &[usize]) -> usize {
        self.label_components(colors).0
    }

    pub fn residues(&self, colors: &[usize]) -> Result<ResidueDecomposition> {
        self.check_colors(colors)?;
        let (count, component_of) = self.label_components(colors);
        let mut components = vec![Vec::new(); count];
        for (v, &c) in component_of.iter().enumerate() {
            components[c].push(v);
        }
        let mut colors = colors.to_vec();
        colors.sort_unstable();
        colors.dedup();
        Ok(ResidueDecomposition {
            colors,
            component_of,
            components,
        })
    }

    fn contracted_unchecked(&self) -> bool {
        (0..self.color_count).all(|c| self.residue_count(&self.all_but(c)) == 1)
    }

    fn all_but(&self, color: usize) -> Vec<usize> {
        (0..self.color_count).filter(|&c| c != color).collect()
    }

    /// True iff dropping any single color leaves a connected graph.
    pub fn is_contracted(&self) -> Result<bool> {
        self.ensure_regular()?;
        Ok(self.contracted_unchecked())
    }

    pub fn ensure_contracted(&self) -> Result<()> {
        self.ensure_regular()?;
        match (0..self.color_count).find(|&c| self.residue_count(&self.all_but(c)) != 1) {
            Some(c) => Err(Error::NotContracted(c)),
            None => Ok(()),
        }
    }

    /// Two-coloring of the vertices, or an odd cycle proving there is none.
    /// In every connected component the least vertex lands in class 0.
    pub fn bipartition(&self) -> Bipartiteness {
        let n = self.vertex_count();
        let mut class = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if class[start] != u8::MAX {
                continue;
            }
            class[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for w in self.row(u).iter().flatten().copied() {
                    if class[w] == u8::MAX {
                        class[w] = 1 - class[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if class[w] == class[u] {
                        return Bipartiteness::OddCycle(tree_cycle(&parent, &depth, u, w));
                    }
                }
            }
        }
        Bipartiteness::Bipartite(class)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }

    /// The boundary graph: vertices of degree `n - 1`, joined by color `i`
    /// when the maximal path alternating `i` and the missing color links
    /// them.
    pub fn boundary_graph(&self) -> Result<BoundaryGraph> {
        let n = self.color_count;
        let mut missing = vec![None; self.vertex_count()];
        for (v, slot) in missing.iter_mut().enumerate() {
            let degree = self.degree(v);
            if degree + 1 < n {
                return Err(Error::NotBoundaryRegular {
                    vertex: self.names[v].clone(),
                    degree,
                    needed: n - 1,
                });
            }
            if degree + 1 == n {
                *slot = self.row(v).iter().position(Option::is_none);
            }
        }
        let boundary: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| missing[v].is_some())
            .collect();
        let mut builder = GraphBuilder::with_vertices(n, boundary.iter().map(|&v| self.names[v].clone()))?;
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in boundary.iter().enumerate() {
            local[v] = i;
        }

        for &u in &boundary {
            let m = missing[u].expect("boundary vertex");
            for color in (0..n).filter(|&c| c != m) {
                let end = self.alternating_end(u, color, m, &missing)?;
                if u < end {
                    builder.add_edge(local[u], local[end], color)?;
                }
            }
        }
        let graph = builder.build();

        let all: Vec<usize> = (0..n).collect();
        let decomposition = graph.residues(&all)?;
        let components = decomposition
            .components
            .into_iter()
            .map(|vertices| {
                let missing_color = missing[boundary[vertices[0]]].expect("boundary vertex");
                BoundaryComponent {
                    vertices,
                    missing_color,
                }
            })
            .collect();
        Ok(BoundaryGraph {
            graph,
            source: boundary,
            components,
        })
    }

    fn alternating_end(&self, start: usize, color: usize, m: usize, missing: &[Option<usize>]) -> Result<usize> {
        let mut cur = start;
        for _ in 0..=self.vertex_count() {
            let next = match self.neighbor(cur, color) {
                Some(w) => w,
                None => {
                    return Err(Error::AmbiguousMissingColor {
                        from: self.names[start].clone(),
                        to: self.names[cur].clone(),
                        color,
                        missing: m,
                    })
                }
            };
            match self.neighbor(next, m) {
                Some(w) => cur = w,
                None => {
                    if missing[next] != Some(m) {
                        return Err(Error::AmbiguousMissingColor {
                            from: self.names[start].clone(),
                            to: self.names[next].clone(),
                            color,
                            missing: m,
                        });
                    }
                    return Ok(next);
                }
            }
        }
        unreachable!("alternating path from a degree-one vertex cannot cycle")
    }

    /// Subgraph induced on `vertices` (in the given order), keeping only
    /// colors present in `color_map` and renaming color `c` to
    /// `color_map[c]`. Colors mapped to `None` are dropped.
    pub fn induced(&self, vertices: &[usize], color_map: &[Option<usize>], color_count: usize) -> Result<ColoredGraph> {
        let mut builder = GraphBuilder::with_vertices(color_count, vertices.iter().map(|&v| self.names[v].clone()))?;
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        for &u in vertices {
            for (c, &mapped) in color_map.iter().enumerate().take(self.color_count) {
                let (Some(w), Some(new_color)) = (self.neighbor(u, c), mapped) else {
                    continue;
                };
                if local[w] != usize::MAX && u < w {
                    builder.add_edge(local[u], local[w], new_color)?;
                }
            }
        }
        Ok(builder.build())
    }

    /// The same graph with every color `c` renamed to `perm[c]`.
    pub fn recolor(&self, perm: &[usize]) -> Result<ColoredGraph> {
        let map: Vec<Option<usize>> = perm.iter().map(|&c| Some(c)).collect();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.induced(&all, &map, self.color_count)
    }
}

/// Walks the BFS tree from both endpoints of a non-tree edge up to their
/// common ancestor.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Class (0 or 1) of every vertex.
    Bipartite(Vec<u8>),
    /// Vertices of an odd closed walk; consecutive entries (and last/first)
    /// are adjacent.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }

    pub fn classes(&self) -> Option<&[u8]> {
        match self {
            Bipartiteness::Bipartite(c) => Some(c),
            Bipartiteness::OddCycle(_) => None,
        }
    }
}

/// Connected components of a residue `Γ_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDecomposition {
    pub colors: Vec<usize>,
    pub component_of: Vec<usize>,
    /// Each component's vertices in ascending order; components are sorted
    /// by least vertex.
    pub components: Vec<Vec<usize>>,
}

impl ResidueDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    /// Indices into the boundary graph.
    pub vertices: Vec<usize>,
    pub missing_color: usize,
}

#[derive(Debug, Clone)]
pub struct BoundaryGraph {
    pub graph: ColoredGraph,
    /// `source[i]` is the vertex of the original graph behind boundary
    /// vertex `i`.
    pub source: Vec<usize>,
    pub components: Vec<BoundaryComponent>,
}

impl BoundaryGraph {
    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// One boundary component as a standalone graph on `n - 1` colors; the
    /// missing color is removed and higher colors shift down by one.
    pub fn component_graph(&self, index: usize) -> Result<ColoredGraph> {
        let comp = &self.components[index];
        let n = self.graph.color_count();
        let map: Vec<Option<usize>> = (0..n)
            .map(|c| match c.cmp(&comp.missing_color) {
                std::cmp::Ordering::Less => Some(c),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(c - 1),
            })
            .collect();
        self.graph.induced(&comp.vertices, &map, n - 1)
    }
}
