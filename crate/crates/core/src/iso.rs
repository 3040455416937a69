//! Color-shift isomorphisms and general colored-graph isomorphism.
//!
//! In a connected properly edge-colored graph, the image of one vertex
//! together with the color map pins down the whole vertex map: the image of
//! `neighbor(u, c)` must be `neighbor(image(u), color_map(c))`. Every search
//! here is that propagation, run once per candidate image of vertex 0.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// A vertex bijection paired with the color map `c ↦ c + shift (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ShiftIsomorphism {
    shift: usize,
    color_count: usize,
    map: Vec<usize>,
}

impl ShiftIsomorphism {
    /// Wraps a vertex map without checking it against any graph; call
    /// [`ShiftIsomorphism::validate`] before trusting it.
    pub fn new(shift: usize, color_count: usize, map: Vec<usize>) -> Self {
        ShiftIsomorphism {
            shift: shift % color_count,
            color_count,
            map,
        }
    }

    pub fn identity(vertex_count: usize, color_count: usize) -> Self {
        ShiftIsomorphism::new(0, color_count, (0..vertex_count).collect())
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn color_image(&self, c: usize) -> usize {
        (c + self.shift) % self.color_count
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ShiftIsomorphism) -> ShiftIsomorphism {
        assert_eq!(self.color_count, other.color_count);
        assert_eq!(self.map.len(), other.map.len());
        ShiftIsomorphism::new(
            self.shift + other.shift,
            self.color_count,
            other.map.iter().map(|&v| self.map[v]).collect(),
        )
    }

    pub fn power(&self, exponent: usize) -> ShiftIsomorphism {
        let mut acc = ShiftIsomorphism::identity(self.map.len(), self.color_count);
        for _ in 0..exponent {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn inverse(&self) -> ShiftIsomorphism {
        let mut inv = vec![0; self.map.len()];
        for (v, &w) in self.map.iter().enumerate() {
            inv[w] = v;
        }
        ShiftIsomorphism::new(self.color_count - self.shift, self.color_count, inv)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.map.iter().enumerate().all(|(v, &w)| v == w)
    }

    /// Checks that the map is a bijection carrying every `c`-edge onto a
    /// `(c + shift)`-edge.
    pub fn validate(&self, g: &ColoredGraph) -> Result<()> {
        if self.color_count != g.color_count() {
            return Err(Error::IsomorphismMismatch(format!(
                "isomorphism acts on {} colors, graph has {}",
                self.color_count,
                g.color_count()
            )));
        }
        let n = g.vertex_count();
        if self.map.len() != n {
            return Err(Error::IsomorphismMismatch(format!(
                "vertex map has {} entries, graph has {n} vertices",
                self.map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &w in &self.map {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(Error::IsomorphismMismatch("vertex map is not a bijection".into()));
            }
        }
        for u in 0..n {
            for c in 0..self.color_count {
                let expected = g.neighbor(u, c).map(|w| self.map[w]);
                let actual = g.neighbor(self.map[u], self.color_image(c));
                if expected != actual {
                    return Err(Error::IsomorphismMismatch(format!(
                        "color-{c} edge at {} does not map onto a color-{} edge at {}",
                        g.name(u),
                        self.color_image(c),
                        g.name(self.map[u])
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Propagates `0 ↦ base_image` through `g` into `h` under `color_map`.
/// Returns the full vertex map when every constraint is met.
fn propagate(g: &ColoredGraph, h: &ColoredGraph, color_map: &[usize], base_image: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[0] = base_image;
    used[base_image] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for (c, &hc) in color_map.iter().enumerate() {
            match (g.neighbor(u, c), h.neighbor(image[u], hc)) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    if image[a] == usize::MAX {
                        if used[b] {
                            return None;
                        }
                        image[a] = b;
                        used[b] = true;
                        stack.push(a);
                    } else if image[a] != b {
                        return None;
                    }
                }
                _ => return None,
            }
        }
    }
    image.iter().all(|&w| w != usize::MAX).then_some(image)
}

/// Every automorphism of `g` whose color action is `c ↦ c + shift`,
/// ordered lexicographically by vertex map.
pub fn find_shift_isomorphisms(g: &ColoredGraph, shift: usize) -> Result<Vec<ShiftIsomorphism>> {
    g.ensure_regular()?;
    g.ensure_connected()?;
    let n = g.color_count();
    let color_map: Vec<usize> = (0..n).map(|c| (c + shift) % n).collect();
    if g.vertex_count() == 0 {
        return Ok(Vec::new());
    }
    // Distinct base images give distinct maps, so this is already sorted.
    Ok((0..g.vertex_count())
        .filter_map(|w| propagate(g, g, &color_map, w))
        .map(|map| ShiftIsomorphism::new(shift, n, map))
        .collect())
}

/// A vertex bijection plus a color bijection between two graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub color_map: Vec<usize>,
}

fn pair_table(g: &ColoredGraph) -> Vec<usize> {
    let n = g.color_count();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let count = g.residue_count(&[i, j]);
            table[i * n + j] = count;
            table[j * n + i] = count;
        }
    }
    table
}

/// Finds an isomorphism `g → h`, with the identity color map or (when
/// `allow_color_permutation`) any color bijection. Intended for small
/// connected graphs: with the flag on, all `n!` color maps are tried.
pub fn is_isomorphic(g: &ColoredGraph, h: &ColoredGraph, allow_color_permutation: bool) -> Option<Isomorphism> {
    let n = g.color_count();
    if n != h.color_count() || g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.vertex_count() == 0 {
        return Some(Isomorphism {
            vertex_map: Vec::new(),
            color_map: (0..n).collect(),
        });
    }
    if !g.is_connected() || !h.is_connected() {
        return None;
    }
    let try_map = |color_map: Vec<usize>| {
        (0..h.vertex_count()).find_map(|w| {
            propagate(g, h, &color_map, w).map(|vertex_map| Isomorphism {
                vertex_map,
                color_map: color_map.clone(),
            })
        })
    };
    if !allow_color_permutation {
        return try_map((0..n).collect());
    }
    let (tg, th) = (pair_table(g), pair_table(h));
    (0..n)
        .permutations(n)
        .filter(|perm| (0..n).all(|i| (0..n).all(|j| tg[i * n + j] == th[perm[i] * n + perm[j]])))
        .find_map(try_map)
}
