//! Fundamental-group presentations read off a crystallization, and their
//! abelianization.
//!
//! For colors `i, j`: generators are the components of the residue on all
//! other colors, minus one. Each `{i,j}`-cycle `v_1 v_2 … v_{2l}` (starting
//! at its least vertex and leaving along color `i`) gives the relator
//! `x(v_2) x(v_3)^-1 x(v_4) … x(v_{2l}) x(v_1)^-1`, where `x(v)` is the
//! generator of the component containing `v` and the dropped component is
//! deleted. With at least 4 colors one relator is also redundant and is
//! dropped; with 3 colors the `{i,j}` residue is a single cycle.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::snf::{smith_normal_form, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    /// Each relator is a word of signed 1-based generator indices.
    pub relators: Vec<Vec<i32>>,
    pub colors: (usize, usize),
    /// Index (by least vertex) of the component that got no generator.
    pub dropped_component: usize,
    /// Index (by least vertex) of the `{i,j}`-cycle whose relator was
    /// omitted, if any.
    pub dropped_relator: Option<usize>,
}

impl GroupPresentation {
    /// `t × s` matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators);
        for (r, word) in self.relators.iter().enumerate() {
            for &letter in word {
                let g = letter.unsigned_abs() as usize - 1;
                m[(r, g)] += i64::from(letter.signum());
            }
        }
        m
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = (1..=self.generators).map(|g| format!("x{g}")).join(", ");
        let rels = self
            .relators
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
                        .join(" ")
                }
            })
            .join(", ");
        write!(f, "< {gens} | {rels} >")
    }
}

pub fn fundamental_group(g: &ColoredGraph, i: usize, j: usize) -> Result<GroupPresentation> {
    let n = g.color_count();
    if i == j || i >= n || j >= n || n < 3 {
        return Err(Error::BadColors(i, j));
    }
    g.ensure_contracted()?;

    let rest: Vec<usize> = (0..n).filter(|&c| c != i && c != j).collect();
    let pieces = g.residues(&rest)?;
    // Components are ordered by least vertex, so the last one has the
    // largest least vertex.
    let dropped_component = pieces.count() - 1;
    let generator = |v: usize| -> Option<i32> {
        let c = pieces.component_of[v];
        (c != dropped_component).then_some(c as i32 + 1)
    };

    let cycles = g.residues(&[i, j])?;
    let mut relators = Vec::with_capacity(cycles.count());
    for cycle in &cycles.components {
        let start = cycle[0];
        let mut walk = Vec::with_capacity(cycle.len());
        let mut cur = start;
        loop {
            walk.push(cur);
            let color = if walk.len() % 2 == 1 { i } else { j };
            cur = g.neighbor(cur, color).expect("regular");
            if cur == start {
                break;
            }
        }
        // v_2, v_3, ..., v_{2l}, v_1 with signs +, -, +, ..., +, -
        let word = walk[1..]
            .iter()
            .chain(std::iter::once(&walk[0]))
            .enumerate()
            .filter_map(|(pos, &v)| generator(v).map(|x| if pos % 2 == 0 { x } else { -x }))
            .collect();
        relators.push(word);
    }
    let dropped_relator = if n >= 4 && !relators.is_empty() {
        relators.pop();
        Some(cycles.count() - 1)
    } else {
        None
    };

    Ok(GroupPresentation {
        generators: dropped_component,
        relators,
        colors: (i, j),
        dropped_component,
        dropped_relator,
    })
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_1 | t_2 | … | t_k` and every `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianInvariants {
            free_rank,
            torsion: torsion.to_vec(),
        }
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianizes a presentation through the Smith normal form of its exponent
/// matrix.
pub fn first_homology(p: &GroupPresentation) -> AbelianInvariants {
    let snf = smith_normal_form(&p.exponent_matrix());
    let diagonal = snf.diagonal();
    let rank = diagonal.iter().filter(|&&x| x != 0).count();
    AbelianInvariants {
        free_rank: p.generators - rank,
        torsion: diagonal
            .into_iter()
            .filter(|&x| x > 1)
            .map(|x| x as u64)
            .collect(),
    }
}
