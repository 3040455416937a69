//! Regular genus of a crystallization.
//!
//! For a cyclic arrangement `ε` of the `n = d + 1` colors,
//! `χ_ε = Σ_i g_{ε_i, ε_{i+1}} + (1 - d)·|V|/2` and `ρ_ε = 1 - χ_ε/2`.
//! `ρ_ε` is a half-integer in general, so it is kept as a doubled integer.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// An exact multiple of 1/2, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInteger(doubled)
    }

    pub const fn from_integer(value: i64) -> Self {
        HalfInteger(2 * value)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A cyclic arrangement of the colors `0..n`, up to rotation and reversal.
/// Canonical form: starts at 0 and `ε_1 < ε_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicPermutation(Vec<usize>);

impl CyclicPermutation {
    /// Canonicalizes any arrangement of `0..n`.
    pub fn new(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::BadParameter(format!("{order:?} is not an arrangement of 0..{n}")));
            }
        }
        if n == 0 {
            return Err(Error::BadParameter("empty arrangement".into()));
        }
        let start = order.iter().position(|&c| c == 0).expect("contains 0");
        let mut canon: Vec<usize> = order[start..].iter().chain(&order[..start]).copied().collect();
        if n >= 3 && canon[1] > canon[n - 1] {
            canon[1..].reverse();
        }
        Ok(CyclicPermutation(canon))
    }

    /// All `(n-1)!/2` canonical arrangements (one for `n <= 2`), in
    /// lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = CyclicPermutation> {
        (1..n)
            .permutations(n.saturating_sub(1))
            .filter(move |tail| n < 3 || tail[0] < tail[n - 2])
            .map(|tail| {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(0);
                v.extend(tail);
                CyclicPermutation(v)
            })
    }

    /// The lexicographically least arrangement in which no two neighbors are
    /// consecutive modulo `n`. Exists for `n >= 5`.
    pub fn non_consecutive(n: usize) -> Option<CyclicPermutation> {
        CyclicPermutation::all(n).find(|p| {
            p.adjacent_pairs()
                .all(|(a, b)| (a + 1) % n != b && (b + 1) % n != a)
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `(ε_i, ε_{i+1})` for every `i`, cyclically.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }
}

impl fmt::Display for CyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl Serialize for CyclicPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// `g_{i,j}` for every pair of colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    n: usize,
    table: Vec<usize>,
}

impl PairCounts {
    pub fn new(g: &ColoredGraph) -> Self {
        let n = g.color_count();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let count = g.residue_count(&[i, j]);
                table[i * n + j] = count;
                table[j * n + i] = count;
            }
        }
        PairCounts { n, table }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    pub fn color_count(&self) -> usize {
        self.n
    }
}

fn check_gem(g: &ColoredGraph) -> Result<()> {
    g.ensure_regular()?;
    g.ensure_connected()
}

fn chi_from_counts(counts: &PairCounts, vertex_count: usize, eps: &CyclicPermutation) -> i64 {
    let d = counts.color_count() as i64 - 1;
    let sum: usize = eps.adjacent_pairs().map(|(a, b)| counts.get(a, b)).sum();
    sum as i64 + (1 - d) * (vertex_count as i64 / 2)
}

fn rho_from_chi(chi: i64) -> HalfInteger {
    HalfInteger::from_doubled(2 - chi)
}

/// `(χ_ε, ρ_ε)` for one cyclic arrangement of the colors.
pub fn genus_for_permutation(g: &ColoredGraph, eps: &CyclicPermutation) -> Result<(i64, HalfInteger)> {
    check_gem(g)?;
    if eps.len() != g.color_count() {
        return Err(Error::BadParameter(format!(
            "arrangement {eps} does not cover {} colors",
            g.color_count()
        )));
    }
    let counts = PairCounts::new(g);
    let chi = chi_from_counts(&counts, g.vertex_count(), eps);
    Ok((chi, rho_from_chi(chi)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusEntry {
    pub permutation: CyclicPermutation,
    pub chi: i64,
    pub rho: HalfInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub color_count: usize,
    pub vertex_count: usize,
    pub entries: Vec<GenusEntry>,
    /// Lexicographically least arrangement attaining the minimum.
    pub minimizing: CyclicPermutation,
    pub min_rho: HalfInteger,
    pub gem_complexity: usize,
    pub orientable: bool,
}

impl GenusReport {
    pub fn rho_at(&self, eps: &CyclicPermutation) -> Option<HalfInteger> {
        self.entries
            .binary_search_by(|e| e.permutation.cmp(eps))
            .ok()
            .map(|i| self.entries[i].rho)
    }
}

/// Sweeps every canonical cyclic arrangement; pair counts are computed once.
pub fn min_regular_genus(g: &ColoredGraph) -> Result<GenusReport> {
    check_gem(g)?;
    let counts = PairCounts::new(g);
    let entries: Vec<GenusEntry> = CyclicPermutation::all(g.color_count())
        .map(|permutation| {
            let chi = chi_from_counts(&counts, g.vertex_count(), &permutation);
            GenusEntry {
                permutation,
                chi,
                rho: rho_from_chi(chi),
            }
        })
        .collect();
    let best = entries
        .iter()
        .min_by(|a, b| a.rho.cmp(&b.rho).then_with(|| a.permutation.cmp(&b.permutation)))
        .expect("at least one arrangement");
    Ok(GenusReport {
        color_count: g.color_count(),
        vertex_count: g.vertex_count(),
        minimizing: best.permutation.clone(),
        min_rho: best.rho,
        gem_complexity: g.vertex_count() / 2 - 1,
        orientable: g.is_bipartite(),
        entries,
    })
}

/// `|V|/2 - 1`, an upper bound for the gem-complexity of the represented
/// manifold.
pub fn gem_complexity_bound(g: &ColoredGraph) -> Result<usize> {
    g.ensure_regular()?;
    Ok((g.vertex_count() / 2).saturating_sub(1))
}

/// Lower bounds `(k, G)` for a closed PL 4-manifold with Euler
/// characteristic `euler_char` and `rank(π_1) = rank`:
/// `k >= 3χ + 10m - 6` and `G >= 2χ + 5m - 4`.
pub fn lower_bounds_4manifold(euler_char: i64, rank: i64) -> (i64, i64) {
    (3 * euler_char + 10 * rank - 6, 2 * euler_char + 5 * rank - 4)
}
