//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs with its own harness so the criterion lines are always printed:
//! `cargo test --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use gemtorus::catalog::{self, CatalogEntry, ClassBehavior, Family, SurfaceKind};
use gemtorus::genus::{gem_complexity_bound, genus_for_permutation, min_regular_genus, CyclicPermutation, HalfInteger};
use gemtorus::group::{first_homology, fundamental_group, AbelianInvariants};
use gemtorus::iso::{is_isomorphic, ShiftIsomorphism};
use gemtorus::snf::{smith_normal_form, IntMatrix};
use gemtorus::torus::{build_mapping_torus, induced_shift_isomorphism, TorusBuild};
use gemtorus::ColoredGraph;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(x: i64) -> HalfInteger {
    HalfInteger::from_integer(x)
}

fn h1(g: &ColoredGraph) -> AbelianInvariants {
    first_homology(&fundamental_group(g, 0, 1).unwrap())
}

fn spread_rho(g: &ColoredGraph) -> HalfInteger {
    let eps = CyclicPermutation::non_consecutive(g.color_count()).unwrap();
    genus_for_permutation(g, &eps).unwrap().1
}

fn rho_at(g: &ColoredGraph, order: &[usize]) -> HalfInteger {
    genus_for_permutation(g, &CyclicPermutation::new(order).unwrap()).unwrap().1
}

fn torus(entry: &CatalogEntry, iso: &ShiftIsomorphism) -> TorusBuild {
    build_mapping_torus(&entry.graph, iso, iso, false).unwrap()
}

/// First `I = Ĩ` build over `entry` whose result has the wanted
/// bipartiteness.
fn torus_with_orientability(entry: &CatalogEntry, orientable: bool) -> Option<TorusBuild> {
    entry
        .shift_isomorphisms
        .iter()
        .map(|t| torus(entry, &t.iso))
        .find(|b| b.result.is_bipartite() == orientable)
}

fn iterate(b: &TorusBuild) -> TorusBuild {
    let iso = induced_shift_isomorphism(b).unwrap();
    build_mapping_torus(&b.result, &iso, &iso, false).unwrap()
}

/// The torus automorphism acting trivially on homology.
fn untwisted_torus() -> (CatalogEntry, ShiftIsomorphism) {
    let entry = catalog::surface(SurfaceKind::Torus).unwrap();
    let iso = ShiftIsomorphism::new(1, 3, vec![3, 4, 1, 2, 5, 0]);
    (entry, iso)
}

fn lemma_value(base: &ColoredGraph) -> HalfInteger {
    let p = base.vertex_count() as i64 / 2;
    let g02 = base.residue_count(&[0, 2]) as i64;
    HalfInteger::from_doubled(2 + 5 * (p - g02))
}

fn catalog_bases() -> Vec<CatalogEntry> {
    let mut families = Vec::new();
    families.extend((1..=6).map(|d| Family::Sphere { d }));
    for d in 3..=6 {
        families.push(Family::SphereBundle { d, orientable: true });
        families.push(Family::SphereBundle { d, orientable: false });
    }
    families.extend((2..=5).map(|q| Family::Lens { q }));
    families.extend((2..=5).map(|d| Family::Projective { d }));
    families.extend(SurfaceKind::ALL.map(|kind| Family::Surface { kind }));
    families.into_iter().map(|f| f.build().unwrap()).collect()
}

fn sphere_baseline() -> Check {
    for d in 1..=6 {
        let g = catalog::sphere(d).unwrap().graph;
        let rho = min_regular_genus(&g).unwrap().min_rho;
        ensure!(rho == int(0), "sphere({d}): min rho {rho}");
        ensure!(gem_complexity_bound(&g).unwrap() == 0, "sphere({d}): complexity");
    }
    Ok(())
}

fn sphere_bundles() -> Check {
    for d in 3..=6 {
        for orientable in [true, false] {
            let g = catalog::sphere_bundle(d, orientable).unwrap().graph;
            ensure!(g.vertex_count() == 2 * (d + 1), "sphere_bundle({d}): {} vertices", g.vertex_count());
            for (i, j) in (0..=d).tuple_combinations() {
                let count = g.residue_count(&[i, j]);
                ensure!(count == d - 1, "sphere_bundle({d}): g_{i}{j} = {count}");
            }
            let rho = min_regular_genus(&g).unwrap().min_rho;
            ensure!(rho == int(1), "sphere_bundle({d}): min rho {rho}");
            ensure!(g.is_bipartite() == orientable, "sphere_bundle({d}, {orientable}): bipartiteness");
        }
    }
    Ok(())
}

fn sphere_bundle_tori() -> Check {
    for d in 3..=6 {
        let dd = d as i64;
        for orientable in [true, false] {
            let entry = catalog::sphere_bundle(d, orientable).unwrap();
            let Some(b) = torus_with_orientability(&entry, orientable) else {
                return Err(format!("sphere_bundle({d}, {orientable}): no build of that orientability"));
            };
            let g = &b.result;
            ensure!(g.vertex_count() == (d + 2) * 2 * (d + 1), "d = {d}: {} vertices", g.vertex_count());
            let n = d + 2;
            for (j, k) in (0..n).tuple_combinations() {
                if k == j + 1 || (k + 1) % n == j {
                    continue;
                }
                let count = g.residue_count(&[j, k]);
                ensure!(
                    count == 2 * (d + 1) + (d - 2) * (d - 1),
                    "d = {d}: g_({j},{k}) = {count}"
                );
            }
            let rho = spread_rho(g);
            ensure!(rho == int(dd * dd - 3), "d = {d}: spread rho {rho}");
            let k = gem_complexity_bound(g).unwrap();
            ensure!(k == d * d + 3 * d + 1, "d = {d}: complexity {k}");
            if d == 3 {
                let min = min_regular_genus(g).unwrap().min_rho;
                ensure!(min == int(6), "d = 3, orientable = {orientable}: min rho {min}");
                if orientable {
                    let h = h1(g);
                    ensure!(h == AbelianInvariants::new(2, &[]), "d = 3: H1 = {h}");
                }
            }
        }
    }
    Ok(())
}

fn lens_tori() -> Check {
    for q in 2..=5 {
        let qq = q as i64;
        let entry = catalog::lens(q).unwrap();
        let iso = entry.isomorphism_with(ClassBehavior::Swapping).unwrap();
        let b = torus(&entry, iso);
        let g = &b.result;
        ensure!(g.vertex_count() == 20 * q, "q = {q}: {} vertices", g.vertex_count());
        ensure!(g.is_bipartite(), "q = {q}: swapping build is not bipartite");
        let g02 = entry.graph.residue_count(&[0, 2]);
        ensure!(g02 == 2, "q = {q}: base g02 = {g02}");
        let rho = rho_at(g, &[0, 2, 4, 1, 3]);
        ensure!(rho == int(5 * qq - 4), "q = {q}: rho {rho}");
        ensure!(rho == lemma_value(&entry.graph), "q = {q}: lemma value");
        if q == 2 {
            let min = min_regular_genus(g).unwrap().min_rho;
            ensure!(min == int(6), "q = 2: min rho {min}");
            let h = h1(g);
            ensure!(h == AbelianInvariants::new(1, &[2]), "q = 2: H1 = {h}");
            let preserving = entry.isomorphism_with(ClassBehavior::Preserving).unwrap();
            let twisted = torus(&entry, preserving);
            ensure!(!twisted.result.is_bipartite(), "q = 2: preserving build is bipartite");
            let rho = rho_at(&twisted.result, &[0, 2, 4, 1, 3]);
            ensure!(rho == int(6), "q = 2 preserving: rho {rho}");
        }
    }
    Ok(())
}

fn three_torus_and_odd_projective() -> Check {
    let (entry, iso) = untwisted_torus();
    let base = torus(&entry, &iso);
    let t3 = &base.result;
    ensure!(t3.vertex_count() == 24, "T^3: {} vertices", t3.vertex_count());
    let h = h1(t3);
    ensure!(h == AbelianInvariants::new(3, &[]), "T^3: H1 = {h}");
    ensure!(gem_complexity_bound(t3).unwrap() == 11, "T^3: complexity");

    let four = iterate(&base);
    ensure!(four.result.vertex_count() == 120, "(T^3)_f: {} vertices", four.result.vertex_count());
    let rho = rho_at(&four.result, &[0, 2, 4, 1, 3]);
    ensure!(rho <= int(16), "(T^3)_f: rho {rho} > 16");
    ensure!(rho == lemma_value(t3) && rho == int(16), "(T^3)_f: rho {rho}, lemma {}", lemma_value(t3));

    for d in [3usize, 5] {
        let entry = catalog::projective(d).unwrap();
        let b = torus(&entry, entry.default_isomorphism());
        let claim = 1 + (1i64 << (d - 3)) * (d * d) as i64 - 4 * (1i64 << (d - 3));
        ensure!(b.result.vertex_count() == (d + 2) << d, "RP^{d}: {} vertices", b.result.vertex_count());
        let rho = spread_rho(&b.result);
        ensure!(rho == int(claim), "RP^{d}: rho {rho}, claimed {claim}");
    }
    Ok(())
}

fn surface_bundles_and_even_projective() -> Check {
    for (h, kind, vertices, homology) in [
        (1usize, SurfaceKind::Rp2, 16, AbelianInvariants::new(1, &[2])),
        (2, SurfaceKind::Klein, 24, AbelianInvariants::new(2, &[2])),
    ] {
        let entry = catalog::surface(kind).unwrap();
        let base = torus(&entry, entry.default_isomorphism());
        ensure!(base.result.vertex_count() == vertices, "U_{h} x S^1: {} vertices", base.result.vertex_count());
        let got = h1(&base.result);
        ensure!(got == homology, "U_{h} x S^1: H1 = {got}");
        let four = iterate(&base);
        ensure!(!four.result.is_bipartite(), "U_{h}: iterated build is bipartite");
        ensure!(four.result.vertex_count() == 40 * (h + 1), "U_{h}: {} vertices", four.result.vertex_count());
        let rho = rho_at(&four.result, &[0, 2, 4, 1, 3]);
        ensure!(rho == int(5 * h as i64 + 6), "U_{h}: rho {rho}");
    }
    let entry = catalog::projective(4).unwrap();
    let b = torus(&entry, entry.default_isomorphism());
    ensure!(b.result.vertex_count() == 96, "RP^4: {} vertices", b.result.vertex_count());
    let rho = spread_rho(&b.result);
    ensure!(rho == int(25), "RP^4: rho {rho}");
    Ok(())
}

fn surface_products() -> Check {
    let (torus_entry, untwisted) = untwisted_torus();
    let rp2 = catalog::surface(SurfaceKind::Rp2).unwrap();
    let klein = catalog::surface(SurfaceKind::Klein).unwrap();
    for (entry, iso) in [
        (&rp2, rp2.default_isomorphism().clone()),
        (&klein, klein.default_isomorphism().clone()),
        (&torus_entry, untwisted),
    ] {
        let p = entry.graph.vertex_count() as i64 / 2;
        let b = torus(entry, &iso);
        let min = min_regular_genus(&b.result).unwrap().min_rho;
        ensure!(min == int(p), "{}: min rho {min}, expected {p}", entry.family);
    }
    Ok(())
}

/// `χ` of a raw arrangement straight from residue counts.
fn raw_chi(g: &ColoredGraph, order: &[usize]) -> i64 {
    let n = order.len();
    let sum: i64 = (0..n)
        .map(|i| g.residue_count(&[order[i], order[(i + 1) % n]]) as i64)
        .sum();
    sum + (2 - n as i64) * g.vertex_count() as i64 / 2
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Fraction-free Bareiss elimination.
    let n = m.len();
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

fn gcd(a: BigInt, b: BigInt) -> BigInt {
    if b.is_zero() {
        a.abs()
    } else {
        let r = &a % &b;
        gcd(b, r)
    }
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`
/// with `D_k` the gcd of all `k × k` minors.
fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (rows.len(), rows[0].len());
    let mut out = Vec::new();
    let mut previous = BigInt::from(1);
    for k in 1..=r.min(c) {
        let mut dk = BigInt::zero();
        for rs in (0..r).combinations(k) {
            for cs in (0..c).combinations(k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect())
                    .collect();
                dk = gcd(dk, det(&minor));
            }
        }
        if dk.is_zero() {
            out.resize(r.min(c), 0);
            break;
        }
        out.push(i64::try_from(&dk / &previous).unwrap());
        previous = dk;
    }
    out
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let rows: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    det(&rows).abs() == BigInt::from(1)
}

fn property_suites() -> Check {
    // Boundary components of every partial graph look like the base.
    for entry in catalog_bases() {
        let iso = entry.default_isomorphism();
        let b = build_mapping_torus(&entry.graph, iso, iso, true).unwrap();
        for (k, partial) in b.intermediates.iter().enumerate() {
            let boundary = partial.boundary_graph().unwrap();
            ensure!(boundary.components.len() == 2, "{} stage {}: boundary count", entry.family, k + 1);
            for i in 0..2 {
                let component = boundary.component_graph(i).unwrap();
                ensure!(
                    is_isomorphic(&component, &entry.graph, true).is_some(),
                    "{} stage {}: component {i} differs from base",
                    entry.family,
                    k + 1
                );
            }
        }
    }

    // H1 does not depend on the color pair.
    let mut graphs: Vec<ColoredGraph> = catalog_bases()
        .into_iter()
        .filter(|e| e.graph.color_count() >= 3)
        .map(|e| e.graph)
        .collect();
    let lens = catalog::lens(2).unwrap();
    graphs.push(torus(&lens, lens.default_isomorphism()).result);
    for g in &graphs {
        let reference = h1(g);
        for (i, j) in (0..g.color_count()).tuple_combinations() {
            for (a, b) in [(i, j), (j, i)] {
                let got = first_homology(&fundamental_group(g, a, b).unwrap());
                ensure!(got == reference, "H1 via ({a},{b}) is {got}, via (0,1) is {reference}");
            }
        }
    }

    // Genus is invariant under rotation and reversal of the arrangement.
    let mut rng = StdRng::seed_from_u64(0x6e3d_2024);
    let bundle = catalog::sphere_bundle(3, true).unwrap();
    let rp5 = catalog::projective(5).unwrap();
    let samples = [
        torus_with_orientability(&bundle, true).unwrap().result,
        torus(&rp5, rp5.default_isomorphism()).result,
    ];
    for trial in 0..100 {
        let g = &samples[trial % 2];
        let n = g.color_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut moved = order.clone();
        moved.rotate_left(rng.gen_range(0..n));
        if rng.gen_bool(0.5) {
            moved.reverse();
        }
        let chi = raw_chi(g, &order);
        ensure!(raw_chi(g, &moved) == chi, "trial {trial}: chi moved under {moved:?}");
        let (computed, rho) = genus_for_permutation(g, &CyclicPermutation::new(&moved).unwrap()).unwrap();
        ensure!(computed == chi && rho.doubled() == 2 - chi, "trial {trial}: genus mismatch for {order:?}");
    }

    // Smith normal form against determinantal divisors.
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.d, "trial {trial}: U A V != D for {rows:?}");
        ensure!(is_unimodular(&s.u), "trial {trial}: U not unimodular");
        ensure!(is_unimodular(&s.v), "trial {trial}: V not unimodular");
        let expected = invariant_factors(&rows);
        ensure!(s.diagonal() == expected, "trial {trial}: diagonal {:?}, expected {expected:?}", s.diagonal());
    }

    // Complementary pairs agree on 3-manifold gems.
    for entry in catalog_bases().into_iter().filter(|e| e.graph.color_count() == 4) {
        let g = |i, j| entry.graph.residue_count(&[i, j]);
        ensure!(
            g(0, 1) == g(2, 3) && g(0, 2) == g(1, 3) && g(0, 3) == g(1, 2),
            "{}: complementary pairs differ",
            entry.family
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("sphere gems have genus 0 and complexity 0 (d = 1..6)", sphere_baseline),
        ("sphere bundles: counts, pair table, genus 1, orientability (d = 3..6)", sphere_bundles),
        ("sphere-bundle mapping tori: counts, genus d^2-3, complexity d^2+3d+1, d = 3 exact", sphere_bundle_tori),
        ("lens mapping tori: 20q vertices, genus 5q-4, q = 2 both orientations", lens_tori),
        ("T^3 and RP^3, RP^5 mapping tori: counts, homology, genus bounds", three_torus_and_odd_projective),
        ("U_h x S^1 and RP^4 mapping tori: counts, homology, genus 5h+6 and 25", surface_bundles_and_even_projective),
        ("surface products have minimal genus p", surface_products),
        ("property suites: boundaries, homology, genus symmetry, SNF, complementary pairs", property_suites),
    ];
    if std::env::var_os("ACCEPTANCE_TRACE").is_none() {
        panic::set_hook(Box::new(|_| {}));
    }
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {title}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
