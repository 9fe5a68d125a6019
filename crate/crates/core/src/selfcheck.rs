//! The golden checks behind `gradelab selfcheck`, one function per item.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::autgrp::{closure, named, Automorphism};
use crate::catalog::{catalog, catalog_in, published_parts, CatalogEntry, NAMES};
use crate::contractions::{
    equations_for, is_invariant, jacobi_oracle, solve_binary, symmetry_orbits, EpsilonAssignment, GradedStructure,
    TripleOracle,
};
use crate::cyclo::{CycloNumber, Rational};
use crate::error::Result;
use crate::gradings::{common_eigenspaces, AbelianGroup};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::normalizers::{
    det_z3, induced_permutation, linearize_on_labels, quotient_group, Mat2, PermutationGroup, DEFAULT_CLOSURE_CAP,
};

#[derive(Clone, Debug)]
pub struct Config {
    /// Random assignments for the full-oracle cross-check (and for the
    /// equation check when the active variables exceed 24).
    pub oracle_samples: usize,
    pub substrate_samples: usize,
    pub seed: u64,
    pub node_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            oracle_samples: 100_000,
            substrate_samples: 1_000,
            seed: 0x5EED,
            node_cap: crate::contractions::DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 9] = [
    "fine-grading reproduction",
    "grading axiom and labelings",
    "MAD-group cardinalities",
    "normalizer quotient orders",
    "inner structure",
    "permutation constraints",
    "contraction oracle equivalence",
    "symmetry invariance of solutions",
    "substrate properties",
];

pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    (1..=9).map(|id| run(id, cfg)).collect()
}

pub fn run(id: u8, cfg: &Config) -> Outcome {
    let result = match id {
        1 => fine_gradings(),
        2 => labelings(),
        3 => cardinalities(),
        4 => quotient_orders(),
        5 => inner_structure(),
        6 => permutation_constraints(),
        7 => oracle_equivalence(cfg),
        8 => symmetry_invariance(cfg),
        9 => substrate(cfg),
        _ => Ok((false, format!("no check {id}"))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        title: (id as usize).checked_sub(1).and_then(|k| TITLES.get(k)).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

type Check = Result<(bool, String)>;

fn entries() -> Result<Vec<CatalogEntry>> {
    let alg = Arc::new(LieAlgebra::sl(3));
    NAMES.iter().map(|n| catalog_in(alg.clone(), n)).collect()
}

fn fine_gradings() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for e in entries()? {
        let alg = e.grading.algebra().clone();
        let computed = common_eigenspaces(alg.clone(), &e.mad.separating_generators)?;
        let published = published_parts(&alg, e.name)?;
        let matches = computed.part_count() == published.len()
            && published.iter().all(|(_, s)| computed.parts().contains(s));
        ok &= matches;
        let mut dims = computed.dims();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        notes.push(format!("{}: {} parts {:?} {}", e.name, computed.part_count(), dims, if matches { "=" } else { "!=" }));
    }
    Ok((ok, notes.join("; ")))
}

fn labelings() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for e in entries()? {
        let graded = e.grading.verify().is_grading();
        let labeled = e.grading.verify_labeling(&e.group, &e.labels)?;
        ok &= graded && labeled;
        notes.push(format!("{}: grading {graded}, labels over {} {labeled}", e.name, e.group));
    }
    let g1 = catalog("g1")?;
    for group in [AbelianGroup::new(vec![3, 3])?, AbelianGroup::cyclic(7)] {
        let found = g1
            .grading
            .search_labeling(&group)
            .map(|l| g1.grading.verify_labeling(&group, &l))
            .transpose()?
            .unwrap_or(false);
        ok &= found;
        notes.push(format!("g1 search over {group}: {found}"));
    }
    Ok((ok, notes.join("; ")))
}

fn cardinalities() -> Check {
    let g4 = catalog("g4")?;
    let g2 = catalog("g2")?;
    let alg = g4.grading.algebra().clone();
    let pauli = closure(
        &alg,
        &[Automorphism::ad(&alg, named::p())?, Automorphism::ad(&alg, named::q())?],
        DEFAULT_CLOSURE_CAP,
    )?
    .len();
    let signs = closure(&alg, &g2.mad.separating_generators, DEFAULT_CLOSURE_CAP)?.len();
    Ok((pauli == 9 && signs == 8, format!("|G4| = {pauli} (want 9), |G2| = {signs} (want 8)")))
}

fn quotient_orders() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for (e, want) in entries()?.into_iter().zip([12, 18, 4, 48]) {
        let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
        let mut good = q.order() == want;
        let mut note = format!("{}: {} (want {want})", e.name, q.order());
        if e.name == "g3" {
            good &= q.group.exponent() == 2;
            note.push_str(&format!(", exponent {}", q.group.exponent()));
        }
        ok &= good;
        notes.push(note);
    }
    Ok((ok, notes.join("; ")))
}

/// Every 2×2 matrix over Z_3 with determinant 1.
pub fn sl2_z3() -> BTreeSet<Mat2> {
    let mut out = BTreeSet::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 9 - b * c) % 3 == 1 {
                        out.insert([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn inner_structure() -> Check {
    let g1 = catalog("g1")?;
    let q1 = quotient_group(&g1.mad, &g1.grading, &g1.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
    let inner1 = q1.inner();
    let b_gens = ["AdB1", "AdB2"]
        .iter()
        .map(|n| induced_permutation(&named::lookup(g1.grading.algebra(), n)?, &g1.grading))
        .collect::<Result<Vec<_>>>()?;
    let s3 = PermutationGroup::generate(7, b_gens, DEFAULT_CLOSURE_CAP)?;
    let g1_ok = inner1.order() == 6 && s3.elements == inner1.elements;

    let g4 = catalog("g4")?;
    let q4 = quotient_group(&g4.mad, &g4.grading, &g4.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
    let inner4 = q4.inner();
    let linear: Option<BTreeSet<Mat2>> = inner4
        .elements
        .iter()
        .map(|p| linearize_on_labels(p, &g4.grading))
        .collect();
    let sl2 = sl2_z3();
    let g4_ok = inner4.order() == 24
        && linear.as_ref().is_some_and(|m| *m == sl2 && m.iter().all(|x| det_z3(x) == 1));
    Ok((
        g1_ok && g4_ok,
        format!(
            "g1 inner order {} (= <AdB1, AdB2>: {}); g4 inner order {}, linearized onto {} of {} SL(2,Z3) matrices",
            inner1.order(),
            s3.elements == inner1.elements,
            inner4.order(),
            linear.map_or(0, |m| m.intersection(&sl2).count()),
            sl2.len()
        ),
    ))
}

fn permutation_constraints() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for e in entries()? {
        let alg = e.grading.algebra().clone();
        let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
        let fixes = match e.grading.dims().iter().position(|&d| d == 2) {
            Some(two) => q.group.elements.iter().all(|p| p.fixes(two)),
            None => true,
        };
        let mut gens: Vec<Automorphism> = e.normalizer_generators.iter().map(|(_, a)| a.clone()).collect();
        gens.extend(e.mad.separating_generators.iter().cloned());
        let mut functorial = true;
        for h1 in &gens {
            for h2 in &gens {
                let lhs = induced_permutation(&h1.compose(h2), &e.grading)?;
                let rhs = induced_permutation(h1, &e.grading)?.compose(&induced_permutation(h2, &e.grading)?);
                functorial &= lhs == rhs;
            }
        }
        let members = e.mad.test_elements(&alg);
        let trivial = members
            .iter()
            .map(|g| induced_permutation(g, &e.grading).map(|p| p.is_identity()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        ok &= fixes && functorial && trivial;
        notes.push(format!(
            "{}: 2-dim part fixed {fixes}, functorial {functorial}, G acts trivially {trivial}",
            e.name
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn oracle_equivalence(cfg: &Config) -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for name in ["g2", "g4"] {
        let e = catalog(name)?;
        let gs = GradedStructure::new(&e.grading)?;
        let sys = equations_for(&gs);
        let sol = solve_binary(&sys, cfg.node_cap, 1)?;
        let fast = TripleOracle::new(&gs);
        let active = gs.active_pairs();
        let npairs = gs.pair_index().len();
        let mut discrepancies = 0u64;
        let mut checked = 0u64;
        let spread = |x: u64| -> u128 {
            active
                .iter()
                .enumerate()
                .filter(|(k, _)| x >> k & 1 == 1)
                .fold(0u128, |m, (_, &v)| m | 1 << v)
        };
        let exhaustive = active.len() <= 24;
        if exhaustive {
            for x in 0..1u64 << active.len() {
                let bits = spread(x);
                let eps = EpsilonAssignment::from_bits(gs.parts, bits)?;
                if fast.accepts(bits) != sol.contains(&eps) {
                    discrepancies += 1;
                }
                checked += 1;
            }
        }
        // the precompiled oracle against the full Jacobi check
        let mut cross = 0u64;
        let mut cross_bad = 0u64;
        let mut samples: Vec<u128> = sol.core.clone();
        samples.extend((0..cfg.oracle_samples).map(|_| rng.gen::<u128>() & ((1u128 << npairs) - 1)));
        for bits in samples {
            let eps = EpsilonAssignment::from_bits(gs.parts, bits)?;
            let full = jacobi_oracle(&gs.contracted(&eps));
            if full != fast.accepts(bits) {
                cross_bad += 1;
            }
            if !exhaustive && full != sol.contains(&eps) {
                discrepancies += 1;
            }
            cross += 1;
        }
        ok &= discrepancies == 0 && cross_bad == 0;
        notes.push(format!(
            "{name}: {} active pairs, {} {} assignments with {discrepancies} discrepancies; full oracle on {cross} assignments with {cross_bad} discrepancies; {} solutions",
            active.len(),
            if exhaustive { "all" } else { "sampled" },
            if exhaustive { checked } else { cross },
            sol.total()
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn symmetry_invariance(cfg: &Config) -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for e in entries()? {
        let gs = GradedStructure::new(&e.grading)?;
        let sol = solve_binary(&equations_for(&gs), cfg.node_cap, 1)?;
        let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
        let invariant = is_invariant(&sol, &q.group);
        let orbits = symmetry_orbits(&sol, &q.group)?;
        let divides = orbits.iter().all(|o| q.order() % o.size == 0);
        let covers = orbits.iter().map(|o| o.size).sum::<usize>() == sol.core.len();
        ok &= invariant && divides && covers;
        notes.push(format!(
            "{}: invariant {invariant}, {} orbits over {} core solutions, sizes divide {} {divides}",
            e.name,
            orbits.len(),
            sol.core.len(),
            q.order()
        ));
    }
    Ok((ok, notes.join("; ")))
}

pub fn random_cyclo(rng: &mut StdRng, order: u32) -> CycloNumber {
    let phi = crate::cyclo::field(order).degree();
    let coeffs = (0..phi)
        .map(|_| Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into()))
        .collect();
    CycloNumber::from_coeffs(order, coeffs)
}

fn close(a: num::complex::Complex64, b: num::complex::Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn substrate(cfg: &Config) -> Check {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x9);
    let n = cfg.substrate_samples;
    let mut field_ok = 0;
    let mut embed_ok = 0;
    let mut float_ok = 0;
    for _ in 0..n {
        let order = [3u32, 4, 8, 12, 24][rng.gen_range(0..5)];
        let (a, b, c) = (random_cyclo(&mut rng, order), random_cyclo(&mut rng, order), random_cyclo(&mut rng, order));
        let axioms = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &(&a + &b) * &c == &(&a * &c) + &(&b * &c)
            && (a.is_zero() || (&a * &a.inv()?).is_one());
        field_ok += usize::from(axioms);
        let up = 48;
        let hom = (&a + &b).embed(up)? == &a.embed(up)? + &b.embed(up)?
            && (&a * &b).embed(up)? == &a.embed(up)? * &b.embed(up)?
            && a.embed(up)?.order() == up;
        embed_ok += usize::from(hom);
        let fl = close((&a * &b).to_complex(), a.to_complex() * b.to_complex())
            && close((&a + &b).to_complex(), a.to_complex() + b.to_complex());
        float_ok += usize::from(fl);
    }

    let mut dim_ok = 0;
    for _ in 0..n {
        let pool: Vec<Vec<CycloNumber>> = (0..6)
            .map(|_| (0..8).map(|_| small_cyclo(&mut rng)).collect())
            .collect();
        let pick = |rng: &mut StdRng| -> Vec<Vec<CycloNumber>> {
            pool.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
        };
        let u = Subspace::span(8, pick(&mut rng))?;
        let w = Subspace::span(8, pick(&mut rng))?;
        if u.sum(&w)?.dim() + u.intersect(&w)?.dim() == u.dim() + w.dim() {
            dim_ok += 1;
        }
    }

    let alg = LieAlgebra::sl(3);
    let named_autos = named::NAMES
        .iter()
        .map(|nm| named::lookup(&alg, nm))
        .collect::<Result<Vec<_>>>()?;
    let mut auto_ok = 0;
    for _ in 0..n {
        let mut f = Automorphism::identity(&alg);
        for _ in 0..rng.gen_range(1..4) {
            f = named_autos[rng.gen_range(0..named_autos.len())].compose(&f);
        }
        let d = Matrix::diag((0..3).map(|_| CycloNumber::from_int(rng.gen_range(1..5))).collect());
        f = Automorphism::ad(&alg, d)?.compose(&f);
        let x: Vec<CycloNumber> = (0..8).map(|_| small_cyclo(&mut rng)).collect();
        let y: Vec<CycloNumber> = (0..8).map(|_| small_cyclo(&mut rng)).collect();
        let sc = alg.structure();
        let lhs = f.action().apply(&sc.bracket(&x, &y))?;
        let rhs = sc.bracket(&f.action().apply(&x)?, &f.action().apply(&y)?);
        auto_ok += usize::from(lhs == rhs);
    }

    let ok = [field_ok, embed_ok, float_ok, dim_ok, auto_ok].iter().all(|&k| k == n);
    Ok((
        ok,
        format!(
            "of {n} samples each: field axioms {field_ok}, embedding {embed_ok}, float agreement {float_ok}, dimension formula {dim_ok}, automorphism property {auto_ok}"
        ),
    ))
}

fn small_cyclo(rng: &mut StdRng) -> CycloNumber {
    let re = CycloNumber::from_int(rng.gen_range(-3..=3));
    let im = CycloNumber::root_of_unity(3, 1).scale(&Rational::from_integer(rng.gen_range(-2i64..=2).into()));
    &re + &im
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_has_24_elements() {
        assert_eq!(sl2_z3().len(), 24);
    }

    #[test]
    fn fast_items_report() {
        let cfg = Config {
            oracle_samples: 10,
            substrate_samples: 5,
            ..Config::default()
        };
        for id in [1, 2, 3, 5, 6, 9] {
            let o = run(id, &cfg);
            assert!(o.passed, "{} {}: {}", o.id, o.title, o.detail);
        }
        assert!(!run(0xff, &cfg).passed);
    }
}
