//! Built-in smoke checks: the bundled fixtures plus seeded random strongly
//! stable ideals in three variables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use koszulcone_core::{
    betti_table, check_regular_ordering, check_strongly_koszul, closed_form_resolution,
    iterated_mapping_cone, monomials_of_degree, verify_complex, BettiTable, DualAlgebra,
    GradedAlgebra, KoszulContext, Monomial, MonomialIdeal, PrimeField, RegularOrderingOptions,
    RingPresentation,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::{Report, COLON_DEGREE};
use crate::input;

pub const FIXTURES: &[(&str, &str)] = &[
    (
        "md_squares_n3_d2",
        include_str!("../../../fixtures/md_squares_n3_d2.ring"),
    ),
    (
        "hhr_example",
        include_str!("../../../fixtures/hhr_example.ring"),
    ),
    ("conca", include_str!("../../../fixtures/conca.ring")),
    (
        "stable_poly3",
        include_str!("../../../fixtures/stable_poly3.ring"),
    ),
    (
        "mixed_x1_x2x3",
        include_str!("../../../fixtures/mixed_x1_x2x3.ring"),
    ),
    (
        "preferred_basis",
        include_str!("../../../fixtures/preferred_basis.ring"),
    ),
];

type Check = Result<String, String>;

fn algebra(
    text: &str,
    cutoff: usize,
) -> Result<(input::RingFile, GradedAlgebra<PrimeField>), String> {
    let ring = input::parse(text).map_err(|e| e.to_string())?;
    let p = match ring.field {
        input::FieldSpec::Prime(p) => p,
        input::FieldSpec::Rationals => 101,
    };
    let field = PrimeField::new(p).map_err(|e| e.to_string())?;
    let pres = ring.presentation(field)?;
    let alg = GradedAlgebra::build(pres, cutoff).map_err(|e| e.to_string())?;
    Ok((ring, alg))
}

/// Both constructions agree and the result is a minimal resolution.
fn resolve_both(
    alg: &GradedAlgebra<PrimeField>,
    ideal: &MonomialIdeal<'_, PrimeField>,
    hmax: usize,
) -> Check {
    let dual = DualAlgebra::new(alg, hmax.max(3)).map_err(|e| e.to_string())?;
    let ctx = KoszulContext::new(alg, &dual).map_err(|e| e.to_string())?;
    let closed =
        closed_form_resolution(&ctx, ideal, hmax, COLON_DEGREE).map_err(|e| e.to_string())?;
    let cone = iterated_mapping_cone(&ctx, ideal, hmax, COLON_DEGREE).map_err(|e| e.to_string())?;
    if closed.graded_ranks() != cone.graded_ranks() {
        return Err("closed form and mapping cone ranks differ".into());
    }
    let r = verify_complex(alg, &closed, hmax, alg.cutoff() - 1).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("verification failed: {r:?}"));
    }
    Ok(format!(
        "ranks {:?}",
        (0..=hmax).map(|l| closed.rank(l)).collect::<Vec<_>>()
    ))
}

fn fixture_check(name: &str, text: &str, hmax: usize) -> Check {
    let (ring, alg) = algebra(text, 8)?;
    match name {
        "md_squares_n3_d2" => {
            let dual = DualAlgebra::new(&alg, hmax.max(3)).map_err(|e| e.to_string())?;
            let ideal =
                MonomialIdeal::new(&alg, ring.ideal_monomials()).map_err(|e| e.to_string())?;
            let t = betti_table(&dual, &ideal, 3, COLON_DEGREE)
                .map_err(|e| e.to_string())?
                .ideal_level();
            let row: Vec<usize> = (0..3).map(|l| t.get(l, l + 2)).collect();
            if row == [3, 8, 15] {
                Ok("ideal Betti numbers 3 8 15".into())
            } else {
                Err(format!("expected 3 8 15, got {row:?}"))
            }
        }
        "conca" => {
            let r = check_strongly_koszul(&alg, 3, None, &[]).map_err(|e| e.to_string())?;
            match r.witness() {
                Some(w) if w.subset().is_empty() && w.var() == 1 && w.degree() == 2 => {
                    Ok("witness (∅ : b) in degree 2".into())
                }
                other => Err(format!("unexpected witness {other:?}")),
            }
        }
        "preferred_basis" => {
            let dual = DualAlgebra::new(&alg, 3).map_err(|e| e.to_string())?;
            let dims: Vec<usize> = (0..=3).map(|l| dual.dim(l)).collect();
            // hypersurface: (1+t)^2/(1-t)
            if dims == [1, 3, 4, 4] && alg.preferred_conflicts().is_empty() {
                Ok(format!("dual dims {dims:?}"))
            } else {
                Err(format!(
                    "dual dims {dims:?}, conflicts {:?}",
                    alg.preferred_conflicts()
                ))
            }
        }
        _ => {
            let ideal =
                MonomialIdeal::new(&alg, ring.ideal_monomials()).map_err(|e| e.to_string())?;
            resolve_both(&alg, &ideal, hmax)
        }
    }
}

fn borel_closure(seed: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out: BTreeSet<Vec<u32>> = seed.iter().cloned().collect();
    let mut stack = seed.to_vec();
    while let Some(m) = stack.pop() {
        for j in 0..m.len() {
            for i in 0..j {
                if m[j] > 0 {
                    let mut next = m.clone();
                    next[j] -= 1;
                    next[i] += 1;
                    if out.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Minimal generators of a random strongly stable ideal of quadrics and cubics,
/// by degree and then lex-decreasing.
pub fn random_stable_ideal(rng: &mut impl Rng) -> Vec<Vec<u32>> {
    let quads: Vec<Vec<u32>> = monomials_of_degree(3, 2)
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    let cubics: Vec<Vec<u32>> = monomials_of_degree(3, 3)
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    let nq = rng.gen_range(1..=3);
    let nc = rng.gen_range(0..=2);
    let q: Vec<Vec<u32>> = quads.choose_multiple(rng, nq).cloned().collect();
    let c: Vec<Vec<u32>> = cubics.choose_multiple(rng, nc).cloned().collect();
    let g2 = borel_closure(&q);
    let divides = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut g3: Vec<Vec<u32>> = borel_closure(&c)
        .into_iter()
        .filter(|m| !g2.iter().any(|g| divides(g, m)))
        .collect();
    let mut gens: Vec<Vec<u32>> = g2.into_iter().collect();
    gens.sort_by(|a, b| b.cmp(a));
    g3.sort_by(|a, b| b.cmp(a));
    gens.extend(g3);
    gens
}

fn random_check(gens: &[Vec<u32>], hmax: usize) -> Check {
    let field = PrimeField::new(101).map_err(|e| e.to_string())?;
    let names = vec!["x1".to_string(), "x2".into(), "x3".into()];
    let alg =
        GradedAlgebra::build(RingPresentation::new(field, names), 8).map_err(|e| e.to_string())?;
    let monos: Vec<Monomial> = gens.iter().map(|e| Monomial::new(e.clone())).collect();
    let ideal = MonomialIdeal::new(&alg, monos).map_err(|e| e.to_string())?;
    let dual = DualAlgebra::new(&alg, hmax.max(3)).map_err(|e| e.to_string())?;
    let reg = check_regular_ordering(&ideal, &dual, RegularOrderingOptions::default())
        .map_err(|e| e.to_string())?;
    if !reg.passed() {
        return Err("ordering is not regular".into());
    }
    let mut expected = BettiTable::new(hmax);
    expected.add(0, 0, 1);
    for g in gens {
        let deg = g.iter().sum::<u32>() as usize;
        let top = g.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        for l in 1..=hmax {
            expected.add(l, deg + l - 1, binom(top - 1, l - 1));
        }
    }
    let got = betti_table(&dual, &ideal, hmax, COLON_DEGREE).map_err(|e| e.to_string())?;
    if got != expected {
        return Err("Betti numbers differ from the stable ideal formula".into());
    }
    resolve_both(&alg, &ideal, hmax)
}

pub fn run(seed: u64, cases: usize, hmax: usize) -> Report {
    let hmax = hmax.max(2);
    let mut text = String::new();
    let mut results = Vec::new();
    let mut record = |name: String, c: Check| {
        let (ok, detail) = match c {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let _ = writeln!(
            text,
            "{} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        results.push(json!({"name": name, "passed": ok, "detail": detail}));
        ok
    };
    let mut passed = true;
    for (name, body) in FIXTURES {
        passed &= record(format!("fixture {name}"), fixture_check(name, body, hmax));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..cases {
        let gens = random_stable_ideal(&mut rng);
        let shown: Vec<String> = gens
            .iter()
            .map(|m| input::render_monomial(m, &["x1".into(), "x2".into(), "x3".into()]))
            .collect();
        passed &= record(
            format!("random {i} ({})", shown.join(", ")),
            random_check(&gens, hmax),
        );
    }
    let _ = writeln!(text, "selftest: {}", if passed { "PASS" } else { "FAIL" });
    Report {
        passed,
        text,
        json: json!({"command": "selftest", "seed": seed, "passed": passed, "checks": results}),
    }
}
