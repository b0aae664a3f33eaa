mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::oracle::brute_force_betti;
use common::*;
use koszulcone_core::complex::{from_json, ideal_part, to_json};
use koszulcone_core::{
    betti_table, check_regular_ordering, closed_form_resolution, closed_form_resolution_with,
    iterated_mapping_cone, linear_strand, verify_complex, AlgebraElement, BettiTable,
    ClosedFormVariant, DualAlgebra, GradedAlgebra, KoszulContext, Monomial, MonomialIdeal,
    Rationals, RegularOrderingOptions, RingPresentation,
};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closes a set of exponent vectors under `m -> x_i m / x_j` for `i < j`.
fn borel_closure(seed: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out: BTreeSet<Vec<u32>> = seed.iter().cloned().collect();
    let mut stack: Vec<Vec<u32>> = seed.to_vec();
    while let Some(m) = stack.pop() {
        for j in 0..m.len() {
            if m[j] == 0 {
                continue;
            }
            for i in 0..j {
                let mut next = m.clone();
                next[j] -= 1;
                next[i] += 1;
                if out.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exponents(n: usize, d: usize) -> Vec<Vec<u32>> {
    koszulcone_core::monomials_of_degree(n, d)
        .into_iter()
        .map(|m| m.exponents().to_vec())
        .collect()
}

/// Minimal generators of a strongly stable ideal in three variables, by
/// degree and then lex-decreasing.
fn stable_generators() -> impl Strategy<Value = Vec<Vec<u32>>> {
    let quads = exponents(3, 2);
    let cubics = exponents(3, 3);
    (
        proptest::sample::subsequence(quads, 1..=3),
        proptest::sample::subsequence(cubics, 0..=2),
    )
        .prop_map(|(q, c)| {
            let g2 = borel_closure(&q);
            let g3: BTreeSet<_> = borel_closure(&c)
                .into_iter()
                .filter(|m| !g2.iter().any(|g| divides(g, m)))
                .collect();
            let mut gens: Vec<Vec<u32>> = g2.into_iter().collect();
            gens.sort_by(|a, b| b.cmp(a));
            let mut cubic: Vec<Vec<u32>> = g3.into_iter().collect();
            cubic.sort_by(|a, b| b.cmp(a));
            gens.extend(cubic);
            gens
        })
}

fn max_var(m: &[u32]) -> usize {
    m.iter().rposition(|&e| e > 0).unwrap() + 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stable_ideals_resolve_by_closed_form(gens in stable_generators()) {
        let alg = polynomial(3, 8);
        let dual = DualAlgebra::new(&alg, 4).unwrap();
        let ctx = KoszulContext::new(&alg, &dual).unwrap();
        let monos: Vec<Monomial> = gens.iter().map(|e| Monomial::new(e.clone())).collect();
        let j = MonomialIdeal::new(&alg, monos).unwrap();

        let report = check_regular_ordering(&j, &dual, RegularOrderingOptions::default()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);

        // stable ideals: m contributes C(max(m) - 1, l - 1) in degree deg m + l - 1
        let mut expected = BettiTable::new(4);
        expected.add(0, 0, 1);
        for g in &gens {
            let deg = g.iter().sum::<u32>() as usize;
            for l in 1..=4 {
                expected.add(l, deg + l - 1, binom(max_var(g) - 1, l - 1));
            }
        }
        prop_assert_eq!(&betti_table(&dual, &j, 4, 3).unwrap(), &expected);

        let closed = closed_form_resolution(&ctx, &j, 4, 3).unwrap();
        let cone = iterated_mapping_cone(&ctx, &j, 4, 3).unwrap();
        prop_assert_eq!(closed.graded_ranks(), cone.graded_ranks());
        prop_assert_eq!(&BettiTable::from_complex(&closed), &expected);
        let r = verify_complex(&alg, &closed, 4, 7).unwrap();
        prop_assert!(r.passed(), "{:?}", r);

        let oracle = brute_force_betti(&j, 3, 7);
        let ours: BTreeMap<_, _> = expected
            .entries()
            .filter(|&(l, d, _)| l <= 3 && d <= 7)
            .map(|(l, d, n)| ((l, d), n))
            .collect();
        prop_assert_eq!(oracle, ours);
    }
}

#[test]
fn two_relation_ring_over_rationals() {
    let p = RingPresentation::with_relations(
        Rationals,
        &["x1", "x2", "x3"],
        &[&[(1, &[0, 2])], &[(1, &[2, 2])]],
    );
    let alg = GradedAlgebra::build(p, 8).unwrap();
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();
    let j = MonomialIdeal::from_words(&alg, &[&[0, 1], &[1, 2]]).unwrap();
    let closed = closed_form_resolution(&ctx, &j, 4, 3).unwrap();
    let cone = iterated_mapping_cone(&ctx, &j, 4, 3).unwrap();
    assert_eq!(closed.graded_ranks(), cone.graded_ranks());
    assert!(verify_complex(&alg, &closed, 4, 7).unwrap().passed());

    let fp = two_relation_ring(8);
    let fd = DualAlgebra::new(&fp, 4).unwrap();
    let fctx = KoszulContext::new(&fp, &fd).unwrap();
    let fj = MonomialIdeal::from_words(&fp, &[&[0, 1], &[1, 2]]).unwrap();
    let fclosed = closed_form_resolution(&fctx, &fj, 4, 3).unwrap();
    assert_eq!(closed.graded_ranks(), fclosed.graded_ranks());
}

#[test]
fn corrupted_differential_is_detected() {
    let alg = two_relation_ring(8);
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();
    let j = MonomialIdeal::from_words(&alg, &[&[0, 1], &[1, 2]]).unwrap();
    let mut c = closed_form_resolution(&ctx, &j, 4, 3).unwrap();
    assert!(verify_complex(&alg, &c, 4, 7).unwrap().passed());
    let x2 = alg.var(1);
    c.differentials[1].add_entry(alg.field(), 0, 0, &x2);
    let r = verify_complex(&alg, &c, 4, 7).unwrap();
    assert!(r.d_squared_failures.contains(&2));
    assert!(r.homology.is_empty());
    assert!(!r.passed());
}

#[test]
fn literal_formula_loses_syzygies() {
    let alg = two_relation_ring(8);
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();
    let j = MonomialIdeal::from_words(&alg, &[&[0, 1], &[1, 2]]).unwrap();
    let literal = closed_form_resolution_with(&ctx, &j, 4, 3, ClosedFormVariant::Literal).unwrap();
    let r = verify_complex(&alg, &literal, 4, 7).unwrap();
    assert!(!r.passed());
}

#[test]
fn linear_strand_of_resolutions() {
    let alg = polynomial(3, 8);
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();

    let eq = MonomialIdeal::from_words(&alg, &[&[0, 0], &[0, 1], &[1, 1]]).unwrap();
    let res = ideal_part(&closed_form_resolution(&ctx, &eq, 4, 3).unwrap());
    let strand = linear_strand(&alg, &res).unwrap();
    assert_eq!(strand.graded_ranks(), res.graded_ranks());
    assert_eq!(linear_strand(&alg, &strand).unwrap(), strand);

    let mixed = MonomialIdeal::from_words(&alg, &[&[0], &[1, 2]]).unwrap();
    let res = ideal_part(&closed_form_resolution(&ctx, &mixed, 4, 3).unwrap());
    let strand = linear_strand(&alg, &res).unwrap();
    let total = |c: &koszulcone_core::ChainComplex<u64>| c.graded_ranks().values().sum::<usize>();
    assert!(total(&strand) < total(&res));
    assert_eq!(linear_strand(&alg, &strand).unwrap(), strand);
}

#[test]
fn complex_json_round_trip() {
    let alg = two_relation_ring(8);
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();
    let j = MonomialIdeal::from_words(&alg, &[&[0, 1], &[1, 2]]).unwrap();
    let c = iterated_mapping_cone(&ctx, &j, 3, 3).unwrap();
    let v = to_json(&alg, &c);
    let back = from_json(&alg, &v).unwrap();
    assert_eq!(back, c);
    let text = serde_json::to_string(&v).unwrap();
    let again = from_json(&alg, &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(again, c);
}

#[test]
fn single_generator_is_shifted_sub_priddy() {
    let alg = squares(3, 7);
    let dual = DualAlgebra::new(&alg, 4).unwrap();
    let ctx = KoszulContext::new(&alg, &dual).unwrap();
    let j = MonomialIdeal::from_words(&alg, &[&[0, 1]]).unwrap();
    let c = iterated_mapping_cone(&ctx, &j, 4, 3).unwrap();
    // ann(x1 x2) = (x1, x2), so F_l has rank l in degree l + 1
    for l in 1..=4 {
        assert_eq!(c.rank(l), l);
        assert!(c.bases[l].iter().all(|g| g.internal_degree == l + 1));
    }
    assert!(verify_complex(&alg, &c, 4, 6).unwrap().passed());
    let m = AlgebraElement::clone(j.element(0));
    assert_eq!(c.differential(1).unwrap().get(0, 0), Some(&m));
}
