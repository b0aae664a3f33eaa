//! Benchmark fixtures shared by the criterion benches.

use koszulcone_core::{GradedAlgebra, Monomial, MonomialIdeal, PrimeField, RingPresentation};

pub fn field() -> PrimeField {
    PrimeField::new(101).expect("101 is prime")
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `k[x1..xn]/(x1^2, .., xn^2)`.
pub fn squares(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
    let mut p = RingPresentation::new(field(), names(n));
    for i in 0..n {
        p.relations.push(vec![(Monomial::from_word(n, &[i, i]), 1)]);
    }
    GradedAlgebra::build(p, cutoff).expect("valid presentation")
}

pub fn polynomial(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
    GradedAlgebra::build(RingPresentation::new(field(), names(n)), cutoff)
        .expect("valid presentation")
}

/// `k[x1,x2,x3]/(x1x3, x3^2)`.
pub fn two_relation(cutoff: usize) -> GradedAlgebra<PrimeField> {
    let p = RingPresentation::with_relations(
        field(),
        &["x1", "x2", "x3"],
        &[&[(1, &[0, 2])], &[(1, &[2, 2])]],
    );
    GradedAlgebra::build(p, cutoff).expect("valid presentation")
}

/// All monomials of degree `d`, lex-decreasing: a strongly stable ideal.
pub fn max_ideal_power(alg: &GradedAlgebra<PrimeField>, d: usize) -> MonomialIdeal<'_, PrimeField> {
    let mut gens = koszulcone_core::monomials_of_degree(alg.nvars(), d);
    gens.sort_by(|a, b| b.exponents().cmp(a.exponents()));
    MonomialIdeal::new(alg, gens).expect("monomials of one degree")
}
