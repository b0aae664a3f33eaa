#![allow(dead_code)]

pub mod oracle;

use koszulcone_core::{GradedAlgebra, Monomial, MonomialIdeal, PrimeField, RingPresentation};

pub fn field() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn polynomial(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
    GradedAlgebra::build(RingPresentation::new(field(), names(n)), cutoff).unwrap()
}

pub fn squares(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
    let mut p = RingPresentation::new(field(), names(n));
    for i in 0..n {
        p.relations.push(vec![(Monomial::from_word(n, &[i, i]), 1)]);
    }
    GradedAlgebra::build(p, cutoff).unwrap()
}

/// `k[x1,x2,x3]/(x1x3, x3^2)`.
pub fn two_relation_ring(cutoff: usize) -> GradedAlgebra<PrimeField> {
    let p = RingPresentation::with_relations(
        field(),
        &["x1", "x2", "x3"],
        &[&[(1, &[0, 2])], &[(1, &[2, 2])]],
    );
    GradedAlgebra::build(p, cutoff).unwrap()
}

/// `k[a,b,c,d]/(ac, ad, ab - bd, a^2 + bc, b^2)`: Koszul but not strongly Koszul.
pub fn non_strongly_koszul_ring(cutoff: usize) -> GradedAlgebra<PrimeField> {
    let p = RingPresentation::with_relations(
        field(),
        &["a", "b", "c", "d"],
        &[
            &[(1, &[0, 2])],
            &[(1, &[0, 3])],
            &[(1, &[0, 1]), (-1, &[1, 3])],
            &[(1, &[0, 0]), (1, &[1, 2])],
            &[(1, &[1, 1])],
        ],
    );
    GradedAlgebra::build(p, cutoff).unwrap()
}

/// Squarefree monomials of degree `d` in `n` variables, lex order.
pub fn squarefree_words(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Polynomial(usize),
    Squares(usize),
    TwoRelation,
}

pub struct Fixture {
    pub name: String,
    pub ring: RingKind,
    pub words: Vec<Vec<usize>>,
}

impl Fixture {
    fn new(name: &str, ring: RingKind, words: &[&[usize]]) -> Self {
        Self {
            name: name.into(),
            ring,
            words: words.iter().map(|w| w.to_vec()).collect(),
        }
    }

    pub fn algebra(&self, cutoff: usize) -> GradedAlgebra<PrimeField> {
        match self.ring {
            RingKind::Polynomial(n) => polynomial(n, cutoff),
            RingKind::Squares(n) => squares(n, cutoff),
            RingKind::TwoRelation => two_relation_ring(cutoff),
        }
    }

    pub fn ideal<'a>(&self, alg: &'a GradedAlgebra<PrimeField>) -> MonomialIdeal<'a, PrimeField> {
        let words: Vec<&[usize]> = self.words.iter().map(Vec::as_slice).collect();
        MonomialIdeal::from_words(alg, &words).unwrap()
    }
}

/// Every ideal fixture used across the suites.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::new(
            "two_relation_x1x2_x2x3",
            RingKind::TwoRelation,
            &[&[0, 1], &[1, 2]],
        ),
        Fixture::new(
            "poly3_x1sq_x1x2_x2sq",
            RingKind::Polynomial(3),
            &[&[0, 0], &[0, 1], &[1, 1]],
        ),
        Fixture::new(
            "poly3_max_ideal_squared",
            RingKind::Polynomial(3),
            &[&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[1, 2], &[2, 2]],
        ),
        Fixture::new(
            "poly3_x1_x2sq_x2x3",
            RingKind::Polynomial(3),
            &[&[0], &[1, 1], &[1, 2]],
        ),
        Fixture::new(
            "poly3_x1sq_x1x2_x1x3_x2sq",
            RingKind::Polynomial(3),
            &[&[0, 0], &[0, 1], &[0, 2], &[1, 1]],
        ),
        Fixture::new("poly3_x1_x2x3", RingKind::Polynomial(3), &[&[0], &[1, 2]]),
        Fixture::new("poly2_x1_x2", RingKind::Polynomial(2), &[&[0], &[1]]),
    ];
    for (n, d) in [(2, 1), (3, 1), (3, 2), (3, 3)] {
        let words = squarefree_words(n, d);
        let refs: Vec<&[usize]> = words.iter().map(Vec::as_slice).collect();
        out.push(Fixture::new(
            &format!("squares{n}_max_ideal_power{d}"),
            RingKind::Squares(n),
            &refs,
        ));
    }
    out
}
