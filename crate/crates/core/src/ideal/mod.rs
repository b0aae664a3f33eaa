//! Ordered monomial ideals `J = (m_1, .., m_r)` in `A`, their prefix ideals
//! `J_i = (m_1, .., m_i)`, colon ideals and the decompositions `m_i^*(v)`.
//!
//! Generators are indexed from zero in code: `m_0 .. m_{r-1}`, and
//! `prefix(i)` is the ideal spanned by the first `i` of them.

mod regular;
mod strongly_koszul;

use std::collections::HashMap;

pub use regular::{
    check_regular_ordering, check_star_condition, ConditionOneDisagreement, RegularOrderingOptions,
    RegularOrderingReport, RegularViolation, StarReport, StarViolation,
};
pub use strongly_koszul::{check_strongly_koszul, StronglyKoszulFailure, StronglyKoszulReport};

use crate::algebra::{AlgebraElement, GradedAlgebra, Monomial, VarSet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{solve_membership, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct MonomialIdeal<'a, F: Field> {
    alg: &'a GradedAlgebra<F>,
    gens: Vec<Monomial>,
    elems: Vec<AlgebraElement<F::Elem>>,
    /// `prefixes[i][d] = (J_i)_d` for `i = 0..=r`, `d = 0..=cutoff`.
    prefixes: Vec<Vec<Subspace<F::Elem>>>,
}

impl<'a, F: Field> MonomialIdeal<'a, F> {
    /// Generators must be chosen basis monomials, each outside the ideal of
    /// the ones before it.
    pub fn new(alg: &'a GradedAlgebra<F>, gens: Vec<Monomial>) -> Result<Self> {
        let f = alg.field();
        let mut elems = Vec::with_capacity(gens.len());
        for m in &gens {
            if m.nvars() != alg.nvars() {
                return Err(Error::InvalidIdeal("monomial arity mismatch".into()));
            }
            if m.degree() > alg.cutoff() {
                return Err(Error::DegreeOverflow {
                    requested: m.degree(),
                    cutoff: alg.cutoff(),
                });
            }
            if alg.basis_index(m).is_none() {
                return Err(Error::InvalidIdeal(format!(
                    "`{}` is not a basis monomial of A",
                    m.render(alg.var_names())
                )));
            }
            elems.push(alg.monomial(m)?);
        }
        let top = alg.cutoff();
        let mut prefixes = vec![(0..=top)
            .map(|d| Subspace::zero(alg.dim(d)))
            .collect::<Vec<_>>()];
        for (i, g) in elems.iter().enumerate() {
            let prev = &prefixes[i];
            if prev[g.degree].contains(f, &g.coords) {
                return Err(Error::InvalidIdeal(format!(
                    "generator {} (`{}`) lies in the ideal of the earlier generators",
                    i + 1,
                    gens[i].render(alg.var_names())
                )));
            }
            let mut next = Vec::with_capacity(top + 1);
            for d in 0..=top {
                if d < g.degree {
                    next.push(prev[d].clone());
                    continue;
                }
                let e = d - g.degree;
                let rows: Vec<Vec<F::Elem>> = (0..alg.dim(e))
                    .map(|b| alg.mul_basis(e, b, g).map(|p| p.coords))
                    .collect::<Result<_>>()?;
                next.push(prev[d].extend(f, &rows));
            }
            prefixes.push(next);
        }
        Ok(Self {
            alg,
            gens,
            elems,
            prefixes,
        })
    }

    pub fn from_words(alg: &'a GradedAlgebra<F>, words: &[&[usize]]) -> Result<Self> {
        let n = alg.nvars();
        Self::new(
            alg,
            words.iter().map(|w| Monomial::from_word(n, w)).collect(),
        )
    }

    pub fn algebra(&self) -> &'a GradedAlgebra<F> {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn element(&self, i: usize) -> &AlgebraElement<F::Elem> {
        &self.elems[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.gens[i].degree()
    }

    pub fn degrees_nondecreasing(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].degree() <= w[1].degree())
    }

    pub fn support(&self) -> VarSet {
        self.gens
            .iter()
            .fold(VarSet::empty(), |s, m| s.union(m.support()))
    }

    /// `(J_i)_d` where `J_i` is generated by the first `i` generators.
    pub fn prefix_space(&self, i: usize, d: usize) -> Result<&Subspace<F::Elem>> {
        self.prefixes[i].get(d).ok_or(Error::DegreeOverflow {
            requested: d,
            cutoff: self.alg.cutoff(),
        })
    }

    pub fn prefix_contains(&self, i: usize, v: &AlgebraElement<F::Elem>) -> Result<bool> {
        Ok(self
            .prefix_space(i, v.degree)?
            .contains(self.alg.field(), &v.coords))
    }

    pub fn contains(&self, v: &AlgebraElement<F::Elem>) -> Result<bool> {
        self.prefix_contains(self.len(), v)
    }

    /// `E_i = {j : x_j m_i ∈ J_{i-1}}` (zero-based: the prefix of the
    /// generators before `i`), with a bounded check that the colon ideal
    /// `(J_{i-1} : m_i)` has no generators beyond these variables.
    pub fn colon_vars(&self, i: usize, max_degree: usize) -> Result<ColonReport> {
        let alg = self.alg;
        let f = alg.field();
        let m = &self.elems[i];
        let deg = m.degree;
        let mut vars = VarSet::empty();
        for j in 0..alg.nvars() {
            let p = alg.multiply(&alg.var(j), m)?;
            if self.prefix_space(i, deg + 1)?.contains(f, &p.coords) {
                vars.insert(j);
            }
        }
        let var_elems: Vec<_> = vars.iter().map(|j| alg.var(j)).collect();
        let top = max_degree.min(alg.cutoff() - deg);
        let mut failure = None;
        for d in 1..=top {
            let colon = alg.colon_in_degree(self.prefix_space(i, deg + d)?, m, d)?;
            let expected = alg.ideal_in_degree(&var_elems, d)?;
            if colon.dim() != expected.dim() {
                failure = Some(ColonFailure {
                    degree: d,
                    colon_dim: colon.dim(),
                    expected_dim: expected.dim(),
                });
                break;
            }
        }
        Ok(ColonReport {
            generator: i,
            vars,
            verified_through: top,
            requested: max_degree,
            failure,
        })
    }

    pub fn check_linear_quotients(&self, max_degree: usize) -> Result<LinearQuotientsReport> {
        let colons = (0..self.len())
            .map(|i| self.colon_vars(i, max_degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearQuotientsReport { colons })
    }

    /// Writes `v ∈ J` as `Σ m_i^*(v) m_i`: take the least `i` with
    /// `v ∈ J_i`, solve `v = a m_i + u` with `u ∈ J_{i-1}` canonically, recurse
    /// on `u`.
    pub fn decompose(&self, v: &AlgebraElement<F::Elem>) -> Result<Decomposition<F::Elem>> {
        self.decompose_below(v, self.len())
    }

    fn decompose_below(
        &self,
        v: &AlgebraElement<F::Elem>,
        mut bound: usize,
    ) -> Result<Decomposition<F::Elem>> {
        let alg = self.alg;
        let f = alg.field();
        let d = v.degree;
        let mut rest = v.clone();
        let mut terms = Vec::new();
        while !rest.is_zero(f) {
            let Some(i) = (1..=bound).find(|&i| self.prefixes[i][d].contains(f, &rest.coords))
            else {
                return Err(Error::NotInIdeal { prefix: bound });
            };
            let j = i - 1;
            let e = d - self.degree(j);
            let de = alg.dim(e);
            let lower = &self.prefixes[j][d];
            let mut rows: Vec<Vec<F::Elem>> = (0..de)
                .map(|b| alg.mul_basis(e, b, &self.elems[j]).map(|p| p.coords))
                .collect::<Result<_>>()?;
            rows.extend(lower.basis().row_iter().map(<[F::Elem]>::to_vec));
            let system = Matrix::from_rows(alg.dim(d), &rows);
            let c = solve_membership(f, &rest.coords, &system)
                .expect("membership in J_i was established");
            let a = AlgebraElement {
                degree: e,
                coords: c[..de].to_vec(),
            };
            let u = lower.basis().left_mul_vec(f, &c[de..]);
            debug_assert!(!lower.contains(f, &alg.multiply(&a, &self.elems[j])?.coords));
            terms.push((j, a));
            rest = AlgebraElement {
                degree: d,
                coords: u,
            };
            bound = j;
        }
        terms.reverse();
        Ok(Decomposition { degree: d, terms })
    }

    /// Decomposition of `x_word · m_k`, with the convention
    /// `m_k^*(x_word m_k) = x_word` whenever `x_word m_k ∉ J_{k-1}`.
    pub fn decompose_multiple(&self, word: &[usize], k: usize) -> Result<Decomposition<F::Elem>> {
        let alg = self.alg;
        let w = alg.monomial(&Monomial::from_word(alg.nvars(), word))?;
        let v = alg.multiply(&w, &self.elems[k])?;
        if self.prefix_contains(k, &v)? {
            self.decompose_below(&v, k)
        } else {
            Ok(Decomposition {
                degree: v.degree,
                terms: vec![(k, w)],
            })
        }
    }

    /// Decompositions of `x_s m_k` for all `s, k` and of `x_s x_t m_k` for
    /// `s <= t` in `vars[k]`.
    pub fn decomposition_table(&self, vars: &[VarSet]) -> Result<DecompositionTable<F::Elem>> {
        let n = self.alg.nvars();
        let mut entries = HashMap::new();
        for k in 0..self.len() {
            let top = self.degree(k) + 2;
            for s in 0..n {
                entries.insert((vec![s], k), self.decompose_multiple(&[s], k)?);
                if top > self.alg.cutoff() {
                    continue;
                }
                if vars[k].contains(s) {
                    for t in vars[k].iter().filter(|&t| t >= s) {
                        entries.insert((vec![s, t], k), self.decompose_multiple(&[s, t], k)?);
                    }
                }
            }
        }
        let degrees = (0..self.len()).map(|k| self.degree(k)).collect();
        Ok(DecompositionTable { entries, degrees })
    }
}

/// `v = Σ m_i^*(v) m_i`, nonzero coefficients only, by increasing `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub degree: usize,
    pub terms: Vec<(usize, AlgebraElement<E>)>,
}

impl<E: Clone> Decomposition<E> {
    pub fn coeff(&self, i: usize) -> Option<&AlgebraElement<E>> {
        self.terms.iter().find(|(j, _)| *j == i).map(|(_, a)| a)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(j, _)| *j)
    }
}

/// Cached decompositions keyed by `(sorted variable word, k)`.
#[derive(Clone, Debug)]
pub struct DecompositionTable<E> {
    entries: HashMap<(Vec<usize>, usize), Decomposition<E>>,
    degrees: Vec<usize>,
}

impl<E: Clone> DecompositionTable<E> {
    pub fn get(&self, word: &[usize], k: usize) -> Option<&Decomposition<E>> {
        let mut w = word.to_vec();
        w.sort_unstable();
        self.entries.get(&(w, k))
    }

    /// `m_j^*(x_word m_k)` as an element of degree `|word| + deg m_k - deg m_j`,
    /// or `None` when it vanishes (or the degree is negative).
    pub fn coeff(&self, word: &[usize], k: usize, j: usize) -> Option<&AlgebraElement<E>> {
        self.get(word, k)?.coeff(j)
    }

    pub fn coeff_degree(&self, word_len: usize, k: usize, j: usize) -> Option<usize> {
        (word_len + self.degrees[k]).checked_sub(self.degrees[j])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vec<usize>, usize), &Decomposition<E>)> {
        self.entries.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColonFailure {
    pub degree: usize,
    pub colon_dim: usize,
    pub expected_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonReport {
    pub generator: usize,
    pub vars: VarSet,
    /// Largest colon degree actually compared.
    pub verified_through: usize,
    pub requested: usize,
    pub failure: Option<ColonFailure>,
}

impl ColonReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Passed, but the algebra cutoff stopped the check below the request.
    pub fn truncated(&self) -> bool {
        self.verified_through < self.requested
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuotientsReport {
    pub colons: Vec<ColonReport>,
}

impl LinearQuotientsReport {
    pub fn passed(&self) -> bool {
        self.colons.iter().all(ColonReport::passed)
    }

    pub fn vars(&self) -> Vec<VarSet> {
        self.colons.iter().map(|c| c.vars).collect()
    }

    pub fn first_failure(&self) -> Option<(usize, ColonFailure)> {
        self.colons
            .iter()
            .find_map(|c| c.failure.map(|f| (c.generator, f)))
    }

    pub fn into_result(self) -> Result<Vec<VarSet>> {
        match self.first_failure() {
            Some((generator, f)) => Err(Error::NotLinearQuotients {
                generator: generator + 1,
                degree: f.degree,
            }),
            None => Ok(self.vars()),
        }
    }
}

/// The annihilator `(0 : m)` up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    /// `{j : x_j m = 0}`.
    pub vars: VarSet,
    /// `dim (0 : m)_1`.
    pub linear_dim: usize,
    /// Per degree `d = 1..=verified_through`: `(dim (0:m)_d, dim of the part
    /// generated by (0:m)_1)`.
    pub dims: Vec<(usize, usize)>,
    /// Least degree holding a minimal generator of `(0 : m)` beyond degree one.
    pub higher_generator: Option<usize>,
    pub verified_through: usize,
}

impl AnnihilatorReport {
    /// `(0:m)_1` is spanned by the variables it contains.
    pub fn linear_part_is_variables(&self) -> bool {
        self.linear_dim == self.vars.len()
    }
}

pub fn annihilator_vars<F: Field>(
    alg: &GradedAlgebra<F>,
    m: &Monomial,
    max_degree: usize,
) -> Result<AnnihilatorReport> {
    let f = alg.field();
    let me = alg.monomial(m)?;
    let deg = m.degree();
    let top = max_degree.min(alg.cutoff().saturating_sub(deg));
    let zero = |d: usize| Subspace::<F::Elem>::zero(alg.dim(d));
    let mut vars = VarSet::empty();
    for j in 0..alg.nvars() {
        if deg < alg.cutoff() && alg.multiply(&alg.var(j), &me)?.is_zero(f) {
            vars.insert(j);
        }
    }
    let mut dims = Vec::new();
    let mut higher = None;
    let mut linear: Vec<AlgebraElement<F::Elem>> = Vec::new();
    for d in 1..=top {
        let colon = alg.colon_in_degree(&zero(d + deg), &me, d)?;
        if d == 1 {
            linear = colon
                .basis()
                .row_iter()
                .map(|r| AlgebraElement {
                    degree: 1,
                    coords: r.to_vec(),
                })
                .collect();
        }
        let generated = alg.ideal_in_degree(&linear, d)?;
        if higher.is_none() && generated.dim() < colon.dim() {
            higher = Some(d);
        }
        dims.push((colon.dim(), generated.dim()));
    }
    Ok(AnnihilatorReport {
        vars,
        linear_dim: dims.first().map_or(0, |x| x.0),
        dims,
        higher_generator: higher,
        verified_through: top,
    })
}
