//! Regular-ordering conditions and the multigraded sufficient condition.

use std::collections::HashMap;

use super::{DecompositionTable, LinearQuotientsReport, MonomialIdeal};
use crate::algebra::{AlgebraElement, GradedAlgebra, VarSet};
use crate::dual::{left_ideal_contains, word_index, DualAlgebra, QuotientDual};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularOrderingOptions {
    /// Degree bound for the linear-quotient colon checks.
    pub colon_degree: usize,
    /// Evaluate condition (1) with `m_j^*(x_s m_j)` in its last summand
    /// instead of `m_j^*(x_s m_k)`.
    pub literal_condition_one: bool,
    /// Evaluate condition (2b) on the whole left ideal `L^j` instead of on
    /// its degree-one generators outside `L^k`.
    pub whole_ideal_condition_two_b: bool,
}

impl Default for RegularOrderingOptions {
    fn default() -> Self {
        Self {
            colon_degree: 3,
            literal_condition_one: false,
            whole_ideal_condition_two_b: false,
        }
    }
}

/// Generator indices are zero-based; `s, t, u, v` are variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularViolation {
    ConditionOne {
        u: usize,
        v: usize,
        j: usize,
        k: usize,
    },
    /// `E_j ⊄ E_k` although `m_j^*(x_t m_k) != 0`.
    ConditionTwoA { j: usize, k: usize, t: usize },
    /// `u` is the degree-one generator of `L^j` witnessing the failure, or
    /// `None` under the whole-ideal reading.
    ConditionTwoB {
        j: usize,
        k: usize,
        t: usize,
        s: usize,
        u: Option<usize>,
    },
    ConditionThree {
        i: usize,
        k: usize,
        s: usize,
        t: usize,
    },
}

impl RegularViolation {
    pub fn describe(&self, names: &[String]) -> String {
        match *self {
            Self::ConditionOne { u, v, j, k } => format!(
                "condition (1) fails for pair ({}, {}), j = {}, k = {}",
                names[u],
                names[v],
                j + 1,
                k + 1
            ),
            Self::ConditionTwoA { j, k, t } => format!(
                "condition (2a) fails: m_{}^*({} m_{}) != 0 but E_{} is not contained in E_{}",
                j + 1,
                names[t],
                k + 1,
                j + 1,
                k + 1
            ),
            Self::ConditionTwoB { j, k, t, s, u } => format!(
                "condition (2b) fails for j = {}, k = {}, t = {}, s = {}{}",
                j + 1,
                k + 1,
                names[t],
                names[s],
                u.map(|u| format!(", generator {}^*", names[u]))
                    .unwrap_or_default()
            ),
            Self::ConditionThree { i, k, s, t } => format!(
                "condition (3) fails for i = {}, k = {}, s = {}, t = {}",
                i + 1,
                k + 1,
                names[s],
                names[t]
            ),
        }
    }
}

/// A case of condition (1) where the two readings of its last summand give
/// different verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionOneDisagreement {
    pub u: usize,
    pub v: usize,
    pub j: usize,
    pub k: usize,
    pub symmetric_holds: bool,
    pub literal_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularOrderingReport {
    pub linear_quotients: LinearQuotientsReport,
    pub literal_condition_one: bool,
    /// Dual degree through which the left-ideal containments were tested.
    pub dual_degree: usize,
    pub violations: Vec<RegularViolation>,
    pub disagreements: Vec<ConditionOneDisagreement>,
}

impl RegularOrderingReport {
    pub fn passed(&self) -> bool {
        self.linear_quotients.passed() && self.violations.is_empty()
    }
}

fn coeff_or_zero<F: Field>(
    alg: &GradedAlgebra<F>,
    table: &DecompositionTable<F::Elem>,
    word: &[usize],
    k: usize,
    j: usize,
) -> Option<AlgebraElement<F::Elem>> {
    let degree = table.coeff_degree(word.len(), k, j)?;
    Some(
        table
            .coeff(word, k, j)
            .cloned()
            .unwrap_or_else(|| alg.zero(degree)),
    )
}

/// Checks conditions (1), (2a), (2b) and (3) for every applicable index.
/// Linear quotients are verified first; on failure no condition is tested.
pub fn check_regular_ordering<F: Field>(
    ideal: &MonomialIdeal<'_, F>,
    dual: &DualAlgebra<F>,
    opts: RegularOrderingOptions,
) -> Result<RegularOrderingReport> {
    let alg = ideal.algebra();
    let f = alg.field();
    let n = alg.nvars();
    let r = ideal.len();
    let linear_quotients = ideal.check_linear_quotients(opts.colon_degree)?;
    let mut report = RegularOrderingReport {
        literal_condition_one: opts.literal_condition_one,
        dual_degree: dual.max_degree(),
        violations: Vec::new(),
        disagreements: Vec::new(),
        linear_quotients,
    };
    if !report.linear_quotients.passed() {
        return Ok(report);
    }
    let vars = report.linear_quotients.vars();
    let table = ideal.decomposition_table(&vars)?;
    let c = |word: &[usize], k: usize, j: usize| coeff_or_zero(alg, &table, word, k, j);

    // (1)
    let sc = alg.structure_coefficients();
    let non_s = sc.ordered_non_s(f, n);
    for k in 0..r {
        for j in 0..=k {
            let Some(top) = table.coeff_degree(1, k, j) else {
                continue;
            };
            let mul = |x: usize, a: &AlgebraElement<F::Elem>| alg.multiply(&alg.var(x), a);
            for ((u, v), expansion) in &non_s {
                let (cv, cu) = (c(&[*v], k, j).unwrap(), c(&[*u], k, j).unwrap());
                let lhs = mul(*u, &cv)?.add(f, &mul(*v, &cu)?);
                let mut sym = alg.zero(top + 1);
                let mut lit = Some(alg.zero(top + 1));
                for ((s, t), coef) in expansion {
                    let ct = c(&[*t], k, j).unwrap();
                    let cs = c(&[*s], k, j).unwrap();
                    let first = mul(*s, &ct)?;
                    sym.add_assign(f, &first.add(f, &mul(*t, &cs)?).scale(f, coef));
                    let own = c(&[*s], j, j).unwrap();
                    lit = match lit {
                        Some(mut acc) if own.degree == cs.degree => {
                            acc.add_assign(f, &first.add(f, &mul(*t, &own)?).scale(f, coef));
                            Some(acc)
                        }
                        _ => None,
                    };
                }
                let symmetric_holds = lhs == sym;
                let literal_holds = lit.as_ref() == Some(&lhs);
                if symmetric_holds != literal_holds {
                    report.disagreements.push(ConditionOneDisagreement {
                        u: *u,
                        v: *v,
                        j,
                        k,
                        symmetric_holds,
                        literal_holds,
                    });
                }
                let holds = if opts.literal_condition_one {
                    literal_holds
                } else {
                    symmetric_holds
                };
                if !holds {
                    report
                        .violations
                        .push(RegularViolation::ConditionOne { u: *u, v: *v, j, k });
                }
            }
        }
    }

    // (2)
    let mut quotients: HashMap<VarSet, QuotientDual<F::Elem>> = HashMap::new();
    for e in &vars {
        quotients.entry(*e).or_insert_with(|| dual.quotient(*e));
    }
    let full3 = dual.component(3)?;
    for k in 0..r {
        for t in vars[k].iter() {
            for j in 0..k {
                let nonzero = table.coeff(&[t], k, j).is_some_and(|a| !a.is_zero(f));
                if !nonzero {
                    continue;
                }
                if !vars[j].is_subset(vars[k]) {
                    report
                        .violations
                        .push(RegularViolation::ConditionTwoA { j, k, t });
                }
                let (lj, lk) = (&quotients[&vars[j]], &quotients[&vars[k]]);
                if left_ideal_contains(dual, &[t], lj, lk).holds() {
                    continue;
                }
                for s in vars[k].iter() {
                    if opts.whole_ideal_condition_two_b {
                        if left_ideal_contains(dual, &[t, s], lj, lk).holds() {
                            report.violations.push(RegularViolation::ConditionTwoB {
                                j,
                                k,
                                t,
                                s,
                                u: None,
                            });
                        }
                        continue;
                    }
                    // generators x_u^* of L^j outside L^k: u ∉ E_j, u ∈ E_k
                    for u in vars[k].iter().filter(|&u| !vars[j].contains(u)) {
                        let w = word_index(n, &[t, s, u]);
                        let nonzero = full3.basis().row_iter().any(|r| !f.is_zero(&r[w]));
                        let in_lk = lk
                            .component(3)?
                            .basis()
                            .row_iter()
                            .all(|r| f.is_zero(&r[w]));
                        if nonzero && in_lk {
                            report.violations.push(RegularViolation::ConditionTwoB {
                                j,
                                k,
                                t,
                                s,
                                u: Some(u),
                            });
                        }
                    }
                }
            }
        }
    }

    // (3)
    for k in 0..r {
        for s in vars[k].iter() {
            for t in vars[k].iter() {
                for i in 0..k {
                    let Some(lhs) = c(&[s, t], k, i) else {
                        continue;
                    };
                    let mut rhs = alg.zero(lhs.degree);
                    for j in i..k {
                        if let (Some(a), Some(b)) = (c(&[s], j, i), c(&[t], k, j)) {
                            rhs.add_assign(f, &alg.multiply(&a, &b)?);
                        }
                    }
                    if lhs != rhs {
                        report
                            .violations
                            .push(RegularViolation::ConditionThree { i, k, s, t });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarViolation {
    pub generator: usize,
    pub var: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub relation_support: VarSet,
    pub linear_quotients: LinearQuotientsReport,
    /// `y m_i ∈ J_{i-1}` and `y m_i != 0` for `y ∈ Supp(I)`.
    pub star_violations: Vec<StarViolation>,
    /// `(k, s, j)` with `g(x_s m_k) = m_j` and `E_j ⊄ E_k`.
    pub decomposition_violations: Vec<(usize, usize, usize)>,
}

impl StarReport {
    /// Linear quotients, a regular decomposition function and (*) together
    /// guarantee a regular ordering.
    pub fn guaranteed(&self) -> bool {
        self.linear_quotients.passed()
            && self.star_violations.is_empty()
            && self.decomposition_violations.is_empty()
    }
}

pub fn check_star_condition<F: Field>(
    ideal: &MonomialIdeal<'_, F>,
    colon_degree: usize,
) -> Result<StarReport> {
    let alg = ideal.algebra();
    let f = alg.field();
    let pres = alg.presentation();
    let mut support = VarSet::empty();
    for rel in &pres.relations {
        let terms: Vec<_> = rel.iter().filter(|(_, c)| !f.is_zero(c)).collect();
        if terms.len() > 1 {
            let text: Vec<String> = terms
                .iter()
                .map(|(m, c)| format!("{}*{}", f.render(c), m.render(alg.var_names())))
                .collect();
            return Err(Error::NotMultigraded(text.join(" + ")));
        }
        for (m, _) in terms {
            support = support.union(m.support());
        }
    }
    let linear_quotients = ideal.check_linear_quotients(colon_degree)?;
    let vars = linear_quotients.vars();
    let mut star_violations = Vec::new();
    let mut decomposition_violations = Vec::new();
    for i in 0..ideal.len() {
        for y in support.iter() {
            let p = alg.multiply(&alg.var(y), ideal.element(i))?;
            if !p.is_zero(f) && ideal.prefix_contains(i, &p)? {
                star_violations.push(StarViolation {
                    generator: i,
                    var: y,
                });
            }
        }
        for s in vars[i].iter() {
            let p = alg.multiply(&alg.var(s), ideal.element(i))?;
            if p.is_zero(f) {
                continue;
            }
            let j = (1..=i)
                .find(|&j| ideal.prefix_contains(j, &p).unwrap_or(false))
                .map(|j| j - 1)
                .expect("x_s m_i lies in J_{i-1}");
            if !vars[j].is_subset(vars[i]) {
                decomposition_violations.push((i, s, j));
            }
        }
    }
    Ok(StarReport {
        relation_support: support,
        linear_quotients,
        star_violations,
        decomposition_violations,
    })
}
