use crate::algebra::{AlgebraElement, GradedAlgebra, VarSet};
use crate::error::Result;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StronglyKoszulFailure {
    /// `((Y):x)_1` is not spanned by the variables it contains.
    LinearPartNotVariables {
        subset: VarSet,
        var: usize,
        linear_dim: usize,
        vars: VarSet,
    },
    /// `((Y):x)` has a minimal generator in degree `degree > 1`.
    HigherGenerator {
        subset: VarSet,
        var: usize,
        degree: usize,
        colon_dim: usize,
        generated_dim: usize,
    },
}

impl StronglyKoszulFailure {
    pub fn subset(&self) -> VarSet {
        match self {
            Self::LinearPartNotVariables { subset, .. } | Self::HigherGenerator { subset, .. } => {
                *subset
            }
        }
    }

    pub fn var(&self) -> usize {
        match self {
            Self::LinearPartNotVariables { var, .. } | Self::HigherGenerator { var, .. } => *var,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::LinearPartNotVariables { .. } => 1,
            Self::HigherGenerator { degree, .. } => *degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StronglyKoszulReport {
    pub verified_through: usize,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub failures: Vec<StronglyKoszulFailure>,
}

impl StronglyKoszulReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first colon with a higher-degree minimal generator, else the first
    /// failure of any kind.
    pub fn witness(&self) -> Option<&StronglyKoszulFailure> {
        self.failures
            .iter()
            .find(|f| matches!(f, StronglyKoszulFailure::HigherGenerator { .. }))
            .or(self.failures.first())
    }
}

/// Bounded test that every colon `((Y):x)`, `x ∉ Y`, is generated by
/// variables, in colon degrees `1..=max_degree`.
///
/// All subsets `Y` are tried when `n <= 10` and `subset_bound` is `None`;
/// otherwise subsets of size at most `subset_bound` (default 2) plus `extra`.
pub fn check_strongly_koszul<F: Field>(
    alg: &GradedAlgebra<F>,
    max_degree: usize,
    subset_bound: Option<usize>,
    extra: &[VarSet],
) -> Result<StronglyKoszulReport> {
    let n = alg.nvars();
    let f = alg.field();
    let exhaustive = n <= 10 && subset_bound.is_none();
    let bound = if exhaustive {
        n
    } else {
        subset_bound.unwrap_or(2)
    };
    let top = max_degree.min(alg.cutoff() - 1);
    let mut subsets: Vec<VarSet> = if n <= 20 {
        (0u64..1 << n)
            .map(VarSet::from_bits)
            .filter(|y| y.len() <= bound)
            .collect()
    } else {
        small_subsets(n, bound)
    };
    for y in extra {
        if !subsets.contains(y) {
            subsets.push(*y);
        }
    }
    subsets.sort_by_key(|y| (y.len(), y.bits()));

    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for y in subsets {
        let gens: Vec<AlgebraElement<F::Elem>> = y.iter().map(|i| alg.var(i)).collect();
        let ideal: Vec<_> = (0..=top + 1)
            .map(|d| alg.ideal_in_degree(&gens, d))
            .collect::<Result<_>>()?;
        for x in (0..n).filter(|&x| !y.contains(x)) {
            pairs_checked += 1;
            let xe = alg.var(x);
            let linear = alg.colon_in_degree(&ideal[2], &xe, 1)?;
            let vars: VarSet = (0..n)
                .filter(|&j| linear.contains(f, &alg.var(j).coords))
                .collect();
            if linear.dim() != vars.len() {
                failures.push(StronglyKoszulFailure::LinearPartNotVariables {
                    subset: y,
                    var: x,
                    linear_dim: linear.dim(),
                    vars,
                });
            }
            let linear_elems: Vec<_> = linear
                .basis()
                .row_iter()
                .map(|r| AlgebraElement {
                    degree: 1,
                    coords: r.to_vec(),
                })
                .collect();
            for d in 2..=top {
                let colon = alg.colon_in_degree(&ideal[d + 1], &xe, d)?;
                let generated = alg.ideal_in_degree(&linear_elems, d)?;
                if colon.dim() != generated.dim() {
                    failures.push(StronglyKoszulFailure::HigherGenerator {
                        subset: y,
                        var: x,
                        degree: d,
                        colon_dim: colon.dim(),
                        generated_dim: generated.dim(),
                    });
                    break;
                }
            }
        }
    }
    Ok(StronglyKoszulReport {
        verified_through: top,
        exhaustive,
        pairs_checked,
        failures,
    })
}

fn small_subsets(n: usize, bound: usize) -> Vec<VarSet> {
    let mut out = vec![VarSet::empty()];
    let mut frontier = vec![VarSet::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.iter().last().map_or(0, |m| m + 1);
            for i in start..n {
                next.push(s.with(i));
            }
        }
        out.extend(&next);
        frontier = next;
    }
    out
}
