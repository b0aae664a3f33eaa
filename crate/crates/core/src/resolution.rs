//! Priddy and sub-Priddy complexes, and minimal resolutions of `A/J` for
//! monomial ideals with linear quotients: by iterated mapping cones (generic
//! lifting) and by the explicit closed-form differential.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::{AlgebraElement, GradedAlgebra, VarSet};
use crate::complex::{
    d_squared_failures, degree_block, graded_layout, homology_dim, AMatrix, BasisLabel,
    ChainComplex, HomologyEntry,
};
use crate::dual::{contract, ActionSlot, DualAlgebra, Projector, QuotientDual};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{DecompositionTable, MonomialIdeal};
use crate::linalg::{solve_membership, Subspace};

/// The algebra, its dual coalgebra and the calibrated contraction slot.
#[derive(Clone, Copy, Debug)]
pub struct KoszulContext<'a, F: Field> {
    pub algebra: &'a GradedAlgebra<F>,
    pub dual: &'a DualAlgebra<F>,
    pub slot: ActionSlot,
}

impl<'a, F: Field> KoszulContext<'a, F> {
    pub fn new(algebra: &'a GradedAlgebra<F>, dual: &'a DualAlgebra<F>) -> Result<Self> {
        let slot = calibrate_action(algebra, dual)?;
        Ok(Self {
            algebra,
            dual,
            slot,
        })
    }

    pub fn with_slot(
        algebra: &'a GradedAlgebra<F>,
        dual: &'a DualAlgebra<F>,
        slot: ActionSlot,
    ) -> Self {
        Self {
            algebra,
            dual,
            slot,
        }
    }

    fn act(&self, v: &[F::Elem], j: usize) -> Vec<F::Elem> {
        contract(v, self.dual.nvars(), j, self.slot)
    }
}

/// Picks the contraction slot for `f · x_j^*`: the first slot for which the
/// Priddy complex squares to zero and every sub-Priddy complex `E = X ∖ {x}`
/// is closed under the differential (checked through degree 3).
pub fn calibrate_action<F: Field>(
    alg: &GradedAlgebra<F>,
    dual: &DualAlgebra<F>,
) -> Result<ActionSlot> {
    let top = dual.max_degree().min(3);
    let n = alg.nvars();
    'slots: for slot in [ActionSlot::First, ActionSlot::Last] {
        let ctx = KoszulContext::with_slot(alg, dual, slot);
        let Ok(p) = priddy_complex(&ctx, top) else {
            continue;
        };
        if !d_squared_failures(alg, &p)?.is_empty() {
            continue;
        }
        for x in 0..n {
            let q = dual.quotient((0..n).filter(|&i| i != x).collect());
            if sub_priddy_complex(&ctx, &q, top).is_err() {
                continue 'slots;
            }
        }
        return Ok(slot);
    }
    Err(Error::CalibrationFailure)
}

fn sparse<F: Field>(f: &F, v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Complex with `F_l = A ⊗ W_l` for subspaces `W_l ⊆ (A^!_l)^*` and
/// `∂(1 ⊗ f) = Σ_j x_j ⊗ f·x_j^*`.
fn dual_complex<F: Field>(
    ctx: &KoszulContext<'_, F>,
    components: &[&Subspace<F::Elem>],
) -> Result<ChainComplex<F::Elem>> {
    let alg = ctx.algebra;
    let f = alg.field();
    let n = alg.nvars();
    let bases: Vec<Vec<BasisLabel<F::Elem>>> = components
        .iter()
        .enumerate()
        .map(|(l, w)| {
            w.basis()
                .row_iter()
                .map(|r| BasisLabel {
                    generator: None,
                    dual_degree: l,
                    dual: sparse(f, r),
                    internal_degree: l,
                })
                .collect()
        })
        .collect();
    let mut differentials = Vec::new();
    for l in 1..components.len() {
        let (src, dst) = (components[l], components[l - 1]);
        let mut d = AMatrix::zero(dst.dim(), src.dim());
        for (col, row) in src.basis().row_iter().enumerate() {
            for j in 0..n {
                let g = ctx.act(row, j);
                if g.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let coords = dst
                    .coordinates(f, &g)
                    .ok_or(Error::ClosureFailure { degree: l })?;
                let xj = alg.var(j);
                for (b, c) in coords.iter().enumerate() {
                    if !f.is_zero(c) {
                        d.add_entry(f, b, col, &xj.scale(f, c));
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(ChainComplex {
        bases,
        differentials,
    })
}

/// `A ⊗ (A^!_l)^*` for `l = 0..=max_degree`.
pub fn priddy_complex<F: Field>(
    ctx: &KoszulContext<'_, F>,
    max_degree: usize,
) -> Result<ChainComplex<F::Elem>> {
    let comps = (0..=max_degree)
        .map(|l| ctx.dual.component(l))
        .collect::<Result<Vec<_>>>()?;
    dual_complex(ctx, &comps)
}

/// `A ⊗ (B_E)^*_l`, the candidate resolution of `A/(x_E)`.
pub fn sub_priddy_complex<F: Field>(
    ctx: &KoszulContext<'_, F>,
    quotient: &QuotientDual<F::Elem>,
    max_degree: usize,
) -> Result<ChainComplex<F::Elem>> {
    let comps = (0..=max_degree)
        .map(|l| quotient.component(l))
        .collect::<Result<Vec<_>>>()?;
    dual_complex(ctx, &comps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulnessCertificate {
    pub max_homological: usize,
    pub max_internal: usize,
    /// Nonzero `H_i` of the Priddy complex inside the window.
    pub witnesses: Vec<HomologyEntry>,
}

impl KoszulnessCertificate {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// `H_i` of the Priddy complex for `1 <= i < max_homological`, internal
/// degrees up to `max_internal`.
pub fn koszulness_certificate<F: Field>(
    ctx: &KoszulContext<'_, F>,
    max_homological: usize,
    max_internal: usize,
) -> Result<KoszulnessCertificate> {
    let p = priddy_complex(ctx, max_homological)?;
    let mut witnesses = Vec::new();
    for i in 1..max_homological {
        for d in 0..=max_internal {
            let dim = homology_dim(ctx.algebra, &p, i, d)?;
            if dim != 0 {
                witnesses.push(HomologyEntry {
                    homological: i,
                    internal: d,
                    dim,
                });
            }
        }
    }
    Ok(KoszulnessCertificate {
        max_homological,
        max_internal,
        witnesses,
    })
}

/// Which formula the closed-form builder uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosedFormVariant {
    /// Sum over `j < k`, with `f·x_s^*` projected onto `(B^j)^*`.
    #[default]
    Projected,
    /// Sum over `j <= k` with `m_k^*(x_s m_k) = x_s`, dropping every term
    /// whose `f·x_s^*` is not already in `(B^j)^*`.
    Literal,
}

/// Everything the explicit constructions share for one ordered ideal.
pub struct ResolutionData<'c, 'a, F: Field> {
    ctx: &'c KoszulContext<'a, F>,
    ideal: &'c MonomialIdeal<'a, F>,
    vars: Vec<VarSet>,
    quotients: Vec<QuotientDual<F::Elem>>,
    table: DecompositionTable<F::Elem>,
    projectors: RefCell<HashMap<(usize, VarSet), Projector>>,
    /// Terms discarded by a projection, for diagnostics.
    dropped: RefCell<usize>,
}

impl<'c, 'a, F: Field> ResolutionData<'c, 'a, F> {
    /// Requires nondecreasing generator degrees and linear quotients
    /// (checked through `colon_degree`).
    pub fn new(
        ctx: &'c KoszulContext<'a, F>,
        ideal: &'c MonomialIdeal<'a, F>,
        colon_degree: usize,
    ) -> Result<Self> {
        if !ideal.degrees_nondecreasing() {
            return Err(Error::InvalidIdeal(
                "generator degrees must be nondecreasing".into(),
            ));
        }
        let vars = ideal.check_linear_quotients(colon_degree)?.into_result()?;
        let mut cache: HashMap<VarSet, QuotientDual<F::Elem>> = HashMap::new();
        let quotients = vars
            .iter()
            .map(|e| {
                cache
                    .entry(*e)
                    .or_insert_with(|| ctx.dual.quotient(*e))
                    .clone()
            })
            .collect();
        let table = ideal.decomposition_table(&vars)?;
        Ok(Self {
            ctx,
            ideal,
            vars,
            quotients,
            table,
            projectors: RefCell::new(HashMap::new()),
            dropped: RefCell::new(0),
        })
    }

    pub fn vars(&self) -> &[VarSet] {
        &self.vars
    }

    pub fn quotient(&self, k: usize) -> &QuotientDual<F::Elem> {
        &self.quotients[k]
    }

    pub fn table(&self) -> &DecompositionTable<F::Elem> {
        &self.table
    }

    pub fn dropped_terms(&self) -> usize {
        *self.dropped.borrow()
    }

    /// Generators of `F_l` for the first `count` ideal generators.
    fn basis(&self, l: usize, count: usize) -> Result<Vec<BasisLabel<F::Elem>>> {
        let f = self.ctx.algebra.field();
        if l == 0 {
            return Ok(vec![BasisLabel {
                generator: None,
                dual_degree: 0,
                dual: Vec::new(),
                internal_degree: 0,
            }]);
        }
        let mut out = Vec::new();
        for k in 0..count {
            for row in self.quotients[k].component(l - 1)?.basis().row_iter() {
                out.push(BasisLabel {
                    generator: Some(k),
                    dual_degree: l - 1,
                    dual: sparse(f, row),
                    internal_degree: self.ideal.degree(k) + l - 1,
                });
            }
        }
        Ok(out)
    }

    /// Start of generator `k`'s block in `F_l` (`l >= 1`).
    fn offset(&self, l: usize, k: usize) -> usize {
        (0..k).map(|j| self.quotients[j].dim(l - 1)).sum()
    }

    fn projected(
        &self,
        v: &[F::Elem],
        l: usize,
        j: usize,
        k: usize,
        col: usize,
        s: usize,
    ) -> Result<Vec<F::Elem>> {
        let f = self.ctx.algebra.field();
        let key = (l, self.vars[j]);
        let mut cache = self.projectors.borrow_mut();
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
            e.insert(self.ctx.dual.projector(l, self.vars[j])?);
        }
        let p = &cache[&key];
        if p.drops(f, v) {
            *self.dropped.borrow_mut() += 1;
        }
        p.project(f, v)
            .map_err(|_| Error::RegularOrderingViolation {
                k: k + 1,
                f: col,
                s,
                j: j + 1,
                reason: "contraction straddles (B^j)^* and its complement".into(),
            })
    }

    /// `ψ(m_k ⊗ f) = Σ_{t, j<k} m_j^*(x_t m_k) (m_j ⊗ π_j(f·x_t^*))` for
    /// `f ∈ (B^k)^*_l`, added into column `col` of `out` (rows of `F_l`).
    fn add_psi_column(
        &self,
        out: &mut AMatrix<F::Elem>,
        col: usize,
        k: usize,
        fvec: &[F::Elem],
        l: usize,
        variant: ClosedFormVariant,
    ) -> Result<()> {
        let alg = self.ctx.algebra;
        let f = alg.field();
        let n = alg.nvars();
        let top = match variant {
            ClosedFormVariant::Projected => k,
            ClosedFormVariant::Literal => k + 1,
        };
        for t in 0..n {
            let g = self.ctx.act(fvec, t);
            if g.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            for j in 0..top {
                let coeff = if j == k {
                    // m_k^*(x_t m_k) = x_t by convention
                    match self.vars[k].contains(t) {
                        true => continue,
                        false => alg.var(t),
                    }
                } else {
                    match self.table.coeff(&[t], k, j) {
                        Some(c) if !c.is_zero(f) => c.clone(),
                        _ => continue,
                    }
                };
                let target = self.quotients[j].component(l - 1)?;
                let coords = match variant {
                    ClosedFormVariant::Projected => {
                        let p = self.projected(&g, l - 1, j, k, col, t)?;
                        target
                            .coordinates(f, &p)
                            .ok_or(Error::RegularOrderingViolation {
                                k: k + 1,
                                f: col,
                                s: t,
                                j: j + 1,
                                reason: "projection leaves (B^j)^*".into(),
                            })?
                    }
                    ClosedFormVariant::Literal => match target.coordinates(f, &g) {
                        Some(c) => c,
                        None => continue,
                    },
                };
                let off = self.offset(l, j);
                for (b, c) in coords.iter().enumerate() {
                    if !f.is_zero(c) {
                        out.add_entry(f, off + b, col, &coeff.scale(f, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The closed-form complex for the first `count` generators.
    fn closed_form(
        &self,
        count: usize,
        max_homological: usize,
        variant: ClosedFormVariant,
    ) -> Result<ChainComplex<F::Elem>> {
        let alg = self.ctx.algebra;
        let f = alg.field();
        let n = alg.nvars();
        let bases = (0..=max_homological)
            .map(|l| self.basis(l, count))
            .collect::<Result<Vec<_>>>()?;
        let mut differentials = Vec::with_capacity(max_homological);
        let mut d1 = AMatrix::zero(1, bases.get(1).map_or(0, Vec::len));
        for k in 0..count {
            d1.add_entry(f, 0, self.offset(1, k), self.ideal.element(k));
        }
        if max_homological >= 1 {
            differentials.push(d1);
        }
        for l in 2..=max_homological {
            let mut d = AMatrix::zero(bases[l - 1].len(), bases[l].len());
            for k in 0..count {
                let src = self.quotients[k].component(l - 1)?;
                let own = self.quotients[k].component(l - 2)?;
                let off = self.offset(l, k);
                let own_off = self.offset(l - 1, k);
                for (b, row) in src.basis().row_iter().enumerate() {
                    let col = off + b;
                    for s in 0..n {
                        let g = self.ctx.act(row, s);
                        if g.iter().all(|x| f.is_zero(x)) {
                            continue;
                        }
                        let coords = own
                            .coordinates(f, &g)
                            .ok_or(Error::ClosureFailure { degree: l - 1 })?;
                        let xs = alg.var(s).neg(f);
                        for (c_idx, c) in coords.iter().enumerate() {
                            if !f.is_zero(c) {
                                d.add_entry(f, own_off + c_idx, col, &xs.scale(f, c));
                            }
                        }
                    }
                    self.add_psi_column(&mut d, col, k, row, l - 1, variant)?;
                }
            }
            differentials.push(d);
        }
        Ok(ChainComplex {
            bases,
            differentials,
        })
    }

    /// `ψ_l : K_l -> F_l(J_{k-1})` for `l = 0..=max_homological`, where `K`
    /// is the sub-Priddy complex of `E_k`.
    pub fn psi(&self, k: usize, max_homological: usize) -> Result<Vec<AMatrix<F::Elem>>> {
        let mut out = Vec::with_capacity(max_homological + 1);
        let mut psi0 = AMatrix::zero(1, 1);
        psi0.add_entry(self.ctx.algebra.field(), 0, 0, self.ideal.element(k));
        out.push(psi0);
        for l in 1..=max_homological {
            let src = self.quotients[k].component(l)?;
            let rows = self.basis(l, k)?.len();
            let mut m = AMatrix::zero(rows, src.dim());
            for (col, row) in src.basis().row_iter().enumerate() {
                self.add_psi_column(&mut m, col, k, row, l, ClosedFormVariant::Projected)?;
            }
            out.push(m);
        }
        Ok(out)
    }
}

/// The explicit resolution of `A/J` up to homological degree `max_homological`.
pub fn closed_form_resolution<F: Field>(
    ctx: &KoszulContext<'_, F>,
    ideal: &MonomialIdeal<'_, F>,
    max_homological: usize,
    colon_degree: usize,
) -> Result<ChainComplex<F::Elem>> {
    closed_form_resolution_with(
        ctx,
        ideal,
        max_homological,
        colon_degree,
        ClosedFormVariant::Projected,
    )
}

pub fn closed_form_resolution_with<F: Field>(
    ctx: &KoszulContext<'_, F>,
    ideal: &MonomialIdeal<'_, F>,
    max_homological: usize,
    colon_degree: usize,
    variant: ClosedFormVariant,
) -> Result<ChainComplex<F::Elem>> {
    let data = ResolutionData::new(ctx, ideal, colon_degree)?;
    let c = data.closed_form(ideal.len(), max_homological, variant)?;
    if variant == ClosedFormVariant::Projected {
        let bad = d_squared_failures(ctx.algebra, &c)?;
        if !bad.is_empty() {
            return Err(Error::NotRegular(format!(
                "d^2 != 0 in homological degrees {bad:?}"
            )));
        }
    }
    Ok(c)
}

/// `ψ` for generator `k` together with its source and target complexes.
pub struct ComparisonMap<E> {
    pub source: ChainComplex<E>,
    pub target: ChainComplex<E>,
    pub maps: Vec<AMatrix<E>>,
}

pub fn comparison_map_psi<F: Field>(
    ctx: &KoszulContext<'_, F>,
    ideal: &MonomialIdeal<'_, F>,
    k: usize,
    max_homological: usize,
    colon_degree: usize,
) -> Result<ComparisonMap<F::Elem>> {
    let data = ResolutionData::new(ctx, ideal, colon_degree)?;
    let source = sub_priddy_complex(ctx, data.quotient(k), max_homological)?;
    let target = data.closed_form(k, max_homological, ClosedFormVariant::Projected)?;
    let maps = data.psi(k, max_homological)?;
    Ok(ComparisonMap {
        source,
        target,
        maps,
    })
}

/// Homological degrees `l >= 1` where `∂^F_l ψ_l != ψ_{l-1} ∂^K_l`.
pub fn chain_map_failures<F: Field>(
    alg: &GradedAlgebra<F>,
    map: &ComparisonMap<F::Elem>,
) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for l in 1..map.maps.len() {
        let (Some(df), Some(dk)) = (map.target.differential(l), map.source.differential(l)) else {
            continue;
        };
        let left = df.compose(alg, &map.maps[l])?;
        let right = map.maps[l - 1].compose(alg, dk)?;
        if !left.sub(alg.field(), &right).is_zero() {
            bad.push(l);
        }
    }
    Ok(bad)
}

/// Resolution of `A/J` by iterated mapping cones: `F(J_k) = cone(ψ)` with
/// `ψ : K(E_k)(-deg m_k) -> F(J_{k-1})` lifted degree by degree from
/// `ψ_0 = m_k` by canonical linear solves.
pub fn iterated_mapping_cone<F: Field>(
    ctx: &KoszulContext<'_, F>,
    ideal: &MonomialIdeal<'_, F>,
    max_homological: usize,
    colon_degree: usize,
) -> Result<ChainComplex<F::Elem>> {
    let data = ResolutionData::new(ctx, ideal, colon_degree)?;
    let alg = ctx.algebra;
    let f = alg.field();
    let h = max_homological;
    let mut current = ChainComplex {
        bases: (0..=h)
            .map(|l| data.basis(l, 0))
            .collect::<Result<Vec<_>>>()?,
        differentials: (1..=h)
            .map(|l| AMatrix::zero(if l == 1 { 1 } else { 0 }, 0))
            .collect(),
    };
    for k in 0..ideal.len() {
        let shift = ideal.degree(k);
        let kc = sub_priddy_complex(ctx, data.quotient(k), h.saturating_sub(1))?;
        // lifts ψ_0 .. ψ_{h-1}
        let mut psi: Vec<AMatrix<F::Elem>> = Vec::with_capacity(h);
        let mut psi0 = AMatrix::zero(1, 1);
        psi0.add_entry(f, 0, 0, ideal.element(k));
        psi.push(psi0);
        for l in 1..h {
            let dk = kc.differential(l).expect("sub-Priddy built to h-1");
            let want = psi[l - 1].compose(alg, dk)?;
            let rows = current.rank(l);
            let mut m = AMatrix::zero(rows, kc.rank(l));
            let degree = shift + l;
            let block = degree_block(alg, &current, l, degree)?;
            let (dst_layout, _) = graded_layout(alg, &current.bases[l - 1], degree)?;
            let (src_layout, _) = graded_layout(alg, &current.bases[l], degree)?;
            for col in 0..kc.rank(l) {
                let mut target = vec![f.zero(); block.cols()];
                for (row, a) in &want.columns[col] {
                    let off = dst_layout[*row].expect("entry degree fits");
                    for (i, c) in a.coords.iter().enumerate() {
                        target[off + i] = c.clone();
                    }
                }
                let x = solve_membership(f, &target, &block).ok_or(Error::LiftingFailure {
                    degree: l,
                    generator: k + 1,
                })?;
                for (g, off) in src_layout.iter().enumerate() {
                    let Some(off) = off else { continue };
                    let e = degree - current.bases[l][g].internal_degree;
                    let coords = x[*off..*off + alg.dim(e)].to_vec();
                    let a = AlgebraElement { degree: e, coords };
                    if a.is_unit(f) {
                        return Err(Error::NonMinimalCone { degree: l + 1 });
                    }
                    m.add_entry(f, g, col, &a);
                }
            }
            psi.push(m);
        }
        current = cone(f, &current, &kc, &psi, k, shift, h);
    }
    Ok(current)
}

/// `cone(ψ)_l = F_l ⊕ K_{l-1}`, `∂(x, y) = (∂x + ψy, -∂y)`.
fn cone<F: Field>(
    f: &F,
    fc: &ChainComplex<F::Elem>,
    kc: &ChainComplex<F::Elem>,
    psi: &[AMatrix<F::Elem>],
    k: usize,
    shift: usize,
    h: usize,
) -> ChainComplex<F::Elem> {
    let mut bases = vec![fc.bases[0].clone()];
    for l in 1..=h {
        let mut b = fc.bases[l].clone();
        b.extend(kc.bases[l - 1].iter().map(|g| BasisLabel {
            generator: Some(k),
            internal_degree: g.internal_degree + shift,
            ..g.clone()
        }));
        bases.push(b);
    }
    let mut differentials = Vec::with_capacity(h);
    for l in 1..=h {
        let fl = fc.rank(l);
        let f_prev = fc.rank(l - 1);
        let mut d = AMatrix::zero(bases[l - 1].len(), bases[l].len());
        for (r, c, a) in fc.differential(l).unwrap().entries() {
            d.add_entry(f, r, c, a);
        }
        for (r, c, a) in psi[l - 1].entries() {
            d.add_entry(f, r, fl + c, a);
        }
        if l >= 2 {
            for (r, c, a) in kc.differential(l - 1).unwrap().entries() {
                d.add_entry(f, f_prev + r, fl + c, &a.neg(f));
            }
        }
        differentials.push(d);
    }
    ChainComplex {
        bases,
        differentials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, RingPresentation};
    use crate::complex::verify_complex;
    use crate::field::PrimeField;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn poly(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        GradedAlgebra::build(RingPresentation::new(f(), names), cutoff).unwrap()
    }

    fn squares(n: usize, cutoff: usize) -> GradedAlgebra<PrimeField> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        let mut p = RingPresentation::new(f(), names);
        for i in 0..n {
            p.relations.push(vec![(Monomial::from_word(n, &[i, i]), 1)]);
        }
        GradedAlgebra::build(p, cutoff).unwrap()
    }

    fn hhr(cutoff: usize) -> GradedAlgebra<PrimeField> {
        let p = RingPresentation::with_relations(
            f(),
            &["x1", "x2", "x3"],
            &[&[(1, &[0, 2])], &[(1, &[2, 2])]],
        );
        GradedAlgebra::build(p, cutoff).unwrap()
    }

    #[test]
    fn priddy_ranks() {
        let a = poly(3, 5);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let p = priddy_complex(&ctx, 4).unwrap();
        for l in 0..=4 {
            assert_eq!(p.rank(l), binom(3, l));
        }
        let a = squares(3, 5);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let p = priddy_complex(&ctx, 4).unwrap();
        for l in 0..=4 {
            assert_eq!(p.rank(l), binom(3 + l - 1, l));
        }
        assert!(d_squared_failures(&a, &p).unwrap().is_empty());
    }

    #[test]
    fn koszul_rings_have_acyclic_priddy_complex() {
        for a in [poly(3, 6), squares(3, 6), hhr(6)] {
            let d = DualAlgebra::new(&a, 4).unwrap();
            let ctx = KoszulContext::new(&a, &d).unwrap();
            let cert = koszulness_certificate(&ctx, 4, 6).unwrap();
            assert!(cert.passed(), "{:?}", cert.witnesses);
        }
    }

    #[test]
    fn sub_priddy_is_koszul_complex_on_subset() {
        let a = poly(3, 6);
        let d = DualAlgebra::new(&a, 3).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let q = d.quotient(VarSet::from_iter([0, 2]));
        let k = sub_priddy_complex(&ctx, &q, 3).unwrap();
        assert_eq!(
            (0..=3).map(|l| k.rank(l)).collect::<Vec<_>>(),
            vec![1, 2, 1, 0]
        );
        assert!(verify_complex(&a, &k, 3, 6).unwrap().passed());
    }

    #[test]
    fn hhr_closed_form_matches_cone() {
        let a = hhr(7);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let j = MonomialIdeal::from_words(&a, &[&[0, 1], &[1, 2]]).unwrap();
        let closed = closed_form_resolution(&ctx, &j, 4, 3).unwrap();
        let cone = iterated_mapping_cone(&ctx, &j, 4, 3).unwrap();
        assert_eq!(closed.graded_ranks(), cone.graded_ranks());
        for c in [&closed, &cone] {
            let r = verify_complex(&a, c, 4, 6).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        // F_1 = two quadrics, F_2 has one generator per colon variable
        assert_eq!(closed.rank(1), 2);
        assert_eq!(closed.rank(2), 1 + 2);
    }

    #[test]
    fn literal_variant_breaks_exactness() {
        let a = hhr(7);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let j = MonomialIdeal::from_words(&a, &[&[0, 1], &[1, 2]]).unwrap();
        let c = closed_form_resolution_with(&ctx, &j, 4, 3, ClosedFormVariant::Literal).unwrap();
        assert!(!verify_complex(&a, &c, 4, 6).unwrap().passed());
    }

    #[test]
    fn psi_is_chain_map() {
        let a = hhr(7);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let j = MonomialIdeal::from_words(&a, &[&[0, 1], &[1, 2]]).unwrap();
        let m = comparison_map_psi(&ctx, &j, 1, 3, 3).unwrap();
        assert!(chain_map_failures(&a, &m).unwrap().is_empty());
    }

    #[test]
    fn stable_ideals_in_polynomial_ring() {
        let a = poly(3, 7);
        let d = DualAlgebra::new(&a, 4).unwrap();
        let ctx = KoszulContext::new(&a, &d).unwrap();
        let words: &[&[&[usize]]] = &[
            &[&[0, 0], &[0, 1], &[1, 1]],
            &[&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[1, 2], &[2, 2]],
            &[&[0], &[1, 1], &[1, 2]],
        ];
        for w in words {
            let j = MonomialIdeal::from_words(&a, w).unwrap();
            let closed = closed_form_resolution(&ctx, &j, 4, 3).unwrap();
            let cone = iterated_mapping_cone(&ctx, &j, 4, 3).unwrap();
            assert_eq!(closed.graded_ranks(), cone.graded_ranks());
            assert!(verify_complex(&a, &closed, 4, 6).unwrap().passed());
            assert!(verify_complex(&a, &cone, 4, 6).unwrap().passed());
        }
    }
}
