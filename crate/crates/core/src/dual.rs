//! Graded pieces of the dual coalgebra `(A^!)^*` as subspaces of tensor powers
//! of `V = k^n`, and the quotient duals `(B_E)^*` cut out by variable subsets.
//!
//! A tensor word `(i_1, .., i_l)` sits at index `sum_k i_k n^(l-k)`, so the
//! first slot is the most significant digit.

use crate::algebra::{GradedAlgebra, Monomial, VarSet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{intersect_subspaces, kernel_basis, Matrix, Subspace};

/// Which tensor slot a dual variable `x_j^*` contracts against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSlot {
    First,
    Last,
}

pub fn word_index(n: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn index_word(n: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for slot in (0..len).rev() {
        w[slot] = index % n;
        index /= n;
    }
    w
}

fn checked_pow(n: usize, l: usize, bound: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..l {
        dim = dim
            .checked_mul(n)
            .filter(|&d| d <= bound)
            .ok_or(Error::AmbientTooLarge {
                dim: n.saturating_pow(l as u32),
                bound,
            })?;
    }
    Ok(dim)
}

/// Contraction of a degree-`l` tensor by `x_j^*` in the given slot.
pub fn contract<E: Clone>(v: &[E], n: usize, j: usize, slot: ActionSlot) -> Vec<E> {
    let rest = v.len() / n;
    match slot {
        ActionSlot::First => v[j * rest..(j + 1) * rest].to_vec(),
        ActionSlot::Last => (0..rest).map(|w| v[w * n + j].clone()).collect(),
    }
}

/// `Q_2 ⊆ V ⊗ V`: commutators `e_u⊗e_v - e_v⊗e_u` plus the lifts of the ring
/// relations, `x_u x_v ↦ e_u⊗e_v` for `u <= v`.
pub fn relation_space<F: Field>(alg: &GradedAlgebra<F>) -> Subspace<F::Elem> {
    let f = alg.field();
    let n = alg.nvars();
    let mut rows = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mut r = vec![f.zero(); n * n];
            r[u * n + v] = f.one();
            r[v * n + u] = f.neg(&f.one());
            rows.push(r);
        }
    }
    for rel in &alg.presentation().relations {
        let mut r = vec![f.zero(); n * n];
        for (m, c) in rel {
            let w = m.word();
            f.add_assign(&mut r[w[0] * n + w[1]], c);
        }
        rows.push(r);
    }
    Subspace::from_rows(f, n * n, rows)
}

/// `(A^!_l)^*` for `l = 0..=max_degree`.
#[derive(Clone, Debug)]
pub struct DualAlgebra<F: Field> {
    field: F,
    n: usize,
    bound: usize,
    q2: Subspace<F::Elem>,
    components: Vec<Subspace<F::Elem>>,
}

impl<F: Field> DualAlgebra<F> {
    pub const DEFAULT_AMBIENT_BOUND: usize = 20_000;

    pub fn new(alg: &GradedAlgebra<F>, max_degree: usize) -> Result<Self> {
        Self::with_bound(alg, max_degree, Self::DEFAULT_AMBIENT_BOUND)
    }

    /// Computes each piece as `((A^!_{l-1})^* ⊗ V) ∩ (V^{⊗(l-2)} ⊗ Q_2)`,
    /// which equals the intersection of all `l-1` embeddings of `Q_2`.
    pub fn with_bound(alg: &GradedAlgebra<F>, max_degree: usize, bound: usize) -> Result<Self> {
        let field = alg.field().clone();
        let n = alg.nvars();
        checked_pow(n, max_degree, bound)?;
        let q2 = relation_space(alg);
        // annihilator of Q_2 under the coordinate pairing
        let q2_perp = kernel_basis(&field, q2.basis());
        let mut components = vec![Subspace::full(&field, 1)];
        if max_degree >= 1 {
            components.push(Subspace::full(&field, n));
        }
        for l in 2..=max_degree {
            let next = extend_component(&field, n, &components[l - 1], &q2_perp, l);
            components.push(next);
        }
        Ok(Self {
            field,
            n,
            bound,
            q2,
            components,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn relation_space(&self) -> &Subspace<F::Elem> {
        &self.q2
    }

    pub fn component(&self, l: usize) -> Result<&Subspace<F::Elem>> {
        self.components.get(l).ok_or(Error::DegreeOverflow {
            requested: l,
            cutoff: self.max_degree(),
        })
    }

    pub fn dim(&self, l: usize) -> usize {
        self.components.get(l).map_or(0, Subspace::dim)
    }

    /// The same piece computed literally as `∩_j V^{⊗j} ⊗ Q_2 ⊗ V^{⊗(l-j-2)}`.
    pub fn component_by_intersection(&self, l: usize) -> Result<Subspace<F::Elem>> {
        let f = &self.field;
        let n = self.n;
        let ambient = checked_pow(n, l, self.bound)?;
        if l < 2 {
            return Ok(Subspace::full(f, ambient));
        }
        let mut spaces = Vec::with_capacity(l - 1);
        for j in 0..=l - 2 {
            let before = n.pow(j as u32);
            let after = n.pow((l - 2 - j) as u32);
            let mut rows = Vec::new();
            for w1 in 0..before {
                for q in self.q2.basis().row_iter() {
                    for w2 in 0..after {
                        let mut r = vec![f.zero(); ambient];
                        for (qi, c) in q.iter().enumerate() {
                            if !f.is_zero(c) {
                                r[(w1 * n * n + qi) * after + w2] = c.clone();
                            }
                        }
                        rows.push(r);
                    }
                }
            }
            spaces.push(Subspace::from_rows(f, ambient, rows));
        }
        intersect_subspaces(f, ambient, &spaces)
    }

    /// `(B_E)^*_l = (A^!_l)^* ∩ (V^{⊗(l-1)} ⊗ V_E)`, all degrees.
    pub fn quotient(&self, allowed: VarSet) -> QuotientDual<F::Elem> {
        let f = &self.field;
        let n = self.n;
        let mut components = vec![self.components[0].clone()];
        for l in 1..self.components.len() {
            let full = &self.components[l];
            let forbidden: Vec<usize> = (0..full.ambient())
                .filter(|w| !allowed.contains(w % n))
                .collect();
            if forbidden.is_empty() || full.dim() == 0 {
                components.push(full.clone());
                continue;
            }
            let constraints: Vec<Vec<F::Elem>> = forbidden
                .iter()
                .map(|&w| full.basis().row_iter().map(|r| r[w].clone()).collect())
                .collect();
            let kernel = kernel_basis(f, &Matrix::from_rows(full.dim(), &constraints));
            let vecs = kernel
                .iter()
                .map(|c| full.basis().left_mul_vec(f, c))
                .collect();
            components.push(Subspace::from_rows(f, full.ambient(), vecs));
        }
        QuotientDual {
            allowed,
            components,
        }
    }

    /// Decomposition of `(A^!_l)^*` into its finest blocks with disjoint
    /// coordinate supports, classified against `V^{⊗(l-1)} ⊗ V_E`.
    pub fn projector(&self, l: usize, allowed: VarSet) -> Result<Projector> {
        let space = self.component(l)?;
        let n = self.n;
        let ambient = space.ambient();
        let mut parent: Vec<usize> = (0..ambient).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut used = vec![false; ambient];
        for row in space.basis().row_iter() {
            let support: Vec<usize> = (0..ambient)
                .filter(|&i| !self.field.is_zero(&row[i]))
                .collect();
            for &i in &support {
                used[i] = true;
            }
            for w in support.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut block_of = vec![usize::MAX; ambient];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in (0..ambient).filter(|&i| used[i]) {
            let r = find(&mut parent, i);
            let b = match roots.iter().position(|&x| x == r) {
                Some(b) => b,
                None => {
                    roots.push(r);
                    blocks.push(Vec::new());
                    roots.len() - 1
                }
            };
            blocks[b].push(i);
            block_of[i] = b;
        }
        let allowed_coord: Vec<bool> = (0..ambient)
            .map(|i| l == 0 || allowed.contains(i % n))
            .collect();
        // A block is inside when its part of (A^!_l)^* lies in (B_E)^*_l and
        // outside when the two meet only in zero.
        let kinds = blocks
            .iter()
            .map(|b| {
                let rows: Vec<&[F::Elem]> = space
                    .basis()
                    .row_iter()
                    .filter(|r| b.iter().any(|&i| !self.field.is_zero(&r[i])))
                    .collect();
                let forbidden: Vec<Vec<F::Elem>> = b
                    .iter()
                    .filter(|&&i| !allowed_coord[i])
                    .map(|&i| rows.iter().map(|r| r[i].clone()).collect())
                    .collect();
                if forbidden.is_empty() {
                    return BlockKind::Inside;
                }
                let meet =
                    kernel_basis(&self.field, &Matrix::from_rows(rows.len(), &forbidden)).len();
                if meet == 0 {
                    BlockKind::Outside
                } else if meet == rows.len() {
                    BlockKind::Inside
                } else {
                    BlockKind::Mixed
                }
            })
            .collect();
        Ok(Projector {
            block_of,
            kinds,
            allowed_coord,
        })
    }
}

fn extend_component<F: Field>(
    f: &F,
    n: usize,
    prev: &Subspace<F::Elem>,
    q2_perp: &[Vec<F::Elem>],
    l: usize,
) -> Subspace<F::Elem> {
    let ambient = prev.ambient() * n;
    let m = prev.dim();
    if m == 0 {
        return Subspace::zero(ambient);
    }
    if q2_perp.is_empty() {
        let rows = (0..m)
            .flat_map(|i| (0..n).map(move |b| (i, b)))
            .map(|(i, b)| tensor_with_basis(f, prev.basis_vector(i), n, b))
            .collect();
        return Subspace::from_rows(f, ambient, rows);
    }
    // v = sum c_{i,b} B_i ⊗ e_b; one constraint per (prefix p, phi in Q_2^perp).
    let prefixes = n.pow((l - 2) as u32);
    let mut constraints = Vec::new();
    for p in 0..prefixes {
        for phi in q2_perp {
            let mut row = vec![f.zero(); m * n];
            let mut nonzero = false;
            for i in 0..m {
                let bi = prev.basis_vector(i);
                for a in 0..n {
                    let x = &bi[p * n + a];
                    if f.is_zero(x) {
                        continue;
                    }
                    for b in 0..n {
                        let y = &phi[a * n + b];
                        if !f.is_zero(y) {
                            f.add_mul_assign(&mut row[i * n + b], x, y);
                            nonzero = true;
                        }
                    }
                }
            }
            if nonzero {
                constraints.push(row);
            }
        }
    }
    let kernel = kernel_basis(f, &Matrix::from_rows(m * n, &constraints));
    let rows = kernel
        .iter()
        .map(|c| {
            let mut v = vec![f.zero(); ambient];
            for i in 0..m {
                let bi = prev.basis_vector(i);
                for b in 0..n {
                    let cib = &c[i * n + b];
                    if f.is_zero(cib) {
                        continue;
                    }
                    for (w, x) in bi.iter().enumerate() {
                        f.add_mul_assign(&mut v[w * n + b], cib, x);
                    }
                }
            }
            v
        })
        .collect();
    Subspace::from_rows(f, ambient, rows)
}

fn tensor_with_basis<F: Field>(f: &F, v: &[F::Elem], n: usize, b: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); v.len() * n];
    for (w, x) in v.iter().enumerate() {
        out[w * n + b] = x.clone();
    }
    out
}

/// `(B_E)^*` for one variable subset `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDual<E> {
    allowed: VarSet,
    components: Vec<Subspace<E>>,
}

impl<E: Clone + PartialEq> QuotientDual<E> {
    pub fn allowed(&self) -> VarSet {
        self.allowed
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, l: usize) -> Result<&Subspace<E>> {
        self.components.get(l).ok_or(Error::DegreeOverflow {
            requested: l,
            cutoff: self.max_degree(),
        })
    }

    pub fn dim(&self, l: usize) -> usize {
        self.components.get(l).map_or(0, Subspace::dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// The block's part of `(A^!_l)^*` lies in `(B_E)^*_l`.
    Inside,
    /// The block's part meets `(B_E)^*_l` only in zero.
    Outside,
    Mixed,
}

/// A nonzero component in a block that straddles `V_E` and its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixedBlock {
    pub coordinate: usize,
}

/// Projection of `(A^!_l)^*` onto its blocks lying in `(B_E)^*_l`.
#[derive(Clone, Debug)]
pub struct Projector {
    block_of: Vec<usize>,
    kinds: Vec<BlockKind>,
    allowed_coord: Vec<bool>,
}

impl Projector {
    pub fn kinds(&self) -> &[BlockKind] {
        &self.kinds
    }

    /// Keeps the inside blocks and drops the outside ones. A straddling
    /// block is kept when the part of `v` in it already lies in `(B_E)^*`.
    /// `v` must lie in `(A^!_l)^*`.
    pub fn project<F: Field>(&self, f: &F, v: &[F::Elem]) -> Result<Vec<F::Elem>, MixedBlock> {
        assert_eq!(v.len(), self.block_of.len());
        let mut out = vec![f.zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            match self.block_of.get(i).and_then(|&b| self.kinds.get(b)) {
                Some(BlockKind::Inside) => out[i] = x.clone(),
                Some(BlockKind::Outside) => {}
                Some(BlockKind::Mixed) => {
                    let b = self.block_of[i];
                    let escapes = v.iter().enumerate().any(|(k, y)| {
                        self.block_of[k] == b && !self.allowed_coord[k] && !f.is_zero(y)
                    });
                    if escapes {
                        return Err(MixedBlock { coordinate: i });
                    }
                    out[i] = x.clone();
                }
                None => return Err(MixedBlock { coordinate: i }),
            }
        }
        Ok(out)
    }

    /// True when the projection discards a nonzero part of `v`.
    pub fn drops<F: Field>(&self, f: &F, v: &[F::Elem]) -> bool {
        v.iter().enumerate().any(|(i, x)| {
            !f.is_zero(x)
                && matches!(
                    self.block_of.get(i).and_then(|&b| self.kinds.get(b)),
                    Some(BlockKind::Outside)
                )
        })
    }
}

/// Outcome of the bounded test `x_w^* L^src ⊆ L^dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    HoldsThrough(usize),
    FailsAt(usize),
}

impl Containment {
    pub fn holds(self) -> bool {
        matches!(self, Containment::HoldsThrough(_))
    }
}

/// Tests `x_{w_1}^* .. x_{w_r}^* L^src ⊆ L^dst` in every dual degree up to the
/// quotient duals' cutoff, where `L^E` is the left ideal with quotient
/// `B_E`. Dually: for each `f` in `(B_dst)^*_d`, the contraction of `f` by
/// the word (first slot, in order) must land in `(B_src)^*`, i.e. have no
/// coordinate ending outside `src`.
pub fn left_ideal_contains<F: Field>(
    dual: &DualAlgebra<F>,
    prefix: &[usize],
    src: &QuotientDual<F::Elem>,
    dst: &QuotientDual<F::Elem>,
) -> Containment {
    let f = dual.field();
    let n = dual.nvars();
    let top = dst.max_degree().min(dual.max_degree());
    for d in prefix.len() + 1..=top {
        let space = &dst.components[d];
        for row in space.basis().row_iter() {
            let mut g = row.to_vec();
            for &s in prefix {
                g = contract(&g, n, s, ActionSlot::First);
            }
            let bad = g
                .iter()
                .enumerate()
                .any(|(i, x)| !f.is_zero(x) && !src.allowed.contains(i % n));
            if bad {
                return Containment::FailsAt(d);
            }
        }
    }
    Containment::HoldsThrough(top)
}

/// Index word of the tensor coordinate `e_{i_1} ⊗ .. ⊗ e_{i_l}` as a monomial
/// (for display only; the tensor itself is noncommutative).
pub fn word_monomial(n: usize, word: &[usize]) -> Monomial {
    Monomial::from_word(n, word)
}
