//! The commutative quadratic algebra `A = k[x_1..x_n]/I`, degree by degree.
//!
//! Each graded piece `A_d` is stored through a chosen monomial basis and a
//! normal-form table sending every monomial of the free polynomial ring to its
//! coordinates in that basis. The basis is picked greedily: user-preferred
//! monomials first, then the remaining monomials in lex order, keeping a
//! monomial iff its class is independent of the classes already kept.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// Exponent vector of a monomial in the free commutative polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    /// Product of the variables in `word` (indices may repeat).
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &i in word {
            e[i] += 1;
        }
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_iter(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    /// Variable indices in nondecreasing order, with multiplicity.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.degree() == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// All degree-`d` monomials in `n` variables, lex order with `x_1 > x_2 > ...`
/// (so `x_1^d` comes first).
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, d as u32, &mut vec![0; n], &mut out);
    out
}

/// A set of variable indices, `n <= 64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn all(n: usize) -> Self {
        if n == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & Self::all(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn render(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A homogeneous polynomial as a list of terms.
pub type Polynomial<E> = Vec<(Monomial, E)>;

/// Generators and relations of `A`.
#[derive(Clone, Debug)]
pub struct RingPresentation<F: Field> {
    pub field: F,
    pub var_names: Vec<String>,
    pub relations: Vec<Polynomial<F::Elem>>,
    /// Monomials the basis selection tries first, in order.
    pub preferred: Vec<Monomial>,
}

impl<F: Field> RingPresentation<F> {
    pub fn new(field: F, var_names: Vec<String>) -> Self {
        Self {
            field,
            var_names,
            relations: Vec::new(),
            preferred: Vec::new(),
        }
    }

    /// Convenience constructor from integer-coefficient relations given as
    /// variable-index words, e.g. `&[(1, &[0, 2])]` for `x1*x3`.
    pub fn with_relations(field: F, var_names: &[&str], relations: &[&[(i64, &[usize])]]) -> Self {
        let n = var_names.len();
        let rels = relations
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(c, w)| (Monomial::from_word(n, w), field.from_i64(*c)))
                    .collect()
            })
            .collect();
        Self {
            relations: rels,
            preferred: Vec::new(),
            var_names: var_names.iter().map(|s| s.to_string()).collect(),
            field,
        }
    }

    pub fn prefer(mut self, words: &[&[usize]]) -> Self {
        let n = self.nvars();
        self.preferred = words.iter().map(|w| Monomial::from_word(n, w)).collect();
        self
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.nvars();
        if n == 0 {
            return Err(Error::InvalidPresentation("no variables".into()));
        }
        if n > 64 {
            return Err(Error::InvalidPresentation("at most 64 variables".into()));
        }
        for (i, a) in self.var_names.iter().enumerate() {
            if self.var_names[..i].contains(a) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate variable `{a}`"
                )));
            }
        }
        for rel in &self.relations {
            for (m, _) in rel {
                if m.nvars() != n {
                    return Err(Error::InvalidPresentation("monomial arity mismatch".into()));
                }
                if m.degree() != 2 {
                    return Err(Error::InvalidPresentation(format!(
                        "relation term `{}` is not of degree 2",
                        m.render(&self.var_names)
                    )));
                }
            }
        }
        for m in &self.preferred {
            if m.nvars() != n {
                return Err(Error::InvalidPresentation("monomial arity mismatch".into()));
            }
        }
        Ok(())
    }

    /// True when every relation is a single monomial.
    pub fn is_multigraded(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.iter().filter(|(_, c)| !self.field.is_zero(c)).count() <= 1)
    }
}

/// An element of `A_d` in coordinates over the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    pub degree: usize,
    pub coords: Vec<E>,
}

impl<E: Clone> AlgebraElement<E> {
    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degree"
        );
        Self {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, field: &F, other: &Self) {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degree"
        );
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            field.add_assign(a, b);
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        self.scale(field, &field.neg(&field.one()))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self {
            degree: self.degree,
            coords: self.coords.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    /// True for a nonzero element of degree zero.
    pub fn is_unit<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.degree == 0 && !self.is_zero(field)
    }
}

#[derive(Clone, Debug)]
struct Piece<E> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Indices into `monomials` of the chosen basis, in selection order.
    basis: Vec<usize>,
    /// Per free monomial: sparse coordinates over `basis`.
    normal_forms: Vec<Vec<(usize, E)>>,
    /// Spanning rows of `I_d` in lex monomial coordinates (independent).
    ideal_rows: Vec<Vec<E>>,
}

/// A preferred monomial that could not be placed in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferredConflict {
    pub monomial: Monomial,
    pub degree: usize,
}

/// `A` truncated at an explicit degree cutoff.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    pres: RingPresentation<F>,
    cutoff: usize,
    pieces: Vec<Piece<F::Elem>>,
    conflicts: Vec<PreferredConflict>,
}

impl<F: Field> GradedAlgebra<F> {
    /// Builds the graded pieces `A_0 .. A_cutoff`.
    pub fn build(pres: RingPresentation<F>, cutoff: usize) -> Result<Self> {
        pres.validate()?;
        let cutoff = cutoff.max(2);
        let n = pres.nvars();
        let field = pres.field.clone();
        let mut pieces: Vec<Piece<F::Elem>> = Vec::with_capacity(cutoff + 1);
        let mut conflicts = Vec::new();
        for d in 0..=cutoff {
            let monomials = monomials_of_degree(n, d);
            let index: HashMap<Monomial, usize> = monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let generators: Vec<Vec<F::Elem>> = match d {
                0 | 1 => Vec::new(),
                2 => pres
                    .relations
                    .iter()
                    .map(|rel| {
                        let mut v = vec![field.zero(); monomials.len()];
                        for (m, c) in rel {
                            field.add_assign(&mut v[index[m]], c);
                        }
                        v
                    })
                    .collect(),
                _ => {
                    let prev = &pieces[d - 1];
                    let mut rows = Vec::with_capacity(prev.ideal_rows.len() * n);
                    for r in &prev.ideal_rows {
                        for i in 0..n {
                            let x = Monomial::var(n, i);
                            let mut v = vec![field.zero(); monomials.len()];
                            for (j, c) in r.iter().enumerate() {
                                if !field.is_zero(c) {
                                    v[index[&prev.monomials[j].mul(&x)]] = c.clone();
                                }
                            }
                            rows.push(v);
                        }
                    }
                    rows
                }
            };
            let (piece, bad) =
                select_basis(&field, d, monomials, index, generators, &pres.preferred);
            conflicts.extend(bad);
            pieces.push(piece);
        }
        Ok(Self {
            pres,
            cutoff,
            pieces,
            conflicts,
        })
    }

    pub fn field(&self) -> &F {
        &self.pres.field
    }

    pub fn presentation(&self) -> &RingPresentation<F> {
        &self.pres
    }

    pub fn var_names(&self) -> &[String] {
        &self.pres.var_names
    }

    pub fn nvars(&self) -> usize {
        self.pres.nvars()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Preferred monomials forced out of the basis.
    pub fn preferred_conflicts(&self) -> &[PreferredConflict] {
        &self.conflicts
    }

    fn piece(&self, d: usize) -> Result<&Piece<F::Elem>> {
        self.pieces.get(d).ok_or(Error::DegreeOverflow {
            requested: d,
            cutoff: self.cutoff,
        })
    }

    pub fn dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.basis.len())
    }

    /// dim of the relation space `I_d` inside the free degree-`d` part.
    pub fn relation_dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.ideal_rows.len())
    }

    /// The chosen basis monomials of `A_d`, in coordinate order.
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        self.pieces
            .get(d)
            .map(|p| p.basis.iter().map(|&i| p.monomials[i].clone()).collect())
            .unwrap_or_default()
    }

    /// Position of `m` in the basis of `A_{deg m}`, if it is a basis monomial.
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        let p = self.pieces.get(m.degree())?;
        let i = *p.index.get(m)?;
        p.basis.iter().position(|&b| b == i)
    }

    pub fn zero(&self, d: usize) -> AlgebraElement<F::Elem> {
        AlgebraElement {
            degree: d,
            coords: vec![self.field().zero(); self.dim(d)],
        }
    }

    pub fn one(&self) -> AlgebraElement<F::Elem> {
        AlgebraElement {
            degree: 0,
            coords: vec![self.field().one()],
        }
    }

    pub fn basis_element(&self, d: usize, i: usize) -> AlgebraElement<F::Elem> {
        let mut z = self.zero(d);
        z.coords[i] = self.field().one();
        z
    }

    /// The class of the variable `x_i`.
    pub fn var(&self, i: usize) -> AlgebraElement<F::Elem> {
        self.monomial(&Monomial::var(self.nvars(), i))
            .expect("degree one is always available")
    }

    /// Normal form of a monomial of the free ring.
    pub fn monomial(&self, m: &Monomial) -> Result<AlgebraElement<F::Elem>> {
        let d = m.degree();
        let p = self.piece(d)?;
        let mut z = self.zero(d);
        for (j, c) in &p.normal_forms[p.index[m]] {
            z.coords[*j] = c.clone();
        }
        Ok(z)
    }

    /// Normal form of a homogeneous polynomial of the free ring.
    pub fn normal_form(&self, expr: &[(Monomial, F::Elem)]) -> Result<AlgebraElement<F::Elem>> {
        let f = self.field();
        let Some((first, _)) = expr.first() else {
            return Err(Error::InvalidPresentation(
                "empty expression has no degree".into(),
            ));
        };
        let d = first.degree();
        let p = self.piece(d)?;
        let mut z = self.zero(d);
        for (m, c) in expr {
            if m.degree() != d {
                return Err(Error::InvalidPresentation(
                    "expression is not homogeneous".into(),
                ));
            }
            for (j, v) in &p.normal_forms[p.index[m]] {
                f.add_mul_assign(&mut z.coords[*j], c, v);
            }
        }
        Ok(z)
    }

    /// Product of a basis monomial of `A_d` with an element.
    pub fn mul_basis(
        &self,
        d: usize,
        i: usize,
        b: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>> {
        let f = self.field();
        let total = d + b.degree;
        let target = self.piece(total)?;
        let pa = self.piece(d)?;
        let pb = self.piece(b.degree)?;
        let ma = &pa.monomials[pa.basis[i]];
        let mut z = self.zero(total);
        for (j, c) in b.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let m = ma.mul(&pb.monomials[pb.basis[j]]);
            for (k, v) in &target.normal_forms[target.index[&m]] {
                f.add_mul_assign(&mut z.coords[*k], c, v);
            }
        }
        Ok(z)
    }

    pub fn multiply(
        &self,
        a: &AlgebraElement<F::Elem>,
        b: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>> {
        let f = self.field();
        let total = a.degree + b.degree;
        if total > self.cutoff {
            return Err(Error::DegreeOverflow {
                requested: total,
                cutoff: self.cutoff,
            });
        }
        let mut z = self.zero(total);
        for (i, c) in a.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let prod = self.mul_basis(a.degree, i, b)?;
            for (acc, v) in z.coords.iter_mut().zip(&prod.coords) {
                f.add_mul_assign(acc, c, v);
            }
        }
        Ok(z)
    }

    /// Ideal generated by `gens` in degree `d`, as a subspace of `A_d`.
    pub fn ideal_in_degree(
        &self,
        gens: &[AlgebraElement<F::Elem>],
        d: usize,
    ) -> Result<Subspace<F::Elem>> {
        let f = self.field();
        let mut rows = Vec::new();
        for g in gens {
            if g.degree > d {
                continue;
            }
            let e = d - g.degree;
            for i in 0..self.dim(e) {
                rows.push(self.mul_basis(e, i, g)?.coords);
            }
        }
        self.piece(d)?;
        Ok(Subspace::from_rows(f, self.dim(d), rows))
    }

    /// `{a ∈ A_d : a·m ∈ W}` where `W ⊆ A_{d + deg m}`.
    pub fn colon_in_degree(
        &self,
        target: &Subspace<F::Elem>,
        m: &AlgebraElement<F::Elem>,
        d: usize,
    ) -> Result<Subspace<F::Elem>> {
        let f = self.field();
        let dd = self.dim(d);
        let top = self.dim(d + m.degree);
        if target.ambient() != top {
            return Err(Error::MismatchedAmbient(target.ambient(), top));
        }
        let mut rows = Vec::with_capacity(dd + target.dim());
        for i in 0..dd {
            rows.push(self.mul_basis(d, i, m)?.coords);
        }
        rows.extend(target.basis().row_iter().map(<[F::Elem]>::to_vec));
        if rows.is_empty() {
            return Ok(Subspace::zero(dd));
        }
        let stacked = Matrix::from_rows(top, &rows).transpose();
        let kernel = crate::linalg::kernel_basis(f, &stacked);
        let vecs = kernel.into_iter().map(|k| k[..dd].to_vec()).collect();
        Ok(Subspace::from_rows(f, dd, vecs))
    }

    pub fn render(&self, a: &AlgebraElement<F::Elem>) -> String {
        let f = self.field();
        let basis = self.basis(a.degree);
        let terms: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                let m = basis[i].render(self.var_names());
                if f.is_one(c) {
                    m
                } else if a.degree == 0 {
                    f.render(c)
                } else {
                    format!("{}*{}", f.render(c), m)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// The pair set `S` and the coefficients `f^{u,v}_{s,t}` for every
    /// unordered pair `u <= v` with `x_u x_v` outside the chosen basis.
    pub fn structure_coefficients(&self) -> StructureCoefficients<F::Elem> {
        let n = self.nvars();
        let f = self.field();
        let basis2 = self.basis(2);
        let s_pairs: Vec<(usize, usize)> = basis2
            .iter()
            .map(|m| {
                let w = m.word();
                (w[0], w[1])
            })
            .collect();
        let mut excluded = BTreeMap::new();
        for u in 0..n {
            for v in u..n {
                let m = Monomial::from_word(n, &[u, v]);
                if self.basis_index(&m).is_some() {
                    continue;
                }
                let nf = self.monomial(&m).expect("degree two is built");
                let expansion = nf
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(i, c)| (s_pairs[i], c.clone()))
                    .collect();
                excluded.insert((u, v), expansion);
            }
        }
        StructureCoefficients { s_pairs, excluded }
    }
}

/// `x_u x_v` written over the pairs in `S`.
pub type PairExpansion<E> = Vec<((usize, usize), E)>;

/// The chosen pair set `S` (pairs `s <= t` with `x_s x_t` a basis monomial of
/// `A_2`) and the expansions of the excluded products over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCoefficients<E> {
    pub s_pairs: Vec<(usize, usize)>,
    pub excluded: BTreeMap<(usize, usize), PairExpansion<E>>,
}

impl<E: Clone> StructureCoefficients<E> {
    pub fn in_s(&self, pair: (usize, usize)) -> bool {
        self.s_pairs.contains(&pair)
    }

    /// Every ordered pair `(u, v)` outside `S`, with `x_u x_v` expanded over `S`.
    /// Transposes `(v, u)`, `u < v`, are included: they expand to `x_u x_v`
    /// itself when that product is in `S`.
    pub fn ordered_non_s<F: Field<Elem = E>>(
        &self,
        field: &F,
        n: usize,
    ) -> Vec<((usize, usize), PairExpansion<E>)> {
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u <= v {
                    if let Some(e) = self.excluded.get(&(u, v)) {
                        out.push(((u, v), e.clone()));
                    }
                } else if self.in_s((v, u)) {
                    out.push(((u, v), vec![((v, u), field.one())]));
                } else {
                    out.push(((u, v), self.excluded[&(v, u)].clone()));
                }
            }
        }
        out
    }
}

/// Column order for the elimination is the reverse of the greedy order, so the
/// non-pivot columns are exactly the greedy choice and every pivot monomial is
/// rewritten in terms of later (chosen) ones.
fn select_basis<F: Field>(
    field: &F,
    d: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    generators: Vec<Vec<F::Elem>>,
    preferred: &[Monomial],
) -> (Piece<F::Elem>, Vec<PreferredConflict>) {
    let count = monomials.len();
    let mut greedy: Vec<usize> = Vec::with_capacity(count);
    let mut seen = vec![false; count];
    let mut preferred_here = Vec::new();
    for m in preferred.iter().filter(|m| m.degree() == d) {
        let i = index[m];
        if !seen[i] {
            seen[i] = true;
            greedy.push(i);
            preferred_here.push(i);
        }
    }
    greedy.extend((0..count).filter(|&i| !seen[i]));
    let position_to_monomial: Vec<usize> = greedy.iter().rev().copied().collect();

    let mut data = Vec::with_capacity(generators.len() * count);
    for g in &generators {
        for &mi in &position_to_monomial {
            data.push(g[mi].clone());
        }
    }
    let pivots = if generators.is_empty() {
        Vec::new()
    } else {
        field.rref_in_place(&mut data, generators.len(), count)
    };
    let mut pivot_row = vec![None; count];
    for (r, &p) in pivots.iter().enumerate() {
        pivot_row[p] = Some(r);
    }

    let mut basis_pos = vec![None; count];
    let mut basis = Vec::new();
    for &mi in &greedy {
        let pos = count - 1 - greedy.iter().position(|&g| g == mi).unwrap();
        if pivot_row[pos].is_none() {
            basis_pos[mi] = Some(basis.len());
            basis.push(mi);
        }
    }

    let mut normal_forms = vec![Vec::new(); count];
    for pos in 0..count {
        let mi = position_to_monomial[pos];
        normal_forms[mi] = match pivot_row[pos] {
            None => vec![(basis_pos[mi].unwrap(), field.one())],
            Some(r) => (pos + 1..count)
                .filter(|&q| pivot_row[q].is_none())
                .filter_map(|q| {
                    let c = &data[r * count + q];
                    (!field.is_zero(c))
                        .then(|| (basis_pos[position_to_monomial[q]].unwrap(), field.neg(c)))
                })
                .collect(),
        };
    }

    let ideal_rows = (0..pivots.len())
        .map(|r| {
            let mut v = vec![field.zero(); count];
            for pos in 0..count {
                v[position_to_monomial[pos]] = data[r * count + pos].clone();
            }
            v
        })
        .collect();

    let conflicts = preferred_here
        .into_iter()
        .filter(|mi| basis_pos[*mi].is_none())
        .map(|mi| PreferredConflict {
            monomial: monomials[mi].clone(),
            degree: d,
        })
        .collect();

    (
        Piece {
            monomials,
            index,
            basis,
            normal_forms,
            ideal_rows,
        },
        conflicts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn xyz_sym() -> GradedAlgebra<PrimeField> {
        // k[x,y,z]/(xy+xz+yz), preferring xy, yz
        let p = RingPresentation::with_relations(
            f(),
            &["x", "y", "z"],
            &[&[(1, &[0, 1]), (1, &[0, 2]), (1, &[1, 2])]],
        )
        .prefer(&[&[0, 1], &[1, 2]]);
        GradedAlgebra::build(p, 4).unwrap()
    }

    fn squares(n: usize) -> GradedAlgebra<PrimeField> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let mut p = RingPresentation::new(f(), names);
        for i in 0..n {
            p.relations.push(vec![(Monomial::from_word(n, &[i, i]), 1)]);
        }
        GradedAlgebra::build(p, n + 2).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn lex_enumeration() {
        let m = monomials_of_degree(3, 2);
        let words: Vec<Vec<usize>> = m.iter().map(Monomial::word).collect();
        assert_eq!(
            words,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 1],
                vec![1, 2],
                vec![2, 2]
            ]
        );
    }

    #[test]
    fn free_ring_keeps_everything() {
        let a = GradedAlgebra::build(
            RingPresentation::new(f(), vec!["x".into(), "y".into(), "z".into()]),
            3,
        )
        .unwrap();
        assert_eq!(a.basis(2), monomials_of_degree(3, 2));
        assert!(a.structure_coefficients().excluded.is_empty());
        assert_eq!(a.structure_coefficients().s_pairs.len(), 6);
    }

    #[test]
    fn preferred_basis_excludes_xz() {
        let a = xyz_sym();
        let words: Vec<Vec<usize>> = a.basis(2).iter().map(Monomial::word).collect();
        assert_eq!(
            words,
            vec![vec![0, 1], vec![1, 2], vec![0, 0], vec![1, 1], vec![2, 2]]
        );
        assert!(a.preferred_conflicts().is_empty());
    }

    #[test]
    fn normal_form_of_xz() {
        let a = xyz_sym();
        let fld = f();
        let xy = a.monomial(&Monomial::from_word(3, &[0, 1])).unwrap();
        assert_eq!(xy.coords, vec![1, 0, 0, 0, 0]);
        let xz = a.monomial(&Monomial::from_word(3, &[0, 2])).unwrap();
        assert_eq!(xz.coords, vec![100, 100, 0, 0, 0]);
        let prod = a.multiply(&a.var(0), &a.var(2)).unwrap();
        assert_eq!(prod, xz);
        let sc = a.structure_coefficients();
        assert_eq!(
            sc.excluded[&(0, 2)],
            vec![((0, 1), fld.from_i64(-1)), ((1, 2), fld.from_i64(-1))]
        );
    }

    #[test]
    fn squares_have_exterior_dimensions() {
        let a = squares(2);
        assert_eq!(
            (0..4).map(|d| a.dim(d)).collect::<Vec<_>>(),
            vec![1, 2, 1, 0]
        );
        let x1 = a.var(0);
        assert!(a.multiply(&x1, &x1).unwrap().is_zero(a.field()));
        let x1x2 = a.multiply(&x1, &a.var(1)).unwrap();
        assert!(a.multiply(&x1x2, &x1).unwrap().is_zero(a.field()));
    }

    #[test]
    fn multigraded_structure_coefficients_vanish() {
        let p = RingPresentation::with_relations(
            f(),
            &["x1", "x2", "x3"],
            &[&[(1, &[0, 2])], &[(1, &[2, 2])]],
        );
        let a = GradedAlgebra::build(p, 3).unwrap();
        let sc = a.structure_coefficients();
        assert_eq!(sc.excluded.len(), 2);
        assert!(sc.excluded[&(0, 2)].is_empty());
        assert!(sc.excluded[&(2, 2)].is_empty());
    }

    #[test]
    fn dependent_preferred_monomial_is_reported() {
        let p = RingPresentation::with_relations(f(), &["x", "y"], &[&[(1, &[0, 0])]])
            .prefer(&[&[0, 0], &[0, 1]]);
        let a = GradedAlgebra::build(p, 2).unwrap();
        assert_eq!(a.preferred_conflicts().len(), 1);
        assert_eq!(a.dim(2), 2);
    }

    #[test]
    fn degree_overflow() {
        let a = squares(2);
        assert!(matches!(
            a.monomial(&Monomial::from_word(2, &[0, 0, 0, 0, 0])),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn rejects_cubic_relation() {
        let p = RingPresentation::with_relations(f(), &["x"], &[&[(1, &[0, 0, 0])]]);
        assert!(GradedAlgebra::build(p, 3).is_err());
    }

    #[test]
    fn hilbert_functions() {
        let poly = GradedAlgebra::build(
            RingPresentation::new(f(), vec!["a".into(), "b".into(), "c".into(), "d".into()]),
            5,
        )
        .unwrap();
        for d in 0..=5 {
            assert_eq!(poly.dim(d), binom(4 + d - 1, d));
        }
        let sq = squares(4);
        for d in 0..=6 {
            assert_eq!(sq.dim(d), binom(4, d));
        }
    }

    fn element(a: &GradedAlgebra<PrimeField>, d: usize, seed: &[u64]) -> AlgebraElement<u64> {
        let mut z = a.zero(d);
        for (c, s) in z.coords.iter_mut().zip(seed.iter().cycle()) {
            *c = s % 101;
        }
        z
    }

    proptest! {
        #[test]
        fn multiplication_commutes(da in 0usize..3, db in 0usize..3, sa in proptest::collection::vec(0u64..101, 1..8), sb in proptest::collection::vec(0u64..101, 1..8)) {
            let a = xyz_sym();
            let x = element(&a, da, &sa);
            let y = element(&a, db, &sb);
            prop_assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
        }

        #[test]
        fn multiplication_associates(sa in proptest::collection::vec(0u64..101, 1..6), sb in proptest::collection::vec(0u64..101, 1..6), sc in proptest::collection::vec(0u64..101, 1..6)) {
            let a = xyz_sym();
            let x = element(&a, 1, &sa);
            let y = element(&a, 1, &sb);
            let z = element(&a, 2, &sc);
            let l = a.multiply(&a.multiply(&x, &y).unwrap(), &z).unwrap();
            let r = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn structure_coefficients_reproduce_products() {
        let a = xyz_sym();
        let fld = f();
        let n = 3;
        let sc = a.structure_coefficients();
        for ((u, v), exp) in sc.ordered_non_s(&fld, n) {
            let lhs = a.monomial(&Monomial::from_word(n, &[u, v])).unwrap();
            let mut rhs = a.zero(2);
            for ((s, t), c) in exp {
                rhs.add_assign(
                    &fld,
                    &a.monomial(&Monomial::from_word(n, &[s, t]))
                        .unwrap()
                        .scale(&fld, &c),
                );
            }
            assert_eq!(lhs, rhs);
        }
        // dim A_2 = C(n+1, 2) - rank of relations
        assert_eq!(a.dim(2), binom(4, 2) - 1);
    }
}
