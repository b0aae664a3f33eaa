//! Dense exact linear algebra: echelon forms, kernels, subspaces and
//! canonical solutions of linear systems.
//!
//! Rows are vectors throughout. A [`Subspace`] is always stored by its reduced
//! row echelon basis, so two subspaces are equal iff their stored bases are.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(
            rows * cols,
            data.len(),
            "matrix buffer has the wrong length"
        );
        Self { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row has the wrong length");
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn into_data(self) -> Vec<E> {
        self.data
    }
}

impl<E: Clone> Matrix<E> {
    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::filled(n, n, field.zero());
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::filled(self.rows, other.cols, field.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let cur = &out.data[i * other.cols + j];
                        out.data[i * other.cols + j] = field.add(cur, &field.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![field.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if field.is_zero(coeff) {
                continue;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if !field.is_zero(x) {
                    field.add_mul_assign(&mut out[c], coeff, x);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

/// Result of [`echelonize`].
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rref: Matrix<E>,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub kernel: Subspace<E>,
}

/// Reduced row echelon form, rank, pivots and right kernel `{v : m v = 0}`.
pub fn echelonize<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let (rref, pivots) = rref(field, m);
    let kernel_rows = kernel_from_rref(field, &rref, &pivots);
    let kernel = Subspace::from_rows(field, m.cols, kernel_rows);
    let rank = pivots.len();
    Echelon {
        rref,
        rank,
        pivot_columns: pivots,
        kernel,
    }
}

/// RREF with zero rows removed, plus pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut data = m.data.clone();
    let pivots = field.rref_in_place(&mut data, m.rows, m.cols);
    data.truncate(pivots.len() * m.cols);
    (Matrix::from_vec(pivots.len(), m.cols, data), pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut data = m.data.clone();
    field.rref_in_place(&mut data, m.rows, m.cols).len()
}

/// Basis of the right kernel read off a (zero-row-free) RREF: one vector per
/// free column, with that column set to one.
fn kernel_from_rref<F: Field>(
    field: &F,
    rref: &Matrix<F::Elem>,
    pivots: &[usize],
) -> Vec<Vec<F::Elem>> {
    let cols = rref.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(rref.get(i, free));
            }
            v
        })
        .collect()
}

/// Right kernel of `m` as a list of vectors (one per free column).
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    if m.rows == 0 {
        return (0..m.cols)
            .map(|c| {
                let mut v = vec![field.zero(); m.cols];
                v[c] = field.one();
                v
            })
            .collect();
    }
    let (r, piv) = rref(field, m);
    kernel_from_rref(field, &r, &piv)
}

/// A linear subspace of `k^ambient`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::from_vec(0, ambient, Vec::new()),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_rows<F: Field<Elem = E>>(field: &F, ambient: usize, rows: Vec<Vec<E>>) -> Self {
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(ambient, &rows);
        Self::from_matrix(field, &m)
    }

    pub fn from_matrix<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        let (basis, pivots) = rref(field, m);
        Self {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, i: usize) -> &[E] {
        self.basis.row(i)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the
    /// subspace. For an RREF basis the coordinates are the pivot entries.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.left_mul_vec(field, &coords);
        if back.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.coordinates(field, v).is_some()
    }

    pub fn contains_space<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        other.basis.row_iter().all(|r| self.contains(field, r))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::MismatchedAmbient(self.ambient, other.ambient));
        }
        let rows: Vec<Vec<E>> = self
            .basis
            .row_iter()
            .chain(other.basis.row_iter())
            .map(<[E]>::to_vec)
            .collect();
        Ok(Self::from_rows(field, self.ambient, rows))
    }

    /// Adds vectors to the span.
    pub fn extend<F: Field<Elem = E>>(&self, field: &F, vectors: &[Vec<E>]) -> Self {
        let rows: Vec<Vec<E>> = self
            .basis
            .row_iter()
            .map(<[E]>::to_vec)
            .chain(vectors.iter().cloned())
            .collect();
        Self::from_rows(field, self.ambient, rows)
    }
}

/// Intersection of a list of subspaces of `k^ambient`. The empty intersection
/// is the whole space.
pub fn intersect_subspaces<F: Field>(
    field: &F,
    ambient: usize,
    spaces: &[Subspace<F::Elem>],
) -> Result<Subspace<F::Elem>> {
    for s in spaces {
        if s.ambient != ambient {
            return Err(Error::MismatchedAmbient(ambient, s.ambient));
        }
    }
    let mut acc = match spaces.first() {
        Some(s) => s.clone(),
        None => return Ok(Subspace::full(field, ambient)),
    };
    for s in &spaces[1..] {
        acc = intersect_pair(field, &acc, s);
    }
    Ok(acc)
}

/// `U ∩ W` from the left kernel of the stacked bases: `aU + bW = 0` gives
/// `aU ∈ U ∩ W`, and `(a, b) ↦ aU` is injective on that kernel.
fn intersect_pair<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    w: &Subspace<F::Elem>,
) -> Subspace<F::Elem> {
    if u.dim() == 0 || w.dim() == 0 {
        return Subspace::zero(u.ambient);
    }
    let du = u.dim();
    let rows: Vec<Vec<F::Elem>> = u
        .basis
        .row_iter()
        .chain(w.basis.row_iter())
        .map(<[F::Elem]>::to_vec)
        .collect();
    let stacked = Matrix::from_rows(u.ambient, &rows);
    let ker = kernel_basis(field, &stacked.transpose());
    let vecs: Vec<Vec<F::Elem>> = ker
        .iter()
        .map(|k| u.basis.left_mul_vec(field, &k[..du]))
        .collect();
    Subspace::from_rows(field, u.ambient, vecs)
}

/// Canonical coefficients `c` with `c * generators = target`.
///
/// The unknowns are the generator rows in their given order. Among all
/// solutions the one whose non-pivot unknowns vanish is returned, so the same
/// input always yields the same witness. Returns `None` when `target` is not
/// in the row span.
pub fn solve_membership<F: Field>(
    field: &F,
    target: &[F::Elem],
    generators: &Matrix<F::Elem>,
) -> Option<Vec<F::Elem>> {
    assert_eq!(target.len(), generators.cols, "target has the wrong length");
    let unknowns = generators.rows;
    let eqs = generators.cols;
    let width = unknowns + 1;
    let mut aug = Vec::with_capacity(eqs * width);
    for c in 0..eqs {
        for r in 0..unknowns {
            aug.push(generators.get(r, c).clone());
        }
        aug.push(target[c].clone());
    }
    let pivots = field.rref_in_place(&mut aug, eqs, width);
    if pivots.last() == Some(&unknowns) {
        return None;
    }
    let mut x = vec![field.zero(); unknowns];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i * width + unknowns].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix<u64> {
        let f = f101();
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(cols, &rows)
    }

    fn unit(n: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn identity_has_full_rank() {
        let f = f101();
        let e = echelonize(&f, &Matrix::identity(&f, 3));
        assert_eq!(e.rank, 3);
        assert_eq!(e.kernel.dim(), 0);
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let f = f101();
        let e = echelonize(&f, &Matrix::filled(2, 4, 0));
        assert_eq!(e.rank, 0);
        assert_eq!(e.kernel.dim(), 4);
    }

    #[test]
    fn rank_one_kernel() {
        let f = f101();
        let e = echelonize(&f, &m(&[&[1, 1], &[2, 2]]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivot_columns, vec![0]);
        assert_eq!(e.kernel.dim(), 1);
        assert!(e.kernel.contains(&f, &[1, f.from_i64(-1)]));
    }

    #[test]
    fn coordinate_intersection() {
        let f = f101();
        let a = Subspace::from_rows(&f, 3, vec![unit(3, 0), unit(3, 1)]);
        let b = Subspace::from_rows(&f, 3, vec![unit(3, 1), unit(3, 2)]);
        let i = intersect_subspaces(&f, 3, &[a.clone(), b]).unwrap();
        assert_eq!(i, Subspace::from_rows(&f, 3, vec![unit(3, 1)]));
        assert_eq!(
            intersect_subspaces(&f, 3, std::slice::from_ref(&a)).unwrap(),
            a
        );
        assert_eq!(intersect_subspaces(&f, 3, &[]).unwrap().dim(), 3);
    }

    #[test]
    fn skew_lines_meet_in_zero() {
        let f = f101();
        let a = Subspace::from_rows(&f, 2, vec![vec![1, 1]]);
        let b = Subspace::from_rows(&f, 2, vec![vec![1, 100]]);
        assert_eq!(intersect_subspaces(&f, 2, &[a, b]).unwrap().dim(), 0);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let f = f101();
        let a = Subspace::<u64>::zero(2);
        let b = Subspace::<u64>::zero(3);
        assert_eq!(
            intersect_subspaces(&f, 2, &[a, b]),
            Err(Error::MismatchedAmbient(2, 3))
        );
    }

    #[test]
    fn canonical_membership_witness() {
        let f = f101();
        let g = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve_membership(&f, &[1, 1], &g), Some(vec![1, 1, 0]));
        assert_eq!(solve_membership(&f, &[0, 0], &g), Some(vec![0, 0, 0]));
        let g2 = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(solve_membership(&f, &[0, 1, 0], &g2), Some(vec![0, 1, 0]));
        let g3 = m(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(solve_membership(&f, &[0, 0, 1], &g3), None);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<u64>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u64..101, r * c).prop_map(move |d| Matrix::from_vec(r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(a in small_matrix()) {
            let f = f101();
            prop_assert_eq!(rank(&f, &a), rank(&f, &a.transpose()));
        }

        #[test]
        fn echelon_is_idempotent(a in small_matrix()) {
            let f = f101();
            let e = echelonize(&f, &a);
            let again = echelonize(&f, &e.rref);
            prop_assert_eq!(&again.rref, &e.rref);
            prop_assert_eq!(e.rank + e.kernel.dim(), a.cols());
        }

        #[test]
        fn membership_witness_reproduces_target(a in small_matrix(), seed in proptest::collection::vec(0u64..101, 6)) {
            let f = f101();
            let coeffs: Vec<u64> = seed.into_iter().take(a.rows()).chain(std::iter::repeat(0)).take(a.rows()).collect();
            let target = a.left_mul_vec(&f, &coeffs);
            let sol = solve_membership(&f, &target, &a).expect("target is in the span");
            prop_assert_eq!(a.left_mul_vec(&f, &sol), target.clone());
            prop_assert_eq!(solve_membership(&f, &target, &a), Some(sol));
        }

        #[test]
        fn intersection_is_the_meet(a in small_matrix(), b in small_matrix(), mix in proptest::collection::vec(0u64..101, 6)) {
            let f = f101();
            let n = a.cols().min(b.cols());
            let trim = |x: &Matrix<u64>| -> Vec<Vec<u64>> { x.row_iter().map(|r| r[..n].to_vec()).collect() };
            let u = Subspace::from_rows(&f, n, trim(&a));
            let w = Subspace::from_rows(&f, n, trim(&b));
            let i = intersect_subspaces(&f, n, &[u.clone(), w.clone()]).unwrap();
            prop_assert!(u.contains_space(&f, &i));
            prop_assert!(w.contains_space(&f, &i));
            // a random combination of the intersection basis stays inside both
            let coeffs: Vec<u64> = mix.into_iter().chain(std::iter::repeat(0)).take(i.dim()).collect();
            let v = i.basis().left_mul_vec(&f, &coeffs);
            prop_assert!(u.contains(&f, &v) && w.contains(&f, &v));
            // dimension formula
            let s = u.sum(&f, &w).unwrap();
            prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
        }
    }
}
