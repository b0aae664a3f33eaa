//! Graded free complexes over `A` with matrices of algebra elements, and the
//! exact checks run on them: `d^2 = 0`, minimality, homology ranks.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, Matrix};

/// One free generator `A(-internal_degree)` with its provenance: the ideal
/// generator it belongs to (if any) and a dual tensor of degree `dual_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel<E> {
    pub generator: Option<usize>,
    pub dual_degree: usize,
    /// Sparse coordinates in `V^{⊗ dual_degree}`.
    pub dual: Vec<(usize, E)>,
    pub internal_degree: usize,
}

/// A matrix over `A`, stored by sparse columns sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, AlgebraElement<E>)>>,
}

impl<E: Clone + PartialEq> AMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&AlgebraElement<E>> {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, a)| a)
    }

    /// Adds `a` to the entry at `(row, col)`, dropping entries that cancel.
    pub fn add_entry<F: Field<Elem = E>>(
        &mut self,
        field: &F,
        row: usize,
        col: usize,
        a: &AlgebraElement<E>,
    ) {
        if a.is_zero(field) {
            return;
        }
        let column = &mut self.columns[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(pos) => {
                column[pos].1.add_assign(field, a);
                if column[pos].1.is_zero(field) {
                    column.remove(pos);
                }
            }
            Err(pos) => column.insert(pos, (row, a.clone())),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &AlgebraElement<E>)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, a)| (*r, c, a)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// First entry of degree zero (a unit), if any.
    pub fn unit_entry<F: Field<Elem = E>>(&self, field: &F) -> Option<(usize, usize)> {
        self.entries()
            .find(|(_, _, a)| a.is_unit(field))
            .map(|(r, c, _)| (r, c))
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(
        &self,
        alg: &GradedAlgebra<F>,
        other: &Self,
    ) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MalformedComplex(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = alg.field();
        let mut out = Self::zero(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    out.add_entry(f, *i, c, &alg.multiply(a, b)?);
                }
            }
        }
        Ok(out)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c, a) in other.entries() {
            out.add_entry(field, r, c, &a.neg(field));
        }
        out
    }
}

/// `F_0 <- F_1 <- ... <- F_H`; `differentials[l - 1]` is `∂_l : F_l -> F_{l-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<E> {
    pub bases: Vec<Vec<BasisLabel<E>>>,
    pub differentials: Vec<AMatrix<E>>,
}

impl<E: Clone + PartialEq> ChainComplex<E> {
    /// Highest homological degree present.
    pub fn length(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    pub fn rank(&self, l: usize) -> usize {
        self.bases.get(l).map_or(0, Vec::len)
    }

    pub fn differential(&self, l: usize) -> Option<&AMatrix<E>> {
        l.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    pub fn internal_degrees(&self, l: usize) -> Vec<usize> {
        self.bases
            .get(l)
            .map(|b| b.iter().map(|g| g.internal_degree).collect())
            .unwrap_or_default()
    }

    /// `(l, j) -> number of generators of F_l in internal degree j`.
    pub fn graded_ranks(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (l, basis) in self.bases.iter().enumerate() {
            for g in basis {
                *out.entry((l, g.internal_degree)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn initial_degree(&self) -> Option<usize> {
        self.bases.first()?.iter().map(|g| g.internal_degree).min()
    }

    /// Consistency of shapes and entry degrees.
    pub fn validate(&self) -> Result<()> {
        if self.differentials.len() + 1 != self.bases.len() && !self.bases.is_empty() {
            return Err(Error::MalformedComplex(format!(
                "{} modules but {} differentials",
                self.bases.len(),
                self.differentials.len()
            )));
        }
        for (i, d) in self.differentials.iter().enumerate() {
            let l = i + 1;
            if d.rows != self.rank(l - 1) || d.cols != self.rank(l) || d.columns.len() != d.cols {
                return Err(Error::MalformedComplex(format!(
                    "differential {l} has shape {}x{}, expected {}x{}",
                    d.rows,
                    d.cols,
                    self.rank(l - 1),
                    self.rank(l)
                )));
            }
            for (r, c, a) in d.entries() {
                let src = self.bases[l][c].internal_degree;
                let dst = self.bases[l - 1][r].internal_degree;
                if r >= d.rows || src < dst || a.degree != src - dst {
                    return Err(Error::MalformedComplex(format!(
                        "entry ({r}, {c}) of differential {l} has the wrong degree"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Offsets of each generator's block in `(F_l)_d`, and the total dimension.
pub(crate) fn graded_layout<E, F: Field<Elem = E>>(
    alg: &GradedAlgebra<F>,
    basis: &[BasisLabel<E>],
    d: usize,
) -> Result<(Vec<Option<usize>>, usize)> {
    let mut offsets = Vec::with_capacity(basis.len());
    let mut total = 0;
    for g in basis {
        match d.checked_sub(g.internal_degree) {
            Some(e) if e > alg.cutoff() => {
                return Err(Error::DegreeOverflow {
                    requested: e,
                    cutoff: alg.cutoff(),
                })
            }
            Some(e) => {
                offsets.push(Some(total));
                total += alg.dim(e);
            }
            None => offsets.push(None),
        }
    }
    Ok((offsets, total))
}

pub fn graded_dim<E, F: Field<Elem = E>>(
    alg: &GradedAlgebra<F>,
    basis: &[BasisLabel<E>],
    d: usize,
) -> Result<usize> {
    Ok(graded_layout(alg, basis, d)?.1)
}

/// `∂_l` in internal degree `d` as a `k`-matrix whose rows are the images of
/// the basis of `(F_l)_d` in `(F_{l-1})_d`.
pub fn degree_block<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    l: usize,
    d: usize,
) -> Result<Matrix<F::Elem>> {
    let f = alg.field();
    let (src_off, src_dim) = graded_layout(alg, &c.bases[l], d)?;
    let (dst_off, dst_dim) = graded_layout(alg, &c.bases[l - 1], d)?;
    let mut m = Matrix::filled(src_dim, dst_dim, f.zero());
    let dl = c
        .differential(l)
        .ok_or_else(|| Error::MalformedComplex(format!("no differential in degree {l}")))?;
    for (col, entries) in dl.columns.iter().enumerate() {
        let Some(off) = src_off[col] else { continue };
        let e = d - c.bases[l][col].internal_degree;
        for b in 0..alg.dim(e) {
            for (row, p) in entries {
                let Some(roff) = dst_off[*row] else { continue };
                let img = alg.mul_basis(e, b, p)?;
                for (k, v) in img.coords.into_iter().enumerate() {
                    if !f.is_zero(&v) {
                        let cur = m.get(off + b, roff + k).clone();
                        m.set(off + b, roff + k, f.add(&cur, &v));
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `dim H_i(F)_d`.
pub fn homology_dim<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    i: usize,
    d: usize,
) -> Result<usize> {
    if i + 1 > c.length() {
        return Err(Error::MalformedComplex(format!(
            "homology in degree {i} needs the differential in degree {}",
            i + 1
        )));
    }
    let dim = graded_dim(alg, &c.bases[i], d)?;
    let out = if i == 0 {
        0
    } else {
        rank(alg.field(), &degree_block(alg, c, i, d)?)
    };
    let inc = rank(alg.field(), &degree_block(alg, c, i + 1, d)?);
    dim.checked_sub(out + inc).ok_or_else(|| {
        Error::MalformedComplex(format!("d^2 != 0 around degree {i} in internal degree {d}"))
    })
}

/// Homological degrees `l` where `∂_{l-1} ∘ ∂_l != 0`.
pub fn d_squared_failures<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for l in 2..=c.length() {
        let comp = c
            .differential(l - 1)
            .unwrap()
            .compose(alg, c.differential(l).unwrap())?;
        if !comp.is_zero() {
            bad.push(l);
        }
    }
    Ok(bad)
}

/// Homological degrees whose differential has a unit entry.
pub fn nonminimal_degrees<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
) -> Vec<usize> {
    (1..=c.length())
        .filter(|&l| c.differential(l).unwrap().unit_entry(alg.field()).is_some())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyEntry {
    pub homological: usize,
    pub internal: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub d_squared_failures: Vec<usize>,
    pub nonminimal: Vec<usize>,
    /// Nonzero homology found in the checked window.
    pub homology: Vec<HomologyEntry>,
    pub homological_range: (usize, usize),
    pub internal_bound: usize,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.d_squared_failures.is_empty() && self.nonminimal.is_empty() && self.homology.is_empty()
    }
}

/// `d^2 = 0`, minimality, and `H_i = 0` for `0 < i < max_homological` in
/// internal degrees up to `max_internal`.
pub fn verify_complex<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    max_homological: usize,
    max_internal: usize,
) -> Result<ComplexReport> {
    c.validate()?;
    let top = max_homological.min(c.length());
    let d_squared_failures = d_squared_failures(alg, c)?;
    let mut homology = Vec::new();
    // homology is only meaningful once d^2 = 0
    for i in (1..top).filter(|_| d_squared_failures.is_empty()) {
        for d in 0..=max_internal {
            let dim = homology_dim(alg, c, i, d)?;
            if dim != 0 {
                homology.push(HomologyEntry {
                    homological: i,
                    internal: d,
                    dim,
                });
            }
        }
    }
    Ok(ComplexReport {
        d_squared_failures,
        nonminimal: nonminimal_degrees(alg, c),
        homology,
        homological_range: (1, top.saturating_sub(1)),
        internal_bound: max_internal,
    })
}

/// `H_i(F)_{i + d0 + j}` for `i = 1..=max_i` and each `j` in `offsets`,
/// where `d0` is the initial degree of `F_0`.
pub fn homology_window<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    max_i: usize,
    offsets: &[usize],
) -> Result<Vec<HomologyEntry>> {
    let d0 = c.initial_degree().unwrap_or(0);
    let mut out = Vec::new();
    for i in 1..=max_i {
        for &j in offsets {
            let d = i + d0 + j;
            out.push(HomologyEntry {
                homological: i,
                internal: d,
                dim: homology_dim(alg, c, i, d)?,
            });
        }
    }
    Ok(out)
}

/// Subcomplex on the generators of internal degree `d0 + l` in homological
/// degree `l`.
pub fn linear_strand<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
) -> Result<ChainComplex<F::Elem>> {
    if let Some(&l) = nonminimal_degrees(alg, c).first() {
        return Err(Error::NotMinimal { degree: l });
    }
    let d0 = c.initial_degree().unwrap_or(0);
    let keep: Vec<Vec<usize>> = c
        .bases
        .iter()
        .enumerate()
        .map(|(l, b)| {
            (0..b.len())
                .filter(|&g| b[g].internal_degree == d0 + l)
                .collect()
        })
        .collect();
    let bases = keep
        .iter()
        .enumerate()
        .map(|(l, k)| k.iter().map(|&g| c.bases[l][g].clone()).collect())
        .collect();
    let differentials = (1..c.bases.len())
        .map(|l| restrict(c.differential(l).unwrap(), &keep[l - 1], &keep[l]))
        .collect();
    Ok(ChainComplex {
        bases,
        differentials,
    })
}

fn restrict<E: Clone + PartialEq>(m: &AMatrix<E>, rows: &[usize], cols: &[usize]) -> AMatrix<E> {
    let mut out = AMatrix::zero(rows.len(), cols.len());
    for (nc, &c) in cols.iter().enumerate() {
        for (r, a) in &m.columns[c] {
            if let Ok(nr) = rows.binary_search(r) {
                out.columns[nc].push((nr, a.clone()));
            }
        }
    }
    out
}

/// Drops `F_0` and shifts down: a resolution of `A/J` becomes one of `J`.
pub fn ideal_part<E: Clone + PartialEq>(c: &ChainComplex<E>) -> ChainComplex<E> {
    ChainComplex {
        bases: c.bases.iter().skip(1).cloned().collect(),
        differentials: c.differentials.iter().skip(1).cloned().collect(),
    }
}

fn element_json<F: Field>(f: &F, a: &AlgebraElement<F::Elem>) -> Value {
    json!({
        "degree": a.degree,
        "coords": a.coords.iter().map(|c| f.to_json(c)).collect::<Vec<_>>(),
    })
}

/// Serialises a complex together with the algebra basis it is written over.
pub fn to_json<F: Field>(alg: &GradedAlgebra<F>, c: &ChainComplex<F::Elem>) -> Value {
    let f = alg.field();
    let max_entry = c
        .differentials
        .iter()
        .flat_map(|d| d.entries().map(|(_, _, a)| a.degree))
        .max()
        .unwrap_or(0);
    let algebra_basis: Vec<Vec<String>> = (0..=max_entry.min(alg.cutoff()))
        .map(|d| {
            alg.basis(d)
                .iter()
                .map(|m| m.render(alg.var_names()))
                .collect()
        })
        .collect();
    let modules: Vec<Value> = c
        .bases
        .iter()
        .map(|b| {
            Value::Array(
                b.iter()
                    .map(|g| {
                        json!({
                            "generator": g.generator,
                            "dual_degree": g.dual_degree,
                            "dual": g.dual.iter().map(|(i, x)| json!([i, f.to_json(x)])).collect::<Vec<_>>(),
                            "internal_degree": g.internal_degree,
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    let differentials: Vec<Value> = c
        .differentials
        .iter()
        .enumerate()
        .map(|(i, d)| {
            json!({
                "degree": i + 1,
                "rows": d.rows,
                "cols": d.cols,
                "entries": d.entries().map(|(r, col, a)| json!({
                    "row": r,
                    "col": col,
                    "coefficient": element_json(f, a),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "field": f.kind().to_string(),
        "variables": alg.var_names(),
        "algebra_basis": algebra_basis,
        "modules": modules,
        "differentials": differentials,
    })
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedComplex(msg.into())
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| malformed(format!("missing or invalid `{key}`")))
}

/// Reads a complex written by [`to_json`], checking it against `alg`.
pub fn from_json<F: Field>(alg: &GradedAlgebra<F>, v: &Value) -> Result<ChainComplex<F::Elem>> {
    let f = alg.field();
    let field = v.get("field").and_then(Value::as_str).unwrap_or_default();
    if field != f.kind().to_string() {
        return Err(malformed(format!(
            "complex is over `{field}`, expected `{}`",
            f.kind()
        )));
    }
    let vars: Vec<String> = v
        .get("variables")
        .and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .filter_map(|x| x.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default();
    if vars != alg.var_names() {
        return Err(malformed("variable names do not match the presentation"));
    }
    if let Some(basis) = v.get("algebra_basis").and_then(Value::as_array) {
        for (d, listed) in basis.iter().enumerate() {
            let ours: Vec<String> = alg
                .basis(d)
                .iter()
                .map(|m| m.render(alg.var_names()))
                .collect();
            let theirs: Vec<String> = listed
                .as_array()
                .map(|a| {
                    a.iter()
                        .filter_map(|x| x.as_str().map(String::from))
                        .collect()
                })
                .unwrap_or_default();
            if ours != theirs {
                return Err(malformed(format!("algebra basis differs in degree {d}")));
            }
        }
    }
    let modules = v
        .get("modules")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `modules`"))?;
    let mut bases = Vec::with_capacity(modules.len());
    for m in modules {
        let gens = m
            .as_array()
            .ok_or_else(|| malformed("module is not an array"))?;
        let mut basis = Vec::with_capacity(gens.len());
        for g in gens {
            let generator = match g.get("generator") {
                Some(Value::Null) | None => None,
                Some(x) => Some(x.as_u64().ok_or_else(|| malformed("bad `generator`"))? as usize),
            };
            let dual = g
                .get("dual")
                .and_then(Value::as_array)
                .ok_or_else(|| malformed("missing `dual`"))?
                .iter()
                .map(|pair| {
                    let i = pair.get(0).and_then(Value::as_u64);
                    let x = pair.get(1).and_then(|x| f.from_json(x));
                    match (i, x) {
                        (Some(i), Some(x)) => Ok((i as usize, x)),
                        _ => Err(malformed("bad dual coordinate")),
                    }
                })
                .collect::<Result<_>>()?;
            basis.push(BasisLabel {
                generator,
                dual_degree: get_usize(g, "dual_degree")?,
                dual,
                internal_degree: get_usize(g, "internal_degree")?,
            });
        }
        bases.push(basis);
    }
    let diffs = v
        .get("differentials")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `differentials`"))?;
    let mut differentials = Vec::with_capacity(diffs.len());
    for (i, d) in diffs.iter().enumerate() {
        if get_usize(d, "degree")? != i + 1 {
            return Err(malformed("differentials must be listed in order"));
        }
        let mut m = AMatrix::zero(get_usize(d, "rows")?, get_usize(d, "cols")?);
        for e in d
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing `entries`"))?
        {
            let (r, c) = (get_usize(e, "row")?, get_usize(e, "col")?);
            let coef = e
                .get("coefficient")
                .ok_or_else(|| malformed("missing `coefficient`"))?;
            let degree = get_usize(coef, "degree")?;
            let coords: Vec<F::Elem> = coef
                .get("coords")
                .and_then(Value::as_array)
                .ok_or_else(|| malformed("missing `coords`"))?
                .iter()
                .map(|x| f.from_json(x).ok_or_else(|| malformed("bad coefficient")))
                .collect::<Result<_>>()?;
            if degree > alg.cutoff() || coords.len() != alg.dim(degree) {
                return Err(malformed(format!("entry ({r}, {c}) has the wrong length")));
            }
            if r >= m.rows || c >= m.cols {
                return Err(malformed(format!("entry ({r}, {c}) is out of range")));
            }
            m.add_entry(f, r, c, &AlgebraElement { degree, coords });
        }
        differentials.push(m);
    }
    let c = ChainComplex {
        bases,
        differentials,
    };
    c.validate()?;
    Ok(c)
}
