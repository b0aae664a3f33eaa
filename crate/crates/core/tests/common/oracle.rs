//! Graded Betti numbers of `A/J` by brute force: build a minimal free
//! resolution degree by degree, taking kernels of the degreewise matrices and
//! minimal generators modulo `A_1 · K_{d-1}`. Uses only the multiplication of
//! `A` and its own mod-p elimination.

use std::collections::BTreeMap;

use koszulcone_core::{AlgebraElement, GradedAlgebra, MonomialIdeal, PrimeField};

const P: u64 = 101;

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Row echelon basis that remembers, for each row, which input combination produced it.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Echelon {
    /// Reduces `(v, tag)`; inserts and returns `None` if `v` is independent,
    /// otherwise returns the reduced tag.
    fn push(&mut self, mut v: Vec<u64>, mut tag: Vec<u64>) -> Option<Vec<u64>> {
        for (p, row, rtag) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + P - c * y % P) % P;
                }
                for (x, y) in tag.iter_mut().zip(rtag) {
                    *x = (*x + P - c * y % P) % P;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Some(tag),
            Some(p) => {
                let s = inv(v[p]);
                v.iter_mut().for_each(|x| *x = *x * s % P);
                tag.iter_mut().for_each(|x| *x = *x * s % P);
                self.rows.push((p, v, tag));
                None
            }
        }
    }

    fn insert(&mut self, v: Vec<u64>) -> bool {
        self.push(v, Vec::new()).is_none()
    }
}

/// Left kernel of the matrix whose rows are `images`.
fn left_kernel(images: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = images.len();
    let mut ech = Echelon::default();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut tag = vec![0; n];
        tag[i] = 1;
        if let Some(k) = ech.push(img.clone(), tag) {
            out.push(k);
        }
    }
    out
}

struct Free {
    degs: Vec<usize>,
}

impl Free {
    fn layout(&self, alg: &GradedAlgebra<PrimeField>, d: usize) -> (Vec<Option<usize>>, usize) {
        let mut total = 0;
        let offs = self
            .degs
            .iter()
            .map(|&g| {
                d.checked_sub(g).map(|e| {
                    let o = total;
                    total += alg.dim(e);
                    o
                })
            })
            .collect();
        (offs, total)
    }

    /// `b · v` for `b` the `b`-th basis monomial of `A_e` and `v ∈ F_d`.
    fn times_basis(
        &self,
        alg: &GradedAlgebra<PrimeField>,
        v: &[u64],
        d: usize,
        e: usize,
        b: usize,
    ) -> Vec<u64> {
        let (src, _) = self.layout(alg, d);
        let (dst, total) = self.layout(alg, d + e);
        let mut out = vec![0; total];
        for (g, &deg) in self.degs.iter().enumerate() {
            let Some(so) = src[g] else { continue };
            let k = d - deg;
            let p = AlgebraElement {
                degree: k,
                coords: v[so..so + alg.dim(k)].to_vec(),
            };
            let q = alg.mul_basis(e, b, &p).unwrap();
            let o = dst[g].unwrap();
            for (i, c) in q.coords.iter().enumerate() {
                out[o + i] = (out[o + i] + c) % P;
            }
        }
        out
    }

    fn times_var(
        &self,
        alg: &GradedAlgebra<PrimeField>,
        v: &[u64],
        d: usize,
        x: usize,
    ) -> Vec<u64> {
        let b = alg
            .basis_index(&koszulcone_core::Monomial::var(alg.nvars(), x))
            .unwrap();
        self.times_basis(alg, v, d, 1, b)
    }
}

/// Minimal generators (degree, element) of the submodule with degreewise bases `k`.
fn minimal_generators(
    alg: &GradedAlgebra<PrimeField>,
    module: &Free,
    k: &[Vec<Vec<u64>>],
) -> Vec<(usize, Vec<u64>)> {
    let mut gens = Vec::new();
    for d in 0..k.len() {
        let mut ech = Echelon::default();
        if d > 0 {
            for v in &k[d - 1] {
                for x in 0..alg.nvars() {
                    ech.insert(module.times_var(alg, v, d - 1, x));
                }
            }
        }
        for v in &k[d] {
            if ech.insert(v.clone()) {
                gens.push((d, v.clone()));
            }
        }
    }
    gens
}

/// `β_{l,d}(A/J)` for `l <= max_homological`, `d <= max_internal`.
pub fn brute_force_betti(
    ideal: &MonomialIdeal<'_, PrimeField>,
    max_homological: usize,
    max_internal: usize,
) -> BTreeMap<(usize, usize), usize> {
    let alg = ideal.algebra();
    assert!(max_internal <= alg.cutoff());
    let mut betti = BTreeMap::new();
    betti.insert((0, 0), 1);

    // J_d inside F_0 = A
    let mut module = Free { degs: vec![0] };
    let mut sub: Vec<Vec<Vec<u64>>> = (0..=max_internal)
        .map(|d| {
            let mut ech = Echelon::default();
            let mut basis = Vec::new();
            for i in 0..ideal.len() {
                let m = ideal.element(i);
                let Some(e) = d.checked_sub(m.degree) else {
                    continue;
                };
                for b in 0..alg.dim(e) {
                    let v = alg.mul_basis(e, b, m).unwrap().coords;
                    if ech.insert(v.clone()) {
                        basis.push(v);
                    }
                }
            }
            basis
        })
        .collect();

    for l in 1..=max_homological {
        let gens = minimal_generators(alg, &module, &sub);
        for (d, _) in &gens {
            *betti.entry((l, *d)).or_insert(0) += 1;
        }
        if l == max_homological {
            break;
        }
        let next = Free {
            degs: gens.iter().map(|(d, _)| *d).collect(),
        };
        // kernel of next -> module in each degree
        sub = (0..=max_internal)
            .map(|d| {
                let mut images = Vec::new();
                for (deg, img) in &gens {
                    let Some(e) = d.checked_sub(*deg) else {
                        continue;
                    };
                    for b in 0..alg.dim(e) {
                        images.push(module.times_basis(alg, img, *deg, e, b));
                    }
                }
                let total = next.layout(alg, d).1;
                if images.is_empty() {
                    return Vec::new();
                }
                let width = images[0].len();
                if width == 0 {
                    // everything maps to zero
                    return (0..total)
                        .map(|i| {
                            let mut v = vec![0; total];
                            v[i] = 1;
                            v
                        })
                        .collect();
                }
                left_kernel(&images)
            })
            .collect();
        module = next;
    }
    betti.retain(|_, n| *n > 0);
    betti
}
