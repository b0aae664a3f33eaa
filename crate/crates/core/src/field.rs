//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! Elements are plain values; all arithmetic goes through the field object so
//! that the prime modulus can be chosen at runtime.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Field descriptor as it appears in input files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(u64),
    Rational,
}

impl FieldKind {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Prime(p) => p,
            FieldKind::Rational => 0,
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "p={p}"),
            FieldKind::Rational => write!(f, "q"),
        }
    }
}

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Exact text form: an integer in `0..p` or `num/den`.
    fn render(&self, a: &Self::Elem) -> String;
    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// In-place reduced row echelon form of a dense row-major `rows x cols`
    /// buffer. Returns the pivot columns in increasing order.
    fn rref_in_place(&self, data: &mut Vec<Self::Elem>, rows: usize, cols: usize) -> Vec<usize> {
        gauss_jordan(self, data, rows, cols)
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += c * b`
    fn add_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(c, b));
    }
}

/// Plain Gauss-Jordan elimination with leftmost pivots.
pub(crate) fn gauss_jordan<F: Field>(
    field: &F,
    data: &mut [F::Elem],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                data.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(&data[r * cols + c]);
        for k in c..cols {
            let v = &data[r * cols + k];
            if !field.is_zero(v) {
                data[r * cols + k] = field.mul(v, &inv);
            }
        }
        let pivot_row: Vec<(usize, F::Elem)> = (c..cols)
            .filter(|&k| !field.is_zero(&data[r * cols + k]))
            .map(|k| (k, data[r * cols + k].clone()))
            .collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (k, v) in &pivot_row {
                let cur = &data[i * cols + k];
                data[i * cols + k] = field.sub(cur, &field.mul(&factor, v));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The prime field `Z/pZ` for an odd or even prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("reduced value fits")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: 101 }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.reduce_big(den);
        if d == 0 {
            return None;
        }
        Some(self.mul(&self.reduce_big(num), &self.inv(&d)))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }
    fn from_json(&self, v: &Value) -> Option<u64> {
        match v {
            Value::Number(n) => n.as_i64().map(|x| self.from_i64(x)),
            Value::String(s) => parse_ratio(s).and_then(|(n, d)| self.from_ratio(&n, &d)),
            _ => None,
        }
    }
}

/// The rational numbers, with fraction-free elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn to_json(&self, a: &BigRational) -> Value {
        Value::String(self.render(a))
    }
    fn from_json(&self, v: &Value) -> Option<BigRational> {
        match v {
            Value::Number(n) => n.as_i64().map(|x| self.from_i64(x)),
            Value::String(s) => parse_ratio(s).and_then(|(n, d)| self.from_ratio(&n, &d)),
            _ => None,
        }
    }

    fn rref_in_place(&self, data: &mut Vec<BigRational>, rows: usize, cols: usize) -> Vec<usize> {
        fraction_free_rref(data, rows, cols)
    }
}

/// Parses `"n"` or `"n/d"` with optional sign.
pub fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((s.parse().ok()?, BigInt::one())),
    }
}

/// Elimination over `Z`: each row is scaled to a primitive integer vector,
/// rows are combined by cross-multiplication and re-normalised by content, and
/// only the final pass divides by the pivots.
fn fraction_free_rref(data: &mut [BigRational], rows: usize, cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut v: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            make_primitive(&mut v);
            v
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ints[i][c].is_zero()) else {
            continue;
        };
        ints.swap(p, r);
        let (head, tail) = ints.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for k in 0..cols {
                if pivot_row[k].is_zero() && row[k].is_zero() {
                    continue;
                }
                row[k] = &a * &row[k] - &b * &pivot_row[k];
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }

    for (i, row) in ints.iter().enumerate() {
        let lead = pivots.get(i).map(|&c| row[c].clone());
        for k in 0..cols {
            data[i * cols + k] = match &lead {
                Some(l) => BigRational::new(row[k].clone(), l.clone()),
                None => BigRational::zero(),
            };
        }
    }
    pivots
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}
