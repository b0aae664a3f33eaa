//! Graded Betti numbers of `A/J` from the ranks of the quotient duals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::complex::ChainComplex;
use crate::dual::DualAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::ideal::MonomialIdeal;

/// `β_{l,d}` keyed by homological degree `l` and internal degree `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), usize>,
    max_homological: usize,
}

impl BettiTable {
    pub fn new(max_homological: usize) -> Self {
        Self {
            entries: BTreeMap::new(),
            max_homological,
        }
    }

    pub fn add(&mut self, l: usize, d: usize, count: usize) {
        if count > 0 {
            *self.entries.entry((l, d)).or_default() += count;
        }
    }

    /// Ranks of the generators of a complex.
    pub fn from_complex<E: Clone + PartialEq>(c: &ChainComplex<E>) -> Self {
        let mut t = Self::new(c.length());
        for (&(l, d), &n) in &c.graded_ranks() {
            t.add(l, d, n);
        }
        t
    }

    pub fn max_homological(&self) -> usize {
        self.max_homological
    }

    pub fn get(&self, l: usize, d: usize) -> usize {
        self.entries.get(&(l, d)).copied().unwrap_or(0)
    }

    /// `β_{l, l+q}`.
    pub fn get_shifted(&self, l: usize, q: usize) -> usize {
        self.get(l, l + q)
    }

    pub fn total(&self, l: usize) -> usize {
        self.entries
            .range((l, 0)..=(l, usize::MAX))
            .map(|(_, n)| n)
            .sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(l, d), &n)| (l, d, n))
    }

    /// Largest `q` with `β_{l,l+q} != 0` inside the computed range.
    pub fn regularity(&self) -> Option<usize> {
        self.entries
            .keys()
            .filter_map(|&(l, d)| d.checked_sub(l))
            .max()
    }

    /// All nonzero entries have `d - l` equal to the same `q`.
    pub fn is_linear(&self) -> bool {
        let mut qs = self
            .entries
            .keys()
            .filter(|(l, _)| *l > 0)
            .map(|&(l, d)| d - l);
        match qs.next() {
            None => true,
            Some(q) => qs.all(|x| x == q),
        }
    }

    /// The table of `J` itself: `β_i(J) = β_{i+1}(A/J)`.
    pub fn ideal_level(&self) -> Self {
        let mut t = Self::new(self.max_homological.saturating_sub(1));
        for (&(l, d), &n) in &self.entries {
            if l > 0 {
                t.add(l - 1, d, n);
            }
        }
        t
    }

    /// Rows `q`, columns `l`, zeros shown as `.`.
    pub fn render(&self) -> String {
        let cols = self.max_homological + 1;
        let rows: Vec<usize> = {
            let mut r: Vec<usize> = self.entries.keys().map(|&(l, d)| d - l).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push((0..cols).map(|l| l.to_string()).collect());
        cells.push((0..cols).map(|l| self.total(l).to_string()).collect());
        for &q in &rows {
            cells.push(
                (0..cols)
                    .map(|l| match self.get_shifted(l, q) {
                        0 => ".".to_string(),
                        n => n.to_string(),
                    })
                    .collect(),
            );
        }
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut labels = vec![String::new(), "total:".to_string()];
        labels.extend(rows.iter().map(|q| format!("{q}:")));
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (label, row) in labels.iter().zip(&cells) {
            let _ = write!(out, "{label:>lw$}");
            for c in row {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_homological": self.max_homological,
            "entries": self
                .entries()
                .map(|(l, d, n)| json!({"homological": l, "internal": d, "count": n}))
                .collect::<Vec<_>>(),
            "totals": (0..=self.max_homological).map(|l| self.total(l)).collect::<Vec<_>>(),
            "regularity": self.regularity(),
            "linear": self.is_linear(),
        })
    }
}

/// `β_{l, deg m_k + l - 1}(A/J) += dim (B^k)^*_{l-1}` for `l = 1..=max_homological`,
/// with `B^k` the quotient dual on the colon variables of `m_k`.
pub fn betti_table<F: Field>(
    dual: &DualAlgebra<F>,
    ideal: &MonomialIdeal<'_, F>,
    max_homological: usize,
    colon_degree: usize,
) -> Result<BettiTable> {
    let vars = ideal.check_linear_quotients(colon_degree)?.into_result()?;
    let mut t = BettiTable::new(max_homological);
    t.add(0, 0, 1);
    let mut cache = BTreeMap::new();
    for (k, e) in vars.iter().enumerate() {
        let q = cache.entry(e.bits()).or_insert_with(|| dual.quotient(*e));
        for l in 1..=max_homological {
            t.add(l, ideal.degree(k) + l - 1, q.component(l - 1)?.dim());
        }
    }
    Ok(t)
}
