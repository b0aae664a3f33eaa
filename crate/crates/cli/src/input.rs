//! The line-oriented ring file format.
//!
//! ```text
//! # comment
//! field p=101          # or: field q
//! vars x1 x2 x3
//! rel x1*x3            # one quadratic relation per line
//! rel x3^2
//! prefer x1*x2, x2*x3  # optional
//! ideal x1*x2, x2*x3   # ordered generators
//! ```

use std::fmt;

use koszulcone_core::{BigInt, Field, FieldKind, Monomial, RingPresentation};
use num_rational::Rational64;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn kind(self) -> FieldKind {
        match self {
            Self::Prime(p) => FieldKind::Prime(p),
            Self::Rationals => FieldKind::Rational,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::Prime(101)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Prime(p) => write!(f, "p={p}"),
            Self::Rationals => write!(f, "q"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    /// `p=101`, `101`, `q` or `Q`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Self::Rationals);
        }
        let digits = s.strip_prefix("p=").unwrap_or(s);
        digits
            .parse::<u64>()
            .map(Self::Prime)
            .map_err(|_| format!("expected `p=<prime>` or `q`, found `{s}`"))
    }
}

/// A term `coefficient * monomial`, the monomial as an exponent vector.
pub type Term = (Rational64, Vec<u32>);

/// Contents of a ring file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<Vec<Term>>,
    pub prefer: Vec<Vec<u32>>,
    pub ideal: Vec<Vec<u32>>,
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    /// Byte offset of `text` within the original line.
    base: usize,
}

impl Cursor<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.base + offset + 1,
            message: message.into(),
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn trimmed_piece(start: usize, piece: &str) -> (usize, &str) {
    let lead = piece.len() - piece.trim_start().len();
    (start + lead, piece.trim())
}

/// Splits `s` on `sep`, yielding trimmed pieces with their byte offsets.
fn split_with_offsets(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push(trimmed_piece(start, &s[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push(trimmed_piece(start, &s[start..]));
    out.into_iter()
        .map(|(o, p)| {
            let lead = p.len() - p.trim_start().len();
            (o + lead, p.trim())
        })
        .collect()
}

fn parse_monomial(
    cur: &Cursor<'_>,
    offset: usize,
    s: &str,
    vars: &[String],
) -> Result<Vec<u32>, ParseError> {
    if vars.is_empty() {
        return Err(cur.err(offset, "`vars` must come before monomials"));
    }
    let mut exps = vec![0u32; vars.len()];
    for (o, factor) in split_with_offsets(s, '*') {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e = e
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| cur.err(offset + o, format!("bad exponent in `{factor}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        if name.is_empty() {
            return Err(cur.err(offset + o, "empty factor"));
        }
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| cur.err(offset + o, format!("unknown variable `{name}`")))?;
        exps[i] += exp;
    }
    if exps.iter().all(|&e| e == 0) {
        return Err(cur.err(offset, "monomial of degree zero"));
    }
    Ok(exps)
}

fn parse_coefficient(cur: &Cursor<'_>, offset: usize, s: &str) -> Result<Rational64, ParseError> {
    let bad = || cur.err(offset, format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(cur.err(offset, "zero denominator"));
            }
            Ok(Rational64::new(n, d))
        }
        None => s
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|_| bad()),
    }
}

/// `[coeff *] monomial`, where the coefficient is the first factor if it
/// starts with a digit.
fn parse_term(
    cur: &Cursor<'_>,
    offset: usize,
    s: &str,
    sign: i64,
    vars: &[String],
) -> Result<Term, ParseError> {
    let starts_numeric = s.chars().next().is_some_and(|c| c.is_ascii_digit());
    let (coeff, rest, rest_off) = if starts_numeric {
        match s.find('*') {
            Some(i) => (
                parse_coefficient(cur, offset, s[..i].trim())?,
                s[i + 1..].trim_start(),
                offset + i + 1 + (s[i + 1..].len() - s[i + 1..].trim_start().len()),
            ),
            None => return Err(cur.err(offset, "a relation term needs a monomial")),
        }
    } else {
        (Rational64::from_integer(1), s, offset)
    };
    let mono = parse_monomial(cur, rest_off, rest, vars)?;
    Ok((coeff * Rational64::from_integer(sign), mono))
}

fn parse_polynomial(cur: &Cursor<'_>, vars: &[String]) -> Result<Vec<Term>, ParseError> {
    let s = cur.text;
    // split at + and -, keeping the sign; only the first term may be empty
    // (a leading sign)
    let mut pieces: Vec<(usize, i64, &str)> = Vec::new();
    let mut sign = 1;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == '+' || c == '-' {
            let piece = &s[start..i];
            if !piece.trim().is_empty() {
                pieces.push((start, sign, piece));
            } else if !pieces.is_empty() || start != 0 {
                return Err(cur.err(i, "missing term"));
            }
            sign = if c == '-' { -1 } else { 1 };
            start = i + 1;
        }
    }
    let last = &s[start..];
    if last.trim().is_empty() {
        return Err(cur.err(s.len(), "missing term"));
    }
    pieces.push((start, sign, last));
    pieces
        .into_iter()
        .map(|(o, sign, p)| {
            let lead = p.len() - p.trim_start().len();
            let t = parse_term(cur, o + lead, p.trim(), sign, vars)?;
            if t.1.iter().sum::<u32>() != 2 {
                return Err(cur.err(o + lead, "relations must be quadratic"));
            }
            Ok(t)
        })
        .collect()
}

fn parse_monomial_list(cur: &Cursor<'_>, vars: &[String]) -> Result<Vec<Vec<u32>>, ParseError> {
    split_with_offsets(cur.text, ',')
        .into_iter()
        .map(|(o, m)| {
            if m.is_empty() {
                Err(cur.err(o, "empty monomial"))
            } else {
                parse_monomial(cur, o, m, vars)
            }
        })
        .collect()
}

pub fn parse(text: &str) -> Result<RingFile, ParseError> {
    let mut out = RingFile::default();
    let mut seen_field = false;
    let mut seen_ideal = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest_lead = trimmed.len() - rest.trim_start().len();
        let cur = Cursor {
            line,
            text: rest.trim_end().trim_start(),
            base: lead + rest_lead,
        };
        let at_keyword = |m: &str| ParseError {
            line,
            column: lead + 1,
            message: m.to_string(),
        };
        match keyword {
            "field" => {
                if seen_field {
                    return Err(at_keyword("duplicate `field` line"));
                }
                seen_field = true;
                out.field = cur.text.parse().map_err(|m: String| cur.err(0, m))?;
            }
            "vars" => {
                if !out.vars.is_empty() {
                    return Err(at_keyword("duplicate `vars` line"));
                }
                let mut offset = 0;
                for name in cur.text.split_whitespace() {
                    let o = cur.text[offset..].find(name).unwrap() + offset;
                    offset = o + name.len();
                    if !is_name(name) {
                        return Err(cur.err(o, format!("invalid variable name `{name}`")));
                    }
                    if out.vars.iter().any(|v| v == name) {
                        return Err(cur.err(o, format!("duplicate variable `{name}`")));
                    }
                    out.vars.push(name.to_string());
                }
                if out.vars.is_empty() {
                    return Err(cur.err(0, "no variables"));
                }
                if out.vars.len() > 64 {
                    return Err(cur.err(0, "at most 64 variables"));
                }
            }
            "rel" => out.relations.push(parse_polynomial(&cur, &out.vars)?),
            "prefer" => {
                let ms = parse_monomial_list(&cur, &out.vars)?;
                if ms.iter().any(|m| m.iter().sum::<u32>() != 2) {
                    return Err(cur.err(0, "preferred monomials must be quadratic"));
                }
                out.prefer.extend(ms);
            }
            "ideal" => {
                if seen_ideal {
                    return Err(at_keyword("duplicate `ideal` line"));
                }
                seen_ideal = true;
                out.ideal = parse_monomial_list(&cur, &out.vars)?;
            }
            other => return Err(at_keyword(&format!("unknown keyword `{other}`"))),
        }
    }
    if out.vars.is_empty() {
        return Err(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `vars` line".into(),
        });
    }
    Ok(out)
}

pub fn render_monomial(m: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| match e {
            1 => vars[i].clone(),
            _ => format!("{}^{e}", vars[i]),
        })
        .collect();
    parts.join("*")
}

fn render_polynomial(terms: &[Term], vars: &[String]) -> String {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let mut out = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        let negative = *c < zero;
        let abs = if negative { -*c } else { *c };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if abs != one {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&render_monomial(m, vars));
    }
    out
}

/// Canonical text; `parse(&print(f)) == f`.
pub fn print(f: &RingFile) -> String {
    let mut out = format!("field {}\nvars {}\n", f.field, f.vars.join(" "));
    for r in &f.relations {
        out.push_str(&format!("rel {}\n", render_polynomial(r, &f.vars)));
    }
    let list = |ms: &[Vec<u32>]| {
        ms.iter()
            .map(|m| render_monomial(m, &f.vars))
            .collect::<Vec<_>>()
            .join(", ")
    };
    if !f.prefer.is_empty() {
        out.push_str(&format!("prefer {}\n", list(&f.prefer)));
    }
    if !f.ideal.is_empty() {
        out.push_str(&format!("ideal {}\n", list(&f.ideal)));
    }
    out
}

impl RingFile {
    /// The presentation over `field`; fails if a coefficient's denominator
    /// vanishes there.
    pub fn presentation<F: Field>(&self, field: F) -> Result<RingPresentation<F>, String> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, r) in self.relations.iter().enumerate() {
            let mut poly = Vec::with_capacity(r.len());
            for (c, m) in r {
                let e = field
                    .from_ratio(&BigInt::from(*c.numer()), &BigInt::from(*c.denom()))
                    .ok_or_else(|| {
                        format!(
                            "relation {}: coefficient {c} is undefined in the field",
                            i + 1
                        )
                    })?;
                poly.push((Monomial::new(m.clone()), e));
            }
            relations.push(poly);
        }
        Ok(RingPresentation {
            field,
            var_names: self.vars.clone(),
            relations,
            preferred: self
                .prefer
                .iter()
                .map(|m| Monomial::new(m.clone()))
                .collect(),
        })
    }

    pub fn ideal_monomials(&self) -> Vec<Monomial> {
        self.ideal
            .iter()
            .map(|m| Monomial::new(m.clone()))
            .collect()
    }

    pub fn max_generator_degree(&self) -> usize {
        self.ideal
            .iter()
            .map(|m| m.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }
}
