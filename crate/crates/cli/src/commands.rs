use std::fmt::Write as _;
use std::path::PathBuf;

use koszulcone_core::complex::{from_json, to_json};
use koszulcone_core::{
    betti_table, check_regular_ordering, check_star_condition, check_strongly_koszul,
    closed_form_resolution, iterated_mapping_cone, koszulness_certificate, priddy_complex,
    verify_complex, ActionSlot, BettiTable, ChainComplex, DualAlgebra, Error, Field, GradedAlgebra,
    KoszulContext, MonomialIdeal, PrimeField, Rationals, RegularOrderingOptions,
    StronglyKoszulFailure, VarSet,
};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::input::{FieldSpec, ParseError, RingFile};
use crate::selftest;

/// Colon degrees checked before building a resolution.
pub const COLON_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Cone,
    #[default]
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Quotients,
    Regular,
    StronglyKoszul,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Dual,
    Priddy,
    Check(CheckKind),
    Resolve(Method),
    Betti,
    Verify {
        complex: Option<PathBuf>,
        method: Method,
    },
    Selftest {
        cases: usize,
    },
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub ring: Option<RingFile>,
    pub command: Command,
    pub hmax: usize,
    pub dmax: usize,
    pub field: Option<FieldSpec>,
    pub out: Format,
    pub seed: u64,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Math(_) => 1,
            Self::Parse(_) | Self::Input(_) => 2,
        }
    }
}

/// Bad input or a resource bound is an input error; everything else is a
/// mathematical failure.
fn classify(e: Error) -> CliError {
    match e {
        Error::InvalidField(_)
        | Error::InvalidPresentation(_)
        | Error::InvalidIdeal(_)
        | Error::DegreeOverflow { .. }
        | Error::AmbientTooLarge { .. }
        | Error::NotMultigraded(_)
        | Error::MismatchedAmbient(..) => CliError::Input(e.to_string()),
        _ => CliError::Math(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialise");
                s.push('\n');
                s
            }
        }
    }
}

pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    if job.hmax == 0 || job.dmax == 0 {
        return Err(CliError::Input("--hmax and --dmax must be positive".into()));
    }
    if let Command::Selftest { cases } = job.command {
        return Ok(selftest::run(job.seed, cases, job.hmax.min(4)));
    }
    let ring = job
        .ring
        .as_ref()
        .ok_or_else(|| CliError::Input("this command needs a ring file".into()))?;
    match job.field.unwrap_or(ring.field) {
        FieldSpec::Prime(p) => run_over(PrimeField::new(p).map_err(classify)?, ring, job),
        FieldSpec::Rationals => run_over(Rationals, ring, job),
    }
}

fn cutoff(ring: &RingFile, job: &JobSpec) -> usize {
    job.dmax
        .max(ring.max_generator_degree() + COLON_DEGREE + 1)
        .max(job.hmax + 1)
        .max(3)
}

fn run_over<F: Field>(field: F, ring: &RingFile, job: &JobSpec) -> Result<Report, CliError> {
    let pres = ring.presentation(field).map_err(CliError::Input)?;
    let alg = GradedAlgebra::build(pres, cutoff(ring, job)).map_err(classify)?;
    let names = alg.var_names().to_vec();
    let ideal = || -> Result<MonomialIdeal<'_, F>, CliError> {
        if ring.ideal.is_empty() {
            return Err(CliError::Input("the ring file has no `ideal` line".into()));
        }
        MonomialIdeal::new(&alg, ring.ideal_monomials()).map_err(classify)
    };
    let dual = |degree: usize| DualAlgebra::new(&alg, degree).map_err(classify);
    match &job.command {
        Command::Dual => dual_report(&alg, &dual(job.hmax)?, job.hmax),
        Command::Priddy => {
            let d = dual(job.hmax)?;
            priddy_report(&alg, &d, job.hmax, job.dmax)
        }
        Command::Check(CheckKind::Quotients) => quotients_report(&ideal()?, job.dmax, &names),
        Command::Check(CheckKind::Regular) => {
            let d = dual(job.hmax.max(3))?;
            regular_report(&ideal()?, &d, &names)
        }
        Command::Check(CheckKind::StronglyKoszul) => strongly_koszul_report(&alg, job.dmax, &names),
        Command::Check(CheckKind::Star) => star_report(&ideal()?, &names),
        Command::Resolve(method) => {
            let d = dual(job.hmax.max(3))?;
            let ctx = KoszulContext::new(&alg, &d).map_err(classify)?;
            let j = ideal()?;
            let c = resolve(&ctx, &j, *method, job.hmax)?;
            Ok(resolve_report(&alg, &c, *method))
        }
        Command::Betti => {
            let d = dual(job.hmax.max(3))?;
            let t = betti_table(&d, &ideal()?, job.hmax, COLON_DEGREE).map_err(classify)?;
            Ok(betti_report(&t))
        }
        Command::Verify { complex, method } => {
            let c = match complex {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    let v: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    from_json(&alg, v.get("complex").unwrap_or(&v))
                        .map_err(|e| CliError::Input(e.to_string()))?
                }
                None => {
                    let d = dual(job.hmax.max(3))?;
                    let ctx = KoszulContext::new(&alg, &d).map_err(classify)?;
                    resolve(&ctx, &ideal()?, *method, job.hmax)?
                }
            };
            verify_report(&alg, &c, job.hmax, job.dmax)
        }
        Command::Selftest { .. } => unreachable!("handled before field dispatch"),
    }
}

fn resolve<F: Field>(
    ctx: &KoszulContext<'_, F>,
    ideal: &MonomialIdeal<'_, F>,
    method: Method,
    hmax: usize,
) -> Result<ChainComplex<F::Elem>, CliError> {
    match method {
        Method::Closed => closed_form_resolution(ctx, ideal, hmax, COLON_DEGREE),
        Method::Cone => iterated_mapping_cone(ctx, ideal, hmax, COLON_DEGREE),
    }
    .map_err(classify)
}

fn field_label<F: Field>(f: &F) -> String {
    match f.kind() {
        koszulcone_core::FieldKind::Prime(p) => format!("p={p}"),
        koszulcone_core::FieldKind::Rational => "q".into(),
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn vars_text(v: VarSet, names: &[String]) -> String {
    if v.is_empty() {
        "∅".into()
    } else {
        v.render(names)
    }
}

fn word_text(word: &[usize], names: &[String]) -> String {
    word.iter()
        .map(|&i| names[i].as_str())
        .collect::<Vec<_>>()
        .join("⊗")
}

fn dual_report<F: Field>(
    alg: &GradedAlgebra<F>,
    dual: &DualAlgebra<F>,
    hmax: usize,
) -> Result<Report, CliError> {
    let f = alg.field();
    let n = alg.nvars();
    let names = alg.var_names();
    let mut text = String::new();
    let mut comps = Vec::new();
    for l in 0..=hmax {
        let c = dual.component(l).map_err(classify)?;
        let _ = writeln!(text, "(A^!_{l})^*: dim {}", c.dim());
        let mut basis = Vec::new();
        for row in c.basis().row_iter() {
            let terms: Vec<(Vec<usize>, &F::Elem)> = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(i, x)| (koszulcone_core::dual::index_word(n, l, i), x))
                .collect();
            let mut line = String::new();
            for (i, (w, c)) in terms.iter().enumerate() {
                let w = if w.is_empty() {
                    "1".into()
                } else {
                    word_text(w, names)
                };
                let r = f.render(c);
                let (neg, mag) = match r.strip_prefix('-') {
                    Some(m) => (true, m),
                    None => (false, r.as_str()),
                };
                line.push_str(match (i, neg) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                });
                if mag != "1" {
                    let _ = write!(line, "{mag}*");
                }
                line.push_str(&w);
            }
            let _ = writeln!(text, "  {line}");
            basis.push(
                terms
                    .iter()
                    .map(|(w, c)| {
                        json!({
                            "word": w.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                            "coefficient": f.to_json(c),
                        })
                    })
                    .collect::<Vec<_>>(),
            );
        }
        comps.push(json!({"degree": l, "dim": c.dim(), "basis": basis}));
    }
    Ok(Report {
        passed: true,
        text,
        json: json!({"command": "dual", "field": field_label(f), "components": comps}),
    })
}

fn priddy_report<F: Field>(
    alg: &GradedAlgebra<F>,
    dual: &DualAlgebra<F>,
    hmax: usize,
    dmax: usize,
) -> Result<Report, CliError> {
    let ctx = KoszulContext::new(alg, dual).map_err(classify)?;
    let p = priddy_complex(&ctx, hmax).map_err(classify)?;
    let cert = koszulness_certificate(&ctx, hmax, dmax).map_err(classify)?;
    let ranks: Vec<usize> = (0..=hmax).map(|l| p.rank(l)).collect();
    let slot = match ctx.slot {
        ActionSlot::First => "first",
        ActionSlot::Last => "last",
    };
    let mut text = format!(
        "action slot: {slot}\nranks: {}\n",
        ranks
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    if cert.passed() {
        let _ = writeln!(
            text,
            "PASS: H_i = 0 for 1 <= i <= {} in internal degrees <= {dmax}",
            hmax.saturating_sub(1)
        );
    } else {
        for h in &cert.witnesses {
            let _ = writeln!(
                text,
                "FAIL: dim H_{}(P)_{} = {}",
                h.homological, h.internal, h.dim
            );
        }
    }
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .map(|h| json!({"homological": h.homological, "internal": h.internal, "dim": h.dim}))
        .collect();
    Ok(Report {
        passed: cert.passed(),
        text,
        json: json!({
            "command": "priddy",
            "action_slot": slot,
            "ranks": ranks,
            "max_homological": hmax,
            "max_internal": dmax,
            "passed": cert.passed(),
            "witnesses": witnesses,
        }),
    })
}

fn quotients_report<F: Field>(
    ideal: &MonomialIdeal<'_, F>,
    dmax: usize,
    names: &[String],
) -> Result<Report, CliError> {
    let r = ideal.check_linear_quotients(dmax).map_err(classify)?;
    let mut text = String::new();
    let mut colons = Vec::new();
    for c in &r.colons {
        let g = ideal.generators()[c.generator].render(names);
        match &c.failure {
            None => {
                let _ = writeln!(
                    text,
                    "m{} = {g}: colon generated by {} (verified through degree {})",
                    c.generator + 1,
                    vars_text(c.vars, names),
                    c.verified_through
                );
            }
            Some(f) => {
                let _ = writeln!(
                    text,
                    "m{} = {g}: colon has a minimal generator in degree {} (dim {} vs {} from variables)",
                    c.generator + 1,
                    f.degree,
                    f.colon_dim,
                    f.expected_dim
                );
            }
        }
        colons.push(json!({
            "generator": c.generator + 1,
            "monomial": g,
            "variables": c.vars.iter().map(|i| names[i].clone()).collect::<Vec<_>>(),
            "verified_through": c.verified_through,
            "failure_degree": c.failure.as_ref().map(|f| f.degree),
        }));
    }
    let passed = r.passed();
    let _ = writeln!(text, "{} linear quotients", verdict(passed));
    Ok(Report {
        passed,
        text,
        json: json!({"command": "check quotients", "passed": passed, "colons": colons}),
    })
}

fn regular_report<F: Field>(
    ideal: &MonomialIdeal<'_, F>,
    dual: &DualAlgebra<F>,
    names: &[String],
) -> Result<Report, CliError> {
    let r =
        check_regular_ordering(ideal, dual, RegularOrderingOptions::default()).map_err(classify)?;
    let passed = r.passed();
    let mut text = String::new();
    for c in &r.linear_quotients.colons {
        let _ = writeln!(text, "E_{} = {}", c.generator + 1, vars_text(c.vars, names));
    }
    let violations: Vec<String> = r.violations.iter().map(|v| v.describe(names)).collect();
    for v in &violations {
        let _ = writeln!(text, "violation: {v}");
    }
    for d in &r.disagreements {
        let _ = writeln!(
            text,
            "note: condition (1) readings disagree at u={}, v={}, j={}, k={}",
            d.u + 1,
            d.v + 1,
            d.j + 1,
            d.k + 1
        );
    }
    if !r.linear_quotients.passed() {
        let _ = writeln!(text, "the ordering does not have linear quotients");
    }
    let _ = writeln!(text, "{} regular ordering", verdict(passed));
    Ok(Report {
        passed,
        text,
        json: json!({
            "command": "check regular",
            "passed": passed,
            "linear_quotients": r.linear_quotients.passed(),
            "colon_variables": r
                .linear_quotients
                .colons
                .iter()
                .map(|c| c.vars.iter().map(|i| names[i].clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "violations": violations,
            "disagreements": r.disagreements.len(),
        }),
    })
}

fn strongly_koszul_report<F: Field>(
    alg: &GradedAlgebra<F>,
    dmax: usize,
    names: &[String],
) -> Result<Report, CliError> {
    let r = check_strongly_koszul(alg, dmax, None, &[]).map_err(classify)?;
    let passed = r.passed();
    let mut text = format!(
        "checked {} colon pairs through degree {} ({} subsets)\n",
        r.pairs_checked,
        r.verified_through,
        if r.exhaustive { "all" } else { "bounded" }
    );
    let describe = |w: &StronglyKoszulFailure| match w {
        StronglyKoszulFailure::LinearPartNotVariables { subset, var, .. } => format!(
            "({} : {}) is not generated by variables in degree 1",
            vars_text(*subset, names),
            names[*var]
        ),
        StronglyKoszulFailure::HigherGenerator {
            subset,
            var,
            degree,
            ..
        } => format!(
            "({} : {}) degree {degree}",
            vars_text(*subset, names),
            names[*var]
        ),
    };
    let witness = r.witness().map(describe);
    match &witness {
        None => {
            let _ = writeln!(text, "PASS strongly Koszul (bounded)");
        }
        Some(w) => {
            let _ = writeln!(text, "FAIL witness {w}");
        }
    }
    Ok(Report {
        passed,
        text,
        json: json!({
            "command": "check strongly-koszul",
            "passed": passed,
            "verified_through": r.verified_through,
            "exhaustive": r.exhaustive,
            "pairs_checked": r.pairs_checked,
            "witness": r.witness().map(|w| json!({
                "subset": w.subset().iter().map(|i| names[i].clone()).collect::<Vec<_>>(),
                "variable": names[w.var()].clone(),
                "degree": w.degree(),
            })),
            "failures": r.failures.iter().map(describe).collect::<Vec<_>>(),
        }),
    })
}

fn star_report<F: Field>(
    ideal: &MonomialIdeal<'_, F>,
    names: &[String],
) -> Result<Report, CliError> {
    let r = check_star_condition(ideal, COLON_DEGREE).map_err(classify)?;
    let passed = r.guaranteed();
    let mut text = format!(
        "relation support: {}\n",
        vars_text(r.relation_support, names)
    );
    for v in &r.star_violations {
        let _ = writeln!(
            text,
            "violation: {} lies in the relation support but not in E_{}",
            names[v.var],
            v.generator + 1
        );
    }
    for (k, s, j) in &r.decomposition_violations {
        let _ = writeln!(
            text,
            "violation: decomposing {}·m{} uses m{} outside the support guarantee",
            names[*s],
            k + 1,
            j + 1
        );
    }
    let _ = writeln!(text, "{} star condition", verdict(passed));
    Ok(Report {
        passed,
        text,
        json: json!({
            "command": "check star",
            "passed": passed,
            "relation_support": r.relation_support.iter().map(|i| names[i].clone()).collect::<Vec<_>>(),
            "star_violations": r.star_violations.iter().map(|v| json!({"generator": v.generator + 1, "variable": names[v.var].clone()})).collect::<Vec<_>>(),
            "decomposition_violations": r.decomposition_violations.len(),
        }),
    })
}

fn ranks_text<E: Clone + PartialEq>(c: &ChainComplex<E>) -> String {
    let mut text = String::new();
    for l in 0..=c.length() {
        let mut by_degree = std::collections::BTreeMap::new();
        for g in &c.bases[l] {
            *by_degree.entry(g.internal_degree).or_insert(0usize) += 1;
        }
        let parts: Vec<String> = by_degree
            .iter()
            .map(|(d, n)| match (d, n) {
                (0, 1) => "A".to_string(),
                (0, n) => format!("A^{n}"),
                (d, 1) => format!("A(-{d})"),
                (d, n) => format!("A(-{d})^{n}"),
            })
            .collect();
        let shown = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        let _ = writeln!(text, "F_{l} = {shown}");
    }
    text
}

fn resolve_report<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    method: Method,
) -> Report {
    let mut text = ranks_text(c);
    for l in 1..=c.length() {
        let d = c.differential(l).expect("complex has all differentials");
        let _ = writeln!(text, "d_{l}:");
        for (r, col, a) in d.entries() {
            let _ = writeln!(text, "  [{r},{col}] {}", alg.render(a));
        }
    }
    let method = match method {
        Method::Cone => "cone",
        Method::Closed => "closed",
    };
    Report {
        passed: true,
        text,
        json: json!({"command": "resolve", "method": method, "complex": to_json(alg, c)}),
    }
}

fn betti_report(t: &BettiTable) -> Report {
    let ideal = t.ideal_level();
    let mut text = ideal.render();
    if let Some(r) = ideal.regularity() {
        let _ = writeln!(text, "regularity: {r}");
    }
    if ideal.is_linear() {
        let _ = writeln!(text, "linear resolution");
    }
    Report {
        passed: true,
        text,
        json: json!({"command": "betti", "ideal": ideal.to_json(), "quotient": t.to_json()}),
    }
}

fn verify_report<F: Field>(
    alg: &GradedAlgebra<F>,
    c: &ChainComplex<F::Elem>,
    hmax: usize,
    dmax: usize,
) -> Result<Report, CliError> {
    let r = verify_complex(alg, c, hmax, dmax).map_err(classify)?;
    let passed = r.passed();
    let mut text = ranks_text(c);
    let _ = writeln!(
        text,
        "d^2 = 0: {}",
        if r.d_squared_failures.is_empty() {
            "yes".to_string()
        } else {
            format!("no, in degrees {:?}", r.d_squared_failures)
        }
    );
    let _ = writeln!(
        text,
        "minimal: {}",
        if r.nonminimal.is_empty() {
            "yes".to_string()
        } else {
            format!("no, unit entries in degrees {:?}", r.nonminimal)
        }
    );
    for h in &r.homology {
        let _ = writeln!(
            text,
            "homology: dim H_{}(F)_{} = {}",
            h.homological, h.internal, h.dim
        );
    }
    let _ = writeln!(
        text,
        "{} (H_i checked for {} <= i <= {}, internal degree <= {})",
        verdict(passed),
        r.homological_range.0,
        r.homological_range.1,
        r.internal_bound
    );
    Ok(Report {
        passed,
        text,
        json: json!({
            "command": "verify",
            "passed": passed,
            "d_squared_failures": r.d_squared_failures,
            "nonminimal": r.nonminimal,
            "homology": r.homology.iter().map(|h| json!({"homological": h.homological, "internal": h.internal, "dim": h.dim})).collect::<Vec<_>>(),
            "homological_range": [r.homological_range.0, r.homological_range.1],
            "internal_bound": r.internal_bound,
        }),
    })
}
