//! Subcommand implementations. Each returns a [`Report`]; input problems surface as
//! [`CliError`] and map to exit code 2.

use std::path::{Path as FsPath, PathBuf};

use qdu::gwa::{check_isomorphism, pwd_probe_gwa};
use qdu::hilbert::{closed_form_check, IntMatrix};
use qdu::iso::{decide_graded_iso, IsoVerdict};
use qdu::skewgroup::verify_quotient_match;
use qdu::structure::{
    build_superpotential, candidate_mu, check_derivation_quotient, check_diagonal_map, check_twist_invariance,
    lagged_mu, noetherian_chain_check, property_report, pwd_probe_h, TwistWeights, WeightScheme,
};
use qdu::{build_system, Element, Parameters, Preset, Scalar};
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{parse_config, ConfigError};
use crate::report::{Report, Verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Config { path: String, source: ConfigError },
    #[error(transparent)]
    Core(#[from] qdu::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Flags shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub trials: Option<usize>,
}

pub fn load_params(path: &FsPath) -> CliResult<Parameters> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let cfg = parse_config(&text).map_err(|source| CliError::Config { path: shown.clone(), source })?;
    cfg.parameters().map_err(|source| CliError::Config { path: shown, source })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report data serializes")
}

fn matrix_lines(m: &IntMatrix) -> Vec<String> {
    m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect()
}

/// Core `Unsupported` errors become an unsupported verdict; everything else propagates.
fn unsupported_or(command: &str, seed: u64, e: qdu::Error) -> CliResult<Report> {
    match e {
        qdu::Error::Unsupported(reason) => {
            Ok(Report::new(command, Verdict::Unsupported, json!({ "reason": reason }), seed)
                .with_summary(vec![format!("unsupported: {reason}")]))
        }
        other => Err(other.into()),
    }
}

pub fn nf(params: &Parameters, element: &str, opts: &Options) -> CliResult<Report> {
    let n = params.n();
    let a = Element::parse(element, n)?;
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let nf = sys.normal_form(&a);
    let findings = json!({ "input": a, "normal_form": nf, "zero": nf.is_zero() });
    Ok(Report::new("nf", Verdict::Pass, findings, opts.seed).with_summary(vec![nf.to_string()]))
}

pub fn basis(params: &Parameters, degree: usize, opts: &Options) -> CliResult<Report> {
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let words: Vec<String> = sys.enumerate_basis(degree).iter().map(ToString::to_string).collect();
    let m = sys.dimension_matrix(degree);
    let mut summary = vec![format!("degree {degree}: {} normal words", words.len())];
    summary.extend(matrix_lines(&m));
    let findings = json!({ "degree": degree, "words": words, "dimension_matrix": m, "total": m.total().to_string() });
    Ok(Report::new("basis", Verdict::Pass, findings, opts.seed).with_summary(summary))
}

pub fn confluence(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let r = sys.check_confluence();
    let summary: Vec<String> =
        r.overlaps.iter().map(|o| format!("{}: {}", o.word, if o.resolved { "resolves" } else { "FAILS" })).collect();
    Ok(Report::new("confluence", Verdict::from_bool(r.confluent), to_value(&r), opts.seed).with_summary(summary))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum HilbertPreset {
    Qdu,
    Preprojective,
}

/// Parameters used when no config is given: `alpha = gamma = 0`, `beta = 1`.
pub fn default_params(n: usize) -> CliResult<Parameters> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    Ok(Parameters::graded(vec![Scalar::zero(); n], vec![Scalar::one(); n])?)
}

pub fn hilbert(params: &Parameters, preset: HilbertPreset, check: bool, opts: &Options) -> CliResult<Report> {
    let max = opts.max_degree.unwrap_or(8);
    let n = params.n();
    let sys = match preset {
        HilbertPreset::Qdu => build_system(Preset::QuiverDownUp { params: params.clone() })?,
        HilbertPreset::Preprojective => build_system(Preset::Preprojective { n })?,
    };
    let matrices = sys.dimension_matrices(max);
    let mut summary = Vec::new();
    for (k, m) in matrices.iter().enumerate() {
        summary.push(format!("k={k} total={}", m.total()));
        summary.extend(matrix_lines(m).into_iter().map(|l| format!("  {l}")));
    }
    let totals: Vec<String> = matrices.iter().map(|m| m.total().to_string()).collect();
    let mut findings = json!({ "n": n, "max_degree": max, "matrices": matrices, "totals": totals });
    let mut verdict = Verdict::Pass;
    if check {
        let r = closed_form_check(params, max)?;
        let cmp = match preset {
            HilbertPreset::Qdu => &r.down_up,
            HilbertPreset::Preprojective => &r.preprojective,
        };
        verdict = Verdict::from_bool(cmp.passed());
        summary.push(format!("closed form: {}", if cmp.passed() { "matches" } else { "MISMATCH" }));
        findings["check"] = to_value(&r);
        if preset == HilbertPreset::Preprojective {
            let note = &r.preprojective_totals;
            findings["totals_note"] = json!({
                "n(1-t)^-2": note.matches_inverse_square,
                "n(1-t)^2": note.matches_square,
                "n(1-t^2)^-1": note.matches_inverse_even,
            });
            summary.push(format!(
                "totals: n(1-t)^-2 {}, n(1-t)^2 {}, n(1-t^2)^-1 {}",
                note.matches_inverse_square, note.matches_square, note.matches_inverse_even
            ));
        }
    }
    Ok(Report::new("hilbert", verdict, findings, opts.seed).with_summary(summary))
}

pub fn iso(p: &Parameters, q: &Parameters, opts: &Options) -> CliResult<Report> {
    let v = decide_graded_iso(p, q)?;
    let (verdict, line) = match &v {
        IsoVerdict::Isomorphic { witness } => (
            Verdict::Pass,
            format!(
                "isomorphic: {:?} k={} lambda=({}) map: {}",
                witness.orientation,
                witness.shift,
                witness.lambda.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                witness.map
            ),
        ),
        IsoVerdict::NotIsomorphic { cases } => {
            (Verdict::Pass, format!("not isomorphic ({} cases excluded)", cases.len()))
        }
        IsoVerdict::Unsupported { reason } => (Verdict::Unsupported, format!("unsupported: {reason}")),
    };
    Ok(Report::new("iso", verdict, to_value(&v), opts.seed).with_summary(vec![line]))
}

pub fn verify_gwa(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let command = "verify gwa";
    let iso = match check_isomorphism(params) {
        Ok(r) => r,
        Err(e) => return unsupported_or(command, opts.seed, e),
    };
    let trials = opts.trials.unwrap_or(200);
    let pwd = pwd_probe_gwa(params, params.n() as i64, 2, trials, opts.seed)?;
    let summary = vec![
        format!("theta kills relations: {}", iso.surviving_relations.is_empty()),
        format!("round trips: {}", iso.path_round_trip_failures.is_empty() && iso.gwa_round_trip_failures.is_empty()),
        format!("pwd probe: {} zero products in {trials} trials", pwd.zero_products.len()),
    ];
    let verdict = Verdict::from_bool(iso.passed && pwd.passed);
    Ok(Report::new(command, verdict, json!({ "isomorphism": iso, "pwd": pwd }), opts.seed).with_summary(summary))
}

pub fn verify_superpotential(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let mut schemes = Vec::new();
    let mut summary = Vec::new();
    let mut any = false;
    for scheme in WeightScheme::ALL {
        let name = to_value(&scheme);
        let w = match TwistWeights::from_scheme(scheme, params) {
            Ok(w) => w,
            Err(e) => {
                summary.push(format!("{name}: {e}"));
                schemes.push(json!({ "scheme": name, "error": e.to_string() }));
                continue;
            }
        };
        let sp = build_superpotential(params, &w)?;
        let twist = check_twist_invariance(&sp.omega, &w)?;
        let der = check_derivation_quotient(&sp.omega, params);
        let defects: Vec<_> = sp.closure_defects().cloned().collect();
        any |= twist.invariant && der.equal;
        summary.push(format!("{name}: twist invariant {}, span equality {}", twist.invariant, der.equal));
        schemes.push(json!({
            "scheme": name,
            "weights": w,
            "omega": sp.omega,
            "compact_terms": sp.terms,
            "closure_defects": defects,
            "twist": twist,
            "derivation": der,
        }));
    }
    let verdict =
        if schemes.iter().all(|s| s.get("error").is_some()) { Verdict::Unsupported } else { Verdict::from_bool(any) };
    Ok(Report::new("verify superpotential", verdict, json!({ "schemes": schemes }), opts.seed).with_summary(summary))
}

pub fn verify_nakayama(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let command = "verify nakayama";
    let (cand, lagged) = match (candidate_mu(params), lagged_mu(params)) {
        (Ok(c), Ok(p)) => (c, p),
        (Err(e), _) | (_, Err(e)) => {
            return Ok(Report::new(command, Verdict::Unsupported, json!({ "reason": e.to_string() }), opts.seed)
                .with_summary(vec![e.to_string()]))
        }
    };
    let c = check_diagonal_map(&cand, params, params)?;
    let p = check_diagonal_map(&lagged, params, params)?;
    let squares_equal = params.beta.iter().all(|b| b * b == &params.beta[0] * &params.beta[0]);
    let summary = vec![
        format!("candidate u_i -> -beta_i^-1 u_i, d_i -> -beta_i d_i: {}", c.passed),
        format!("lagged map u_i, d_i -> -beta_(i-1)^-1: {}", p.passed),
        format!(
            "lagged map defect ratios: [{}]",
            p.defect_ratios().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    ];
    let findings = json!({
        "candidate": c,
        "lagged": p,
        "lagged_defect_ratios": p.defect_ratios(),
        "beta_squares_equal": squares_equal,
    });
    let verdict = Verdict::from_bool(c.passed && p.passed == squares_equal);
    Ok(Report::new(command, verdict, findings, opts.seed).with_summary(summary))
}

pub fn verify_pwd(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let max = opts.max_degree.unwrap_or(5);
    let trials = opts.trials.unwrap_or(200);
    let r = pwd_probe_h(params, max, trials, opts.seed)?;
    let mut summary = vec![format!("{} zero products in {trials} trials", r.zero_products.len())];
    if let Some(w) = &r.counterexample {
        summary.push(format!("zero divisors at vertex {}: ({}) * ({}) = 0", w.vertex, w.a, w.b));
    }
    Ok(Report::new("verify pwd", Verdict::from_bool(r.passed), to_value(&r), opts.seed).with_summary(summary))
}

pub fn verify_noetherian(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let command = "verify noetherian";
    let Some(i) = params.first_zero_beta() else {
        let reason = "every beta is nonzero; there is no ascending chain to certify";
        return Ok(Report::new(command, Verdict::Unsupported, json!({ "reason": reason }), opts.seed)
            .with_summary(vec![reason.to_string()]));
    };
    let s_max = opts.max_degree.unwrap_or(3);
    let n = params.n();
    let r = noetherian_chain_check(params, i, s_max, (s_max + 1) * n + 2)?;
    let mut summary: Vec<String> = r.annihilation.iter().map(|(e, ok)| format!("{e} = 0: {ok}")).collect();
    summary.extend(r.steps.iter().map(|s| format!("I_{} < I_{}: {}", s.s, s.s + 1, s.strict)));
    Ok(Report::new(command, Verdict::from_bool(r.passed), to_value(&r), opts.seed).with_summary(summary))
}

pub fn verify_properties(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let r = property_report(params)?;
    let mut summary = vec![
        format!("noetherian: {}", r.noetherian),
        format!("piecewise domain: {}", r.piecewise_domain),
        format!("polynomial subalgebra: {}", r.polynomial_subalgebra),
    ];
    if let Some(w) = &r.witness {
        summary.push(format!("witness at vertex {}: a = {}, b = {}", w.vertex, w.a, w.b));
    }
    Ok(Report::new("verify properties", Verdict::from_bool(r.verified), to_value(&r), opts.seed).with_summary(summary))
}

pub fn verify_skewgroup(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let max = opts.max_degree.unwrap_or(4);
    let r = verify_quotient_match(params.n(), params, max)?;
    let summary = vec![
        format!("idempotents orthogonal {}, complete {}", r.idempotents_orthogonal, r.idempotents_complete),
        format!("identities hold: {}", r.identities.iter().all(|(_, ok)| *ok)),
        format!(
            "constant beta killing the relations: {}",
            r.matching_beta.as_ref().map_or("none".to_string(), ToString::to_string)
        ),
        format!("supplied beta kills the relations: {}", r.supplied.kills_relations),
        format!("dimensions match through degree {max}: {}", r.dimensions_match),
    ];
    Ok(Report::new("verify skewgroup", Verdict::from_bool(r.passed), to_value(&r), opts.seed).with_summary(summary))
}

/// `H(0, -1, 0)` on the same cycle.
fn skew_params(n: usize) -> CliResult<Parameters> {
    Ok(Parameters::graded(vec![Scalar::zero(); n], vec![-Scalar::one(); n])?)
}

/// Every applicable check on one config.
pub fn report(params: &Parameters, opts: &Options) -> CliResult<Report> {
    let n = params.n();
    let small = Options { max_degree: None, ..opts.clone() };
    let mut sections: Vec<(&str, Report)> = vec![
        ("confluence", confluence(params, &small)?),
        ("hilbert", hilbert(params, HilbertPreset::Qdu, true, &Options { max_degree: Some(6), ..small.clone() })?),
        (
            "preprojective",
            hilbert(params, HilbertPreset::Preprojective, true, &Options { max_degree: Some(6), ..small.clone() })?,
        ),
        ("gwa", verify_gwa(params, &small)?),
        ("superpotential", verify_superpotential(params, &small)?),
        ("nakayama", verify_nakayama(params, &small)?),
        ("pwd", verify_pwd(params, &small)?),
        ("properties", verify_properties(params, &small)?),
        ("noetherian", verify_noetherian(params, &small)?),
    ];
    if (2..=12).contains(&n) {
        let skew = Options { max_degree: Some(3), ..small.clone() };
        sections.push(("skewgroup", verify_skewgroup(&skew_params(n)?, &skew)?));
    }
    if n >= 3 && params.is_graded() && params.all_beta_nonzero() {
        sections.push(("iso-self", iso(params, params, &small)?));
    }
    let failed = sections.iter().any(|(_, r)| r.verdict == Verdict::Fail);
    let summary = sections.iter().map(|(name, r)| format!("{name}: {}", r.verdict)).collect();
    let findings: serde_json::Map<String, Value> = sections
        .into_iter()
        .map(|(name, r)| (name.to_string(), json!({ "verdict": r.verdict, "findings": r.findings })))
        .collect();
    Ok(Report::new("report", Verdict::from_bool(!failed), Value::Object(findings), opts.seed).with_summary(summary))
}

/// Config path or `--n`, for commands that can run without a config.
pub fn params_or_default(config: Option<&PathBuf>, n: Option<usize>) -> CliResult<Parameters> {
    match (config, n) {
        (Some(path), None) => load_params(path),
        (Some(path), Some(n)) => {
            let p = load_params(path)?;
            if p.n() != n {
                return Err(CliError::Usage(format!("--n {n} disagrees with the config (n = {})", p.n())));
            }
            Ok(p)
        }
        (None, n) => default_params(n.unwrap_or(3)),
    }
}

pub fn skewgroup_params(config: Option<&PathBuf>, n: Option<usize>) -> CliResult<Parameters> {
    match config {
        Some(_) => params_or_default(config, n),
        None => skew_params(n.unwrap_or(3)),
    }
}
