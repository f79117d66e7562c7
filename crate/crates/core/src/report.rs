//! Machine-readable reports and the drivers behind the `qutrit-distill`
//! binary: `analyze`, `sweep`, `sample` and `verify`.
//!
//! Exit codes are a stable contract: 0 success, 1 failure or invalid input,
//! 2 valid input that is not NPT.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64 as C64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{add_white_noise, filter_report, qubit_more_robust_by_q, robustness_compare, FilterReport, Robustness};
use crate::linalg::{expectation, hermitian_eigensystem, partial_transpose, CMatrix, CVector};
use crate::simplex::{
    build_state, classify, sample_npt_with, sample_simplex_with, trial_rng, CoefficientTable, PtClass,
    PtSpectrum, SimplexCoefficients, PT_ZERO_TOL, RNG_NAME,
};
use crate::weyl::Dimension;
use crate::witness::{
    construct_witness_vector, detect, product_vector_min_with, witness_operator, WitnessConstruction,
    WitnessOperator,
};

pub const TOOL_VERSION: &str = concat!("qutrit-distill ", env!("CARGO_PKG_VERSION"));
/// Input tables whose sum is within this of one are renormalized.
pub const INPUT_SUM_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_TRIES: usize = 10_000;

pub const REASON_PPT: &str = "no negative PT eigenvalue";
pub const REASON_BOUNDARY: &str = "boundary: |lambda_min| within 1e-12 of zero";
pub const REASON_DIMENSION: &str = "witness construction requires d = 3";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    NotNpt,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
            Outcome::NotNpt => 2,
        }
    }
}

fn rows_of(m: &CMatrix) -> Vec<Vec<C64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Scalars and vectors of the eigenvector construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub lambda_min: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub phi: Vec<C64>,
    pub phi_tilde: Vec<C64>,
    pub u: Vec<Vec<C64>>,
    pub alpha: Vec<Vec<C64>>,
    pub psi: Vec<C64>,
    pub c: Vec<Vec<C64>>,
    pub det_c: C64,
    pub minors: Vec<C64>,
    pub schmidt_singular_values: Vec<f64>,
}

impl From<&WitnessConstruction> for WitnessSummary {
    fn from(wc: &WitnessConstruction) -> Self {
        let vecs = |vs: &[CVector]| vs.iter().map(|v| v.as_slice().to_vec()).collect();
        Self {
            lambda_min: wc.lambda_min,
            mu0: wc.mu0(),
            mu1: wc.mu1(),
            phi: wc.phi.as_slice().to_vec(),
            phi_tilde: wc.phi_tilde.as_slice().to_vec(),
            u: vecs(&wc.u),
            alpha: vecs(&wc.alpha),
            psi: wc.psi.to_vec(),
            c: rows_of(&wc.c),
            det_c: wc.det_c,
            minors: wc.minors.to_vec(),
            schmidt_singular_values: wc.schmidt.singular_values.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterSummary {
    pub pa: Vec<Vec<C64>>,
    pub pb: Vec<Vec<C64>>,
    pub q: f64,
    /// Basis order `(a0,b0*), (a0,b1*), (a1,b0*), (a1,b1*)`.
    pub sigma: Vec<Vec<C64>>,
    pub sigma_pt_spectrum: Vec<f64>,
    pub witness_expectation: f64,
    pub p_rho_max: f64,
    pub p_sigma_max: f64,
    pub verdict: Robustness,
    pub q_below_4_over_d2: bool,
}

impl FilterSummary {
    fn new(rep: &FilterReport, d: usize) -> Self {
        Self {
            pa: rows_of(&rep.pa),
            pb: rows_of(&rep.pb),
            q: rep.q,
            sigma: rows_of(rep.sigma.matrix()),
            sigma_pt_spectrum: rep.sigma_pt_spectrum.clone(),
            witness_expectation: rep.witness_expectation,
            p_rho_max: rep.p_rho_max,
            p_sigma_max: rep.p_sigma_max,
            verdict: rep.verdict,
            q_below_4_over_d2: qubit_more_robust_by_q(rep.q, d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub seed_used: Option<u64>,
    pub input: CoefficientTable,
    pub renormalized: bool,
    pub classification: PtSpectrum,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_spectrum: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub filter: Option<FilterSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl AnalysisReport {
    /// Structural checks applied to every report, freshly built or loaded.
    pub fn validate(&self) -> Result<()> {
        let (coeffs, _) = SimplexCoefficients::from_rows(&self.input.c, INPUT_SUM_TOL)?;
        if coeffs.d() != self.input.d {
            return Err(Error::InvalidCoefficients(format!(
                "declared d = {} but table is {}x{}", self.input.d, coeffs.d(), coeffs.d())));
        }
        let cls = &self.classification;
        if cls.eigenvalues.len() != self.input.d * self.input.d || cls.lambda_min != cls.eigenvalues[0] {
            return Err(Error::InvalidCoefficients("inconsistent classification section".into()));
        }
        let full = self.witness.is_some() && self.witness_spectrum.is_some() && self.filter.is_some();
        let empty = self.witness.is_none() && self.witness_spectrum.is_none() && self.filter.is_none();
        match (cls.classification, self.input.d) {
            (PtClass::Npt, 3) if full && self.reason.is_none() => Ok(()),
            (PtClass::Npt, 3) => Err(Error::InvalidCoefficients("NPT report lacks witness or filter section".into())),
            _ if empty && self.reason.is_some() => Ok(()),
            _ => Err(Error::InvalidCoefficients("non-NPT report must carry a reason and no witness".into())),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rep: Self = serde_json::from_str(text).map_err(|e| Error::InvalidCoefficients(e.to_string()))?;
        rep.validate()?;
        Ok(rep)
    }

    pub fn outcome(&self) -> Outcome {
        match (self.classification.classification, self.witness.is_some()) {
            (PtClass::Npt, true) => Outcome::Success,
            (PtClass::Npt, false) => Outcome::Failure,
            _ => Outcome::NotNpt,
        }
    }
}

/// Full pipeline on one coefficient table.
pub fn analyze(table: &CoefficientTable, seed_used: Option<u64>) -> Result<AnalysisReport> {
    let (coeffs, renormalized) = SimplexCoefficients::from_rows(&table.c, INPUT_SUM_TOL)?;
    if coeffs.d() != table.d {
        return Err(Error::InvalidCoefficients(format!(
            "declared d = {} but table is {}x{}", table.d, coeffs.d(), coeffs.d())));
    }
    let classification = classify(&coeffs);
    let mut report = AnalysisReport {
        tool_version: TOOL_VERSION.to_string(),
        seed_used,
        input: CoefficientTable::from(&coeffs),
        renormalized,
        classification,
        witness: None,
        witness_spectrum: None,
        filter: None,
        reason: None,
    };
    match report.classification.classification {
        PtClass::Ppt => report.reason = Some(REASON_PPT.into()),
        PtClass::Boundary => report.reason = Some(REASON_BOUNDARY.into()),
        PtClass::Npt if coeffs.d() != 3 => report.reason = Some(REASON_DIMENSION.into()),
        PtClass::Npt => {
            let wc = construct_witness_vector(&coeffs)?;
            let w = witness_operator(&wc);
            let rho = build_state(&coeffs);
            let filt = filter_report(&rho, &wc)?;
            report.witness_spectrum = Some(hermitian_eigensystem(&w.w_phi)?.eigenvalues);
            report.witness = Some(WitnessSummary::from(&wc));
            report.filter = Some(FilterSummary::new(&filt, coeffs.d()));
        }
    }
    report.validate()?;
    Ok(report)
}

fn write_text(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

pub fn read_table(path: &Path) -> Result<CoefficientTable> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidCoefficients(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidCoefficients(format!("{}: {e}", path.display())))
}

/// `analyze` subcommand. The report is written for NPT and non-NPT inputs
/// alike.
pub fn cmd_analyze(input: &Path, output: Option<&Path>) -> Outcome {
    let report = match read_table(input).and_then(|t| analyze(&t, None)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::Failure;
        }
    };
    if let Err(e) = write_text(output, &report.to_json()) {
        eprintln!("error: {e}");
        return Outcome::Failure;
    }
    if report.renormalized {
        eprintln!("note: coefficient table renormalized to unit sum");
    }
    if let Some(r) = &report.reason {
        eprintln!("{}: {r}", report.classification.classification);
    }
    report.outcome()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub witness_value: f64,
    pub detected: bool,
    pub sigma_npt: bool,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub lambda_min: f64,
    pub q: f64,
    pub p_rho_max: f64,
    pub p_sigma_max: f64,
}

/// Witness value and filtered-state negativity on `steps` equally spaced
/// noise levels from `p_min` to `p_max`.
pub fn sweep(coeffs: &SimplexCoefficients, p_min: f64, p_max: f64, steps: usize) -> Result<Sweep> {
    if !(0.0 <= p_min && p_min < p_max && p_max <= 1.0) {
        return Err(Error::OutOfRange(format!("need 0 <= p_min < p_max <= 1, got [{p_min}, {p_max}]")));
    }
    if steps < 2 {
        return Err(Error::OutOfRange(format!("need at least 2 steps, got {steps}")));
    }
    let wc = construct_witness_vector(coeffs)?;
    let w = witness_operator(&wc);
    let rho = build_state(coeffs);
    let filt = filter_report(&rho, &wc)?;
    let rows = (0..steps)
        .map(|i| {
            let p = if i + 1 == steps { p_max } else { p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64 };
            let witness_value = detect(&w, &add_white_noise(&rho, p)?)?;
            let noisy = add_white_noise(&filt.sigma, p)?;
            let lam = hermitian_eigensystem(&partial_transpose(noisy.matrix(), 2, 2)?)?.min();
            Ok(SweepRow { p, witness_value, detected: witness_value < 0.0, sigma_npt: lam < 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep { rows, lambda_min: wc.lambda_min, q: filt.q, p_rho_max: filt.p_rho_max, p_sigma_max: filt.p_sigma_max })
}

/// CSV with `#` comment lines carrying the analytic thresholds, then
/// `p,witness_value,detected,sigma_npt`.
pub fn write_sweep_csv<W: Write>(out: W, s: &Sweep) -> Result<()> {
    let io = |e: std::io::Error| Error::OutOfRange(format!("write failed: {e}"));
    let mut out = out;
    writeln!(out, "# {TOOL_VERSION}").map_err(io)?;
    writeln!(out, "# lambda_min={}", s.lambda_min).map_err(io)?;
    writeln!(out, "# q={}", s.q).map_err(io)?;
    writeln!(out, "# p_rho_max={}", s.p_rho_max).map_err(io)?;
    writeln!(out, "# p_sigma_max={}", s.p_sigma_max).map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    for row in &s.rows {
        w.serialize(row).map_err(|e| Error::OutOfRange(format!("csv: {e}")))?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn cmd_sweep(input: &Path, p_min: f64, p_max: f64, steps: usize, output: Option<&Path>) -> Outcome {
    let coeffs = match read_table(input).and_then(|t| {
        let (c, _) = SimplexCoefficients::from_rows(&t.c, INPUT_SUM_TOL)?;
        Ok(c)
    }) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::Failure;
        }
    };
    let result = match sweep(&coeffs, p_min, p_max, steps) {
        Ok(s) => s,
        Err(e @ Error::NotNpt(_)) => {
            eprintln!("error: {e}");
            return Outcome::NotNpt;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::Failure;
        }
    };
    let mut buf = Vec::new();
    if let Err(e) = write_sweep_csv(&mut buf, &result) {
        eprintln!("error: {e}");
        return Outcome::Failure;
    }
    match write_text(output, std::str::from_utf8(&buf).expect("csv output is UTF-8")) {
        Ok(()) => Outcome::Success,
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::Failure
        }
    }
}

/// `count` tables, table `i` drawn from stream `i` of `seed`.
pub fn sample(dim: &Dimension, count: usize, seed: u64, npt_only: bool, max_tries: usize) -> Result<Vec<CoefficientTable>> {
    if count == 0 {
        return Err(Error::OutOfRange("count must be at least 1".into()));
    }
    (0..count)
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let s = if npt_only {
                sample_npt_with(dim, &mut rng, max_tries)?
            } else {
                sample_simplex_with(dim, &mut rng)
            };
            Ok(CoefficientTable::from(&s))
        })
        .collect()
}

pub fn cmd_sample(count: usize, seed: u64, npt_only: bool, output: Option<&Path>) -> Outcome {
    let dim = Dimension::new(3).expect("3 >= 2");
    match sample(&dim, count, seed, npt_only, DEFAULT_MAX_TRIES) {
        Ok(tables) => {
            let mut text = serde_json::to_string_pretty(&tables).expect("tables serialize");
            text.push('\n');
            match write_text(output, &text) {
                Ok(()) => Outcome::Success,
                Err(e) => {
                    eprintln!("error: {e}");
                    Outcome::Failure
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::Failure
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Worst {
    Max,
    Min,
}

struct Check {
    name: &'static str,
    bound: &'static str,
    worst: Worst,
}

const CHECKS: &[Check] = &[
    Check { name: "eigenvector residual |rho^G phi - l phi|", bound: "<= 1e-10", worst: Worst::Max },
    Check { name: "|<phi|rho^G|phi> - lambda_min|", bound: "<= 1e-10", worst: Worst::Max },
    Check { name: "Schmidt rank of phi", bound: "== 2", worst: Worst::Max },
    Check { name: "mu_2 / mu_0", bound: "< 1e-9", worst: Worst::Max },
    Check { name: "|det C|", bound: "<= 1e-10", worst: Worst::Max },
    Check { name: "max_j |M_j|", bound: "> 1e-9", worst: Worst::Min },
    Check { name: "multiplicity of lambda_min", bound: "== 3", worst: Worst::Max },
    Check { name: "witness spectrum error", bound: "<= 1e-9", worst: Worst::Max },
    Check { name: "|tr(W rho) - lambda_min|, tr(W rho) < 0", bound: "<= 1e-10", worst: Worst::Max },
    Check { name: "min product <a,b|W|a,b>", bound: ">= -1e-10", worst: Worst::Min },
    Check { name: "|<a0,b1*|W|a0,b1*>|", bound: "<= 1e-10", worst: Worst::Max },
    Check { name: "min eigenvalue of M_phi", bound: ">= -1e-10", worst: Worst::Min },
    Check { name: "|l_min(sigma^G) - l_min/q|", bound: "<= 1e-9", worst: Worst::Max },
    Check { name: "negative eigenvalues of sigma^G", bound: "== 1", worst: Worst::Max },
    Check { name: "robustness verdict vs q < 4/d^2", bound: "agree", worst: Worst::Max },
    Check { name: "noise-grid contradictions", bound: "== 0", worst: Worst::Max },
];

/// Per-trial result of the verification battery; `metrics[i]` belongs to
/// `CHECKS[i]`.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub index: usize,
    pub table: Option<CoefficientTable>,
    pub metrics: Vec<f64>,
    pub passed: Vec<bool>,
    pub error: Option<String>,
}

impl TrialOutcome {
    pub fn ok(&self) -> bool { self.error.is_none() && self.passed.iter().all(|&p| p) }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub count: usize,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub product_trials: usize,
    pub max_tries: usize,
}

impl VerifyConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        Self { count, seed, jobs: 0, product_trials: 10_000, max_tries: DEFAULT_MAX_TRIES }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub trials: Vec<TrialOutcome>,
    pub summary: String,
}

impl VerifyReport {
    pub fn failures(&self) -> usize { self.trials.iter().filter(|t| !t.ok()).count() }
    pub fn outcome(&self) -> Outcome { if self.failures() == 0 { Outcome::Success } else { Outcome::Failure } }
}

/// Noise levels `0, 0.05, ..., 1` used by the threshold checks.
pub fn noise_grid() -> Vec<f64> { (0..=20).map(|i| i as f64 / 20.0).collect() }

/// Counts grid points where `detect < 0` disagrees with `p < p_rho_max`, or
/// where `σ_noisy` being NPT disagrees with `p < p_sigma_max`. Points within
/// `1e-6` of a threshold are skipped.
pub fn threshold_contradictions(w: &WitnessOperator, rho: &crate::DensityMatrix, filt: &FilterReport, grid: &[f64]) -> Result<usize> {
    let mut bad = 0;
    for &p in grid {
        if (p - filt.p_rho_max).abs() > 1e-6 {
            let detected = detect(w, &add_white_noise(rho, p)?)? < 0.0;
            bad += usize::from(detected != (p < filt.p_rho_max));
        }
        if (p - filt.p_sigma_max).abs() > 1e-6 {
            let noisy = add_white_noise(&filt.sigma, p)?;
            let npt = hermitian_eigensystem(&partial_transpose(noisy.matrix(), 2, 2)?)?.min() < 0.0;
            bad += usize::from(npt != (p < filt.p_sigma_max));
        }
    }
    Ok(bad)
}

fn battery<R: Rng>(coeffs: &SimplexCoefficients, rng: &mut R, product_trials: usize) -> Result<(Vec<f64>, Vec<bool>)> {
    let wc = construct_witness_vector(coeffs)?;
    let rho = build_state(coeffs);
    let pt = rho.partial_transpose();
    let w = witness_operator(&wc);
    let filt = filter_report(&rho, &wc)?;
    let lam = wc.lambda_min;

    let residual = pt.apply(&wc.phi)?.max_abs_diff(&wc.phi.scale_real(lam));
    let exp_err = (expectation(&pt, &wc.phi)?.re - lam).abs();
    let rank = wc.schmidt.rank as f64;
    let sv = &wc.schmidt.singular_values;
    let tail = sv[2] / sv[0];
    let det = wc.det_c.norm();
    let minor = wc.max_minor();
    let mult = wc.pt_spectrum.min_multiplicity as f64;
    let wspec = hermitian_eigensystem(&w.w_phi)?.eigenvalues;
    let wspec_err = wspec.iter().zip(w.expected_spectrum()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let tr = detect(&w, &rho)?;
    let product_min = product_vector_min_with(&w, product_trials, rng);
    let (a0, b1c) = w.weak_optimality_vector();
    let weak = w.product_value(&a0, &b1c).abs();
    let m_floor = hermitian_eigensystem(&w.m_phi)?.min();
    let sigma_err = (filt.sigma_pt_spectrum[0] - lam / filt.q).abs();
    let sigma_neg = filt.sigma_pt_spectrum.iter().filter(|&&x| x < -PT_ZERO_TOL).count() as f64;
    let verdict = robustness_compare(&filt);
    let verdict_ok = verdict == Robustness::Tie || (verdict == Robustness::QubitMoreRobust) == qubit_more_robust_by_q(filt.q, 3);
    let contradictions = threshold_contradictions(&w, &rho, &filt, &noise_grid())? as f64;

    let metrics = vec![
        residual, exp_err, rank, tail, det, minor, mult, wspec_err, (tr - lam).abs(), product_min, weak,
        m_floor, sigma_err, sigma_neg, f64::from(u8::from(!verdict_ok)), contradictions,
    ];
    let passed = vec![
        residual <= 1e-10,
        exp_err <= 1e-10,
        wc.schmidt.rank == 2,
        tail < 1e-9,
        det <= 1e-10,
        minor > 1e-9,
        wc.pt_spectrum.min_multiplicity == 3,
        wspec_err <= 1e-9,
        tr < 0.0 && (tr - lam).abs() <= 1e-10,
        product_min >= -1e-10,
        weak <= 1e-10,
        m_floor >= -1e-10,
        sigma_err <= 1e-9,
        sigma_neg == 1.0,
        verdict_ok,
        contradictions == 0.0,
    ];
    Ok((metrics, passed))
}

/// One trial: sample an NPT table on stream `index` and run the battery.
pub fn run_trial(cfg: &VerifyConfig, index: usize) -> TrialOutcome {
    let dim = Dimension::new(3).expect("3 >= 2");
    let mut rng = trial_rng(cfg.seed, index as u64);
    let coeffs = match sample_npt_with(&dim, &mut rng, cfg.max_tries) {
        Ok(c) => c,
        Err(e) => {
            return TrialOutcome { index, table: None, metrics: vec![], passed: vec![], error: Some(e.to_string()) }
        }
    };
    let table = Some(CoefficientTable::from(&coeffs));
    match battery(&coeffs, &mut rng, cfg.product_trials) {
        Ok((metrics, passed)) => TrialOutcome { index, table, metrics, passed, error: None },
        Err(e) => TrialOutcome { index, table, metrics: vec![], passed: vec![], error: Some(e.to_string()) },
    }
}

/// Monte-Carlo campaign over `cfg.count` random NPT qutrit tables.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.count == 0 {
        return Err(Error::OutOfRange("count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
    let trials: Vec<TrialOutcome> = pool.install(|| (0..cfg.count).into_par_iter().map(|i| run_trial(cfg, i)).collect());
    let summary = summarize(cfg, &trials);
    Ok(VerifyReport { trials, summary })
}

fn summarize(cfg: &VerifyConfig, trials: &[TrialOutcome]) -> String {
    let mut s = String::new();
    let completed: Vec<&TrialOutcome> = trials.iter().filter(|t| t.error.is_none()).collect();
    let _ = writeln!(s, "{TOOL_VERSION}");
    let _ = writeln!(s, "rng: {RNG_NAME}");
    let _ = writeln!(s, "seed: {}  trials: {}  product vectors/trial: {}", cfg.seed, cfg.count, cfg.product_trials);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<44} {:>10} {:>13} {:>12}", "check", "bound", "worst", "passed");
    for (i, check) in CHECKS.iter().enumerate() {
        let passes = completed.iter().filter(|t| t.passed[i]).count();
        let worst = completed.iter().map(|t| t.metrics[i]).reduce(|a, b| match check.worst {
            Worst::Max => a.max(b),
            Worst::Min => a.min(b),
        });
        let worst = worst.map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"));
        let _ = writeln!(s, "{:<44} {:>10} {:>13} {:>6}/{:<5}", check.name, check.bound, worst, passes, cfg.count);
    }
    let failed: Vec<&TrialOutcome> = trials.iter().filter(|t| !t.ok()).collect();
    let _ = writeln!(s);
    let _ = writeln!(s, "failures: {}", failed.len());
    for t in failed {
        let what = match &t.error {
            Some(e) => e.clone(),
            None => CHECKS.iter().zip(&t.passed).filter(|(_, &p)| !p).map(|(c, _)| c.name).collect::<Vec<_>>().join("; "),
        };
        let table = t.table.as_ref().map_or_else(|| "null".into(), |tb| serde_json::to_string(tb).expect("table"));
        let _ = writeln!(s, "  seed {} trial {}: {what}", cfg.seed, t.index);
        let _ = writeln!(s, "    table: {table}");
    }
    s
}

pub fn cmd_verify(cfg: &VerifyConfig) -> Outcome {
    match verify(cfg) {
        Ok(rep) => {
            print!("{}", rep.summary);
            rep.outcome()
        }
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::Failure
        }
    }
}
