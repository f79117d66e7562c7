//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qutrit_distill::filter::{add_white_noise, filter_report, qubit_more_robust_by_q, robustness_compare, Robustness};
use qutrit_distill::linalg::{expectation, hermitian_eigensystem, partial_transpose};
use qutrit_distill::report::{verify, VerifyConfig};
use qutrit_distill::simplex::{
    assemble_pt_from_blocks, build_state, classify, pt_block, sample_npt_with, sample_simplex_with, trial_rng,
    PtClass, SimplexCoefficients,
};
use qutrit_distill::weyl::{weyl, Dimension, WeylIndex};
use qutrit_distill::witness::{
    construct_witness_vector, detect, product_vector_min_with, witness_operator, WitnessConstruction,
};

const SEED_BLOCKS: u64 = 0x5eed_0002;
const SEED_NPT: u64 = 0x5eed_0003;
const SEED_NOISE: u64 = 0x5eed_0007;
const SEED_VERIFY: u64 = 0x5eed_0008;

struct Verdict {
    failures: Vec<String>,
    detail: String,
}

impl Verdict {
    fn new() -> Self { Self { failures: Vec::new(), detail: String::new() } }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

fn d3() -> Dimension { Dimension::new(3).unwrap() }

fn npt_states(seed: u64, n: usize) -> Vec<SimplexCoefficients> {
    (0..n).map(|i| sample_npt_with(&d3(), &mut trial_rng(seed, i as u64), 10_000).unwrap()).collect()
}

fn weyl_relations() -> Verdict {
    let mut v = Verdict::new();
    let mut worst = 0.0f64;
    for d in 2..=5usize {
        let dm = Dimension::new(d).unwrap();
        let di = d as i64;
        for a in WeylIndex::all(&dm) {
            let (i, j) = (a.k as i64, a.l as i64);
            let wa = weyl(&dm, a);
            let e_conj = wa.conj().max_abs_diff(&weyl(&dm, WeylIndex::new(&dm, -i, j)));
            let e_tr = wa
                .transpose()
                .max_abs_diff(&weyl(&dm, WeylIndex::new(&dm, i, -j)).scale(dm.omega_pow(-(i * j) % di)));
            worst = worst.max(e_conj).max(e_tr);
            v.check(e_conj <= 1e-13, || format!("d={d} conj {a:?}: {e_conj:e}"));
            v.check(e_tr <= 1e-13, || format!("d={d} transpose {a:?}: {e_tr:e}"));
            for b in WeylIndex::all(&dm) {
                let (k, l) = (b.k as i64, b.l as i64);
                let lhs = wa.matmul(&weyl(&dm, b)).unwrap();
                let rhs = weyl(&dm, WeylIndex::new(&dm, i + k, j + l)).scale(dm.omega_pow(j * k));
                let e = lhs.max_abs_diff(&rhs);
                worst = worst.max(e);
                v.check(e <= 1e-13, || format!("d={d} product {a:?}{b:?}: {e:e}"));
            }
        }
    }
    v.detail = format!("max error {worst:.2e}");
    v
}

fn block_structure() -> Verdict {
    let mut v = Verdict::new();
    let z = weyl(&d3(), WeylIndex { k: 1, l: 0 });
    let (mut worst_asm, mut worst_shift) = (0.0f64, 0.0f64);
    for i in 0..1000u64 {
        let s = sample_simplex_with(&d3(), &mut trial_rng(SEED_BLOCKS, i));
        let direct = build_state(&s).partial_transpose();
        let e = assemble_pt_from_blocks(&s).max_abs_diff(&direct);
        worst_asm = worst_asm.max(e);
        v.check(e <= 1e-12, || format!("table {i}: reassembly {e:e}"));
        for m in 0..3 {
            let shifted = pt_block(&s, m).unwrap().conjugate_by(&z).unwrap();
            let e = pt_block(&s, (m + 2) % 3).unwrap().max_abs_diff(&shifted);
            worst_shift = worst_shift.max(e);
            v.check(e <= 1e-13, || format!("table {i} m={m}: shift {e:e}"));
        }
    }
    v.detail = format!("1000 tables, reassembly {worst_asm:.2e}, shift {worst_shift:.2e}");
    v
}

struct Built {
    coeffs: SimplexCoefficients,
    wc: WitnessConstruction,
}

fn build_npt(states: &[SimplexCoefficients], v: &mut Verdict) -> Vec<Built> {
    let mut out = Vec::new();
    for (i, s) in states.iter().enumerate() {
        match construct_witness_vector(s) {
            Ok(wc) => out.push(Built { coeffs: s.clone(), wc }),
            Err(e) => v.check(false, || format!("state {i}: construction failed: {e}")),
        }
    }
    out
}

fn eigenvector_campaign(states: &[SimplexCoefficients]) -> Verdict {
    let mut v = Verdict::new();
    let built = build_npt(states, &mut v);
    let (mut res, mut exp, mut det, mut minor) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for (i, b) in built.iter().enumerate() {
        let wc = &b.wc;
        let pt = build_state(&b.coeffs).partial_transpose();
        let lam = wc.lambda_min;
        let r = pt.apply(&wc.phi).unwrap().sub(&wc.phi.scale_real(lam)).norm();
        let e = (expectation(&pt, &wc.phi).unwrap() - lam).norm();
        let spectrum = hermitian_eigensystem(&pt).unwrap();
        let width = spectrum.max() - spectrum.min();
        let mult = spectrum.eigenvalues.iter().filter(|&&x| (x - spectrum.min()).abs() <= 1e-9 * width).count();
        let sv = &wc.schmidt.singular_values;
        let rank = sv.iter().filter(|&&x| x > 1e-9 * sv[0]).count();
        res = res.max(r);
        exp = exp.max(e);
        det = det.max(wc.det_c.norm());
        minor = minor.min(wc.max_minor());
        v.check(r <= 1e-10, || format!("state {i}: (a) residual {r:e}"));
        v.check(rank == 2 && wc.schmidt.rank == 2, || format!("state {i}: (b) rank {rank}"));
        v.check(e <= 1e-10, || format!("state {i}: (c) expectation error {e:e}"));
        v.check(wc.det_c.norm() <= 1e-10 && wc.max_minor() > 1e-9, || {
            format!("state {i}: (d) |det C| {:e}, max minor {:e}", wc.det_c.norm(), wc.max_minor())
        });
        v.check(mult == 3, || format!("state {i}: (e) multiplicity {mult}"));
    }
    v.detail = format!(
        "{} states, residual {res:.2e}, expectation {exp:.2e}, |det C| {det:.2e}, min max|M_j| {minor:.2e}",
        built.len()
    );
    v
}

fn witness_suite(states: &[SimplexCoefficients]) -> Verdict {
    let mut v = Verdict::new();
    let built = build_npt(states, &mut v);
    let (mut spec_err, mut prod_min, mut weak, mut floor, mut tr_max) =
        (0.0f64, f64::INFINITY, 0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for (i, b) in built.iter().enumerate() {
        let w = witness_operator(&b.wc);
        let spectrum = hermitian_eigensystem(&w.w_phi).unwrap().eigenvalues;
        let e = spectrum.iter().zip(w.expected_spectrum()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let tr = detect(&w, &build_state(&b.coeffs)).unwrap();
        let mut rng = trial_rng(SEED_NPT ^ 0xabcd, i as u64);
        let pm = product_vector_min_with(&w, 10_000, &mut rng);
        let (a0, b1) = w.weak_optimality_vector();
        let wk = w.product_value(&a0, &b1).abs();
        let fl = hermitian_eigensystem(&w.m_phi).unwrap().min();
        spec_err = spec_err.max(e);
        prod_min = prod_min.min(pm);
        weak = weak.max(wk);
        floor = floor.min(fl);
        tr_max = tr_max.max(tr);
        v.check(e <= 1e-9, || format!("state {i}: spectrum error {e:e}"));
        v.check(tr < 0.0, || format!("state {i}: tr(W rho) = {tr:e}"));
        v.check(pm >= -1e-10, || format!("state {i}: product minimum {pm:e}"));
        v.check(wk <= 1e-10, || format!("state {i}: weak-optimality value {wk:e}"));
        v.check(fl >= -1e-10, || format!("state {i}: M_phi floor {fl:e}"));
    }
    v.detail = format!(
        "{} states, spectrum {spec_err:.2e}, max tr(W rho) {tr_max:.3e}, product min {prod_min:.2e}, \
         weak {weak:.2e}, M floor {floor:.2e}",
        built.len()
    );
    v
}

fn filter_suite(states: &[SimplexCoefficients]) -> Verdict {
    let mut v = Verdict::new();
    let built = build_npt(states, &mut v);
    let (mut err, mut ties, mut below) = (0.0f64, 0, 0);
    for (i, b) in built.iter().enumerate() {
        let rep = filter_report(&build_state(&b.coeffs), &b.wc).unwrap();
        let spectrum = hermitian_eigensystem(&partial_transpose(rep.sigma.matrix(), 2, 2).unwrap()).unwrap().eigenvalues;
        let e = (spectrum[0] - b.wc.lambda_min / rep.q).abs();
        let negatives = spectrum.iter().filter(|&&x| x < -1e-12).count();
        err = err.max(e);
        v.check(e <= 1e-9, || format!("state {i}: lambda_min(sigma^G) error {e:e}"));
        v.check(negatives == 1, || format!("state {i}: {negatives} negative PT eigenvalues of sigma"));
        let by_q = qubit_more_robust_by_q(rep.q, 3);
        below += usize::from(by_q);
        match robustness_compare(&rep) {
            Robustness::Tie => {
                ties += 1;
                v.check((rep.q - 4.0 / 9.0).abs() <= 1e-8, || format!("state {i}: tie with q = {}", rep.q));
            }
            verdict => v.check((verdict == Robustness::QubitMoreRobust) == by_q, || {
                format!("state {i}: verdict {verdict} but q = {}", rep.q)
            }),
        }
    }
    v.detail = format!("{} states, sigma error {err:.2e}, q < 4/9 on {below}, ties {ties}", built.len());
    v
}

fn closed_forms() -> Verdict {
    let mut v = Verdict::new();
    let s = SimplexCoefficients::pure_bell(d3());
    let rho = build_state(&s);
    let lam = hermitian_eigensystem(&rho.partial_transpose()).unwrap().min();
    let wc = construct_witness_vector(&s).unwrap();
    let rep = filter_report(&rho, &wc).unwrap();
    let sigma_lam = hermitian_eigensystem(&partial_transpose(rep.sigma.matrix(), 2, 2).unwrap()).unwrap().min();
    let h = 0.5f64.sqrt();
    let checks = [
        ("lambda_min", lam, -1.0 / 3.0),
        ("mu0", wc.mu0(), h),
        ("mu1", wc.mu1(), h),
        ("q", rep.q, 2.0 / 3.0),
        ("lambda_min(sigma^G)", sigma_lam, -0.5),
        ("p_rho_max", rep.p_rho_max, 0.75),
        ("p_sigma_max", rep.p_sigma_max, 2.0 / 3.0),
    ];
    for (name, got, want) in checks {
        v.check((got - want).abs() <= 1e-10, || format!("{name} = {got}, expected {want}"));
    }
    // bisect the NPT -> PPT transition of the isotropic family
    let npt = |p: f64| classify(&SimplexCoefficients::isotropic(d3(), p).unwrap()).lambda_min < 0.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    v.check(npt(lo) && !npt(hi), || "isotropic family does not change class on [0, 1]".into());
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if npt(mid) { lo = mid } else { hi = mid }
    }
    let flip = 0.5 * (lo + hi);
    v.check((flip - 0.75).abs() <= 1e-6, || format!("isotropic flip at {flip}"));
    v.check(
        classify(&SimplexCoefficients::isotropic(d3(), 0.75 - 1e-6).unwrap()).classification == PtClass::Npt
            && classify(&SimplexCoefficients::isotropic(d3(), 0.75 + 1e-6).unwrap()).classification == PtClass::Ppt,
        || "isotropic class at 3/4 -+ 1e-6".into(),
    );
    v.detail = format!("7 pure-state values, isotropic flip at {flip:.9}");
    v
}

fn noise_thresholds() -> Verdict {
    let mut v = Verdict::new();
    let states = npt_states(SEED_NOISE, 100);
    let built = build_npt(&states, &mut v);
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let (mut evaluated, mut skipped) = (0, 0);
    for (i, b) in built.iter().enumerate() {
        let rho = build_state(&b.coeffs);
        let w = witness_operator(&b.wc);
        let rep = filter_report(&rho, &b.wc).unwrap();
        for &p in &grid {
            if (p - rep.p_rho_max).abs() > 1e-6 {
                evaluated += 1;
                let value = detect(&w, &add_white_noise(&rho, p).unwrap()).unwrap();
                v.check((value < 0.0) == (p < rep.p_rho_max), || {
                    format!("state {i} p={p}: detect {value:e}, p_rho_max {}", rep.p_rho_max)
                });
            } else {
                skipped += 1;
            }
            if (p - rep.p_sigma_max).abs() > 1e-6 {
                evaluated += 1;
                let noisy = add_white_noise(&rep.sigma, p).unwrap();
                let lam = hermitian_eigensystem(&partial_transpose(noisy.matrix(), 2, 2).unwrap()).unwrap().min();
                v.check((lam < 0.0) == (p < rep.p_sigma_max), || {
                    format!("state {i} p={p}: sigma lambda {lam:e}, p_sigma_max {}", rep.p_sigma_max)
                });
            } else {
                skipped += 1;
            }
        }
    }
    v.detail = format!("{} states x 21 points, {evaluated} comparisons, {skipped} within 1e-6 of a threshold", built.len());
    v
}

fn determinism(started: Instant) -> Verdict {
    let mut v = Verdict::new();
    let cfg = VerifyConfig::new(1000, SEED_VERIFY);
    let a = verify(&cfg).unwrap();
    let mut serial = cfg.clone();
    serial.jobs = 1;
    let b = verify(&serial).unwrap();
    v.check(a.summary == b.summary, || "summaries differ between runs".into());
    v.check(a.failures() == 0, || format!("verify reported {} failing trials\n{}", a.failures(), a.summary));
    let total = started.elapsed();
    v.check(total < Duration::from_secs(120), || format!("battery took {:.1} s", total.as_secs_f64()));
    v.detail = format!("2 x 1000 trials, identical summaries: {}, battery total {:.1} s", a.summary == b.summary, total.as_secs_f64());
    v
}

fn main() -> ExitCode {
    let started = Instant::now();
    let npt = npt_states(SEED_NPT, 1000);
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("1 Weyl relations, d = 2..5", Box::new(weyl_relations)),
        ("2 block structure", Box::new(block_structure)),
        ("3 witness vector campaign", Box::new(|| eigenvector_campaign(&npt))),
        ("4 witness operator", Box::new(|| witness_suite(&npt))),
        ("5 local filter", Box::new(|| filter_suite(&npt))),
        ("6 closed forms", Box::new(closed_forms)),
        ("7 noise thresholds", Box::new(noise_thresholds)),
        ("8 determinism and runtime", Box::new(move || determinism(started))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let v = run();
        let ok = v.failures.is_empty();
        failed += usize::from(!ok);
        println!("{} criterion {name}: {} ({:.2} s)", if ok { "PASS" } else { "FAIL" }, v.detail, t.elapsed().as_secs_f64());
        for f in v.failures.iter().filter(|f| !f.is_empty()) {
            println!("    {f}");
        }
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed, criteria.len(), started.elapsed().as_secs_f64());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
