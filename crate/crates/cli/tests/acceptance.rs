//! End-to-end acceptance criteria.  Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any fails.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use stateint::dilog::{rogers, BranchedLog};
use stateint::verify::{self, Suite};
use stateint::{evaluate_thm1, evaluator, faddeev, IntegrandSpec, Options, Pair};

/// `e(x) = e^{2πix}`.
fn e(x: f64) -> C {
    C::new(0.0, TAU * x).exp()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(budget: Duration, f: impl FnOnce() -> Result<Outcome, String>) -> Outcome {
    let t0 = Instant::now();
    let r = f();
    let dt = t0.elapsed();
    match r {
        Ok(o) => {
            let in_time = dt < budget;
            let mut detail = o.detail;
            if !in_time {
                detail.push_str(&format!("; runtime {:.2?} over budget {:.0?}", dt, budget));
            }
            outcome(o.pass && in_time, detail)
        }
        Err(msg) => outcome(false, format!("error: {}", msg)),
    }
}

fn max_err_line(max: f64, tol: f64, samples: usize) -> Outcome {
    outcome(max < tol, format!("max error {:.3e} < {:.0e} over {} samples", max, tol, samples))
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let pair = Pair::new(1, 1).map_err(|e| e.to_string())?;
        let v = evaluate_thm1(&IntegrandSpec::Ab { a: 1, b: 2 }, &pair, None).map_err(|e| e.to_string())?.value;
        let vol = 2.0 * stateint::li2(C::new(0.5, 0.75f64.sqrt())).map_err(|e| e.to_string())?.im;
        let c = vol / TAU;
        let expected = C::new(0.0, PI / 6.0).exp() / 3f64.sqrt() * (c.exp() - (-c).exp());
        let err = (v - expected).norm();
        Ok(outcome(err < 1e-10, format!("|I - volume formula| = {:.3e} < 1e-10", err)))
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(120), || {
        let grid = verify::method_grid();
        let m = verify::closed_vs_quadrature(&grid).map_err(|e| e.to_string())?;
        Ok(max_err_line(m.max, 1e-7, m.n))
    })
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut worst = 0.0f64;
        let mut n = 0;
        for (m_, n_) in [(1, 1), (1, 2), (1, 3), (2, 3), (3, 5)] {
            let pair = Pair::new(m_, n_).map_err(|e| e.to_string())?;
            for z in verify::rational_grid() {
                let closed = faddeev::phi_rational(&pair, z).map_err(|e| e.to_string())?;
                let integral = faddeev::phi(pair.b, z / (TAU * pair.s) - pair.c_b).map_err(|e| e.to_string())?;
                worst = worst.max((closed - integral).norm());
                n += 1;
            }
        }
        Ok(max_err_line(worst, 1e-8, n))
    })
}

fn criterion_4() -> Outcome {
    let run = || -> Result<Outcome, String> {
        let spec = IntegrandSpec::Ab { a: 1, b: 2 };
        let pair = Pair::new(1, 1).map_err(|e| e.to_string())?;
        let report = evaluate_thm1(&spec, &pair, None).map_err(|e| e.to_string())?;
        let pts = &report.strip_points;
        if pts.len() != 2 {
            return Ok(outcome(false, format!("{} strip points, expected 2", pts.len())));
        }
        let vol = 2.0 * stateint::li2(C::new(0.5, 0.75f64.sqrt())).map_err(|e| e.to_string())?.im;
        let c = vol / TAU;
        let (a, b) = (1.0, 2.0);
        let prefactor = C::new(0.0, PI * (b + 3.0 * a - 6.0) / 12.0).exp();
        let rogers_expected = [(-c).exp() * e(-1.0 / 24.0), -(c.exp()) * e(-1.0 / 24.0) * e(1.0 / 3.0)];
        let geometric_expected = [e(-1.0 / 3.0) / 3f64.sqrt(), e(1.0 / 3.0) / 3f64.sqrt()];
        let w_expected = [C::new(0.0, 1.0 / 6.0), C::new(0.0, 5.0 / 6.0)];
        let log_expected = [C::new(0.0, TAU / 6.0), C::new(0.0, 10.0 * PI / 6.0)];

        let mut worst = (prefactor - e(-1.0 / 24.0)).norm();
        let one = C::new(1.0, 0.0);
        for j in 0..2 {
            let p = &pts[j];
            worst = worst.max((p.w - w_expected[j]).norm());
            worst = worst.max((p.log_z.value - log_expected[j]).norm());
            worst = worst.max((p.z - e(if j == 0 { 1.0 } else { -1.0 } / 6.0)).norm());
            let log_z = BranchedLog::new(p.log_z.value, p.z).map_err(|e| e.to_string())?;
            let r = rogers(p.z, &log_z).map_err(|e| e.to_string())?;
            let rexp = (C::new(0.0, b / TAU) * r).exp();
            worst = worst.max((rexp - rogers_expected[j]).norm());
            let geometric = (one - p.z).powf(b / 4.0) / (a + b * p.z / (one - p.z));
            worst = worst.max((geometric - geometric_expected[j]).norm());
            // The evaluator's own summand is the product of the three factors.
            let product = prefactor * rogers_expected[j] * geometric_expected[j];
            worst = worst.max((report.diagnostics.terms[j] - product).norm());
        }
        Ok(outcome(worst < 1e-12, format!("max deviation of ledger quantities {:.3e} < 1e-12", worst)))
    };
    run().unwrap_or_else(|m| outcome(false, format!("error: {}", m)))
}

fn criterion_5() -> Outcome {
    let run = || -> Result<Outcome, String> {
        let mut rng = verify::rng_for(7, "acceptance: lambda invariance");
        let mut worst = 0.0f64;
        let mut samples = 0;
        let mut varying_cases = 0;
        for ((a, b), (m, n)) in verify::method_grid() {
            let spec = IntegrandSpec::Ab { a, b };
            let pair = Pair::new(m, n).map_err(|e| e.to_string())?;
            let (lo, hi) = spec.lambda_range(&pair);
            let reference = evaluate_thm1(&spec, &pair, None).map_err(|e| e.to_string())?;
            let mut sets: Vec<Vec<(i64, i64)>> = Vec::new();
            for l in verify::lambda_samples(&mut rng, lo, hi) {
                let r = evaluate_thm1(&spec, &pair, Some(l)).map_err(|e| e.to_string())?;
                worst = worst.max((r.value - reference.value).norm());
                samples += 1;
                let key: Vec<(i64, i64)> =
                    r.strip_points.iter().map(|p| ((p.w.re * 1e6).round() as i64, (p.w.im * 1e6).round() as i64)).collect();
                if !sets.contains(&key) {
                    sets.push(key);
                }
            }
            if sets.len() > 1 {
                varying_cases += 1;
            }
        }
        Ok(outcome(
            worst < 1e-9 && varying_cases > 0,
            format!(
                "max |I(λ) − I(λ₀)| {:.3e} < 1e-9 over {} samples; strip set changes with λ in {} of 15 cases",
                worst, samples, varying_cases
            ),
        ))
    };
    run().unwrap_or_else(|m| outcome(false, format!("error: {}", m)))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut n = 0;
    for (m_, n_) in [(2, 3), (3, 5), (4, 7)] {
        let mut rng = verify::rng_for(7, &format!("acceptance: Bezout ({},{})", m_, n_));
        match verify::bezout_independence(&mut rng, m_, n_) {
            Ok(e) => {
                worst = worst.max(e.max);
                n += e.n;
            }
            Err(err) => return outcome(false, format!("error: {}", err)),
        }
    }
    max_err_line(worst, 1e-11, n)
}

fn criterion_7() -> Outcome {
    let checks = verify::run(Suite::Phi, 7);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    let samples: usize = checks.iter().map(|c| c.samples).sum();
    let pass = failed.is_empty() && checks.len() == 20 && checks.iter().all(|c| c.samples == 50);
    let mut detail = format!("{} of {} checks pass ({} samples, 4 values of b)", checks.len() - failed.len(), checks.len(), samples);
    if !failed.is_empty() {
        detail.push_str(&format!("; failing: {}", failed.join(", ")));
    }
    outcome(pass, detail)
}

fn criterion_8() -> Outcome {
    let mut rng = verify::rng_for(7, "acceptance: log-derivative identity");
    match verify::log_derivative_identity(&mut rng, 10) {
        Ok(e) => max_err_line(e.max, 1e-9, e.n),
        Err(err) => outcome(false, format!("error: {}", err)),
    }
}

fn criterion_9() -> Outcome {
    let run = || -> Result<Outcome, String> {
        let pair = Pair::new(1, 1).map_err(|e| e.to_string())?;
        let res = evaluator::evaluate_residue_sum(&IntegrandSpec::Pretzel, &pair, None).map_err(|e| e.to_string())?;
        let quad = stateint::state_integral_numeric(&IntegrandSpec::Pretzel, &pair, &Options::default())
            .map_err(|e| e.to_string())?;
        let diff = (res.value - quad.value).norm();
        let npts = res.strip_points.len();
        let (cp, rp, cm, rm, residual) = verify::pretzel_cubic_census().map_err(|e| e.to_string())?;
        let torsion = verify::pretzel_torsion().map_err(|e| e.to_string())?;
        for (x, u) in verify::pretzel_literal_phases().map_err(|e| e.to_string())? {
            println!(
                "    info: x = {:+.6}: exp(iR/2π) = {:.6}{:+.6}i, |u| = {:.6}, u^42 = {:.6}{:+.6}i",
                x,
                u.re,
                u.im,
                u.norm(),
                u.powu(42).re,
                u.powu(42).im
            );
        }
        for z in evaluator::gluing_roots::<f64>(&IntegrandSpec::Pretzel).map_err(|e| e.to_string())? {
            if evaluator::pretzel_cubic_sign(z).0 > 0 {
                let u = evaluator::pretzel_volume_phase(z.re);
                let k = (42.0 * u.arg() / TAU).round();
                println!("    info: x = {:+.6}: u = −exp(2iV/π) = e({}/42), |u − e({}/42)| = {:.3e}", z.re, k, k, (u - e(k / 42.0)).norm());
            }
        }
        let split_ok = npts == 6 && (cp, cm) == (3, 3) && rp == 3 && residual < 1e-12;
        let pass = diff < 1e-7 && split_ok && torsion.n == 3 && torsion.max < 1e-8;
        Ok(outcome(
            pass,
            format!(
                "|residue − quadrature| = {:.3e} < 1e-7; {} strip points, {}+{} on the two cubics ({} and {} real); \
                 max(||u|−1|, |u^42−1|) = {:.3e} < 1e-8 over {} roots",
                diff, npts, cp, cm, rp, rm, torsion.max, torsion.n
            ),
        ))
    };
    run().unwrap_or_else(|m| outcome(false, format!("error: {}", m)))
}

fn criterion_10() -> Outcome {
    let run_once = || {
        Command::new(env!("CARGO_BIN_EXE_stateint"))
            .args(["verify", "--suite", "all", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let run = || -> Result<Outcome, String> {
        let a = run_once()?;
        let b = run_once()?;
        let same = a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code();
        Ok(outcome(
            same && !a.stdout.is_empty(),
            format!("{} bytes of output, identical: {}, exit code {:?}", a.stdout.len(), same, a.status.code()),
        ))
    };
    run().unwrap_or_else(|m| outcome(false, format!("error: {}", m)))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("figure-eight closed form at b = 1", criterion_1),
        ("quadrature vs closed form, 15 cases", criterion_2),
        ("rational Phi vs integral Phi", criterion_3),
        ("M = N = 1, (A,B) = (1,2) ledger", criterion_4),
        ("lambda invariance", criterion_5),
        ("Bezout invariance of G_(M,N)", criterion_6),
        ("Phi functional equations", criterion_7),
        ("cyclic dilog log-derivative identity", criterion_8),
        ("pretzel end to end", criterion_9),
        ("deterministic verify output", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failures += 1;
        }
        println!("[{}] criterion {:>2}: {} — {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    println!("{}/{} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
