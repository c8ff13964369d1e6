//! Seeded verification suites.
//!
//! Each check draws its random points from its own ChaCha stream derived
//! from the user seed and the check's name, so a check produces the same
//! numbers whether it runs alone or as part of `all`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dilog::{self, CutSide, RootOfUnity};
use crate::error::Result;
use crate::evaluator::{self, StripPoint};
use crate::faddeev::{self, AdmissiblePair};
use crate::quadrature::{state_integral_numeric, StateIntegralOptions};
use crate::scalar::{cx, imag, real};
use crate::state_sums::{big_g_mn, big_g_n, g_k, IntegrandSpec};

type C = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Phi,
    Sums,
    Thm1,
    Thm2,
    Pretzel,
    Props,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "phi" => Suite::Phi,
            "sums" => Suite::Sums,
            "thm1" => Suite::Thm1,
            "thm2" => Suite::Thm2,
            "pretzel" => Suite::Pretzel,
            "props" => Suite::Props,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Phi => "phi",
            Suite::Sums => "sums",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Pretzel => "pretzel",
            Suite::Props => "props",
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub max_err: f64,
    pub tol: f64,
    pub samples: usize,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_err <= self.tol
    }
}

/// Running maximum of sample errors.
#[derive(Debug, Default, Clone, Copy)]
pub struct MaxErr {
    pub max: f64,
    pub n: usize,
}

impl MaxErr {
    pub fn push(&mut self, e: f64) {
        self.n += 1;
        if !(e <= self.max) {
            self.max = if e.is_nan() { f64::INFINITY } else { e };
        }
    }
}

pub fn rel_err(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Generator for the check `name` under `seed`.
pub fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a of the check name, mixed with the seed.
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(h ^ seed.wrapping_mul(0x9e3779b97f4a7c15))
}

fn check(
    out: &mut Vec<Check>,
    suite: &'static str,
    name: &str,
    tol: f64,
    seed: u64,
    f: impl FnOnce(&mut ChaCha8Rng) -> Result<MaxErr>,
) {
    let mut rng = rng_for(seed, name);
    let (max_err, samples, error) = match f(&mut rng) {
        Ok(m) => (m.max, m.n, None),
        Err(e) => (f64::NAN, 0, Some(e.to_string())),
    };
    out.push(Check { suite, name: name.to_string(), max_err, tol, samples, error });
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// The four values of `b` used by the functional-equation checks.
pub fn test_bs() -> [(&'static str, f64); 4] {
    [
        ("1", 1.0),
        ("sqrt(1/2)", 0.5f64.sqrt()),
        ("sqrt(2/3)", (2.0f64 / 3.0).sqrt()),
        ("sqrt(3/5)", 0.6f64.sqrt()),
    ]
}

/// The nine AB-by-pair method grid: `(A, B) × (M, N)`.
pub fn method_grid() -> Vec<((u32, u32), (u64, u64))> {
    let mut v = Vec::new();
    for ab in [(1, 2), (1, 3), (2, 3)] {
        for mn in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 3)] {
            v.push((ab, mn));
        }
    }
    v
}

// ---------------------------------------------------------------- props

pub fn li2_reflection(rng: &mut ChaCha8Rng, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
    while m.n < samples {
        let z = cx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        if z.norm() >= 1.0 || z.im.abs() < 1e-3 {
            continue;
        }
        let one = real(1.0);
        let lhs = dilog::li2(z)? + dilog::li2(one - z)?;
        let rhs = real(pi2_6) - z.ln() * (one - z).ln();
        m.push((lhs - rhs).norm());
    }
    Ok(m)
}

pub fn cyclic_functional_equation(rng: &mut ChaCha8Rng, per_n: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    for n in 1..=12u64 {
        let q = RootOfUnity::<f64>::new(n, 1)?;
        for _ in 0..per_n {
            let x = cx(uniform(rng, -0.9, 0.9), uniform(rng, -0.9, 0.9));
            let num = dilog::cyclic_dilog(n, x * q.value, &q)?;
            let den = dilog::cyclic_dilog(n, x, &q)?;
            let one = real(1.0);
            let v = (num / den).powu(n as u32) * (one - x.powu(n as u32)) / (one - x).powu(n as u32);
            m.push((v - one).norm());
        }
    }
    Ok(m)
}

/// `Σ_{m=1}^{M−1} x^m/(1−q^m) = (M−1)/2·x^M + (1−x^M)·x·(log D_M)′(x)`.
pub fn log_derivative_identity(rng: &mut ChaCha8Rng, per_q: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    for order in 2..=12u64 {
        for e in 1..order {
            let q = RootOfUnity::<f64>::new(order, e as i64)?;
            if !q.is_primitive() {
                continue;
            }
            for _ in 0..per_q {
                let x = cx(uniform(rng, -0.9, 0.9), uniform(rng, -0.9, 0.9));
                let one = real(1.0);
                let mut lhs = C::new(0.0, 0.0);
                for k in 1..order as i64 {
                    lhs += x.powi(k as i32) / (one - q.pow(k));
                }
                let xm = x.powu(order as u32);
                let rhs = xm * ((order - 1) as f64 / 2.0)
                    + (one - xm) * x * dilog::cyclic_dilog_log_derivative(order, x, &q)?;
                m.push((lhs - rhs).norm() / lhs.norm().max(1.0));
            }
        }
    }
    Ok(m)
}

pub fn pochhammer_index_addition(rng: &mut ChaCha8Rng, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    for _ in 0..samples {
        let a = cx(uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8));
        let t = uniform(rng, 0.0, std::f64::consts::TAU);
        let q = cx(t.cos(), t.sin()) * uniform(rng, 0.7, 1.1);
        for k in -5..=5i64 {
            for l in -5..=5i64 {
                let lhs = dilog::pochhammer(a, q, k + l)?;
                let rhs = dilog::pochhammer(a, q, k)? * dilog::pochhammer(a * q.powi(k as i32), q, l)?;
                m.push(rel_err(lhs, rhs));
            }
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------- phi

fn strip_point(rng: &mut ChaCha8Rng, b: f64, re: f64, frac: f64) -> C {
    let g = faddeev::half_period_sum(b);
    cx(uniform(rng, -re, re), uniform(rng, -frac, frac) * g)
}

pub fn phi_inversion(rng: &mut ChaCha8Rng, b: f64, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    let p0 = faddeev::phi_at_zero(b);
    for _ in 0..samples {
        let x = strip_point(rng, b, 2.0, 0.9);
        let lhs = faddeev::phi(b, x)? * faddeev::phi(b, -x)?;
        let rhs = (imag(std::f64::consts::PI) * x * x).exp() * p0 * p0;
        m.push(rel_err(lhs, rhs));
    }
    Ok(m)
}

/// `Φ(y + iβ)/Φ(y) = 1/(1 − Q·e^{2πβ(y − c_b)})`, `Q = e^{2πiβ²}`, with both
/// `y` and `y + iβ` inside the strip so that each side is an independent
/// integral evaluation.
pub fn phi_shift(rng: &mut ChaCha8Rng, b: f64, beta: f64, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    let g = faddeev::half_period_sum(b);
    let c_b = imag(g);
    let q = imag(std::f64::consts::TAU * beta * beta).exp();
    for _ in 0..samples {
        let y = cx(uniform(rng, -1.5, 1.5), uniform(rng, -0.92 * g, 0.92 * g - beta));
        let lhs = faddeev::phi(b, y + imag(beta))? / faddeev::phi(b, y)?;
        let x0 = y - c_b;
        let rhs = (real(1.0) - q * (x0 * (std::f64::consts::TAU * beta)).exp()).inv();
        m.push(rel_err(lhs, rhs));
    }
    Ok(m)
}

pub fn phi_asymptotic_left(rng: &mut ChaCha8Rng, b: f64, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    for _ in 0..samples {
        let x = real(-5.0 - uniform(rng, 0.0, 1.0));
        m.push((faddeev::phi(b, x)? - 1.0).norm());
    }
    Ok(m)
}

pub fn phi_asymptotic_right(rng: &mut ChaCha8Rng, b: f64, samples: usize) -> Result<MaxErr> {
    let mut m = MaxErr::default();
    let p0 = faddeev::phi_at_zero(b);
    for _ in 0..samples {
        let x = cx(5.0 + uniform(rng, 0.0, 1.0), uniform(rng, 0.01, 0.2));
        let e = (imag(std::f64::consts::PI) * x * x).exp();
        m.push((faddeev::phi(b, x)? - p0 * p0 * e).norm() / e.norm());
    }
    Ok(m)
}

// ---------------------------------------------------------------- thm2

/// 5×5 grid of `z` used for the closed form of `Φ_b` (kept away from the
/// branch cuts of every factor, which lie on `Im z ∈ 2πℤ`).
pub fn rational_grid() -> Vec<C> {
    let res = [-1.5, -0.7, 0.1, 0.8, 1.6];
    let ims = [-5.5, -2.6, 0.4, 3.1, 5.9];
    let mut v = Vec::new();
    for &r in &res {
        for &i in &ims {
            v.push(cx(r, i));
        }
    }
    v
}

pub fn rational_vs_integral(m: u64, n: u64) -> Result<MaxErr> {
    let pair = AdmissiblePair::<f64>::new(m, n)?;
    let mut e = MaxErr::default();
    for z in rational_grid() {
        let closed = faddeev::phi_rational(&pair, z)?;
        let integral = faddeev::phi(pair.b, z / (std::f64::consts::TAU * pair.s) - pair.c_b)?;
        e.push(rel_err(closed, integral));
    }
    Ok(e)
}

pub fn quotient_identity(rng: &mut ChaCha8Rng, m: u64, n: u64, samples: usize) -> Result<MaxErr> {
    let pair = AdmissiblePair::<f64>::new(m, n)?;
    let mut e = MaxErr::default();
    let one = real(1.0);
    while e.n < samples {
        let z = cx(uniform(rng, -2.0, 2.0), uniform(rng, -6.0, 6.0));
        if (z.im / std::f64::consts::TAU - (z.im / std::f64::consts::TAU).round()).abs() < 1e-3 {
            continue;
        }
        let q = faddeev::phi_rational(&pair, z)? / faddeev::phi_rational_shifted(&pair, z)?;
        let rhs = (one - (z / n as f64).exp()) * (one - (z / m as f64).exp());
        e.push(rel_err(q, rhs));
    }
    Ok(e)
}

pub fn shifted_vs_integral(rng: &mut ChaCha8Rng, m: u64, n: u64, samples: usize) -> Result<MaxErr> {
    let pair = AdmissiblePair::<f64>::new(m, n)?;
    let mut e = MaxErr::default();
    while e.n < samples {
        let z = cx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        if z.im.abs() < 1e-3 {
            continue;
        }
        let closed = faddeev::phi_rational_shifted(&pair, z)?;
        let integral = faddeev::phi(pair.b, z / (std::f64::consts::TAU * pair.s) + pair.c_b)?;
        e.push(rel_err(closed, integral));
    }
    Ok(e)
}

// ---------------------------------------------------------------- sums

fn all_specs() -> [IntegrandSpec; 4] {
    [
        IntegrandSpec::Ab { a: 1, b: 2 },
        IntegrandSpec::Ab { a: 1, b: 3 },
        IntegrandSpec::Ab { a: 2, b: 3 },
        IntegrandSpec::Pretzel,
    ]
}

fn random_x(rng: &mut ChaCha8Rng) -> C {
    let t = uniform(rng, 0.0, std::f64::consts::TAU);
    cx(t.cos(), t.sin()) * uniform(rng, 0.3, 0.8)
}

/// `r_{k+N} = r_k·r_N` and `r_N(zq) = r_N(z)` when `q^N = 1`.
pub fn quasi_periodicity(rng: &mut ChaCha8Rng, invariance: bool) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for spec in all_specs() {
        for n in [2u64, 3, 5] {
            for ex in 1..n as i64 {
                let q = RootOfUnity::<f64>::new(n, ex)?;
                let x = random_x(rng);
                let rn = g_k(&spec, n as i64, x, &q)?;
                if invariance {
                    e.push(rel_err(g_k(&spec, n as i64, x * q.value, &q)?, rn));
                } else {
                    for k in -3..=3i64 {
                        let lhs = g_k(&spec, k + n as i64, x, &q)?;
                        let rhs = g_k(&spec, k, x, &q)? * rn;
                        e.push(rel_err(lhs, rhs));
                    }
                }
            }
        }
    }
    Ok(e)
}

/// `f(x + imb + in/b)/f(x) = g⁺_m(e^{2πbx}; q₊)·g⁻_n(e^{2πx/b}; q₋)` for the
/// shifted AB integrand `f(x) = Φ(x + c_b)^B e^{−Aπi(x + c_b)²}`.
pub fn faddeev_consistency(rng: &mut ChaCha8Rng) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for (a, bb) in [(1u32, 2u32), (1, 3), (2, 3)] {
        let spec = IntegrandSpec::Ab { a, b: bb };
        for (m, n) in [(1u64, 1u64), (1, 2), (2, 3)] {
            let pair = AdmissiblePair::<f64>::new(m, n)?;
            let g = pair.gamma();
            let f = |x: C| -> Result<C> {
                let y = x + pair.c_b;
                Ok(faddeev::phi(pair.b, y)?.powu(bb) * (imag(-std::f64::consts::PI * a as f64) * y * y).exp())
            };
            let mut re = uniform(rng, 0.1, 0.8);
            if rng.gen::<bool>() {
                re = -re;
            }
            let x = cx(re, uniform(rng, -3.2 * g, -2.8 * g));
            let f0 = f(x)?;
            for i in 0..=2i64 {
                for j in 0..=2i64 {
                    let shift = imag(pair.b * i as f64 + j as f64 / pair.b);
                    let lhs = f(x + shift)? / f0;
                    let xp = (x * (std::f64::consts::TAU * pair.b)).exp();
                    let xm = (x * (std::f64::consts::TAU / pair.b)).exp();
                    let rhs = g_k(&spec, i, xp, &pair.q_plus)? * g_k(&spec, j, xm, &pair.q_minus)?;
                    e.push(rel_err(lhs, rhs));
                }
            }
        }
    }
    Ok(e)
}

/// `g⁺_N(e^{2πbw}; q₊) = g⁻_M(e^{2πw/b}; q₋) = g(e^{2πsw})`.
pub fn total_multiplier(rng: &mut ChaCha8Rng) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for spec in all_specs() {
        for (m, n) in [(1u64, 1u64), (1, 2), (2, 3), (3, 5)] {
            let pair = AdmissiblePair::<f64>::new(m, n)?;
            let w = cx(uniform(rng, -0.1, 0.1), uniform(rng, -0.5, 0.5)) / pair.s;
            let t = std::f64::consts::TAU;
            let x = (w * (t * pair.s)).exp();
            let gp = g_k(&spec, n as i64, (w * (t * pair.b)).exp(), &pair.q_plus)?;
            let gm = g_k(&spec, m as i64, (w * (t / pair.b)).exp(), &pair.q_minus)?;
            let g = spec.g(x);
            e.push(rel_err(gp, g));
            e.push(rel_err(gm, g));
        }
    }
    Ok(e)
}

/// A random `x` with `|g(x)| = 1`, where the multipliers `g_k` neither grow
/// nor decay along long recursions.
pub fn unit_multiplier_point(rng: &mut ChaCha8Rng, spec: &IntegrandSpec) -> C {
    let mut phi = uniform(rng, 0.1, 0.9);
    if rng.gen::<bool>() {
        phi = -phi;
    }
    let u = cx(phi.cos(), phi.sin());
    let h = |r: f64| spec.g(u * r).norm().ln();
    let (mut lo, mut hi) = (1e-3, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    u * (0.5 * (lo + hi))
}

/// `G_{M,N}` on `x₊ = t^M, x₋ = t^N` for Bézout data `(P + rN, Q − rM)`.
pub fn bezout_independence(rng: &mut ChaCha8Rng, m: u64, n: u64) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    let base = AdmissiblePair::<f64>::new(m, n)?;
    for spec in all_specs() {
        let t = unit_multiplier_point(rng, &spec).powf(1.0 / (m * n) as f64);
        let (xp, xm) = (t.powu(m as u32), t.powu(n as u32));
        let reference = big_g_mn(&spec, &base, xp, xm)?;
        for r in -2..=2i64 {
            let pr = base.shifted_bezout(r)?;
            e.push(rel_err(big_g_mn(&spec, &pr, xp, xm)?, reference));
        }
    }
    Ok(e)
}

pub fn first_row_reduction(rng: &mut ChaCha8Rng) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for spec in all_specs() {
        for n in 1..=5u64 {
            let pair = AdmissiblePair::<f64>::new(1, n)?;
            let x = random_x(rng);
            e.push(rel_err(big_g_mn(&spec, &pair, x, random_x(rng))?, big_g_n(&spec, n, x)?));
        }
    }
    Ok(e)
}

// ---------------------------------------------------------------- thm1

/// `e^{πi/6}/√3·(e^{V/2π} − e^{−V/2π})`, `V = 2 Im Li₂(e^{πi/3})`.
pub fn figure_eight_value() -> Result<C> {
    let pi = std::f64::consts::PI;
    let v = 2.0 * dilog::li2(cx((pi / 3.0).cos(), (pi / 3.0).sin()))?.im;
    let c = v / (2.0 * pi);
    Ok(imag(pi / 6.0).exp() / 3f64.sqrt() * (c.exp() - (-c).exp()))
}

pub fn closed_form_reference() -> Result<MaxErr> {
    let pair = AdmissiblePair::<f64>::new(1, 1)?;
    let v = evaluator::evaluate_thm1(&IntegrandSpec::Ab { a: 1, b: 2 }, &pair, None)?.value;
    let mut e = MaxErr::default();
    e.push((v - figure_eight_value()?).norm());
    Ok(e)
}

/// Five generic λ spanning the admissible range, jittered by `rng`.
pub fn lambda_samples(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Vec<f64> {
    (0..5).map(|j| lo + (hi - lo) * (j as f64 + uniform(rng, 0.2, 0.8)) / 5.0).collect()
}

pub fn lambda_invariance(rng: &mut ChaCha8Rng, residue: bool) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for ((a, b), (m, n)) in method_grid() {
        let spec = IntegrandSpec::Ab { a, b };
        let pair = AdmissiblePair::<f64>::new(m, n)?;
        let (lo, hi) = spec.lambda_range(&pair);
        let reference = evaluator::evaluate_thm1(&spec, &pair, None)?.value;
        for l in lambda_samples(rng, lo, hi) {
            let v = if residue {
                evaluator::evaluate_residue_sum(&spec, &pair, Some(l))?.value
            } else {
                evaluator::evaluate_thm1(&spec, &pair, Some(l))?.value
            };
            e.push((v - reference).norm());
        }
    }
    Ok(e)
}

pub fn closed_form_bezout_invariance() -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for (a, b) in [(1u32, 2u32), (1, 3), (2, 3)] {
        let spec = IntegrandSpec::Ab { a, b };
        for (m, n) in [(2u64, 3u64), (3, 5), (1, 3), (2, 1)] {
            let base = AdmissiblePair::<f64>::new(m, n)?;
            let reference = evaluator::evaluate_thm1(&spec, &base, None)?.value;
            for r in -2..=2i64 {
                let v = evaluator::evaluate_thm1(&spec, &base.shifted_bezout(r)?, None)?.value;
                e.push((v - reference).norm());
            }
        }
    }
    Ok(e)
}

pub fn m1_specialization() -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for (a, b) in [(1u32, 2u32), (1, 3), (2, 3), (1, 4), (3, 4)] {
        let spec = IntegrandSpec::Ab { a, b };
        for n in 1..=5u64 {
            let pair = AdmissiblePair::<f64>::new(1, n)?;
            let t = evaluator::evaluate_thm1(&spec, &pair, None)?.value;
            let c = evaluator::evaluate_cor_m1(&spec, n, None)?.value;
            e.push((t - c).norm());
        }
    }
    Ok(e)
}

pub fn closed_vs_residue() -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for ((a, b), (m, n)) in method_grid() {
        let spec = IntegrandSpec::Ab { a, b };
        let pair = AdmissiblePair::<f64>::new(m, n)?;
        let t = evaluator::evaluate_thm1(&spec, &pair, None)?.value;
        let r = evaluator::evaluate_residue_sum(&spec, &pair, None)?.value;
        e.push((t - r).norm());
    }
    Ok(e)
}

pub fn closed_vs_quadrature(cases: &[((u32, u32), (u64, u64))]) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for &((a, b), (m, n)) in cases {
        let spec = IntegrandSpec::Ab { a, b };
        let pair = AdmissiblePair::<f64>::new(m, n)?;
        let t = evaluator::evaluate_thm1(&spec, &pair, None)?.value;
        let q = state_integral_numeric(&spec, &pair, &StateIntegralOptions::default())?.value;
        e.push((t - q).norm());
    }
    Ok(e)
}

// ---------------------------------------------------------------- pretzel

pub fn pretzel_residue_vs_quadrature(m: u64, n: u64) -> Result<MaxErr> {
    let pair = AdmissiblePair::<f64>::new(m, n)?;
    let r = evaluator::evaluate_residue_sum(&IntegrandSpec::Pretzel, &pair, None)?.value;
    let q = state_integral_numeric(&IntegrandSpec::Pretzel, &pair, &StateIntegralOptions::default())?.value;
    let mut e = MaxErr::default();
    e.push((r - q).norm());
    Ok(e)
}

/// Splitting of the six pretzel gluing roots between the two cubics
/// `z = ±(1 − z²)(1 − z)`: returns `(count_plus, real_plus, count_minus,
/// real_minus, max_residual)`.
pub fn pretzel_cubic_census() -> Result<(usize, usize, usize, usize, f64)> {
    let roots = evaluator::gluing_roots::<f64>(&IntegrandSpec::Pretzel)?;
    let (mut cp, mut rp, mut cm, mut rm, mut res) = (0, 0, 0, 0, 0.0f64);
    for z in roots {
        let (sign, r) = evaluator::pretzel_cubic_sign(z);
        res = res.max(r);
        let is_real = z.im == 0.0;
        if sign > 0 {
            cp += 1;
            rp += is_real as usize;
        } else {
            cm += 1;
            rm += is_real as usize;
        }
    }
    Ok((cp, rp, cm, rm, res))
}

/// For the three roots of the totally real cubic: `max(| |u| − 1 |, |u^42 − 1|)`
/// with `u` the complex-volume phase.
pub fn pretzel_torsion() -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for z in evaluator::gluing_roots::<f64>(&IntegrandSpec::Pretzel)? {
        if evaluator::pretzel_cubic_sign(z).0 > 0 {
            let u = evaluator::pretzel_volume_phase(z.re);
            e.push((u.norm() - 1.0).abs().max((u.powu(42) - 1.0).norm()));
        }
    }
    Ok(e)
}

/// `exp(i·R(z, log z)/(2π))` for each real root of the totally real cubic, with
/// `log z` from its strip point at the default λ for pair (1,1).
pub fn pretzel_literal_phases() -> Result<Vec<(f64, C)>> {
    let pair = AdmissiblePair::<f64>::new(1, 1)?;
    let (_, pts) = evaluator::resolve_strip(&IntegrandSpec::Pretzel, &pair, None)?;
    let mut out = Vec::new();
    for sp in pts.iter().filter(|p: &&StripPoint<f64>| evaluator::pretzel_cubic_sign(p.z).0 > 0) {
        let r = dilog::rogers_sided(sp.z, &sp.log_z, CutSide::Above)?;
        out.push((sp.z.re, (imag(1.0) * r / std::f64::consts::TAU).exp()));
    }
    Ok(out)
}

pub fn pretzel_lambda_invariance(rng: &mut ChaCha8Rng) -> Result<MaxErr> {
    let mut e = MaxErr::default();
    for (m, n) in [(1u64, 1u64), (1, 2), (2, 1), (2, 3), (1, 3)] {
        let pair = AdmissiblePair::<f64>::new(m, n)?;
        let (lo, hi) = IntegrandSpec::Pretzel.lambda_range(&pair);
        let lo = lo.max(evaluator::PRETZEL_RESIDUE_LAMBDA_MIN);
        let reference = evaluator::evaluate_residue_sum(&IntegrandSpec::Pretzel, &pair, None)?.value;
        for l in lambda_samples(rng, lo, hi) {
            let v = evaluator::evaluate_residue_sum(&IntegrandSpec::Pretzel, &pair, Some(l))?.value;
            e.push((v - reference).norm());
        }
    }
    Ok(e)
}

// ---------------------------------------------------------------- driver

fn single(f: impl FnOnce() -> Result<MaxErr>) -> impl FnOnce(&mut ChaCha8Rng) -> Result<MaxErr> {
    move |_| f()
}

fn run_props(out: &mut Vec<Check>, seed: u64) {
    let s = "props";
    check(out, s, "li2 reflection", 1e-11, seed, |r| li2_reflection(r, 100));
    check(out, s, "cyclic dilog functional equation", 1e-10, seed, |r| cyclic_functional_equation(r, 10));
    check(out, s, "cyclic dilog log-derivative identity", 1e-9, seed, |r| log_derivative_identity(r, 10));
    check(out, s, "pochhammer index addition", 1e-11, seed, |r| pochhammer_index_addition(r, 5));
}

fn run_phi(out: &mut Vec<Check>, seed: u64) {
    let s = "phi";
    for (name, b) in test_bs() {
        check(out, s, &format!("inversion b={}", name), 1e-10, seed, |r| phi_inversion(r, b, 50));
        check(out, s, &format!("shift by ib b={}", name), 1e-9, seed, |r| phi_shift(r, b, b, 50));
        check(out, s, &format!("shift by i/b b={}", name), 1e-9, seed, |r| phi_shift(r, b, 1.0 / b, 50));
        check(out, s, &format!("asymptotics x<<0 b={}", name), 1e-6, seed, |r| phi_asymptotic_left(r, b, 50));
        check(out, s, &format!("asymptotics x>>0 b={}", name), 1e-6, seed, |r| phi_asymptotic_right(r, b, 50));
    }
}

fn run_thm2(out: &mut Vec<Check>, seed: u64) {
    let s = "thm2";
    for (m, n) in [(1u64, 1u64), (1, 2), (1, 3), (2, 3), (3, 5)] {
        check(out, s, &format!("closed form vs integral ({},{})", m, n), 1e-8, seed, single(move || rational_vs_integral(m, n)));
    }
    check(out, s, "quotient identity (2,3)", 1e-10, seed, |r| quotient_identity(r, 2, 3, 20));
    check(out, s, "shifted closed form vs integral (3,5)", 1e-8, seed, |r| shifted_vs_integral(r, 3, 5, 10));
}

fn run_sums(out: &mut Vec<Check>, seed: u64) {
    let s = "sums";
    check(out, s, "quasi-periodicity r_(k+N) = r_k r_N", 1e-10, seed, |r| quasi_periodicity(r, false));
    check(out, s, "invariance r_N(zq) = r_N(z)", 1e-10, seed, |r| quasi_periodicity(r, true));
    check(out, s, "multipliers vs Phi quasi-periodicity", 1e-8, seed, faddeev_consistency);
    check(out, s, "total multiplier", 1e-10, seed, total_multiplier);
    for (m, n) in [(2u64, 3u64), (3, 5), (4, 7)] {
        check(out, s, &format!("Bezout independence ({},{})", m, n), 1e-11, seed, move |r| bezout_independence(r, m, n));
    }
    check(out, s, "G_(1,N) = G_N", 1e-12, seed, first_row_reduction);
}

fn run_thm1(out: &mut Vec<Check>, seed: u64) {
    let s = "thm1";
    check(out, s, "I_(1,2) at b=1 vs volume formula", 1e-10, seed, single(closed_form_reference));
    check(out, s, "lambda invariance, closed form", 1e-9, seed, |r| lambda_invariance(r, false));
    check(out, s, "lambda invariance, residue sum", 1e-9, seed, |r| lambda_invariance(r, true));
    check(out, s, "Bezout invariance, closed form", 1e-11, seed, single(closed_form_bezout_invariance));
    check(out, s, "M=1 specialization", 1e-11, seed, single(m1_specialization));
    check(out, s, "closed form vs residue sum", 1e-10, seed, single(closed_vs_residue));
    check(out, s, "closed form vs quadrature", 1e-7, seed, single(|| closed_vs_quadrature(&method_grid())));
}

fn run_pretzel(out: &mut Vec<Check>, seed: u64) {
    let s = "pretzel";
    for (m, n) in [(1u64, 1u64), (1, 2)] {
        check(out, s, &format!("residue sum vs quadrature ({},{})", m, n), 1e-7, seed, single(move || pretzel_residue_vs_quadrature(m, n)));
    }
    check(out, s, "cubic split 3+3, real roots 3+1", 0.0, seed, |_| {
        let (cp, rp, cm, rm, res) = pretzel_cubic_census()?;
        let mut e = MaxErr::default();
        e.push(if (cp, rp, cm, rm) == (3, 3, 3, 1) && res < 1e-12 { 0.0 } else { 1.0 });
        Ok(e)
    });
    check(out, s, "complex-volume phases are 42nd roots of unity", 1e-8, seed, single(pretzel_torsion));
    check(out, s, "lambda invariance, residue sum", 1e-9, seed, pretzel_lambda_invariance);
}

/// Runs `suite` with random points drawn from `seed`.
pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Props {
        run_props(&mut out, seed);
    }
    if all || suite == Suite::Phi {
        run_phi(&mut out, seed);
    }
    if all || suite == Suite::Thm2 {
        run_thm2(&mut out, seed);
    }
    if all || suite == Suite::Sums {
        run_sums(&mut out, seed);
    }
    if all || suite == Suite::Thm1 {
        run_thm1(&mut out, seed);
    }
    if all || suite == Suite::Pretzel {
        run_pretzel(&mut out, seed);
    }
    out
}

/// Fixed-width table of check results.
pub fn format_table(checks: &[Check]) -> String {
    let mut s = String::new();
    s.push_str(&format!("{:<8} {:<48} {:>7} {:>11} {:>8}  {}\n", "suite", "check", "samples", "max_err", "tol", "result"));
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{:<8} {:<48} {:>7} {:>11.3e} {:>8.1e}  {}",
            c.suite, c.name, c.samples, c.max_err, c.tol, status
        ));
        if let Some(e) = &c.error {
            s.push_str(&format!("  ({})", e));
        }
        s.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    s.push_str(&format!("{}/{} checks passed\n", passed, checks.len()));
    s
}
