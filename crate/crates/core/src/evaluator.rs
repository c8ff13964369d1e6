//! Closed-form evaluation of the state-integrals at `b² = M/N`.
//!
//! The integrals are finite sums over the strip set: the solutions of the
//! gluing equation `g(z) = 1`, each lifted to the unique `w` with
//! `z = e^{2πsw}` and `0 < s·Im w − λ < 1`.  Every branch-sensitive quantity
//! (`log z`, the roots `θ± = e^{2πb^{±1}w}`) is derived from `w`.
//!
//! Two assemblies are offered: the explicit formula in terms of the Rogers
//! dilogarithm and cyclic dilogarithms ([`evaluate_thm1`],
//! [`evaluate_cor_m1`]) and the raw residue sum of the shifted integrand
//! against the state-sum ([`evaluate_residue_sum`]).
//!
//! # Branch winding
//!
//! Write `ζ = log z` for the strip branch and `L = Log(1 − z)` principal.
//! The gluing equation only fixes `A(ζ − πi) − B·L = 2πi·n` for some integer
//! `n`.  The explicit formula is stated for the branch with `n = 0`; for
//! `n ≠ 0` each summand picks up the factor
//! `exp(n·(ζ + πi(2M + 2N + 1)) / (2MN))`, which is what keeps the sum
//! independent of λ.  The integer is recorded per point in the report.

use num_complex::Complex;

use crate::dilog::{self, BranchedLog, CutSide};
use crate::error::{Error, Result};
use crate::faddeev::{self, AdmissiblePair};
use crate::report::{check_value, Diagnostics, EvaluationReport, Method};
use crate::roots::{poly_eval, poly_mul, poly_roots};
use crate::scalar::{cx, imag, real, Real};
use crate::state_sums::{big_g_mn, big_g_n, IntegrandSpec};
use crate::sum::ComplexSum;

/// Side of the cut used when a strip point puts an argument exactly on a
/// branch cut (real gluing roots do).  Any fixed choice gives the same sum.
const SIDE: CutSide = CutSide::Above;

/// Distance within which `s·Im w − λ` counts as touching the strip boundary.
pub const GENERICITY_TOL: f64 = 1e-6;

/// The pretzel residue sum is only trusted for `λ > −1`: below that the
/// shifted contour no longer encloses the same pole set as the integral, and
/// the sum drifts away from quadrature.
pub const PRETZEL_RESIDUE_LAMBDA_MIN: f64 = -1.0;

/// A lifted solution of the gluing equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint<T: Real> {
    pub w: Complex<T>,
    pub z: Complex<T>,
    pub theta_plus: Complex<T>,
    pub theta_minus: Complex<T>,
    pub log_z: BranchedLog<T>,
}

/// Ascending coefficients of the polynomial whose roots solve `g(z) = 1`.
pub fn gluing_polynomial<T: Real>(spec: &IntegrandSpec) -> Vec<Complex<T>> {
    let one = real::<T>(T::one());
    let zero = real::<T>(T::zero());
    match *spec {
        IntegrandSpec::Ab { a, b } => {
            // (−z)^A − (1 − z)^B
            let mut c = vec![zero; b as usize + 1];
            c[a as usize] = c[a as usize] + if a % 2 == 0 { one } else { -one };
            let mut binom = 1.0f64;
            for j in 0..=b as usize {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                c[j] = c[j] - real(T::lit(sign * binom));
                binom = binom * (b as f64 - j as f64) / (j as f64 + 1.0);
            }
            c
        }
        IntegrandSpec::Pretzel => {
            // z² − (1 − z)⁴ (1 + z)²
            let omz = [one, -one];
            let opz = [one, one];
            let mut p = vec![one];
            for _ in 0..4 {
                p = poly_mul(&p, &omz);
            }
            for _ in 0..2 {
                p = poly_mul(&p, &opz);
            }
            let mut c: Vec<Complex<T>> = p.into_iter().map(|x| -x).collect();
            c[2] = c[2] + one;
            c
        }
    }
}

/// All solutions of `g(z) = 1` (with `z ∉ {0, 1}`), Newton-polished.
/// Real roots are returned with an exactly zero imaginary part.
pub fn gluing_roots<T: Real>(spec: &IntegrandSpec) -> Result<Vec<Complex<T>>> {
    spec.validate()?;
    let c = gluing_polynomial::<T>(spec);
    let mut roots: Vec<Complex<T>> = poly_roots(&c)?
        .into_iter()
        .filter(|z| z.norm() > T::lit(1e-8) && (*z - T::one()).norm() > T::lit(1e-8))
        .collect();
    let tol_deg = T::lit(1e-8);
    for i in 0..roots.len() {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() < tol_deg {
                return Err(Error::DegenerateRoot(format!("{:?} and {:?}", roots[i], roots[j])));
            }
        }
    }
    for z in roots.iter_mut() {
        if z.im.abs() <= T::lit(1e-12) * z.norm().max(T::one()) {
            *z = real(z.re);
        }
        let (p, dp) = poly_eval(&c, *z);
        let scale: T = c.iter().map(|a| a.norm()).fold(T::zero(), |m, x| m.max(x)) * z.norm().max(T::one()).powi(c.len() as i32);
        if p.norm() > T::lit(1e-13).max(T::epsilon() * T::lit(64.0)) * scale || dp.norm() == T::zero() {
            return Err(Error::NoConvergence(format!("root {:?} did not polish", z)));
        }
    }
    roots.sort_by(|x, y| {
        let kx = (x.arg().as_f64(), x.norm().as_f64());
        let ky = (y.arg().as_f64(), y.norm().as_f64());
        kx.partial_cmp(&ky).unwrap()
    });
    Ok(roots)
}

/// The strip point of `z` for contour parameter λ, if λ is generic for it.
pub fn lift_root<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>, lambda: T) -> Result<StripPoint<T>> {
    let frac = z.arg() / T::TAU();
    let k = (lambda - frac).floor() + T::one();
    let t = frac + k - lambda;
    let g = T::lit(GENERICITY_TOL);
    if t < g || t > T::one() - g {
        return Err(Error::NonGenericLambda(lambda.as_f64()));
    }
    let log_value = cx(z.norm().ln(), z.arg() + T::TAU() * k);
    let w = log_value / (T::TAU() * pair.s);
    let zz = log_value.exp();
    let (nt, mt) = (T::int(pair.n as i64), T::int(pair.m as i64));
    let theta_plus = (log_value / nt).exp();
    let theta_minus = (log_value / mt).exp();
    let drift = T::lit(1e-10).max(T::epsilon() * T::lit(1e3));
    if (theta_plus.powu(pair.n as u32) - zz).norm() > drift * zz.norm()
        || (theta_minus.powu(pair.m as u32) - zz).norm() > drift * zz.norm()
    {
        return Err(Error::NonFinite("root drift in theta".into()));
    }
    Ok(StripPoint { w, z: zz, theta_plus, theta_minus, log_z: BranchedLog { value: log_value, base: zz } })
}

fn check_lambda<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>, lambda: T) -> Result<()> {
    let (lo, hi) = spec.lambda_range(pair);
    if !(lambda > lo && lambda < hi) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {} outside ({}, {})",
            lambda.as_f64(),
            lo.as_f64(),
            hi.as_f64()
        )));
    }
    Ok(())
}

/// Lifts of all gluing roots into the strip `0 < s·Im w − λ < 1`, ordered by
/// `s·Im w`.
pub fn strip_set<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>, lambda: T) -> Result<Vec<StripPoint<T>>> {
    check_lambda(spec, pair, lambda)?;
    let mut pts = gluing_roots::<T>(spec)?
        .into_iter()
        .map(|z| lift_root(pair, z, lambda))
        .collect::<Result<Vec<_>>>()?;
    pts.sort_by(|a, b| a.w.im.partial_cmp(&b.w.im).unwrap().then(a.w.re.partial_cmp(&b.w.re).unwrap()));
    Ok(pts)
}

/// Default contour parameter: `−0.05·|range|` (capped for the pretzel residue
/// sum's restriction).
pub fn default_lambda<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>) -> T {
    let (lo, hi) = spec.lambda_range(pair);
    let mut width = hi - lo;
    if let IntegrandSpec::Pretzel = spec {
        width = width.min(T::one());
    }
    -T::lit(0.05) * width
}

/// Strip set for an explicit λ, or for the default λ with the retry rule:
/// on a non-generic default, divide by 2, 3, 5, 7, ... until generic.
pub fn resolve_strip<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    lambda: Option<T>,
) -> Result<(T, Vec<StripPoint<T>>)> {
    if let Some(l) = lambda {
        return Ok((l, strip_set(spec, pair, l)?));
    }
    let base = default_lambda(spec, pair);
    let mut last = Error::NonGenericLambda(base.as_f64());
    for d in [1, 2, 3, 5, 7, 11, 13, 17, 19, 23] {
        let l = base / T::int(d);
        match strip_set(spec, pair, l) {
            Ok(s) => return Ok((l, s)),
            Err(e @ Error::NonGenericLambda(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn ab_params(spec: &IntegrandSpec) -> Result<(u32, u32)> {
    match *spec {
        IntegrandSpec::Ab { a, b } => {
            spec.validate()?;
            Ok((a, b))
        }
        IntegrandSpec::Pretzel => Err(Error::InvalidParameter("this assembly needs an AB integrand".into())),
    }
}

/// Winding integer `n` with `A(ζ − πi) − B·Log(1 − z) = 2πi·n`.
fn branch_winding<T: Real>(a: u32, b: u32, log_z: Complex<T>, l1: Complex<T>) -> Result<i64> {
    let d = (log_z - imag(T::PI())) * T::int(a as i64) - l1 * T::int(b as i64);
    let n = d.im / T::TAU();
    let r = n.round();
    let tol = T::lit(1e-6);
    if d.re.abs() > tol || (n - r).abs() > tol {
        return Err(Error::DomainError("strip point does not satisfy the gluing equation".into()));
    }
    Ok(r.to_i64().unwrap())
}

/// `log` of the slashed cyclic dilogarithm `(1 − x)·D_N(x; q)`.
fn log_slashed<T: Real>(n: u64, x: Complex<T>, q: &dilog::RootOfUnity<T>) -> Result<Complex<T>> {
    Ok(dilog::log1m_sided(x, SIDE) + dilog::cyclic_dilog_log_sided(n, x, q, SIDE)?)
}

fn finish<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    method: Method,
    lambda: T,
    pts: Vec<StripPoint<T>>,
    prefactor: Complex<T>,
    terms: Vec<Complex<T>>,
    windings: Vec<i64>,
) -> Result<EvaluationReport<T>> {
    let mut acc = ComplexSum::new();
    for &t in &terms {
        acc.add(t);
    }
    let value = check_value(prefactor * acc.value(), "evaluation")?;
    Ok(EvaluationReport {
        value,
        method,
        spec: *spec,
        pair: *pair,
        strip_points: pts,
        lambda,
        diagnostics: Diagnostics { terms: terms.into_iter().map(|t| prefactor * t).collect(), windings, ..Diagnostics::default() },
    })
}

/// Explicit closed form of the AB state-integral at `b² = M/N`:
///
/// `e^{πi(B + 3A(M+N+1)² − 6MN)/(12MN)} s⁻¹ Σ_w e^{(iB/2πs²)R(z)} (1−z)^{αB}
///  G_{M,N}(θ₊, θ₋) / (z g′(z) D̸_N(θ₊)^B D̸_M(θ₋)^B)`, `α = (2N+1)(2M+1)/(4MN)`,
///
/// with the branch-winding factor described in the module docs.
pub fn evaluate_thm1<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    lambda: Option<T>,
) -> Result<EvaluationReport<T>> {
    let (a, b) = ab_params(spec)?;
    let (lambda, pts) = resolve_strip(spec, pair, lambda)?;
    let (m, n) = (pair.m as i64, pair.n as i64);
    let (at, bt) = (T::int(a as i64), T::int(b as i64));
    let mn2 = T::int(2 * m * n);
    let alpha = T::int((2 * n + 1) * (2 * m + 1)) / T::int(4 * m * n);
    let k_phase = T::int(2 * m + 2 * n + 1);
    let one = real::<T>(T::one());
    let prefactor = dilog::unit_fraction::<T>((b as i64 + 3 * a as i64 * (m + n + 1).pow(2) - 6 * m * n) as i128, (24 * m * n) as i128)
        / pair.s;
    let mut terms = Vec::with_capacity(pts.len());
    let mut windings = Vec::with_capacity(pts.len());
    for sp in &pts {
        let z = sp.z;
        let lz = sp.log_z.value;
        let l1 = dilog::log1m_sided(z, SIDE);
        let r = dilog::rogers_sided(z, &sp.log_z, SIDE)?;
        let wind = branch_winding(a, b, lz, l1)?;
        let zgp = real(at) + z * bt / (one - z);
        let log_dn = log_slashed(pair.n, sp.theta_plus, &pair.q_plus)?;
        let log_dm = log_slashed(pair.m, sp.theta_minus, &pair.q_minus)?;
        let big_g = big_g_mn(spec, pair, sp.theta_plus, sp.theta_minus)?;
        let expo = imag(bt / (T::TAU() * pair.s * pair.s)) * r + l1 * (alpha * bt)
            + (lz + imag(T::PI() * k_phase)) * (T::int(wind) / mn2)
            - (log_dn + log_dm) * bt;
        terms.push(check_value(expo.exp() * big_g / zgp, "summand")?);
        windings.push(wind);
    }
    finish(spec, pair, Method::ClosedForm, lambda, pts, prefactor, terms, windings)
}

/// The `M = 1` specialization:
/// `e^{πi(B + 3A(N+2)² − 6N)/(12N)} N^{−1/2} Σ_w e^{(iB/2πN)R(z)} (1−z)^{(2N+3)B/(4N)}
///  G_N(θ₊) / ((A + Bz/(1−z)) D̸_N(θ₊)^B)`.
pub fn evaluate_cor_m1<T: Real>(spec: &IntegrandSpec, n: u64, lambda: Option<T>) -> Result<EvaluationReport<T>> {
    let (a, b) = ab_params(spec)?;
    let pair = AdmissiblePair::<T>::new(1, n)?;
    let (lambda, pts) = resolve_strip(spec, &pair, lambda)?;
    let ni = n as i64;
    let (at, bt, nt) = (T::int(a as i64), T::int(b as i64), T::int(ni));
    let one = real::<T>(T::one());
    let prefactor =
        dilog::unit_fraction::<T>((b as i64 + 3 * a as i64 * (ni + 2).pow(2) - 6 * ni) as i128, (24 * ni) as i128) / nt.sqrt();
    let expo_l = T::int((2 * ni + 3) * b as i64) / T::int(4 * ni);
    let mut terms = Vec::with_capacity(pts.len());
    let mut windings = Vec::with_capacity(pts.len());
    for sp in &pts {
        let z = sp.z;
        let lz = sp.log_z.value;
        let l1 = dilog::log1m_sided(z, SIDE);
        let r = dilog::rogers_sided(z, &sp.log_z, SIDE)?;
        let wind = branch_winding(a, b, lz, l1)?;
        let log_dn = log_slashed(n, sp.theta_plus, &pair.q_plus)?;
        let gn = big_g_n(spec, n, sp.theta_plus)?;
        let expo = imag(bt / (T::TAU() * nt)) * r + l1 * expo_l
            + (lz + imag(T::PI() * T::int(2 * ni + 3))) * (T::int(wind) / (T::lit(2.0) * nt))
            - log_dn * bt;
        let zgp = real(at) + z * bt / (one - z);
        terms.push(check_value(expo.exp() * gn / zgp, "summand")?);
        windings.push(wind);
    }
    finish(spec, &pair, Method::ClosedForm, lambda, pts, prefactor, terms, windings)
}

/// `log` of the shifted integrand `f(w)` at a strip point.
fn log_shifted_integrand<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>, sp: &StripPoint<T>) -> Result<Complex<T>> {
    let lz = sp.log_z.value;
    let x = sp.w + pair.c_b;
    let mpi = imag(-T::PI());
    match *spec {
        IntegrandSpec::Ab { a, b } => {
            let lp = faddeev::log_phi_rational_shifted_sided(pair, lz, SIDE)?;
            Ok(lp * T::int(b as i64) + mpi * T::int(a as i64) * x * x)
        }
        IntegrandSpec::Pretzel => {
            // Φ(w + c_b)² Φ(2(w + c_b) − c_b) e^{−2πi(w + c_b)²}
            let lp = faddeev::log_phi_rational_shifted_sided(pair, lz, SIDE)?;
            let lp2 = faddeev::log_phi_rational_shifted_sided(pair, lz * T::lit(2.0), SIDE)?;
            Ok(lp * T::lit(2.0) + lp2 + mpi * T::lit(2.0) * x * x)
        }
    }
}

/// The residue sum `(1/(is)) Σ_w f(w) G_{M,N}(θ₊, θ₋) / (z g′(z))` with `f` the
/// shifted integrand and `g′` the exact derivative of the total multiplier.
pub fn evaluate_residue_sum<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    lambda: Option<T>,
) -> Result<EvaluationReport<T>> {
    spec.validate()?;
    let (lambda, pts) = resolve_strip(spec, pair, lambda)?;
    if let IntegrandSpec::Pretzel = spec {
        if !(lambda > T::lit(PRETZEL_RESIDUE_LAMBDA_MIN)) {
            return Err(Error::InvalidParameter(format!(
                "pretzel residue sum needs lambda > {}, got {}",
                PRETZEL_RESIDUE_LAMBDA_MIN,
                lambda.as_f64()
            )));
        }
    }
    let prefactor = cx(T::zero(), -T::one()) / pair.s;
    let mut terms = Vec::with_capacity(pts.len());
    for sp in &pts {
        let lf = log_shifted_integrand(spec, pair, sp)?;
        let big_g = big_g_mn(spec, pair, sp.theta_plus, sp.theta_minus)?;
        let zgp = sp.z * spec.g_prime(sp.z);
        terms.push(check_value(lf.exp() * big_g / zgp, "residue")?);
    }
    finish(spec, pair, Method::ResidueSum, lambda, pts, prefactor, terms, Vec::new())
}

/// Which of the two cubics `z = ±(1 − z²)(1 − z)` a pretzel gluing root
/// solves, with the residual of that cubic.
pub fn pretzel_cubic_sign<T: Real>(z: Complex<T>) -> (i32, T) {
    let one = real::<T>(T::one());
    let h = (one - z * z) * (one - z);
    let rp = (z - h).norm();
    let rm = (z + h).norm();
    if rp <= rm {
        (1, rp)
    } else {
        (-1, rm)
    }
}

/// Complex-volume phase of a real gluing root `x` of the pretzel integrand:
/// `−exp(2i·V/π)` with `V = 4L(x) + 2L(−x)` in Rogers' real dilogarithm.
///
/// `V` is the critical value of the leading semiclassical potential
/// `4 Li₂(z) + 2 Li₂(−z) + log²(−z)` read off from
/// `Φ_b(x)² Φ_b(2x − c_b) e^{−2πix²}` as `b → 0`.
pub fn pretzel_volume_phase<T: Real>(x: T) -> Complex<T> {
    let v = T::lit(4.0) * dilog::rogers_real(x) + T::lit(2.0) * dilog::rogers_real(-x);
    -imag(T::lit(2.0) * v / T::PI()).exp()
}

/// Ratio of the explicit-formula summand at `ζ_N·θ₊` to the one at `θ₊`,
/// keeping `z` and `θ₋` fixed, for every strip point.
pub fn root_rotation_ratios<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    lambda: Option<T>,
) -> Result<Vec<Complex<T>>> {
    let (_, b) = ab_params(spec)?;
    let (_, pts) = resolve_strip(spec, pair, lambda)?;
    let zeta = dilog::unit_fraction::<T>(1, pair.n as i128);
    let bt = T::int(b as i64);
    pts.iter()
        .map(|sp| {
            let t2 = sp.theta_plus * zeta;
            let d1 = log_slashed(pair.n, sp.theta_plus, &pair.q_plus)?;
            let d2 = log_slashed(pair.n, t2, &pair.q_plus)?;
            let g1 = big_g_mn(spec, pair, sp.theta_plus, sp.theta_minus)?;
            let g2 = big_g_mn(spec, pair, t2, sp.theta_minus)?;
            Ok(((d1 - d2) * bt).exp() * g2 / g1)
        })
        .collect()
}
