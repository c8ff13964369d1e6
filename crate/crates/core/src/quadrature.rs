//! Composite Gauss–Legendre integration along horizontal lines, and the
//! numerical state-integrals built on it.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faddeev::{self, AdmissiblePair};
use crate::report::{Diagnostics, EvaluationReport, Method};
use crate::scalar::{cx, is_finite, Real};
use crate::state_sums::IntegrandSpec;
use crate::sum::ComplexSum;

pub const GL_ORDER: usize = 16;

/// Nodes and weights of the 16-point Gauss–Legendre rule on [−1, 1].
fn gauss_legendre_f64() -> &'static [(f64, f64); GL_ORDER] {
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = [(0.0, 0.0); GL_ORDER];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-17 {
                    break;
                }
            }
            out[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    })
}

/// Result of a line integral.
#[derive(Debug, Clone, Copy)]
pub struct LineIntegral<T: Real> {
    pub value: Complex<T>,
    pub est_error: T,
    pub panels: usize,
}

fn panel_sum<T: Real, F>(f: &F, a: T, h: T, height: T) -> Result<Complex<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    let half = h * T::lit(0.5);
    let mid = a + half;
    let mut acc = ComplexSum::new();
    for &(x, w) in gauss_legendre_f64().iter() {
        let z = cx(mid + half * T::lit(x), height);
        let v = f(z)?;
        if !is_finite(v) {
            return Err(Error::NonFinite(format!("integrand at {:?}", z)));
        }
        acc.add(v * T::lit(w));
    }
    Ok(acc.value() * half)
}

fn composite<T: Real, F>(f: &F, lo: T, hi: T, height: T, panels: usize, parallel: bool) -> Result<Complex<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    let h = (hi - lo) / T::int(panels as i64);
    let one = |i: usize| panel_sum(f, lo + h * T::int(i as i64), h, height);
    let parts: Vec<Complex<T>> = if parallel {
        (0..panels).into_par_iter().map(one).collect::<Result<Vec<_>>>()?
    } else {
        (0..panels).map(one).collect::<Result<Vec<_>>>()?
    };
    // Sequential compensated reduction in panel order: independent of scheduling.
    let mut acc = ComplexSum::new();
    for p in parts {
        acc.add(p);
    }
    Ok(acc.value())
}

/// `∫_lo^hi f(t + i·height) dt` with doubling of the panel count until two
/// successive estimates differ by less than `tol`.
#[allow(clippy::too_many_arguments)]
pub fn integrate_segment<T: Real, F>(
    f: &F,
    lo: T,
    hi: T,
    height: T,
    panels: usize,
    tol: T,
    max_refinements: usize,
    parallel: bool,
) -> Result<LineIntegral<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    let mut p = panels.max(1);
    let mut prev = composite(f, lo, hi, height, p, parallel)?;
    let mut last_diff = T::infinity();
    for _ in 0..max_refinements {
        p *= 2;
        let next = composite(f, lo, hi, height, p, parallel)?;
        last_diff = (next - prev).norm();
        prev = next;
        if last_diff < tol {
            return Ok(LineIntegral { value: prev, est_error: last_diff, panels: p });
        }
    }
    Err(Error::NoConvergence(format!(
        "line integral: last refinement changed the value by {:e} (tol {:e})",
        last_diff.as_f64(),
        tol.as_f64()
    )))
}

/// Parameters of a horizontal integration contour `ℝ + i·height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig<T: Real> {
    pub height: T,
    /// Truncation `T`; the line is `[−T, T]`.
    pub half_width: T,
    pub panels: usize,
    pub tol: T,
    pub max_refinements: usize,
}

impl<T: Real> ContourConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol >= T::lit(1e-13)) {
            return Err(Error::InvalidParameter("tol must be at least 1e-13".into()));
        }
        if self.panels == 0 || self.max_refinements == 0 {
            return Err(Error::InvalidParameter("panels and max_refinements must be positive".into()));
        }
        if !(self.half_width > T::zero()) {
            return Err(Error::InvalidParameter("half_width must be positive".into()));
        }
        Ok(())
    }
}

/// Composite Gauss–Legendre over `[−T, T]` at `cfg.height`.
pub fn integrate_line<T: Real, F>(f: &F, cfg: &ContourConfig<T>) -> Result<(Complex<T>, T)>
where
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    cfg.validate()?;
    let r = integrate_segment(f, -cfg.half_width, cfg.half_width, cfg.height, cfg.panels, cfg.tol, cfg.max_refinements, true)?;
    Ok((r.value, r.est_error))
}

/// Open band of admissible contour heights for `spec` at `pair`.
pub fn height_band<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>) -> (T, T) {
    let g = pair.gamma();
    match spec {
        IntegrandSpec::Ab { .. } => (T::zero(), g),
        IntegrandSpec::Pretzel => (g * T::lit(0.5), g),
    }
}

pub fn default_height<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>) -> T {
    let g = pair.gamma();
    match spec {
        IntegrandSpec::Ab { .. } => g * T::lit(0.5),
        IntegrandSpec::Pretzel => g * T::lit(0.75),
    }
}

/// Settings for [`state_integral_numeric`]; `None` fields take defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateIntegralOptions<T: Real> {
    pub height: Option<T>,
    pub half_width: Option<T>,
    pub panels: Option<usize>,
    pub tol: Option<T>,
    pub max_refinements: Option<usize>,
}

/// Memo of `Φ_b` values on quadrature nodes, for one pair and one height.
struct PhiCache<T: Real> {
    b: T,
    map: Mutex<HashMap<(u64, u64), Complex<T>>>,
}

impl<T: Real> PhiCache<T> {
    fn new(b: T) -> Self {
        Self { b, map: Mutex::new(HashMap::new()) }
    }

    fn get(&self, x: Complex<T>) -> Result<Complex<T>> {
        let key = (x.re.as_f64().to_bits(), x.im.as_f64().to_bits());
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = faddeev::phi(self.b, x)?;
        self.map.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

/// The integrand of the state-integral in its original variable `x`.
fn integrand<T: Real>(spec: &IntegrandSpec, pair: &AdmissiblePair<T>, cache: &PhiCache<T>, x: Complex<T>) -> Result<Complex<T>> {
    let mi = cx(T::zero(), -T::PI());
    match *spec {
        IntegrandSpec::Ab { a, b } => {
            let p = cache.get(x)?;
            Ok(p.powu(b) * (mi * T::int(a as i64) * x * x).exp())
        }
        IntegrandSpec::Pretzel => {
            let p = cache.get(x)?;
            let p2 = faddeev::phi(pair.b, x * T::lit(2.0) - pair.c_b)?;
            Ok(p * p * p2 * (mi * T::lit(2.0) * x * x).exp())
        }
    }
}

/// Numerical value of the state-integral of `spec` at `b² = M/N` along
/// `ℝ + i·height`, by composite Gauss–Legendre with adaptive truncation.
pub fn state_integral_numeric<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    opts: &StateIntegralOptions<T>,
) -> Result<EvaluationReport<T>> {
    spec.validate()?;
    let (lo, hi) = height_band(spec, pair);
    let height = opts.height.unwrap_or_else(|| default_height(spec, pair));
    if !(height > lo && height < hi) {
        return Err(Error::BandViolation { height: height.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() });
    }
    let tol = opts.tol.unwrap_or(T::lit(1e-11));
    let max_ref = opts.max_refinements.unwrap_or(8);
    if !(tol >= T::lit(1e-13)) {
        return Err(Error::InvalidParameter("tol must be at least 1e-13".into()));
    }
    let cache = PhiCache::new(pair.b);
    let f = |x: Complex<T>| integrand(spec, pair, &cache, x);

    // Decay rates of |f(t + iε)| as t → ±∞.
    let pi = T::PI();
    let (rate_plus, rate_minus) = match *spec {
        IntegrandSpec::Ab { a, b } => (
            T::lit(2.0) * T::int((b - a) as i64) * pi * height,
            T::lit(2.0) * T::int(a as i64) * pi * height,
        ),
        IntegrandSpec::Pretzel => (
            T::lit(8.0) * pi * height - T::lit(4.0) * pi * pair.gamma(),
            T::lit(4.0) * pi * height,
        ),
    };
    let target = |t: T| tol / (T::lit(100.0) * t);
    let mut t = match opts.half_width {
        Some(t) => t,
        None => {
            let need = (T::lit(100.0) / tol).ln();
            (need / rate_plus).max(need / rate_minus).max(T::lit(2.0))
        }
    };
    let mut grown = 0;
    while f(cx(t, height))?.norm() >= target(t) || f(cx(-t, height))?.norm() >= target(t) {
        t = t * T::lit(1.25);
        grown += 1;
        if grown > 60 {
            return Err(Error::NoConvergence("truncation did not reach the decay threshold".into()));
        }
    }
    let panels = opts
        .panels
        .unwrap_or_else(|| (T::lit(2.0) * t / T::lit(0.5)).ceil().to_usize().unwrap_or(1).max(8));
    let cfg = ContourConfig { height, half_width: t, panels, tol, max_refinements: max_ref };
    cfg.validate()?;
    let r = integrate_segment(&f, -t, t, height, panels, tol, max_ref, true)?;
    Ok(EvaluationReport {
        value: r.value,
        method: Method::Quadrature,
        spec: *spec,
        pair: *pair,
        strip_points: Vec::new(),
        lambda: pair.s * (height - pair.gamma()),
        diagnostics: Diagnostics {
            est_error: Some(r.est_error),
            contour_height: Some(height),
            truncation: Some(t),
            panels: Some(r.panels as u64),
            ..Diagnostics::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre_f64();
        let w: f64 = rule.iter().map(|p| p.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        let m30: f64 = rule.iter().map(|p| p.1 * p.0.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
    }
}
