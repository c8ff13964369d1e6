//! Quasi-periodicity multipliers `g_k` and the finite state-sums built from
//! them.
//!
//! For an integrand `f` with `f(x + ib)/f(x)` a rational function `r` of
//! `e^{2πbx}`, the multipliers satisfy `g_0 = 1`, `g_{k+1}(x) = g_k(x)·r(x q^k)`
//! for every integer `k`.  Both integrands share this one code path.

use num_complex::Complex;

use crate::dilog::RootOfUnity;
use crate::error::{Error, Result};
use crate::faddeev::AdmissiblePair;
use crate::scalar::{real, Real};
use crate::sum::ComplexSum;

/// Which state-integral integrand is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrandSpec {
    /// `Φ_b(x)^B e^{−Aπix²}`, with `B > A > 0`.
    Ab { a: u32, b: u32 },
    /// `Φ_b(x)² Φ_b(2x − c_b) e^{−2πix²}`.
    Pretzel,
}

impl IntegrandSpec {
    pub fn ab(a: u32, b: u32) -> Result<Self> {
        let s = IntegrandSpec::Ab { a, b };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            IntegrandSpec::Ab { a, b } if !(b > a && a > 0) => {
                Err(Error::InvalidParameter(format!("requires B > A > 0, got A = {}, B = {}", a, b)))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntegrandSpec::Ab { .. } => "AB",
            IntegrandSpec::Pretzel => "pretzel",
        }
    }

    /// The total multiplier `g(x)`.
    pub fn g<T: Real>(&self, x: Complex<T>) -> Complex<T> {
        let one = real::<T>(T::one());
        match *self {
            IntegrandSpec::Ab { a, b } => (-x).powu(a) / (one - x).powu(b),
            IntegrandSpec::Pretzel => {
                let d = (one - x) * (one - x * x);
                x * x / (d * d)
            }
        }
    }

    /// Exact derivative `g′(x)`.
    pub fn g_prime<T: Real>(&self, x: Complex<T>) -> Complex<T> {
        let one = real::<T>(T::one());
        let two = T::lit(2.0);
        let log_der = match *self {
            IntegrandSpec::Ab { a, b } => x.inv() * T::int(a as i64) + (one - x).inv() * T::int(b as i64),
            IntegrandSpec::Pretzel => x.inv() * two + (one - x).inv() * two + x * T::lit(4.0) / (one - x * x),
        };
        self.g(x) * log_der
    }

    /// Open interval of admissible λ.
    pub fn lambda_range<T: Real>(&self, pair: &AdmissiblePair<T>) -> (T, T) {
        let mn = T::int((pair.m + pair.n) as i64);
        match self {
            IntegrandSpec::Ab { .. } => (-mn / T::lit(2.0), T::zero()),
            IntegrandSpec::Pretzel => (-mn / T::lit(4.0), T::zero()),
        }
    }

    /// Smallest linear factor in the denominator of [`step`](Self::step).
    fn step_denominator_min<T: Real>(&self, y: Complex<T>, q: Complex<T>) -> T {
        let one = real::<T>(T::one());
        let qy = q * y;
        match self {
            IntegrandSpec::Ab { .. } => (one - qy).norm(),
            IntegrandSpec::Pretzel => (one - qy).norm().min((one - qy * y).norm()).min((one - qy * qy).norm()),
        }
    }

    /// One step of the multiplier recursion, `r(y)` with `g_{k+1}/g_k = r(x q^k)`.
    pub fn step<T: Real>(&self, y: Complex<T>, q: Complex<T>) -> Complex<T> {
        let one = real::<T>(T::one());
        match *self {
            IntegrandSpec::Ab { a, b } => (-y * q).powu(a) / (one - q * y).powu(b),
            IntegrandSpec::Pretzel => {
                let qy = q * y;
                let u = one - qy;
                qy * qy / (u * u * (one - qy * y) * (one - qy * qy))
            }
        }
    }
}

/// A base `q` of a q-series whose integer powers can be taken.
pub trait QBase<T: Real>: Sync {
    fn value(&self) -> Complex<T>;
    fn pow(&self, k: i64) -> Complex<T>;
}

impl<T: Real> QBase<T> for RootOfUnity<T> {
    fn value(&self) -> Complex<T> {
        self.value
    }
    fn pow(&self, k: i64) -> Complex<T> {
        RootOfUnity::pow(self, k)
    }
}

impl<T: Real> QBase<T> for Complex<T> {
    fn value(&self) -> Complex<T> {
        *self
    }
    fn pow(&self, k: i64) -> Complex<T> {
        self.powi(k as i32)
    }
}

/// One recursion step at `y = x q^k`, refusing a vanishing denominator factor.
fn checked_step<T: Real>(spec: &IntegrandSpec, y: Complex<T>, q: Complex<T>, k: i64) -> Result<Complex<T>> {
    let v = spec.step(y, q);
    let degenerate = spec.step_denominator_min(y, q) <= T::epsilon() * T::lit(16.0);
    if !degenerate && v.re.is_finite() && v.im.is_finite() && v.norm() > T::zero() {
        Ok(v)
    } else {
        Err(Error::DivisionByZero(format!("multiplier recursion at step {}", k)))
    }
}

/// `g_k(x; q)` for any integer `k`, by running the recursion from `g_0 = 1`.
pub fn g_k<T: Real, Q: QBase<T>>(spec: &IntegrandSpec, k: i64, x: Complex<T>, q: &Q) -> Result<Complex<T>> {
    let qv = q.value();
    let mut r = real::<T>(T::one());
    if k >= 0 {
        for j in 0..k {
            r = r * checked_step(spec, x * q.pow(j), qv, j)?;
        }
    } else {
        for j in (k..0).rev() {
            r = r / checked_step(spec, x * q.pow(j), qv, j)?;
        }
    }
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(Error::DivisionByZero(format!("g_{} is not finite", k)));
    }
    Ok(r)
}

/// `G_N(x) = Σ_{k=0}^{N−1} g_k(x; ζ_N)`.
pub fn big_g_n<T: Real>(spec: &IntegrandSpec, n: u64, x: Complex<T>) -> Result<Complex<T>> {
    let q = RootOfUnity::<T>::new(n, 1)?;
    let mut acc = ComplexSum::new();
    let mut r = real::<T>(T::one());
    for k in 0..n as i64 {
        acc.add(r);
        r = r * checked_step(spec, x * q.pow(k), q.value, k)?;
    }
    Ok(acc.value())
}

/// `G_{M,N}(x₊, x₋) = Σ_{k=0}^{MN−1} g_{kP}(x₊; ζ_N^M) g_{kQ}(x₋; ζ_M^N)`
/// with the pair's stored Bézout coefficients.
pub fn big_g_mn<T: Real>(
    spec: &IntegrandSpec,
    pair: &AdmissiblePair<T>,
    x_plus: Complex<T>,
    x_minus: Complex<T>,
) -> Result<Complex<T>> {
    let mut acc = ComplexSum::new();
    for k in 0..(pair.m * pair.n) as i64 {
        let gp = g_k(spec, k * pair.p, x_plus, &pair.q_plus)?;
        let gm = g_k(spec, k * pair.q, x_minus, &pair.q_minus)?;
        acc.add(gp * gm);
    }
    Ok(acc.value())
}
