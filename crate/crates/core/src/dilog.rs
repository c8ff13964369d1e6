//! Complex dilogarithm, the Rogers dilogarithm with an explicit logarithm
//! branch, cyclic dilogarithms at roots of unity and q-Pochhammer symbols.
//!
//! Principal branches throughout: `Log` is cut along (−∞, 0] and `Li₂` along
//! [1, ∞).  The public entry points refuse arguments that sit on a cut.  The
//! `*_sided` variants instead evaluate the one-sided limit from a caller
//! chosen side; they exist for callers (the closed-form evaluators) whose
//! inputs land exactly on a cut and who only need *some* consistent choice.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cx, real, Real};

/// Distance to a branch cut below which the principal functions refuse work.
pub const CUT_TOL: f64 = 1e-13;

/// Relative half-width of the band around a cut inside which the sided
/// variants switch to the requested one-sided limit.
pub const SIDE_TOL: f64 = 1e-9;

/// B_{2k} / (2k+1)!, k = 1, 2, ...
const BERNOULLI_COEFFS: [f64; 20] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
    -5.76834735536739e-34,
];

/// Which side of a branch cut an on-cut argument is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    /// Limit from positive imaginary part.
    Above,
    /// Limit from negative imaginary part.
    Below,
}

impl CutSide {
    pub fn flip(self) -> Self {
        match self {
            CutSide::Above => CutSide::Below,
            CutSide::Below => CutSide::Above,
        }
    }
}

/// A chosen value of `log z` together with `z` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedLog<T: Real> {
    pub value: Complex<T>,
    pub base: Complex<T>,
}

impl<T: Real> BranchedLog<T> {
    /// Checks `exp(value) ≈ base` to 1e-12 relative (scaled for `f32`).
    pub fn new(value: Complex<T>, base: Complex<T>) -> Result<Self> {
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
        if base.norm() == T::zero() {
            return Err(Error::DomainError("logarithm of zero".into()));
        }
        if (value.exp() - base).norm() > tol * base.norm() {
            return Err(Error::DomainError(format!(
                "exp({:?}) does not match base {:?}",
                value, base
            )));
        }
        Ok(Self { value, base })
    }

    pub fn principal(base: Complex<T>) -> Result<Self> {
        if base.norm() == T::zero() {
            return Err(Error::DomainError("logarithm of zero".into()));
        }
        Ok(Self { value: base.ln(), base })
    }

    /// The branch whose exponential defines the base.
    pub fn from_value(value: Complex<T>) -> Self {
        Self { value, base: value.exp() }
    }
}

/// An exact root of unity `exp(2πi·exponent/order)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity<T: Real> {
    pub order: u64,
    pub exponent: u64,
    pub value: Complex<T>,
}

impl<T: Real> RootOfUnity<T> {
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("root of unity of order 0".into()));
        }
        let e = (exponent as i128).rem_euclid(order as i128) as u64;
        Ok(Self { order, exponent: e, value: unit_fraction(e as i128, order as i128) })
    }

    /// `value^k`, from the reduced angle `2π·(k·exponent mod order)/order`.
    pub fn pow(&self, k: i64) -> Complex<T> {
        unit_fraction((k as i128) * (self.exponent as i128), self.order as i128)
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.exponent, self.order) == 1
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `exp(2πi·num/den)` from the reduced fraction.
pub fn unit_fraction<T: Real>(num: i128, den: i128) -> Complex<T> {
    let mut r = num.rem_euclid(den);
    if r == 0 {
        return real(T::one());
    }
    if 2 * r == den {
        return real(-T::one());
    }
    if 4 * r == den {
        return cx(T::zero(), T::one());
    }
    if 4 * r == 3 * den {
        return cx(T::zero(), -T::one());
    }
    if 2 * r > den {
        r -= den;
    }
    let theta = T::TAU() * T::int(r as i64) / T::int(den as i64);
    let (s, c) = theta.sin_cos();
    cx(c, s)
}

fn distance_to_li2_cut<T: Real>(z: Complex<T>) -> T {
    if z.re >= T::one() {
        z.im.abs()
    } else {
        (z - T::one()).norm()
    }
}

fn near_negative_axis<T: Real>(u: Complex<T>) -> bool {
    u.re < T::zero() && u.im.abs() <= T::lit(SIDE_TOL) * u.norm()
}

/// Principal `Log`, except that an argument within the cut band around the
/// negative real axis is continued from the requested side.
pub fn log_sided<T: Real>(u: Complex<T>, side: CutSide) -> Complex<T> {
    let l = u.ln();
    if !near_negative_axis(u) {
        return l;
    }
    let im = match side {
        CutSide::Above if l.im < T::zero() => l.im + T::TAU(),
        CutSide::Below if l.im > T::zero() => l.im - T::TAU(),
        _ => l.im,
    };
    cx(l.re, im)
}

/// `Log(1 − x)` with `x` taken from `side` when it sits on [1, ∞).
pub fn log1m_sided<T: Real>(x: Complex<T>, side: CutSide) -> Complex<T> {
    log_sided(real::<T>(T::one()) - x, side.flip())
}

fn li2_power_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut p = z;
    for n in 1..400 {
        let nn = T::int(n);
        let term = p / (nn * nn);
        sum = sum + term;
        if term.norm() <= T::epsilon() * T::lit(0.25) * sum.norm() {
            break;
        }
        p = p * z;
    }
    sum
}

fn li2_bernoulli<T: Real>(z: Complex<T>) -> Complex<T> {
    let u = -(real::<T>(T::one()) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 * T::lit(0.25);
    let mut p = u * u2;
    for &c in BERNOULLI_COEFFS.iter() {
        let term = p * T::lit(c);
        sum = sum + term;
        if term.norm() <= T::epsilon() * T::lit(0.25) * sum.norm() {
            break;
        }
        p = p * u2;
    }
    sum
}

/// `|z| ≤ 1`, `Re z ≤ 1/2`.
fn li2_disk<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() <= T::lit(0.5) {
        li2_power_series(z)
    } else {
        li2_bernoulli(z)
    }
}

/// `|z| ≤ 1`, `z ≠ 1`.
fn li2_unit<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.re > T::lit(0.5) {
        let one = real::<T>(T::one());
        let w = one - z;
        real::<T>(T::PI() * T::PI() / T::lit(6.0)) - z.ln() * w.ln() - li2_disk(w)
    } else {
        li2_disk(z)
    }
}

fn li2_any<T: Real>(z: Complex<T>, side: CutSide) -> Complex<T> {
    if z.re == T::zero() && z.im == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    if z.norm() <= T::one() {
        return li2_unit(z);
    }
    let l = log_sided(-z, side.flip());
    -li2_unit(z.inv()) - real::<T>(T::PI() * T::PI() / T::lit(6.0)) - l * l * T::lit(0.5)
}

/// Principal-branch dilogarithm `Li₂(z)`.
pub fn li2<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if distance_to_li2_cut(z) < T::lit(CUT_TOL) {
        return Err(Error::CutProximity(format!("Li2({:?})", z)));
    }
    Ok(li2_any(z, CutSide::Above))
}

/// `Li₂(z)`, with arguments on or next to [1, ∞) continued from `side`.
///
/// Fails only at the branch point `z = 1`.
pub fn li2_sided<T: Real>(z: Complex<T>, side: CutSide) -> Result<Complex<T>> {
    if (z - T::one()).norm() < T::lit(CUT_TOL) {
        return Err(Error::DomainError("Li2 at the branch point 1".into()));
    }
    Ok(li2_any(z, side))
}

fn check_rogers_domain<T: Real>(z: Complex<T>, log_z: &BranchedLog<T>) -> Result<()> {
    let tiny = T::lit(CUT_TOL);
    if z.norm() < tiny || (z - T::one()).norm() < tiny {
        return Err(Error::DomainError(format!("Rogers dilogarithm at {:?}", z)));
    }
    let tol = T::lit(1e-10).max(T::epsilon() * T::lit(64.0));
    if (log_z.base - z).norm() > tol * z.norm() {
        return Err(Error::DomainError("log branch does not belong to z".into()));
    }
    Ok(())
}

/// `R(z) = Li₂(z) + ½·log z·Log(1 − z) − π²/6` with the caller's `log z`.
pub fn rogers<T: Real>(z: Complex<T>, log_z: &BranchedLog<T>) -> Result<Complex<T>> {
    check_rogers_domain(z, log_z)?;
    let l = li2(z)?;
    let one = real::<T>(T::one());
    Ok(l + log_z.value * (one - z).ln() * T::lit(0.5) - T::PI() * T::PI() / T::lit(6.0))
}

pub fn rogers_sided<T: Real>(z: Complex<T>, log_z: &BranchedLog<T>, side: CutSide) -> Result<Complex<T>> {
    check_rogers_domain(z, log_z)?;
    let l = li2_sided(z, side)?;
    Ok(l + log_z.value * log1m_sided(z, side) * T::lit(0.5) - T::PI() * T::PI() / T::lit(6.0))
}

/// Rogers' real dilogarithm `L(x) = Li₂(x) + ½ log|x| log|1 − x|` on (0, 1),
/// extended to ℝ by `L(x) = −L(x/(x−1))` for `x < 0` and
/// `L(x) = π²/3 − L(1/x)` for `x > 1`.  `L(0) = 0`, `L(1) = π²/6`.
pub fn rogers_real<T: Real>(x: T) -> T {
    let pi2 = T::PI() * T::PI();
    if x == T::zero() {
        return T::zero();
    }
    if x == T::one() {
        return pi2 / T::lit(6.0);
    }
    if x < T::zero() {
        return -rogers_real(x / (x - T::one()));
    }
    if x > T::one() {
        return pi2 / T::lit(3.0) - rogers_real(x.recip());
    }
    li2_unit(real(x)).re + T::lit(0.5) * x.ln() * (T::one() - x).ln()
}

fn cyclic_log<T: Real>(n: u64, x: Complex<T>, q: &RootOfUnity<T>, side: Option<CutSide>) -> Result<Complex<T>> {
    let one = real::<T>(T::one());
    let mut acc = crate::sum::ComplexSum::new();
    let nn = T::int(n as i64);
    for k in 1..n {
        let u = q.pow(k as i64) * x;
        let f = one - u;
        if f.norm() <= T::epsilon() * T::lit(16.0) {
            return Err(Error::DomainError(format!("factor 1 - q^{} x vanishes", k)));
        }
        let l = match side {
            Some(s) => log1m_sided(u, s),
            None => f.ln(),
        };
        acc.add(l * (T::int(k as i64) / nn));
    }
    Ok(acc.value())
}

/// `D_N(x; q) = exp(Σ_{k=1}^{N−1} (k/N) Log(1 − q^k x))`, principal per factor.
pub fn cyclic_dilog<T: Real>(n: u64, x: Complex<T>, q: &RootOfUnity<T>) -> Result<Complex<T>> {
    Ok(cyclic_log(n, x, q, None)?.exp())
}

/// `log D_N(x; q)` as the sum of per-factor logarithms, with factors whose
/// `q^k x` falls on [1, ∞) taken from `side`.
pub fn cyclic_dilog_log_sided<T: Real>(
    n: u64,
    x: Complex<T>,
    q: &RootOfUnity<T>,
    side: CutSide,
) -> Result<Complex<T>> {
    cyclic_log(n, x, q, Some(side))
}

/// `(1 − x q^N)·D_N(x; q)`.
pub fn slashed_cyclic_dilog<T: Real>(n: u64, x: Complex<T>, q: &RootOfUnity<T>) -> Result<Complex<T>> {
    let one = real::<T>(T::one());
    Ok((one - x * q.pow(n as i64)) * cyclic_dilog(n, x, q)?)
}

/// Analytic derivative `d/dx log D_N(x; q) = Σ (k/N)(−q^k)/(1 − q^k x)`.
pub fn cyclic_dilog_log_derivative<T: Real>(n: u64, x: Complex<T>, q: &RootOfUnity<T>) -> Result<Complex<T>> {
    let one = real::<T>(T::one());
    let nn = T::int(n as i64);
    let mut acc = crate::sum::ComplexSum::new();
    for k in 1..n {
        let qk = q.pow(k as i64);
        let d = one - qk * x;
        if d.norm() == T::zero() {
            return Err(Error::DivisionByZero(format!("1 - q^{} x", k)));
        }
        acc.add(-qk / d * (T::int(k as i64) / nn));
    }
    Ok(acc.value())
}

/// `(a; q)_n` for any integer `n`; negative `n` gives `Π_{j=1}^{|n|} (1 − a q^{−j})^{−1}`.
pub fn pochhammer<T: Real>(a: Complex<T>, q: Complex<T>, n: i64) -> Result<Complex<T>> {
    let one = real::<T>(T::one());
    let mut prod = one;
    if n >= 0 {
        for j in 0..n {
            prod = prod * (one - a * q.powi(j as i32));
        }
    } else {
        for j in 1..=(-n) {
            let f = one - a * q.powi(-(j as i32));
            if f.norm() <= T::epsilon() * T::lit(16.0) {
                return Err(Error::DivisionByZero(format!("1 - a q^-{} vanishes", j)));
            }
            prod = prod / f;
        }
    }
    Ok(prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_quarter_turns() {
        let q = RootOfUnity::<f64>::new(4, 1).unwrap();
        assert_eq!(q.value, cx(0.0, 1.0));
        assert_eq!(q.pow(2), cx(-1.0, 0.0));
        assert_eq!(q.pow(-1), cx(0.0, -1.0));
        assert_eq!(q.pow(4), cx(1.0, 0.0));
    }

    #[test]
    fn sided_log_on_negative_axis() {
        let u = cx(-2.0f64, 0.0);
        assert!((log_sided(u, CutSide::Above).im - std::f64::consts::PI).abs() < 1e-15);
        assert!((log_sided(u, CutSide::Below).im + std::f64::consts::PI).abs() < 1e-15);
        let v = cx(-2.0f64, 1e-12);
        assert!(log_sided(v, CutSide::Below).im < 0.0);
    }
}
