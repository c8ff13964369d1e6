//! Faddeev's quantum dilogarithm `Φ_b`.
//!
//! Two independent routes are provided:
//!
//! * [`phi_strip`] / [`phi`]: the integral representation
//!   `Φ_b(x) = exp ∫_{ℝ+iε'} e^{−2ixz} / (4 sinh(zb) sinh(z/b)) dz/z`
//!   on the strip `|Im x| < Im c_b`, continued to the plane with the two
//!   quasi-periodicity relations.  Works for any real `b > 0`.
//! * [`phi_rational`] / [`phi_rational_shifted`]: the closed form at
//!   rational `b² = M/N` in terms of `Li₂` and cyclic dilogarithms.
//!
//! Agreement of the two is the main consistency check of the library.

use num_complex::Complex;

use crate::dilog::{self, gcd, CutSide, RootOfUnity};
use crate::error::{Error, Result};
use crate::quadrature::integrate_segment;
use crate::scalar::{cx, imag, is_finite, real, Real};

/// Fraction of `Im c_b` that bounds the strip where the integral is used.
pub const STRIP_FRACTION: f64 = 0.95;

/// For `Re x` beyond this the integral is taken below the origin and the
/// residue at `z = 0` is added back; this keeps `e^{−2ixz}` from growing.
const LOWER_CONTOUR_FROM: f64 = 2.0;

/// A coprime pair `(M, N)` fixing `b² = M/N`, with its Bézout data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissiblePair<T: Real> {
    pub m: u64,
    pub n: u64,
    pub p: i64,
    pub q: i64,
    pub b: T,
    pub s: T,
    pub c_b: Complex<T>,
    /// `ζ_N^M`.
    pub q_plus: RootOfUnity<T>,
    /// `ζ_M^N`.
    pub q_minus: RootOfUnity<T>,
    /// `e^{2πi b⁻²}`.
    pub q_tilde_inverse: Complex<T>,
}

/// Bézout coefficients `(P, Q)` with `MP + NQ = 1`.
///
/// Representative: `(1, 0)` when `M = 1`, `(0, 1)` when `N = 1`, otherwise the
/// `P ≡ M⁻¹ (mod N)` of least absolute value (positive on a tie).
pub fn bezout(m: u64, n: u64) -> Result<(i64, i64)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("M and N must be positive".into()));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    if m == 1 {
        return Ok((1, 0));
    }
    if n == 1 {
        return Ok((0, 1));
    }
    let (mi, ni) = (m as i128, n as i128);
    let (mut r0, mut r1, mut s0, mut s1) = (mi, ni, 1i128, 0i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    let r = s0.rem_euclid(ni);
    let p = if 2 * r <= ni { r } else { r - ni };
    let q = (1 - mi * p) / ni;
    debug_assert_eq!(mi * p + ni * q, 1);
    Ok((p as i64, q as i64))
}

impl<T: Real> AdmissiblePair<T> {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        let (p, q) = bezout(m, n)?;
        Self::with_bezout(m, n, p, q)
    }

    /// Uses a caller-chosen Bézout representative.
    pub fn with_bezout(m: u64, n: u64, p: i64, q: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("M and N must be positive".into()));
        }
        if gcd(m, n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
        if (m as i128) * (p as i128) + (n as i128) * (q as i128) != 1 {
            return Err(Error::InvalidParameter(format!("{}*{} + {}*{} != 1", m, p, n, q)));
        }
        let (mt, nt) = (T::int(m as i64), T::int(n as i64));
        let b = (mt / nt).sqrt();
        let s = (mt * nt).sqrt();
        let c_b = imag((b + b.recip()) * T::lit(0.5));
        Ok(Self {
            m,
            n,
            p,
            q,
            b,
            s,
            c_b,
            q_plus: RootOfUnity::new(n, m as i64)?,
            q_minus: RootOfUnity::new(m, n as i64)?,
            q_tilde_inverse: dilog::unit_fraction(n as i128, m as i128),
        })
    }

    /// The same pair with `(P, Q)` replaced by `(P + rN, Q − rM)`.
    pub fn shifted_bezout(&self, r: i64) -> Result<Self> {
        Self::with_bezout(self.m, self.n, self.p + r * self.n as i64, self.q - r * self.m as i64)
    }

    /// `Im c_b = (b + 1/b)/2`.
    pub fn gamma(&self) -> T {
        self.c_b.im
    }
}

/// `Im c_b` for a real `b`.
pub fn half_period_sum<T: Real>(b: T) -> T {
    (b + b.recip()) * T::lit(0.5)
}

/// `Φ_b(0) = e^{πi(b² + b⁻²)/24}`.
pub fn phi_at_zero<T: Real>(b: T) -> Complex<T> {
    imag(T::PI() * (b * b + (b * b).recip()) / T::lit(24.0)).exp()
}

/// `log Φ_b(x)` from the integral representation; `x` must lie in the strip.
pub fn log_phi_strip<T: Real>(b: T, x: Complex<T>) -> Result<Complex<T>> {
    let gamma = half_period_sum(b);
    if !is_finite(x) || x.im.abs() >= T::lit(STRIP_FRACTION) * gamma {
        return Err(Error::OutOfStrip(format!("{:?}", x)));
    }
    let lower = x.re > T::lit(LOWER_CONTOUR_FROM);
    let eps = T::FRAC_PI_2() * b.min(b.recip());
    let height = if lower { -eps } else { eps };
    let (bp, bm) = (b, b.recip());
    let two = T::lit(2.0);
    let one = real::<T>(T::one());
    let ix2 = cx(T::zero(), -two) * x;

    // e^{−2ixz} / (4 sinh(bz) sinh(z/b) z), written with decaying exponentials only.
    let integrand = |z: Complex<T>| -> Result<Complex<T>> {
        let (sgn, e) = if z.re >= T::zero() { (-T::one(), -(bp + bm)) } else { (T::one(), bp + bm) };
        let d1 = one - (z * (bp * two * sgn)).exp();
        let d2 = one - (z * (bm * two * sgn)).exp();
        Ok((ix2 * z + z * e).exp() / (d1 * d2 * z))
    };

    // |integrand| ~ exp(2 Re(x)·h + 2 Im(x)·t − 2γ|t|) / |t|
    let peak = two * x.re * height;
    let kp = two * (gamma - x.im);
    let km = two * (gamma + x.im);
    let budget = T::lit(40.0) + peak.max(T::zero());
    let t_plus = (budget / kp).max(T::one());
    let t_minus = (budget / km).max(T::one());
    let width = T::lit(0.75).min(T::lit(2.0) / (T::one() + x.re.abs()));
    let panels = ((t_plus + t_minus) / width).ceil().to_usize().unwrap_or(1).max(4);
    let scale = peak.exp().max(T::one()) / eps;
    let tol = (T::lit(1e-14) * scale).max(T::epsilon() * T::lit(64.0) * scale);
    let line = integrate_segment(&integrand, -t_minus, t_plus, height, panels, tol, 8, false)?;
    let mut l = line.value;
    if lower {
        l = l + imag(T::PI()) * (x * x + real((b * b + (b * b).recip()) / T::lit(12.0)));
    }
    Ok(l)
}

/// `Φ_b(x)` from the integral representation, for `|Im x| < 0.95·Im c_b`.
pub fn phi_strip<T: Real>(b: T, x: Complex<T>) -> Result<Complex<T>> {
    Ok(log_phi_strip(b, x)?.exp())
}

/// `Φ_b(x)` anywhere off the poles: reduce into the strip with
/// `Φ(y + iβ) = Φ(y) / (1 + e^{2πβy + πiβ²})`, `β ∈ {1/b, b}` (in that order),
/// then use the integral representation.
pub fn phi<T: Real>(b: T, x: Complex<T>) -> Result<Complex<T>> {
    if !is_finite(x) {
        return Err(Error::NonFinite(format!("{:?}", x)));
    }
    let gamma = half_period_sum(b);
    let edge = T::lit(STRIP_FRACTION) * gamma;
    let one = real::<T>(T::one());
    let mut y = x;
    let mut factor = one;
    for beta in [b.recip(), b] {
        let tpb = T::TAU() * beta;
        let phase = T::PI() * beta * beta;
        while y.im >= edge && y.im - beta > -edge {
            // Φ(y) = Φ(y − iβ) / (1 + e^{2πβy − πiβ²})
            let d = one + (y * tpb - imag(phase)).exp();
            if d.norm() < T::lit(1e-12) {
                return Err(Error::PoleProximity(format!("{:?}", x)));
            }
            factor = factor / d;
            y = y - imag(beta);
        }
        while y.im <= -edge && y.im + beta < edge {
            // Φ(y) = Φ(y + iβ) · (1 + e^{2πβy + πiβ²})
            factor = factor * (one + (y * tpb + imag(phase)).exp());
            y = y + imag(beta);
        }
    }
    let v = factor * phi_strip(b, y)?;
    if !is_finite(v) {
        return Err(Error::NonFinite(format!("Phi({:?})", x)));
    }
    Ok(v)
}

fn check_rational_argument<T: Real>(z: Complex<T>) -> Result<()> {
    let ez = z.exp();
    if !is_finite(ez) {
        return Err(Error::NonFinite(format!("exp({:?})", z)));
    }
    let d = if ez.re >= T::one() { ez.im.abs() } else { (ez - T::one()).norm() };
    if d < T::lit(dilog::CUT_TOL) {
        return Err(Error::CutProximity(format!("exp({:?})", z)));
    }
    Ok(())
}

fn log_phi_rational_numerator<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>, side: CutSide) -> Result<Complex<T>> {
    let ez = z.exp();
    let s2 = pair.s * pair.s;
    let li = dilog::li2_sided(ez, side)?;
    let l1 = dilog::log1m_sided(ez, side);
    let expo = real::<T>(T::one()) + imag(T::one()) * z / (T::TAU() * s2);
    let c = imag((T::TAU() * s2).recip());
    Ok(c * li + expo * l1)
}

fn log_cyclic_pair<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>, side: CutSide) -> Result<(Complex<T>, Complex<T>)> {
    let (nt, mt) = (T::int(pair.n as i64), T::int(pair.m as i64));
    let xp = (z / nt).exp();
    let xm = (z / mt).exp();
    let dn = dilog::cyclic_dilog_log_sided(pair.n, xp, &pair.q_plus, side)?;
    let dm = dilog::cyclic_dilog_log_sided(pair.m, xm, &pair.q_minus, side)?;
    Ok((dn, dm))
}

/// `log Φ_b(z/(2πs) − c_b)` from the closed form, with arguments on a
/// branch cut taken from `side`.
pub fn log_phi_rational_sided<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>, side: CutSide) -> Result<Complex<T>> {
    let num = log_phi_rational_numerator(pair, z, side)?;
    let (dn, dm) = log_cyclic_pair(pair, z, side)?;
    Ok(num - dn - dm)
}

/// `log Φ_b(z/(2πs) + c_b)`: as [`log_phi_rational_sided`] with both cyclic
/// dilogarithms replaced by their slashed versions.
pub fn log_phi_rational_shifted_sided<T: Real>(
    pair: &AdmissiblePair<T>,
    z: Complex<T>,
    side: CutSide,
) -> Result<Complex<T>> {
    let (nt, mt) = (T::int(pair.n as i64), T::int(pair.m as i64));
    let xp = (z / nt).exp();
    let xm = (z / mt).exp();
    let one = real::<T>(T::one());
    if (one - xp).norm() < T::lit(dilog::CUT_TOL) || (one - xm).norm() < T::lit(dilog::CUT_TOL) {
        return Err(Error::DomainError(format!("slashed factor vanishes at {:?}", z)));
    }
    let base = log_phi_rational_sided(pair, z, side)?;
    Ok(base - dilog::log1m_sided(xp, side) - dilog::log1m_sided(xm, side))
}

/// `Φ_b(z/(2πs) − c_b)` at `b² = M/N` from the closed form
/// `e^{(i/2πs²)Li₂(e^z)}(1 − e^z)^{1 + iz/(2πs²)} / (D_N(e^{z/N}; q₊) D_M(e^{z/M}; q₋))`.
pub fn phi_rational<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_rational_argument(z)?;
    Ok(log_phi_rational_sided(pair, z, CutSide::Above)?.exp())
}

/// `Φ_b(z/(2πs) + c_b)` at `b² = M/N`.
pub fn phi_rational_shifted<T: Real>(pair: &AdmissiblePair<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_rational_argument(z)?;
    Ok(log_phi_rational_shifted_sided(pair, z, CutSide::Above)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_representatives() {
        assert_eq!(bezout(1, 1).unwrap(), (1, 0));
        assert_eq!(bezout(2, 3).unwrap(), (-1, 1));
        assert_eq!(bezout(3, 5).unwrap(), (2, -1));
        assert_eq!(bezout(4, 1).unwrap(), (0, 1));
        assert_eq!(bezout(1, 7).unwrap(), (1, 0));
        assert!(matches!(bezout(2, 4), Err(Error::NotCoprime { .. })));
        for m in 1..15u64 {
            for n in 1..15u64 {
                if let Ok((p, q)) = bezout(m, n) {
                    assert_eq!(m as i64 * p + n as i64 * q, 1);
                    assert!(n == 1 || p.unsigned_abs() < n);
                }
            }
        }
    }

    #[test]
    fn pair_invariants() {
        let pr = AdmissiblePair::<f64>::new(3, 5).unwrap();
        assert!((pr.b * pr.s - 3.0).abs() < 1e-13);
        assert!((pr.s / pr.b - 5.0).abs() < 1e-13);
        assert!((pr.s * 2.0 * pr.gamma() - 8.0).abs() < 1e-13);
        assert!((pr.q_plus.pow(5) - 1.0).norm() < 1e-12);
        assert!((pr.q_minus.value.powu(3) - 1.0).norm() < 1e-12);
    }
}
