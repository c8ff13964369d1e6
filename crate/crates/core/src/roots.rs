//! Polynomial roots by Aberth–Ehrlich iteration with Newton polishing.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cx, real, Real};

/// Coefficients in ascending order: `c[i]` multiplies `z^i`.
pub fn poly_eval<T: Real>(c: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = p;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

pub fn poly_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

fn trim<T: Real>(c: &[Complex<T>]) -> &[Complex<T>] {
    let mut n = c.len();
    while n > 1 && c[n - 1].norm() == T::zero() {
        n -= 1;
    }
    &c[..n]
}

fn newton_polish<T: Real>(c: &[Complex<T>], mut z: Complex<T>) -> Complex<T> {
    for _ in 0..8 {
        let (p, dp) = poly_eval(c, z);
        if dp.norm() == T::zero() {
            break;
        }
        let step = p / dp;
        z = z - step;
        if step.norm() <= T::epsilon() * z.norm().max(T::one()) {
            break;
        }
    }
    z
}

/// All complex roots of the polynomial with coefficients `c`.
pub fn poly_roots<T: Real>(c: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let c = trim(c);
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    // Fujiwara-type bound for the initial circle.
    let mut radius = T::zero();
    for (i, a) in c.iter().enumerate().take(n) {
        let r = (a.norm() / lead.norm()).powf(T::one() / T::int((n - i) as i64));
        radius = radius.max(r);
    }
    radius = radius.max(T::lit(0.5));
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let t = T::TAU() * T::int(k as i64) / T::int(n as i64) + T::lit(0.4);
            cx(t.cos(), t.sin()) * radius
        })
        .collect();
    let mut converged = false;
    for _ in 0..1000 {
        let mut max_step = T::zero();
        for k in 0..n {
            let (p, dp) = poly_eval(c, z[k]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != k {
                    s = s + (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (real::<T>(T::one()) - ratio * s);
            z[k] = z[k] - w;
            max_step = max_step.max(w.norm() / z[k].norm().max(T::one()));
        }
        if max_step <= T::epsilon() * T::lit(4.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("polynomial root iteration".into()));
    }
    Ok(z.into_iter().map(|r| newton_polish(c, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cyclotomic_cubic() {
        let one = real::<f64>(1.0);
        let c = [-one, real(0.0), real(0.0), one];
        let r = poly_roots(&c).unwrap();
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z.powu(3) - one).norm() < 1e-14);
        }
    }
}
