//! Neumaier-compensated accumulation for real and complex sums.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum<T: Real> {
    sum: T,
    comp: T,
}

impl<T: Real> KahanSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum<T: Real> {
    re: KahanSum<T>,
    im: KahanSum<T>,
}

impl<T: Real> ComplexSum<T> {
    pub fn new() -> Self {
        Self { re: KahanSum::new(), im: KahanSum::new() }
    }

    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// Sums `terms` in iteration order with compensation.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = Complex<T>>>(terms: I) -> Complex<T> {
    let mut acc = ComplexSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let mut s = KahanSum::<f64>::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
