use num_complex::Complex64 as C;
use stateint::dilog::pochhammer;
use stateint::{big_g_mn, big_g_n, g_k, IntegrandSpec, Pair, Unity};

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

/// Closed form of the AB multiplier: `(−x)^{Ak} q^{A k(k+1)/2} / (qx; q)_k^B`.
fn g_ab(a: u32, b: u32, k: i64, x: C, q: C) -> C {
    let e = (a as i64) * k * (k + 1) / 2;
    (-x).powi((a as i64 * k) as i32) * q.powi(e as i32) / pochhammer(q * x, q, k).unwrap().powu(b)
}

/// Closed form of the pretzel multiplier: `q^{k(k+1)} x^{2k} / ((qx; q)_k² (qx²; q)_{2k})`.
fn g_pretzel(k: i64, x: C, q: C) -> C {
    q.powi((k * (k + 1)) as i32) * x.powi((2 * k) as i32)
        / (pochhammer(q * x, q, k).unwrap().powu(2) * pochhammer(q * x * x, q, 2 * k).unwrap())
}

#[test]
fn multipliers_match_closed_forms() {
    let xs = [C::new(0.3, 0.2), C::new(-0.5, 0.4), C::new(0.1, -0.7)];
    for order in [2u64, 3, 5, 7] {
        for e in 1..order as i64 {
            let q = Unity::new(order, e).unwrap();
            for &x in &xs {
                for k in -6..=6 {
                    for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 5)] {
                        let spec = IntegrandSpec::Ab { a, b };
                        let v = g_k(&spec, k, x, &q).unwrap();
                        assert!(rel(v, g_ab(a, b, k, x, q.value)) < 1e-12, "AB({},{}) k={} q={}", a, b, k, q.value);
                    }
                    let v = g_k(&IntegrandSpec::Pretzel, k, x, &q).unwrap();
                    assert!(rel(v, g_pretzel(k, x, q.value)) < 1e-12, "pretzel k={}", k);
                }
            }
        }
    }
}

#[test]
fn multipliers_with_a_generic_base() {
    let q = C::new(0.3, 0.8);
    let x = C::new(0.25, -0.4);
    for k in -4..=4 {
        let v = g_k(&IntegrandSpec::Ab { a: 1, b: 2 }, k, x, &q).unwrap();
        assert!(rel(v, g_ab(1, 2, k, x, q)) < 1e-12);
    }
}

#[test]
fn multiplier_examples() {
    let spec = IntegrandSpec::Ab { a: 1, b: 2 };
    let q = Unity::new(5, 2).unwrap();
    let x = C::new(0.2, 0.6);
    let one = C::new(1.0, 0.0);
    assert_eq!(g_k(&spec, 0, x, &q).unwrap(), one);
    let g1 = g_k(&spec, 1, x, &q).unwrap();
    let qv = q.value;
    assert!(rel(g1, -x * qv / ((one - qv * x) * (one - qv * x))) < 1e-14);
    // r_{−1}(z) · r_1(z q^{−1}) = 1
    let gm1 = g_k(&spec, -1, x, &q).unwrap();
    let g1_shift = g_k(&spec, 1, x / qv, &q).unwrap();
    assert!((gm1 * g1_shift - one).norm() < 1e-13);
}

#[test]
fn vanishing_step_is_reported() {
    let q = Unity::new(3, 1).unwrap();
    let x = q.pow(-1);
    assert!(g_k(&IntegrandSpec::Ab { a: 1, b: 2 }, 1, x, &q).is_err());
}

#[test]
fn truncated_sums() {
    let x = C::new(0.3, -0.45);
    let one = C::new(1.0, 0.0);
    for spec in [IntegrandSpec::Ab { a: 1, b: 3 }, IntegrandSpec::Pretzel] {
        assert_eq!(big_g_n(&spec, 1, x).unwrap(), one);
    }
    let v = big_g_n(&IntegrandSpec::Ab { a: 1, b: 2 }, 2, x).unwrap();
    assert!(rel(v, one + x / ((one + x) * (one + x))) < 1e-14);
    // Direct sum.
    let spec = IntegrandSpec::Ab { a: 2, b: 3 };
    let q = Unity::new(6, 1).unwrap();
    let direct: C = (0..6).map(|k| g_ab(2, 3, k, x, q.value)).sum();
    assert!(rel(big_g_n(&spec, 6, x).unwrap(), direct) < 1e-13);
}

#[test]
fn state_sum_examples() {
    let spec = IntegrandSpec::Ab { a: 1, b: 2 };
    let (xp, xm) = (C::new(0.2, 0.1), C::new(-0.3, 0.5));
    let p11 = Pair::new(1, 1).unwrap();
    assert_eq!(big_g_mn(&spec, &p11, xp, xm).unwrap(), C::new(1.0, 0.0));
    for n in 1..=6 {
        let pair = Pair::new(1, n).unwrap();
        assert!(rel(big_g_mn(&spec, &pair, xp, xm).unwrap(), big_g_n(&spec, n, xp).unwrap()) < 1e-13);
    }
    // (2,3) on the locus x₊³ = x₋², with two Bézout representatives.
    let t = C::from_polar(0.93, 0.7);
    let (xp, xm) = (t.powu(2), t.powu(3));
    let a = stateint::AdmissiblePair::<f64>::with_bezout(2, 3, -1, 1).unwrap();
    let b = stateint::AdmissiblePair::<f64>::with_bezout(2, 3, 2, -1).unwrap();
    for spec in [IntegrandSpec::Ab { a: 1, b: 2 }, IntegrandSpec::Ab { a: 1, b: 3 }, IntegrandSpec::Pretzel] {
        let va = big_g_mn(&spec, &a, xp, xm).unwrap();
        let vb = big_g_mn(&spec, &b, xp, xm).unwrap();
        assert!(rel(va, vb) < 1e-11, "{:?}: {} vs {}", spec, va, vb);
    }
}

#[test]
fn total_multiplier_and_derivative() {
    let specs = [IntegrandSpec::Ab { a: 1, b: 2 }, IntegrandSpec::Ab { a: 2, b: 5 }, IntegrandSpec::Pretzel];
    for spec in specs {
        for x in [C::new(0.3, 0.4), C::new(-1.7, 0.2), C::new(2.5, -0.9)] {
            let h = 1e-5;
            let numeric = (spec.g(x + h) - spec.g(x - h)) / (2.0 * h);
            assert!(rel(spec.g_prime(x), numeric) < 1e-8);
        }
    }
    let x = C::new(0.3, 0.4);
    let one = C::new(1.0, 0.0);
    assert!(rel(IntegrandSpec::Ab { a: 1, b: 2 }.g(x), -x / ((one - x) * (one - x))) < 1e-15);
    let d = (one - x) * (one - x * x);
    assert!(rel(IntegrandSpec::Pretzel.g(x), x * x / (d * d)) < 1e-15);
}

#[test]
fn spec_validation_and_ranges() {
    assert!(IntegrandSpec::ab(2, 1).is_err());
    assert!(IntegrandSpec::ab(0, 1).is_err());
    assert!(IntegrandSpec::ab(2, 2).is_err());
    assert!(IntegrandSpec::ab(1, 2).is_ok());
    let pair = Pair::new(2, 3).unwrap();
    assert_eq!(IntegrandSpec::Ab { a: 1, b: 2 }.lambda_range(&pair), (-2.5, 0.0));
    assert_eq!(IntegrandSpec::Pretzel.lambda_range(&pair), (-1.25, 0.0));
}
