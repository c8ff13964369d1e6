use std::f64::consts::PI;

use num_complex::Complex64 as C;
use stateint::quadrature::{default_height, height_band};
use stateint::{integrate_line, state_integral_numeric, ContourConfig, Error, IntegrandSpec, Options, Pair, Result};

fn cfg(height: f64) -> ContourConfig<f64> {
    ContourConfig { height, half_width: 8.0, panels: 16, tol: 1e-13, max_refinements: 8 }
}

#[test]
fn gaussian() {
    let f = |x: C| -> Result<C> { Ok((-(x * x) * PI).exp()) };
    let (v, err) = integrate_line(&f, &cfg(0.0)).unwrap();
    assert!((v - 1.0).norm() < 1e-12);
    assert!(err < 1e-12);
}

#[test]
fn shifted_gaussian() {
    let a = C::new(0.0, 0.2);
    let f = move |x: C| -> Result<C> { Ok((-(x - a) * (x - a) * PI).exp()) };
    let (v, _) = integrate_line(&f, &cfg(0.2)).unwrap();
    assert!((v - 1.0).norm() < 1e-12);
    // Same entire function, other contour.
    let (w, _) = integrate_line(&f, &cfg(-0.3)).unwrap();
    assert!((w - 1.0).norm() < 1e-12);
}

#[test]
fn oscillatory_gaussian() {
    // ∫ e^{−πx² + 2πixξ} dx = e^{−πξ²}
    let f = |x: C| -> Result<C> { Ok((-(x * x) * PI + C::new(0.0, 2.0 * PI * 1.3) * x).exp()) };
    let (v, _) = integrate_line(&f, &cfg(0.0)).unwrap();
    assert!((v - (-PI * 1.69f64).exp()).norm() < 1e-12);
}

#[test]
fn config_validation() {
    let f = |x: C| -> Result<C> { Ok((-(x * x)).exp()) };
    let mut c = cfg(0.0);
    c.tol = 1e-14;
    assert!(integrate_line(&f, &c).is_err());
    let mut c = cfg(0.0);
    c.panels = 0;
    assert!(integrate_line(&f, &c).is_err());
}

#[test]
fn non_finite_integrand() {
    let f = |_: C| -> Result<C> { Ok(C::new(f64::NAN, 0.0)) };
    assert!(integrate_line(&f, &cfg(0.0)).is_err());
}

#[test]
fn no_convergence_is_reported() {
    let f = |x: C| -> Result<C> { Ok((x * 400.0).cos()) };
    let c = ContourConfig { height: 0.0, half_width: 8.0, panels: 2, tol: 1e-13, max_refinements: 2 };
    assert!(matches!(integrate_line(&f, &c), Err(Error::NoConvergence(_))));
}

#[test]
fn figure_eight_at_b_one() {
    let pair = Pair::new(1, 1).unwrap();
    let r = state_integral_numeric(&IntegrandSpec::Ab { a: 1, b: 2 }, &pair, &Options::default()).unwrap();
    let vol = 2.029883212819307;
    let c = vol / (2.0 * PI);
    let expected = C::new(0.0, PI / 6.0).exp() / 3f64.sqrt() * (c.exp() - (-c).exp());
    assert!((r.value - expected).norm() < 1e-10);
    assert!((r.value - C::new(0.3287, 0.1898)).norm() < 1e-4);
    let d = r.diagnostics;
    assert_eq!(d.contour_height, Some(0.5));
    assert!(d.truncation.unwrap() > 0.0 && d.panels.unwrap() > 0 && d.est_error.unwrap() < 1e-10);
}

#[test]
fn height_independence() {
    let spec = IntegrandSpec::Ab { a: 1, b: 2 };
    let pair = Pair::new(1, 1).unwrap();
    let at = |h: f64| state_integral_numeric(&spec, &pair, &Options { height: Some(h), ..Default::default() }).unwrap().value;
    let v0 = at(0.35);
    for h in [0.5, 0.8] {
        assert!((at(h) - v0).norm() < 1e-9, "height {}", h);
    }
    let pretzel = |h: f64| {
        state_integral_numeric(&IntegrandSpec::Pretzel, &pair, &Options { height: Some(h), ..Default::default() }).unwrap().value
    };
    let p0 = pretzel(0.75);
    for h in [0.7, 0.85] {
        assert!((pretzel(h) - p0).norm() < 1e-8, "pretzel height {}", h);
    }
}

#[test]
fn doubling_truncation() {
    let spec = IntegrandSpec::Ab { a: 1, b: 3 };
    let pair = Pair::new(2, 3).unwrap();
    let r = state_integral_numeric(&spec, &pair, &Options::default()).unwrap();
    let t = r.diagnostics.truncation.unwrap();
    let tol = 1e-11;
    let wider = state_integral_numeric(&spec, &pair, &Options { half_width: Some(2.0 * t), tol: Some(tol), ..Default::default() }).unwrap();
    assert!(wider.diagnostics.truncation.unwrap() >= 2.0 * t);
    assert!((wider.value - r.value).norm() < tol);
}

#[test]
fn bands() {
    let pair = Pair::new(2, 3).unwrap();
    let g = pair.c_b.im;
    let ab = IntegrandSpec::Ab { a: 1, b: 2 };
    assert_eq!(height_band(&ab, &pair), (0.0, g));
    assert_eq!(height_band(&IntegrandSpec::Pretzel, &pair), (g / 2.0, g));
    assert_eq!(default_height(&ab, &pair), g / 2.0);
    assert_eq!(default_height(&IntegrandSpec::Pretzel, &pair), 0.75 * g);
    for h in [0.0, g, -0.1, 1.5 * g] {
        let r = state_integral_numeric(&ab, &pair, &Options { height: Some(h), ..Default::default() });
        assert!(matches!(r, Err(Error::BandViolation { .. })), "{}", h);
    }
    let r = state_integral_numeric(&IntegrandSpec::Pretzel, &pair, &Options { height: Some(0.4 * g), ..Default::default() });
    assert!(matches!(r, Err(Error::BandViolation { .. })));
}

#[test]
fn deterministic() {
    let spec = IntegrandSpec::Ab { a: 2, b: 3 };
    let pair = Pair::new(1, 2).unwrap();
    let a = state_integral_numeric(&spec, &pair, &Options::default()).unwrap().value;
    let b = state_integral_numeric(&spec, &pair, &Options::default()).unwrap().value;
    assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
}
