//! Quantum dilogarithms and one-dimensional state-integrals at rational `b²`.
//!
//! The numerical core is generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix `f64`, which is what the
//! accuracy targets are stated for.
//!
//! ```
//! use stateint::{evaluate_thm1, IntegrandSpec, Pair};
//!
//! let pair = Pair::new(1, 1).unwrap();
//! let spec = IntegrandSpec::ab(1, 2).unwrap();
//! let v = evaluate_thm1(&spec, &pair, None).unwrap().value;
//! assert!((v.re - 0.328715166319486).abs() < 1e-12);
//! ```

pub mod dilog;
pub mod error;
pub mod evaluator;
pub mod faddeev;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod state_sums;
pub mod sum;
pub mod verify;

pub use dilog::{
    cyclic_dilog, li2, pochhammer, rogers, rogers_real, slashed_cyclic_dilog, BranchedLog, CutSide, RootOfUnity,
};
pub use error::{Error, Result};
pub use evaluator::{
    evaluate_cor_m1, evaluate_residue_sum, evaluate_thm1, gluing_roots, strip_set, StripPoint,
};
pub use faddeev::{bezout, phi, phi_rational, phi_rational_shifted, phi_strip, AdmissiblePair};
pub use quadrature::{integrate_line, state_integral_numeric, ContourConfig, StateIntegralOptions};
pub use report::{EvaluationReport, Method};
pub use scalar::Real;
pub use state_sums::{big_g_mn, big_g_n, g_k, IntegrandSpec};

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;
pub type Pair = AdmissiblePair<f64>;
pub type Pair32 = AdmissiblePair<f32>;
pub type Report = EvaluationReport<f64>;
pub type Point = StripPoint<f64>;
pub type Options = StateIntegralOptions<f64>;
pub type Unity = RootOfUnity<f64>;
