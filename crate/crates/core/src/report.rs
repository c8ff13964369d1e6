//! Evaluation reports and their JSON form.
//!
//! Floats are written with 17 significant digits, so a report survives a
//! print/parse round trip bit for bit.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::dilog::BranchedLog;
use crate::error::{Error, Result};
use crate::evaluator::StripPoint;
use crate::faddeev::AdmissiblePair;
use crate::scalar::Real;
use crate::state_sums::IntegrandSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ResidueSum,
    Quadrature,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::ResidueSum => "residue_sum",
            Method::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics<T: Real> {
    pub est_error: Option<T>,
    pub contour_height: Option<T>,
    pub truncation: Option<T>,
    pub panels: Option<u64>,
    /// Summands in strip-point order (closed form and residue sum).
    pub terms: Vec<Complex<T>>,
    /// Per strip point, the branch winding integer of `log` of the gluing
    /// equation (closed form only).
    pub windings: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport<T: Real> {
    pub value: Complex<T>,
    pub method: Method,
    pub spec: IntegrandSpec,
    pub pair: AdmissiblePair<T>,
    pub strip_points: Vec<StripPoint<T>>,
    pub lambda: T,
    pub diagnostics: Diagnostics<T>,
}

/// An `f64` written with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(F17(f64::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct JComplex {
    re: F17,
    im: F17,
}

impl From<Complex<f64>> for JComplex {
    fn from(z: Complex<f64>) -> Self {
        JComplex { re: F17(z.re), im: F17(z.im) }
    }
}

impl From<JComplex> for Complex<f64> {
    fn from(z: JComplex) -> Self {
        Complex::new(z.re.0, z.im.0)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JParams {
    spec: String,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none", default)]
    a: Option<u32>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none", default)]
    b: Option<u32>,
    #[serde(rename = "M")]
    m: u64,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "P")]
    p: i64,
    #[serde(rename = "Q")]
    q: i64,
}

#[derive(Debug, Serialize, Deserialize)]
struct JStripPoint {
    w: JComplex,
    z: JComplex,
    log_z_im_over_pi: F17,
    log_z: JComplex,
    theta_plus: JComplex,
    theta_minus: JComplex,
}

#[derive(Debug, Serialize, Deserialize)]
struct JDiagnostics {
    est_error: Option<F17>,
    lambda: F17,
    contour_height: Option<F17>,
    truncation: Option<F17>,
    panels: Option<u64>,
    #[serde(default)]
    terms: Vec<JComplex>,
    #[serde(default)]
    windings: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JReport {
    value: JComplex,
    method: Method,
    params: JParams,
    strip_points: Vec<JStripPoint>,
    diagnostics: JDiagnostics,
}

fn j_points(pts: &[StripPoint<f64>]) -> Vec<JStripPoint> {
    pts.iter()
        .map(|sp| JStripPoint {
            w: sp.w.into(),
            z: sp.z.into(),
            log_z_im_over_pi: F17(sp.log_z.value.im / std::f64::consts::PI),
            log_z: sp.log_z.value.into(),
            theta_plus: sp.theta_plus.into(),
            theta_minus: sp.theta_minus.into(),
        })
        .collect()
}

fn j_params(spec: &IntegrandSpec, pair: &AdmissiblePair<f64>) -> JParams {
    let (a, b) = match *spec {
        IntegrandSpec::Ab { a, b } => (Some(a), Some(b)),
        IntegrandSpec::Pretzel => (None, None),
    };
    JParams { spec: spec.name().into(), a, b, m: pair.m, n: pair.n, p: pair.p, q: pair.q }
}

#[derive(Serialize)]
struct JStripSet {
    params: JParams,
    lambda: F17,
    strip_points: Vec<JStripPoint>,
}

fn to_j(r: &EvaluationReport<f64>) -> JReport {
    JReport {
        value: r.value.into(),
        method: r.method,
        params: j_params(&r.spec, &r.pair),
        strip_points: j_points(&r.strip_points),
        diagnostics: JDiagnostics {
            est_error: r.diagnostics.est_error.map(F17),
            lambda: F17(r.lambda),
            contour_height: r.diagnostics.contour_height.map(F17),
            truncation: r.diagnostics.truncation.map(F17),
            panels: r.diagnostics.panels,
            terms: r.diagnostics.terms.iter().map(|&t| t.into()).collect(),
            windings: r.diagnostics.windings.clone(),
        },
    }
}

/// Compact JSON form of a report.
pub fn to_json(r: &EvaluationReport<f64>) -> String {
    serde_json::to_string(&to_j(r)).expect("report serialization cannot fail")
}

pub fn to_json_pretty(r: &EvaluationReport<f64>) -> String {
    serde_json::to_string_pretty(&to_j(r)).expect("report serialization cannot fail")
}

/// Compact JSON form of a strip set on its own.
pub fn strip_set_to_json(spec: &IntegrandSpec, pair: &AdmissiblePair<f64>, lambda: f64, pts: &[StripPoint<f64>]) -> String {
    let j = JStripSet { params: j_params(spec, pair), lambda: F17(lambda), strip_points: j_points(pts) };
    serde_json::to_string(&j).expect("strip set serialization cannot fail")
}

/// A complex number as `{"re":…,"im":…}` with 17 significant digits.
pub fn complex_to_json(z: Complex<f64>) -> String {
    serde_json::to_string(&JComplex::from(z)).expect("complex serialization cannot fail")
}

/// A real number with 17 significant digits (`null` if not finite).
pub fn real_to_json(x: f64) -> String {
    serde_json::to_string(&F17(x)).expect("float serialization cannot fail")
}

/// Parses the output of [`to_json`].
pub fn from_json(s: &str) -> Result<EvaluationReport<f64>> {
    let j: JReport = serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("report JSON: {}", e)))?;
    let spec = match (j.params.spec.as_str(), j.params.a, j.params.b) {
        ("AB", Some(a), Some(b)) => IntegrandSpec::Ab { a, b },
        ("pretzel", _, _) => IntegrandSpec::Pretzel,
        _ => return Err(Error::InvalidParameter("report JSON: unknown spec".into())),
    };
    let pair = AdmissiblePair::with_bezout(j.params.m, j.params.n, j.params.p, j.params.q)?;
    let strip_points = j
        .strip_points
        .into_iter()
        .map(|p| StripPoint {
            w: p.w.into(),
            z: p.z.into(),
            theta_plus: p.theta_plus.into(),
            theta_minus: p.theta_minus.into(),
            log_z: BranchedLog { value: p.log_z.into(), base: p.z.into() },
        })
        .collect();
    let d = j.diagnostics;
    Ok(EvaluationReport {
        value: j.value.into(),
        method: j.method,
        spec,
        pair,
        strip_points,
        lambda: d.lambda.0,
        diagnostics: Diagnostics {
            est_error: d.est_error.map(|x| x.0),
            contour_height: d.contour_height.map(|x| x.0),
            truncation: d.truncation.map(|x| x.0),
            panels: d.panels,
            terms: d.terms.into_iter().map(Into::into).collect(),
            windings: d.windings,
        },
    })
}

/// Rejects non-finite values with a named error.
pub(crate) fn check_value<T: Real>(v: Complex<T>, what: &str) -> Result<Complex<T>> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
