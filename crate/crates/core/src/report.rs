//! Result types shared by the estimators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Monte Carlo over Gaussian vectors, rescaled by a Γ factor.
    GaussianMc,
    /// Monte Carlo over normalized Gaussian vectors (uniform on the sphere).
    DirectMc,
    /// Deterministic 1-D Laplace-transform integral of the Gaussian ½-moment.
    MomentIntegral,
    /// Monte Carlo average over Haar-random subspaces.
    KubotaMc,
    /// Hypergeometric series.
    Series,
    /// Euler-type integral by adaptive quadrature.
    Integral,
    ClosedForm,
    Asymptotic,
}

impl Method {
    pub fn is_deterministic(self) -> bool {
        !matches!(self, Method::GaussianMc | Method::DirectMc | Method::KubotaMc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::GaussianMc => "gaussian_mc",
            Method::DirectMc => "direct_mc",
            Method::MomentIntegral => "moment_integral",
            Method::KubotaMc => "kubota_mc",
            Method::Series => "series",
            Method::Integral => "integral",
            Method::ClosedForm => "closed_form",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A numerical value with its one-sigma statistical uncertainty.
///
/// `std_error` is exactly zero for deterministic methods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub method: Method,
    pub samples_used: u64,
}

impl Estimate {
    pub fn exact(value: f64, method: Method) -> Self {
        debug_assert!(method.is_deterministic());
        Estimate {
            value,
            std_error: 0.0,
            method,
            samples_used: 0,
        }
    }

    /// Multiplies value and uncertainty by a positive constant.
    pub fn scaled(self, factor: f64) -> Self {
        Estimate {
            value: self.value * factor,
            std_error: self.std_error * factor.abs(),
            ..self
        }
    }

    /// `|self - other|` in units of the combined standard error.
    pub fn sigma_distance(&self, other: &Estimate) -> f64 {
        let s = self.std_error.hypot(other.std_error);
        (self.value - other.value).abs() / s
    }
}

/// A value together with the independent value it was checked against.
///
/// Used wherever a formula is evaluated as written and compared with a
/// validated route, so that discrepancies are reported rather than hidden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub value: f64,
    pub std_error: f64,
    pub method: String,
    pub reference_value: Option<f64>,
    pub reference_std_error: f64,
    pub reference_method: Option<String>,
}

impl EvaluationReport {
    pub fn new(value: f64, method: impl Into<String>) -> Self {
        EvaluationReport {
            value,
            std_error: 0.0,
            method: method.into(),
            reference_value: None,
            reference_std_error: 0.0,
            reference_method: None,
        }
    }

    pub fn against(mut self, reference: f64, method: impl Into<String>) -> Self {
        self.reference_value = Some(reference);
        self.reference_method = Some(method.into());
        self
    }

    pub fn against_estimate(mut self, reference: &Estimate) -> Self {
        self.reference_value = Some(reference.value);
        self.reference_std_error = reference.std_error;
        self.reference_method = Some(reference.method.to_string());
        self
    }

    /// `value / reference`.
    pub fn deviation_factor(&self) -> Option<f64> {
        self.reference_value.map(|r| self.value / r)
    }

    /// `|value / reference - 1|`.
    pub fn relative_deviation(&self) -> Option<f64> {
        self.deviation_factor().map(|f| (f - 1.0).abs())
    }
}
