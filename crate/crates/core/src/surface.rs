//! Isoperimetric ratio and surface area of an ellipsoid.
//!
//! For semi-axes `a_i` with inverses `q_i = 1/a_i`, the surface-to-volume
//! ratio is `R(E) = n · mean_{S^{n-1}} √(Σ q_i² u_i²)`. The sphere mean
//! `‖q‖_R = R(E)/n` is a norm on `q` and is computed either by Monte Carlo or
//! deterministically from the ½-moment of the Gaussian quadratic form
//! `Y = Σ q_j² X_j²` (`X_j ~ N(0, ½)`):
//!
//! ```text
//! E√Y = (2√π)⁻¹ ∫₀^∞ t^{-3/2} (1 − ∏_j (1 + t q_j²)^{-1/2}) dt,
//! ‖q‖_R = Γ(n/2)/Γ((n+1)/2) · E√Y.
//! ```
//!
//! The integral is evaluated after `t = v²` (removing the `t^{-1/2}`
//! behaviour at the origin) and `v = s/(1−s)`, which leaves a bounded smooth
//! integrand on `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    check_axes, ln_elementary_symmetric, ln_unit_ball_volume, scaled_sum_sq, sphere_moment_factor,
    sqrt_pi,
};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::report::{Estimate, Method};
use crate::sphere::{sphere_mean_homogeneous, MonteCarloConfig, SphereMode};

/// How `‖q‖_R` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMethod {
    MonteCarlo(MonteCarloConfig),
    MomentIntegral(QuadratureConfig),
}

impl Default for RatioMethod {
    fn default() -> Self {
        RatioMethod::MomentIntegral(QuadratureConfig::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioResult {
    /// `R(E)`, surface area over volume.
    pub ratio: f64,
    /// `‖q‖_R = R(E)/n`.
    pub norm_value: f64,
    pub method: Method,
    /// Standard error of `ratio` (zero for the moment integral).
    pub std_error: f64,
    pub samples_used: u64,
}

impl RatioResult {
    pub fn estimate(&self) -> Estimate {
        Estimate {
            value: self.ratio,
            std_error: self.std_error,
            method: self.method,
            samples_used: self.samples_used,
        }
    }
}

fn check_inverse_axes(q: &[f64]) -> Result<()> {
    if q.is_empty() {
        return Err(Error::domain("need at least one inverse semi-axis"));
    }
    if let Some(v) = q.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain(format!("inverse semi-axes must be finite and >= 0, got {v}")));
    }
    if q.iter().all(|&v| v == 0.0) {
        return Err(Error::domain("‖q‖_R is zero for q = 0; the ellipsoid is unbounded"));
    }
    Ok(())
}

/// `E√(Σ r_j² X_j²)` for `Σ r_j² = 1`, by the Laplace-transform integral.
fn unit_half_moment(r: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    let r2: Vec<f64> = r.iter().filter(|v| **v > 0.0).map(|v| v * v).collect();
    let integrand = |s: f64| {
        let v = s / (1.0 - s);
        let v2 = v * v;
        let log_prod: f64 = r2.iter().map(|w| (v2 * w).ln_1p()).sum();
        -(-0.5 * log_prod).exp_m1() / (s * s)
    };
    let (value, _) = integrate(integrand, 0.0, 1.0, cfg)?;
    Ok(value / sqrt_pi())
}

/// `‖q‖_R` and `R(E) = n ‖q‖_R` from the inverse semi-axes.
pub fn ratio_norm(q: &[f64], method: &RatioMethod) -> Result<RatioResult> {
    check_inverse_axes(q)?;
    let n = q.len();
    let (scale, sum_sq) = scaled_sum_sq(q);
    let norm2 = scale * sum_sq.sqrt();
    let r: Vec<f64> = q.iter().map(|v| v / norm2).collect();

    let (norm_value, norm_err, method, samples) = match method {
        RatioMethod::MomentIntegral(cfg) => {
            let m = unit_half_moment(&r, cfg)?;
            let norm = norm2 * sphere_moment_factor(n, 1.0)? * m;
            (norm, 0.0, Method::MomentIntegral, 0)
        }
        RatioMethod::MonteCarlo(cfg) => {
            let r2: Vec<f64> = r.iter().map(|v| v * v).collect();
            let e = sphere_mean_homogeneous(
                |x| x.iter().zip(&r2).map(|(x, w)| w * x * x).sum::<f64>().sqrt(),
                1.0,
                n,
                SphereMode::Gaussian,
                cfg,
            )?;
            (e.value * norm2, e.std_error * norm2, e.method, e.samples_used)
        }
    };
    Ok(RatioResult {
        ratio: n as f64 * norm_value,
        norm_value,
        method,
        std_error: n as f64 * norm_err,
        samples_used: samples,
    })
}

/// Surface area `R(E) · κ_n · ∏ a_i`, with the product formed in log space.
pub fn surface_area(axes: &[f64], method: &RatioMethod) -> Result<Estimate> {
    check_axes(axes, false)?;
    let q: Vec<f64> = axes.iter().map(|a| 1.0 / a).collect();
    let r = ratio_norm(&q, method)?;
    let ln_vol = ln_unit_ball_volume(axes.len()) + axes.iter().map(|a| a.ln()).sum::<f64>();
    let value = (r.ratio.ln() + ln_vol).exp();
    Ok(Estimate {
        value,
        std_error: value * r.std_error / r.ratio,
        method: r.method,
        samples_used: r.samples_used,
    })
}

/// Sharp constants `c_n <= ‖q‖_R / ‖q‖₂ <= C_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBounds {
    /// `c_n = Γ(n/2)/(√π Γ((n+1)/2))`, attained at `q = (1, 0, …, 0)`.
    pub lower: f64,
    /// `C_n = 1/√n`, attained at `q = (1, …, 1)`.
    pub upper: f64,
}

pub fn ratio_bounds(n: usize) -> Result<RatioBounds> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    Ok(RatioBounds {
        lower: sphere_moment_factor(n, 1.0)? / sqrt_pi(),
        upper: 1.0 / (n as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRatio {
    /// `n · Γ(n/2)/Γ((n+1)/2) · √(½ Σ q_i²)`.
    pub value: f64,
    /// `Σ q_i⁴ / (Σ q_i²)²`; the approximation is justified when this is small.
    pub lindeberg_ratio: f64,
}

/// Law-of-large-numbers approximation of `R(E)`.
pub fn ratio_asymptotic(q: &[f64]) -> Result<AsymptoticRatio> {
    check_inverse_axes(q)?;
    let n = q.len();
    let (scale, sum_sq) = scaled_sum_sq(q);
    let sum_4: f64 = q.iter().map(|v| (v / scale).powi(4)).sum();
    let value = n as f64 * sphere_moment_factor(n, 1.0)? * scale * (0.5 * sum_sq).sqrt();
    Ok(AsymptoticRatio {
        value,
        lindeberg_ratio: sum_4 / (sum_sq * sum_sq),
    })
}

/// Both sides of `‖q‖_p = ∏ q_i · e_{n-1}(a_1^p, …, a_n^p)^{1/p}`.
pub fn lp_symmetric_identity(axes: &[f64], p: f64) -> Result<(f64, f64)> {
    check_axes(axes, false)?;
    if !(p >= 1.0) {
        return Err(Error::domain(format!("need p >= 1, got {p}")));
    }
    let q: Vec<f64> = axes.iter().map(|a| 1.0 / a).collect();
    let m = q.iter().cloned().fold(0.0f64, f64::max);
    let lhs = m * q.iter().map(|v| (v / m).powf(p)).sum::<f64>().powf(1.0 / p);

    let powered: Vec<f64> = axes.iter().map(|a| a.powf(p)).collect();
    let ln_e = ln_elementary_symmetric(&powered, axes.len() - 1)?;
    let ln_prod_q: f64 = -axes.iter().map(|a| a.ln()).sum::<f64>();
    let rhs = (ln_prod_q + ln_e / p).exp();
    Ok((lhs, rhs))
}
