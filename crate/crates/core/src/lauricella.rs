//! The Lauricella function `F_D` and the hypergeometric form of the
//! isoperimetric ratio.
//!
//! ```text
//! F_D(a; b; c; x) = Σ_m (a)_{|m|} ∏(b_i)_{m_i} / (c)_{|m|} ∏ x_i^{m_i}/m_i!
//!                 = Γ(c)/(Γ(a)Γ(c−a)) ∫₀¹ u^{a−1}(1−u)^{c−a−1} ∏(1−u x_i)^{−b_i} du
//! ```
//!
//! for `a > 0`, `c − a > 0`, `|x_i| < 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::sphere_moment_factor;
use crate::quadrature::{integrate_vec, QuadratureConfig};
use crate::report::EvaluationReport;
use crate::surface::{ratio_norm, RatioMethod};

/// Largest `max |x_i|` the series evaluator accepts.
pub const SERIES_MAX_ABS_X: f64 = 0.95;

/// Layer budget used by [`fd`] when it picks the series.
pub const DEFAULT_MAX_TOTAL_DEGREE: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdParams {
    pub a: f64,
    pub b: Vec<f64>,
    pub c: f64,
    pub x: Vec<f64>,
}

impl FdParams {
    pub fn new(a: f64, b: Vec<f64>, c: f64, x: Vec<f64>) -> Result<Self> {
        let p = FdParams { a, b, c, x };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.len() != self.x.len() {
            return Err(Error::Dimension(format!(
                "F_D has {} b-parameters but {} arguments",
                self.b.len(),
                self.x.len()
            )));
        }
        if self.x.is_empty() {
            return Err(Error::domain("F_D needs at least one variable"));
        }
        if !(self.a > 0.0) || !(self.c - self.a > 0.0) || !self.c.is_finite() {
            return Err(Error::domain(format!(
                "F_D needs a > 0 and c - a > 0, got a = {}, c = {}",
                self.a, self.c
            )));
        }
        if let Some(b) = self.b.iter().find(|b| !b.is_finite()) {
            return Err(Error::domain(format!("non-finite b parameter {b}")));
        }
        if let Some(x) = self.x.iter().find(|x| !(x.abs() < 1.0)) {
            return Err(Error::domain(format!("F_D arguments need |x_i| < 1, got {x}")));
        }
        Ok(())
    }

    pub fn max_abs_x(&self) -> f64 {
        self.x.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// Sums the multiple series by total degree `m = m_1 + … + m_n`.
///
/// Layer `m` is `(a)_m/(c)_m · h_m` with `h_m` the degree-`m` coefficient of
/// `∏_i (1 − x_i t)^{−b_i}`, built by successive convolution. With
/// `B = Σ|b_i|` and `r = max|x_i|` the layers are dominated by
/// `T_m = (a)_m/(c)_m · (B)_m/m! · r^m`, whose ratios are eventually bounded
/// by `ρ < 1`; summation stops once the geometric tail `T_{m+1}/(1−ρ)` is
/// below `rel_tol · |partial sum|`.
pub fn fd_series(params: &FdParams, rel_tol: f64, max_total_degree: usize) -> Result<f64> {
    params.validate()?;
    if !(rel_tol > 0.0) {
        return Err(Error::domain("series tolerance must be positive"));
    }
    let r = params.max_abs_x();
    if r > SERIES_MAX_ABS_X {
        return Err(Error::Inadmissible(format!(
            "series evaluation needs max |x_i| <= {SERIES_MAX_ABS_X}, got {r}; use the integral"
        )));
    }
    let (a, c) = (params.a, params.c);
    let n = params.x.len();
    let big_b: f64 = params.b.iter().map(|b| b.abs()).sum();

    // per-variable (b_i)_m x_i^m / m!, and the running partial products
    let mut single: Vec<Vec<f64>> = vec![vec![1.0]; n];
    let mut staged: Vec<Vec<f64>> = vec![vec![1.0]; n];
    let mut sum = 1.0f64;
    let mut coef = 1.0f64;
    // ln((B)_m / m!)
    let mut ln_bm = 0.0f64;
    let mut tail = f64::INFINITY;

    for m in 1..=max_total_degree {
        let mf = m as f64;
        coef *= (a + mf - 1.0) / (c + mf - 1.0);
        for (i, s) in single.iter_mut().enumerate() {
            let next = s[m - 1] * (params.b[i] + mf - 1.0) * params.x[i] / mf;
            s.push(next);
        }
        staged[0].push(single[0][m]);
        for i in 1..n {
            let conv: f64 = (0..=m).map(|j| single[i][j] * staged[i - 1][m - j]).sum();
            staged[i].push(conv);
        }
        sum += coef * staged[n - 1][m];

        ln_bm += ((big_b + mf - 1.0) / mf).ln();
        let next_coef = coef * (a + mf) / (c + mf);
        let ln_t_next = next_coef.ln() + ln_bm + ((big_b + mf) / (mf + 1.0)).ln() + (mf + 1.0) * r.ln();
        let rho = r * ((big_b + mf + 1.0) / (mf + 2.0)).max(1.0);
        if rho < 1.0 {
            tail = ln_t_next.exp() / (1.0 - rho);
            if tail <= rel_tol * sum.abs() || tail <= f64::MIN_POSITIVE {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence {
        layers: max_total_degree,
        tail_bound: tail,
        partial_sum: sum,
    })
}

/// Evaluates the Euler integral by adaptive quadrature.
///
/// The interval is split at ½. On the left, `u = s^{1/a}` absorbs the
/// `u^{a−1}` singularity when `a < 1`; on the right, `1 − u = t^{1/(c−a)}`
/// does the same for `(1−u)^{c−a−1}` when `c − a < 1`. The Beta kernel is
/// integrated on the same mesh and the result is the ratio of the two
/// integrals, which equals the Γ-normalized integral and is exactly 1 when
/// the product term is identically 1.
pub fn fd_integral(params: &FdParams, quad: &QuadratureConfig) -> Result<f64> {
    params.validate()?;
    let (a, c) = (params.a, params.c);
    let ca = c - a;
    let (b, x) = (&params.b, &params.x);

    let product_left = |u: f64| -> f64 {
        let l: f64 = b.iter().zip(x).map(|(b, x)| b * (-u * x).ln_1p()).sum();
        (-l).exp()
    };
    // 1 − u x written as (1 − x) + w x to keep accuracy as u → 1
    let product_right = |w: f64| -> f64 {
        let l: f64 = b.iter().zip(x).map(|(b, x)| b * ((1.0 - x) + w * x).ln()).sum();
        (-l).exp()
    };

    let left = if a < 1.0 {
        integrate_vec(
            |s| {
                let u = s.powf(1.0 / a);
                let k = (-u).ln_1p() * (ca - 1.0);
                let k = k.exp() / a;
                [k * product_left(u), k]
            },
            0.0,
            0.5f64.powf(a),
            quad,
        )?
    } else {
        integrate_vec(
            |u| {
                let k = (u.ln() * (a - 1.0) + (-u).ln_1p() * (ca - 1.0)).exp();
                [k * product_left(u), k]
            },
            0.0,
            0.5,
            quad,
        )?
    };
    let right = if ca < 1.0 {
        integrate_vec(
            |t| {
                let w = t.powf(1.0 / ca);
                let k = ((-w).ln_1p() * (a - 1.0)).exp() / ca;
                [k * product_right(w), k]
            },
            0.0,
            0.5f64.powf(ca),
            quad,
        )?
    } else {
        integrate_vec(
            |w| {
                let k = (w.ln() * (ca - 1.0) + (-w).ln_1p() * (a - 1.0)).exp();
                [k * product_right(w), k]
            },
            0.0,
            0.5,
            quad,
        )?
    };
    Ok((left.value[0] + right.value[0]) / (left.value[1] + right.value[1]))
}

/// `F_D` by the series when `max|x_i| <= 0.95`, otherwise by the integral.
pub fn fd(params: &FdParams, quad: &QuadratureConfig) -> Result<f64> {
    if params.max_abs_x() <= SERIES_MAX_ABS_X {
        fd_series(params, quad.rel_tol, DEFAULT_MAX_TOTAL_DEGREE)
    } else {
        fd_integral(params, quad)
    }
}

/// The three values produced by [`ratio_via_fd`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdRatioReport {
    pub alpha: f64,
    /// The two-Γ-squared expression with third parameter `(n+1)/2`,
    /// checked against the moment-integral ratio.
    pub printed: EvaluationReport,
    /// `√α Σ_j q_j² F_D(½; η_{·j}; (n+2)/2; 1 − α q²)`, checked against the same oracle.
    pub corrected: EvaluationReport,
    /// `R(E)` from the moment integral.
    pub oracle: f64,
}

/// The `α` that centres the arguments `1 − α q_j²` symmetrically around 0.
pub fn centred_alpha(q: &[f64]) -> Result<f64> {
    let (lo, hi) = q.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v * v), hi.max(v * v)));
    if !(lo > 0.0) || !hi.is_finite() {
        return Err(Error::Inadmissible(
            "every q_j must be positive and finite for the hypergeometric form".into(),
        ));
    }
    Ok(2.0 / (lo + hi))
}

fn eta_column(n: usize, j: usize) -> Vec<f64> {
    (0..n).map(|i| if i == j { 1.5 } else { 0.5 }).collect()
}

/// Evaluates the hypergeometric representations of `R(E)` and reports each
/// against the moment-integral oracle.
///
/// Requires `|1 − α q_j²| < 1` for every `j`.
pub fn ratio_via_fd(q: &[f64], alpha: f64, quad: &QuadratureConfig) -> Result<FdRatioReport> {
    if q.is_empty() {
        return Err(Error::domain("need at least one inverse semi-axis"));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Inadmissible(format!("α must be positive, got {alpha}")));
    }
    let x: Vec<f64> = q.iter().map(|v| 1.0 - alpha * v * v).collect();
    if let Some((j, xj)) = x.iter().enumerate().find(|(_, x)| !(x.abs() < 1.0)) {
        return Err(Error::Inadmissible(format!(
            "|1 − α q_j²| = {} >= 1 at j = {} (α = {alpha})",
            xj.abs(),
            j + 1
        )));
    }
    let n = q.len();
    let nf = n as f64;
    let oracle = ratio_norm(q, &RatioMethod::MomentIntegral(*quad))?.ratio;

    let mut printed_sum = 0.0;
    let mut corrected_sum = 0.0;
    for (j, qj) in q.iter().enumerate() {
        let b = eta_column(n, j);
        let p = FdParams::new(0.5, b.clone(), (nf + 1.0) / 2.0, x.clone())?;
        printed_sum += qj * qj / 2.0 * fd_integral(&p, quad)?;
        let p = FdParams::new(0.5, b, (nf + 2.0) / 2.0, x.clone())?;
        corrected_sum += qj * qj * fd_integral(&p, quad)?;
    }
    // Γ(n/2)/Γ((n+1)/2), squared
    let g = sphere_moment_factor(n, 1.0)?;
    let printed = nf * g * g * alpha.sqrt() * printed_sum;
    let corrected = alpha.sqrt() * corrected_sum;

    Ok(FdRatioReport {
        alpha,
        printed: EvaluationReport::new(printed, "fd_two_gamma_squared").against(oracle, "moment_integral"),
        corrected: EvaluationReport::new(corrected, "fd_corrected").against(oracle, "moment_integral"),
        oracle,
    })
}
