//! Integral mean curvatures of ellipsoids.
//!
//! `M_k` is normalized so that `M_k(Bⁿ(1)) = ω_{n−1}` and, for an ellipsoid,
//! is defined through the average volume of its projections onto
//! `(n−k−1)`-dimensional subspaces:
//!
//! ```text
//! M_k(E) = (n−k−1) ω_{n−1} / ω_{n−k−2} · ⨍_{G(n, n−k−1)} vol_{n−k−1}(P_x E) dx.
//! ```
//!
//! `k = 0` is the surface area (Cauchy's formula).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    binomial, ln_binomial, ln_elementary_symmetric, ln_gamma, ln_unit_sphere_area, sqrt_pi, Ellipsoid,
};
use crate::projection::{gram_volume, haar_from_gaussian};
use crate::report::{Estimate, Method};
use crate::sphere::{fill_gaussian, monte_carlo_mean, MonteCarloConfig};

/// An ellipsoid together with a mean-curvature order `0 <= k <= n − 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureQuery {
    ellipsoid: Ellipsoid,
    k: usize,
}

impl CurvatureQuery {
    pub fn new(ellipsoid: Ellipsoid, k: usize) -> Result<Self> {
        let n = ellipsoid.dim();
        if n < 2 || k + 2 > n {
            return Err(Error::Index(format!(
                "mean-curvature order needs 0 <= k <= n − 2, got n = {n}, k = {k}"
            )));
        }
        Ok(CurvatureQuery { ellipsoid, k })
    }

    /// Builds the query from semi-axes, zeros allowed.
    pub fn from_axes(axes: &[f64], k: usize) -> Result<Self> {
        Self::new(Ellipsoid::degenerate(axes.to_vec())?, k)
    }

    pub fn ellipsoid(&self) -> &Ellipsoid {
        &self.ellipsoid
    }

    pub fn dim(&self) -> usize {
        self.ellipsoid.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimension `n − k − 1` of the projection subspaces.
    pub fn projection_dim(&self) -> usize {
        self.dim() - self.k - 1
    }
}

fn check_ball_order(n: usize, k: usize) -> Result<()> {
    if n < 2 || k >= n {
        return Err(Error::Index(format!("need n >= 2 and 0 <= k <= n − 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn check_flat_order(n: usize, k: usize) -> Result<()> {
    if n < 2 || k + 2 > n {
        return Err(Error::Index(format!("need n >= 2 and 0 <= k <= n − 2, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `M_k(Bⁿ(R)) = ω_{n−1} R^{n−1−k}`.
pub fn mk_ball(n: usize, k: usize, radius: f64) -> Result<f64> {
    check_ball_order(n, k)?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain(format!("radius must be positive, got {radius}")));
    }
    Ok((ln_unit_sphere_area(n - 1) + (n - 1 - k) as f64 * radius.ln()).exp())
}

fn ln_mk_flat_ball(n: usize, k: usize) -> f64 {
    let m = n - k - 1;
    ln_unit_sphere_area(k) + ln_unit_sphere_area(m - 1) - (m as f64).ln() - ln_binomial(n - 1, k)
}

/// `k`-th mean curvature of the unit `(n−k−1)`-ball sitting in `Rⁿ`:
/// `ω_k ω_{n−k−2} / ((n−k−1) C(n−1, k))`.
pub fn mk_flat_ball(n: usize, k: usize) -> Result<f64> {
    check_flat_order(n, k)?;
    Ok(ln_mk_flat_ball(n, k).exp())
}

/// `M_k(Bⁿ)/M_k(B^{n−k−1})` reduced with the duplication formula:
/// `√π Γ((n+1)/2) / (Γ(k/2+1) Γ((n−k)/2))`.
pub fn mk_ratio_duplication(n: usize, k: usize) -> Result<f64> {
    check_flat_order(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let l = ln_gamma((nf + 1.0) / 2.0) - ln_gamma(kf / 2.0 + 1.0) - ln_gamma((nf - kf) / 2.0);
    Ok(sqrt_pi() * l.exp())
}

fn ln_direct_ratio(n: usize, k: usize) -> f64 {
    ln_unit_sphere_area(n - 1) - ln_mk_flat_ball(n, k)
}

/// Limit regimes for the normalized ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticRegime {
    /// `k` fixed, `n → ∞`.
    FixedOrder,
    /// `n − k` fixed, `k, n → ∞`.
    FixedCodimension,
    /// `k, n − k → ∞` together.
    Joint,
}

impl AsymptoticRegime {
    /// `k = 1` and fixed codimension are poorly defined for small `n`; this
    /// picks the regime by the shape of `(n, k)`.
    pub fn for_query(n: usize, k: usize) -> Self {
        if 4 * k <= n.min(16) {
            AsymptoticRegime::FixedOrder
        } else if 4 * (n - k) <= n.min(16) {
            AsymptoticRegime::FixedCodimension
        } else {
            AsymptoticRegime::Joint
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMode {
    /// `M_k(Bⁿ(1)) / M_k(B^{n−k−1}(1))` from the validated primitives.
    Direct,
    /// The published closed form `2(k−1)π^{3/2} Γ((n+1)/2)/(Γ(k/2)Γ((n−k)/2))`.
    PublishedClosedForm,
    /// The direct ratio divided by `√C(n, k+1)`.
    Normalized,
    Asymptotic(AsymptoticRegime),
}

impl fmt::Display for RatioMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioMode::Direct => f.write_str("direct"),
            RatioMode::PublishedClosedForm => f.write_str("published_closed_form"),
            RatioMode::Normalized => f.write_str("normalized"),
            RatioMode::Asymptotic(AsymptoticRegime::FixedOrder) => f.write_str("asymptotic_fixed_k"),
            RatioMode::Asymptotic(AsymptoticRegime::FixedCodimension) => f.write_str("asymptotic_fixed_codim"),
            RatioMode::Asymptotic(AsymptoticRegime::Joint) => f.write_str("asymptotic_joint"),
        }
    }
}

/// Output of [`mk_ratio`].
///
/// `value` is what the mode returns. Where a published expression exists,
/// `published` holds it and `validated` the independently derived
/// counterpart, so `deviation_factor` measures the misprint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MkRatioReport {
    pub n: usize,
    pub k: usize,
    pub mode: RatioMode,
    pub value: f64,
    pub published: Option<f64>,
    pub validated: f64,
}

impl MkRatioReport {
    /// `published / validated`.
    pub fn deviation_factor(&self) -> Option<f64> {
        self.published.map(|p| p / self.validated)
    }
}

/// Exact normalized ratio
/// `π^{1/4} √(Γ((n+1)/2)/Γ(n/2+1)) √(Γ((k+3)/2)/Γ(k/2+1)) √(Γ((n−k+1)/2)/Γ((n−k)/2))`.
pub fn normalized_ratio_closed_form(n: usize, k: usize) -> Result<f64> {
    check_flat_order(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let l = ln_gamma((nf + 1.0) / 2.0) - ln_gamma(nf / 2.0 + 1.0) + ln_gamma((kf + 3.0) / 2.0)
        - ln_gamma(kf / 2.0 + 1.0)
        + ln_gamma((nf - kf + 1.0) / 2.0)
        - ln_gamma((nf - kf) / 2.0);
    Ok(std::f64::consts::PI.powf(0.25) * (0.5 * l).exp())
}

fn published_normalized(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let l = ln_gamma((nf + 1.0) / 2.0) - ln_gamma(nf / 2.0 + 1.0) + ln_gamma((kf + 1.0) / 2.0)
        - ln_gamma(kf / 2.0)
        + ln_gamma((nf - kf + 1.0) / 2.0)
        - ln_gamma((nf - kf) / 2.0);
    std::f64::consts::PI.powf(1.25) * (kf - 1.0) / (kf * (kf + 1.0)).sqrt() * (0.5 * l).exp()
}

fn published_asymptotic(n: usize, k: usize, regime: AsymptoticRegime) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let p54 = std::f64::consts::PI.powf(1.25);
    match regime {
        AsymptoticRegime::FixedOrder => {
            let g = (ln_gamma((kf + 1.0) / 2.0) - ln_gamma(kf / 2.0)).exp();
            p54 * (kf - 1.0) / (kf * (kf + 1.0)).sqrt() * g.sqrt()
        }
        AsymptoticRegime::FixedCodimension => p54 * ((nf - kf + 1.0) / 2.0).powf(0.25),
        AsymptoticRegime::Joint if 2 * k == n => ((nf + 2.0) / 8.0).powf(0.25),
        AsymptoticRegime::Joint => p54 * ((kf + 1.0) * (nf - kf + 1.0) / (2.0 * (nf + 2.0))).powf(0.25),
    }
}

fn true_asymptotic(n: usize, k: usize, regime: AsymptoticRegime) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let p14 = std::f64::consts::PI.powf(0.25);
    match regime {
        AsymptoticRegime::FixedOrder => {
            p14 * (0.5 * (ln_gamma((kf + 3.0) / 2.0) - ln_gamma(kf / 2.0 + 1.0))).exp()
        }
        AsymptoticRegime::FixedCodimension => {
            let m = nf - kf;
            p14 * (0.5 * (ln_gamma((m + 1.0) / 2.0) - ln_gamma(m / 2.0))).exp()
        }
        AsymptoticRegime::Joint => p14 * ((kf + 1.0) * (nf - kf + 1.0) / (2.0 * (nf + 2.0))).powf(0.25),
    }
}

/// Ratio of `M_k` of the unit ball to that of the flat unit `(n−k−1)`-ball.
///
/// The published closed form, normalized right-hand side and asymptotic
/// constants need `n − 1 > k > 1`; direct and normalized values exist for
/// `0 <= k <= n − 2`.
pub fn mk_ratio(n: usize, k: usize, mode: RatioMode) -> Result<MkRatioReport> {
    check_flat_order(n, k)?;
    let direct = ln_direct_ratio(n, k).exp();
    let needs_published = !matches!(mode, RatioMode::Direct);
    if needs_published && !(k > 1 && n - 1 > k) {
        return Err(Error::Index(format!(
            "the published ratio formulas need n − 1 > k > 1, got n = {n}, k = {k}"
        )));
    }
    let (value, published, validated) = match mode {
        RatioMode::Direct => (direct, None, direct),
        RatioMode::PublishedClosedForm => {
            let (nf, kf) = (n as f64, k as f64);
            let l = ln_gamma((nf + 1.0) / 2.0) - ln_gamma(kf / 2.0) - ln_gamma((nf - kf) / 2.0);
            let p = 2.0 * (kf - 1.0) * std::f64::consts::PI.powf(1.5) * l.exp();
            (p, Some(p), direct)
        }
        RatioMode::Normalized => {
            let v = (ln_direct_ratio(n, k) - 0.5 * ln_binomial(n, k + 1)).exp();
            (v, Some(published_normalized(n, k)), v)
        }
        RatioMode::Asymptotic(regime) => {
            let p = published_asymptotic(n, k, regime);
            (p, Some(p), true_asymptotic(n, k, regime))
        }
    };
    Ok(MkRatioReport {
        n,
        k,
        mode,
        value,
        published,
        validated,
    })
}

/// Two-sided estimate `lower <= M_k(E) <= upper`, both proportional to
/// `𝒜 = √e_{n−k−1}(a²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsResult {
    pub lower: f64,
    pub upper: f64,
    pub amplitude: f64,
}

/// Lower constant `M_k(B^{n−k−1})`, attained by the flat ball; upper
/// constant `ω_{n−1}/√C(n, k+1)`, attained by balls.
pub fn curvature_bounds(query: &CurvatureQuery) -> Result<BoundsResult> {
    let (n, k) = (query.dim(), query.k());
    let sq: Vec<f64> = query.ellipsoid().semi_axes().iter().map(|a| a * a).collect();
    let ln_amp = 0.5 * ln_elementary_symmetric(&sq, n - k - 1)?;
    let amplitude = ln_amp.exp();
    let upper = (ln_unit_sphere_area(n - 1) - 0.5 * ln_binomial(n, k + 1) + ln_amp).exp();
    let lower = (ln_mk_flat_ball(n, k) + ln_amp).exp();
    Ok(BoundsResult {
        lower,
        upper,
        amplitude,
    })
}

/// `(n−k−1) ω_{n−1} / ω_{n−k−2}`, the factor in front of the Grassmannian mean.
pub fn kubota_constant(n: usize, k: usize) -> Result<f64> {
    check_flat_order(n, k)?;
    let m = n - k - 1;
    Ok((m as f64).ln().exp() * (ln_unit_sphere_area(n - 1) - ln_unit_sphere_area(m - 1)).exp())
}

/// Monte Carlo evaluation of `M_k(E)` over Haar-random `(n−k−1)`-subspaces.
pub fn kubota_mc(query: &CurvatureQuery, cfg: &MonteCarloConfig) -> Result<Estimate> {
    let (n, k) = (query.dim(), query.k());
    let m = query.projection_dim();
    let axes = query.ellipsoid().semi_axes();
    let constant = kubota_constant(n, k)?;
    let acc = monte_carlo_mean(cfg, || vec![0.0; n * m], |buf, rng| {
        fill_gaussian(rng, buf);
        let g = nalgebra::DMatrix::from_column_slice(n, m, buf);
        gram_volume(axes, &haar_from_gaussian(g))
    })?;
    Ok(Estimate {
        value: constant * acc.mean,
        std_error: constant * acc.std_error(),
        method: Method::KubotaMc,
        samples_used: acc.count,
    })
}

/// A Haar-random orthonormal `n × m` frame from the given stream.
pub fn haar_subspace_sample<R: rand::Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<crate::projection::SubspaceBasis> {
    crate::projection::haar_frame(n, m, rng)
}

/// `C(n, k+1)`, the number of terms in `𝒜²`.
pub fn amplitude_terms(n: usize, k: usize) -> f64 {
    binomial(n, k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{unit_ball_volume, unit_sphere_area};
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ball_values() {
        assert!(rel(mk_ball(3, 0, 1.0).unwrap(), 4.0 * PI) < 1e-14);
        assert!(rel(mk_ball(4, 1, 1.0).unwrap(), 2.0 * PI * PI) < 1e-14);
        assert!(rel(mk_ball(6, 2, 2.0).unwrap(), unit_sphere_area(5) * 8.0) < 1e-14);
        assert!(mk_ball(3, 3, 1.0).is_err());
        assert!(mk_ball(3, 1, 0.0).is_err());
    }

    #[test]
    fn flat_ball_values() {
        assert!(rel(mk_flat_ball(3, 1).unwrap(), 2.0 * PI) < 1e-14);
        assert!(rel(mk_flat_ball(4, 1).unwrap(), 2.0 * PI * PI / 3.0) < 1e-14);
        for n in 2..40 {
            assert!(rel(mk_flat_ball(n, 0).unwrap(), 2.0 * unit_ball_volume(n - 1)) < 1e-12);
        }
        assert!(mk_flat_ball(3, 2).is_err());
    }

    #[test]
    fn duplication_fast_path_matches_omega_ratio() {
        for n in 2..=30 {
            for k in 0..=n - 2 {
                let direct = mk_ratio(n, k, RatioMode::Direct).unwrap().value;
                assert!(rel(mk_ratio_duplication(n, k).unwrap(), direct) < 1e-10, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn published_closed_form_deviation() {
        let r = mk_ratio(4, 2, RatioMode::Direct).unwrap();
        assert!(rel(r.value, 3.0 * PI / 4.0) < 1e-13);
        let p = mk_ratio(4, 2, RatioMode::PublishedClosedForm).unwrap();
        assert!(rel(p.value, 1.5 * PI * PI) < 1e-13);
        assert!(rel(p.deviation_factor().unwrap(), 2.0 * PI) < 1e-12);
        assert!(mk_ratio(4, 1, RatioMode::PublishedClosedForm).is_err());
    }

    #[test]
    fn normalized_mode() {
        for n in 4..30 {
            for k in 2..n - 1 {
                let r = mk_ratio(n, k, RatioMode::Normalized).unwrap();
                let direct = mk_ratio(n, k, RatioMode::Direct).unwrap().value;
                assert!(rel(r.value, direct / binomial(n, k + 1).sqrt()) < 1e-11);
                assert!(rel(r.value, normalized_ratio_closed_form(n, k).unwrap()) < 1e-11);
                // the published right-hand side is off by π(k−1)/(k+1)
                let kf = k as f64;
                assert!(rel(r.deviation_factor().unwrap(), PI * (kf - 1.0) / (kf + 1.0)) < 1e-11);
            }
        }
    }

    #[test]
    fn asymptotic_midpoint_and_limits() {
        let r = mk_ratio(100, 50, RatioMode::Asymptotic(AsymptoticRegime::Joint)).unwrap();
        assert!(rel(r.value, (102.0f64 / 8.0).powf(0.25)) < 1e-14);
        // the validated constants are approached by the exact normalized ratio
        let exact = normalized_ratio_closed_form(20_000, 10_000).unwrap();
        let r = mk_ratio(20_000, 10_000, RatioMode::Asymptotic(AsymptoticRegime::Joint)).unwrap();
        assert!(rel(exact, r.validated) < 1e-3);
        let exact = normalized_ratio_closed_form(1_000_000, 3).unwrap();
        let r = mk_ratio(1_000_000, 3, RatioMode::Asymptotic(AsymptoticRegime::FixedOrder)).unwrap();
        assert!(rel(exact, r.validated) < 1e-5);
        let exact = normalized_ratio_closed_form(1_000_000, 1_000_000 - 4).unwrap();
        let r = mk_ratio(1_000_000, 1_000_000 - 4, RatioMode::Asymptotic(AsymptoticRegime::FixedCodimension))
            .unwrap();
        assert!(rel(exact, r.validated) < 1e-5);
    }

    #[test]
    fn ball_bounds_are_tight() {
        for n in 3..9 {
            for k in 0..=n - 2 {
                let q = CurvatureQuery::from_axes(&vec![1.7; n], k).unwrap();
                let b = curvature_bounds(&q).unwrap();
                assert!(rel(b.upper, mk_ball(n, k, 1.7).unwrap()) < 1e-12);
                assert!(b.lower <= b.upper);
            }
        }
    }

    #[test]
    fn flat_ball_bounds_are_tight() {
        let (n, k) = (6, 2);
        let mut a = vec![0.0; n];
        a[..n - k - 1].fill(1.0);
        let b = curvature_bounds(&CurvatureQuery::from_axes(&a, k).unwrap()).unwrap();
        assert!(rel(b.amplitude, 1.0) < 1e-15);
        assert!(rel(b.lower, mk_flat_ball(n, k).unwrap()) < 1e-14);
    }

    #[test]
    fn query_validation() {
        assert!(CurvatureQuery::from_axes(&[1.0, 2.0, 3.0], 2).is_err());
        assert!(CurvatureQuery::from_axes(&[1.0], 0).is_err());
        assert!(CurvatureQuery::from_axes(&[1.0, 2.0, 3.0], 1).is_ok());
    }

    #[test]
    fn kubota_ball_and_determinism() {
        let q = CurvatureQuery::from_axes(&[1.0; 4], 1).unwrap();
        let cfg = MonteCarloConfig::new(2_000, 9);
        let e = kubota_mc(&q, &cfg).unwrap();
        assert!(rel(e.value, 2.0 * PI * PI) < 1e-12);
        let q = CurvatureQuery::from_axes(&[1.0, 2.0, 0.5, 1.5], 1).unwrap();
        assert_eq!(kubota_mc(&q, &cfg).unwrap(), kubota_mc(&q, &cfg).unwrap());
    }

    #[test]
    fn kubota_constant_cauchy() {
        // k = 0: ω_{n−1}/κ_{n−1}
        for n in 2..12 {
            let c = kubota_constant(n, 0).unwrap();
            assert!(rel(c, unit_sphere_area(n - 1) / unit_ball_volume(n - 1)) < 1e-13);
        }
    }
}
