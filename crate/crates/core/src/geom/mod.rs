//! Constants, Γ arithmetic, elementary symmetric polynomials and
//! multi-index combinatorics shared by every other module.

mod ellipsoid;
mod gamma;
mod multi_index;
mod symmetric;

pub use ellipsoid::Ellipsoid;
pub(crate) use ellipsoid::check_axes;
pub use gamma::{
    binomial, gamma_ratio, gamma_ratio_asymptotic, ln_binomial, ln_gamma, ln_gamma_ratio,
    ln_unit_ball_volume, ln_unit_sphere_area, sphere_moment_factor,
    sphere_moment_factor_asymptotic, unit_ball_volume, unit_sphere_area, GammaValue,
};
pub(crate) use gamma::sqrt_pi;
pub use multi_index::MultiIndex;
pub use symmetric::{elementary_symmetric, elementary_symmetric_all, ln_elementary_symmetric};

/// `(scale, Σ (v_i/scale)²)` with `scale = max |v_i|`, so `‖v‖₂ = scale·√sum`
/// without overflow or underflow.
pub(crate) fn scaled_sum_sq(values: &[f64]) -> (f64, f64) {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return (0.0, 0.0);
    }
    (scale, values.iter().map(|v| (v / scale).powi(2)).sum())
}

/// Euclidean norm computed with scaling.
pub fn l2_norm(values: &[f64]) -> f64 {
    let (scale, s) = scaled_sum_sq(values);
    scale * s.sqrt()
}
