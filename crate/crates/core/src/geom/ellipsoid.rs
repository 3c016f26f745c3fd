use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An axis-aligned ellipsoid `{x : Σ x_i²/a_i² <= 1}` given by its semi-axes.
///
/// Ordinary ellipsoids have every `a_i > 0`. A degenerate ellipsoid (built
/// with [`Ellipsoid::degenerate`]) may have zero semi-axes; it is the image of
/// the unit ball under a singular diagonal map and is only accepted by the
/// operations that make sense for flat bodies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ellipsoid {
    semi_axes: Vec<f64>,
    degenerate: bool,
}

impl Ellipsoid {
    pub fn new(semi_axes: Vec<f64>) -> Result<Self> {
        check_axes(&semi_axes, false)?;
        Ok(Ellipsoid {
            semi_axes,
            degenerate: false,
        })
    }

    /// Allows zero semi-axes.
    pub fn degenerate(semi_axes: Vec<f64>) -> Result<Self> {
        check_axes(&semi_axes, true)?;
        let degenerate = semi_axes.contains(&0.0);
        Ok(Ellipsoid {
            semi_axes,
            degenerate,
        })
    }

    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        Self::new(vec![radius; n])
    }

    pub fn dim(&self) -> usize {
        self.semi_axes.len()
    }

    pub fn semi_axes(&self) -> &[f64] {
        &self.semi_axes
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The inverse semi-axes `q_i = 1/a_i` (infinite for zero axes).
    pub fn inverse_axes(&self) -> Vec<f64> {
        self.semi_axes.iter().map(|a| 1.0 / a).collect()
    }

    /// `Σ ln a_i`; `-inf` for degenerate ellipsoids.
    pub fn ln_axis_product(&self) -> f64 {
        self.semi_axes.iter().map(|a| a.ln()).sum()
    }

    pub fn ln_volume(&self) -> f64 {
        super::ln_unit_ball_volume(self.dim()) + self.ln_axis_product()
    }

    pub fn volume(&self) -> f64 {
        self.ln_volume().exp()
    }
}

pub(crate) fn check_axes(axes: &[f64], allow_zero: bool) -> Result<()> {
    if axes.is_empty() {
        return Err(Error::domain("an ellipsoid needs at least one semi-axis"));
    }
    for (i, &a) in axes.iter().enumerate() {
        let ok = a.is_finite() && (a > 0.0 || (allow_zero && a == 0.0));
        if !ok {
            return Err(Error::domain(format!("semi-axis {} is {a}", i + 1)));
        }
    }
    if allow_zero && axes.iter().all(|&a| a == 0.0) {
        return Err(Error::domain("all semi-axes are zero"));
    }
    Ok(())
}
