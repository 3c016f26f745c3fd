//! Mean values over the unit sphere `S^{n-1}`.
//!
//! Homogeneous integrands are reduced to Gaussian expectations: if `f` is
//! positively homogeneous of degree `d` and `X` has i.i.d. coordinates with
//! density `e^{-x²}/√π` (variance ½), then
//!
//! ```text
//! Γ((n+d)/2) · mean_{S^{n-1}} f = Γ(n/2) · E f(X).
//! ```
//!
//! Sampling is split into fixed-size chunks. Chunk `c` draws from its own
//! ChaCha8 stream keyed by `(master_seed, c)` and the per-chunk moments are
//! merged in chunk order, so an estimate depends only on the
//! [`MonteCarloConfig`] and never on the number of worker threads.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ln_gamma, sphere_moment_factor, sqrt_pi};
use crate::report::{Estimate, Method};

/// The random stream handed to samplers.
pub type SampleStream = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub master_seed: u64,
    pub chunk_size: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            samples: 1_000_000,
            master_seed: 0x5eed_e111_9501_d5a1,
            chunk_size: 65_536,
        }
    }
}

impl MonteCarloConfig {
    pub fn new(samples: u64, master_seed: u64) -> Self {
        MonteCarloConfig {
            samples,
            master_seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 || self.chunk_size == 0 {
            return Err(Error::domain(format!(
                "Monte Carlo needs at least 2 samples and a nonzero chunk size, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk_size)
    }
}

/// The independent stream for one chunk.
pub fn chunk_stream(master_seed: u64, chunk_index: u64) -> SampleStream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(chunk_index);
    rng
}

/// Running count, mean and centred second moment (Welford).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanAccumulator {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(self, other: MeanAccumulator) -> MeanAccumulator {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        MeanAccumulator {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
        }
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        self.m2 / (self.count - 1) as f64
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

/// Averages `sample` over `cfg.samples` draws.
///
/// `init` builds per-chunk scratch state; chunks run in parallel and are
/// reduced in index order.
pub fn monte_carlo_mean<S, I, F>(cfg: &MonteCarloConfig, init: I, sample: F) -> Result<MeanAccumulator>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &mut SampleStream) -> f64 + Sync,
{
    cfg.validate()?;
    let partials: Vec<MeanAccumulator> = (0..cfg.chunks())
        .into_par_iter()
        .map(|chunk| {
            let mut rng = chunk_stream(cfg.master_seed, chunk);
            let mut state = init();
            let start = chunk * cfg.chunk_size;
            let len = cfg.chunk_size.min(cfg.samples - start);
            let mut acc = MeanAccumulator::default();
            for _ in 0..len {
                acc.push(sample(&mut state, &mut rng));
            }
            acc
        })
        .collect();
    Ok(partials
        .into_iter()
        .fold(MeanAccumulator::default(), MeanAccumulator::merge))
}

/// Fills `out` with independent N(0, ½) draws.
pub fn fill_gaussian<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *x = z * FRAC_1_SQRT_2;
    }
}

/// An `n`-vector of independent N(0, ½) coordinates (density `e^{-x²}/√π`).
pub fn sample_gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut v = vec![0.0; n];
    fill_gaussian(rng, &mut v);
    v
}

/// How sphere means are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereMode {
    /// Average `f` over Gaussian vectors and apply the Γ(n/2)/Γ((n+d)/2) factor.
    /// Requires `f` positively homogeneous of the stated degree.
    Gaussian,
    /// Average `f` over Gaussian vectors projected to the sphere. Valid for any `f`.
    Direct,
}

/// Monte Carlo mean of `f` over `S^{n-1}`.
pub fn sphere_mean_homogeneous<F>(
    f: F,
    degree: f64,
    n: usize,
    mode: SphereMode,
    cfg: &MonteCarloConfig,
) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::domain("sphere dimension n must be at least 1"));
    }
    if !(n as f64 + degree > 0.0) {
        return Err(Error::domain(format!(
            "homogeneity degree {degree} needs n + d > 0 (n = {n})"
        )));
    }
    match mode {
        SphereMode::Gaussian => {
            let acc = monte_carlo_mean(cfg, || vec![0.0; n], |x, rng| {
                fill_gaussian(rng, x);
                f(x)
            })?;
            let factor = sphere_moment_factor(n, degree)?;
            Ok(Estimate {
                value: acc.mean * factor,
                std_error: acc.std_error() * factor,
                method: Method::GaussianMc,
                samples_used: acc.count,
            })
        }
        SphereMode::Direct => {
            let acc = monte_carlo_mean(cfg, || vec![0.0; n], |x, rng| loop {
                fill_gaussian(rng, x);
                let r = crate::geom::l2_norm(x);
                if r > 0.0 {
                    x.iter_mut().for_each(|v| *v /= r);
                    break f(x);
                }
            })?;
            Ok(Estimate {
                value: acc.mean,
                std_error: acc.std_error(),
                method: Method::DirectMc,
                samples_used: acc.count,
            })
        }
    }
}

/// `E|X|^p = Γ((p+1)/2)/√π` for `X ~ N(0, ½)`.
pub fn gaussian_abs_moment(p: f64) -> Result<f64> {
    if !(p > -1.0) {
        return Err(Error::domain(format!("absolute moment needs p > -1, got {p}")));
    }
    Ok(ln_gamma((p + 1.0) / 2.0).exp() / sqrt_pi())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpMode {
    /// Monte Carlo through the Gaussian reduction.
    ExactMc,
    /// Law-of-large-numbers approximation `Γ(n/2)/Γ((n+1)/2) · (n E|X|^p)^{1/p}`.
    Asymptotic,
}

/// Mean of `‖u‖_p` over the unit sphere.
pub fn lp_sphere_mean(n: usize, p: f64, cfg: &MonteCarloConfig, mode: LpMode) -> Result<Estimate> {
    if n == 0 || !(p >= 1.0) {
        return Err(Error::domain(format!("need n >= 1 and p >= 1, got n = {n}, p = {p}")));
    }
    match mode {
        LpMode::ExactMc => sphere_mean_homogeneous(
            |x| {
                if p == 2.0 {
                    crate::geom::l2_norm(x)
                } else {
                    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
                }
            },
            1.0,
            n,
            SphereMode::Gaussian,
            cfg,
        ),
        LpMode::Asymptotic => {
            let factor = sphere_moment_factor(n, 1.0)?;
            let moment = gaussian_abs_moment(p)?;
            Ok(Estimate::exact(
                factor * (n as f64 * moment).powf(1.0 / p),
                Method::Asymptotic,
            ))
        }
    }
}
