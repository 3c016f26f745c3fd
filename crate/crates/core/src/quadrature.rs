//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! The rule and its error heuristic follow QUADPACK's `qk21`/`qag`. The
//! integrand may be vector valued: all components share one subdivision
//! mesh, which lets callers form ratios of integrals whose numerator and
//! denominator see exactly the same nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and the subdivision budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureConfig {
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::domain(format!(
                "quadrature tolerances must be positive and the subdivision budget nonzero: {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<const N: usize> {
    pub value: [f64; N],
    pub abs_error: [f64; N],
    pub subdivisions: usize,
    pub evaluations: usize,
}

// Tabulated to more digits than f64 holds.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_814_280_902,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, paired with XGK[1], XGK[3], …, XGK[9]
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

/// One application of the 21-point rule on `[a, b]`.
fn gk21<const N: usize, F: FnMut(f64) -> [f64; N]>(
    f: &mut F,
    a: f64,
    b: f64,
) -> ([f64; N], [f64; N]) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [[0.0; N]; 21];
    fv[20] = f(center);
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[2 * j] = f(center - dx);
        fv[2 * j + 1] = f(center + dx);
    }

    let mut result = [0.0; N];
    let mut error = [0.0; N];
    for c in 0..N {
        let fc = fv[20][c];
        let mut resk = WGK[10] * fc;
        let mut resg = 0.0;
        let mut resabs = WGK[10] * fc.abs();
        for j in 0..10 {
            let (lo, hi) = (fv[2 * j][c], fv[2 * j + 1][c]);
            resk += WGK[j] * (lo + hi);
            resabs += WGK[j] * (lo.abs() + hi.abs());
            if j % 2 == 1 {
                resg += WG[j / 2] * (lo + hi);
            }
        }
        let mean = 0.5 * resk;
        let mut resasc = WGK[10] * (fc - mean).abs();
        for j in 0..10 {
            resasc += WGK[j] * ((fv[2 * j][c] - mean).abs() + (fv[2 * j + 1][c] - mean).abs());
        }
        let (resk, resabs, resasc) = (resk * half, resabs * half.abs(), resasc * half.abs());
        let mut err = (resk - resg * half).abs();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * resabs);
        }
        result[c] = resk;
        error[c] = err;
    }
    (result, error)
}

struct Piece<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    priority: f64,
}

impl<const N: usize> PartialEq for Piece<N> {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl<const N: usize> Eq for Piece<N> {}
impl<const N: usize> PartialOrd for Piece<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Piece<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

/// Integrates a vector-valued function over a finite interval.
///
/// Converges when every component satisfies
/// `error <= max(abs_tol, rel_tol * |value|)`.
pub fn integrate_vec<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: [0.0; N],
            abs_error: [0.0; N],
            subdivisions: 0,
            evaluations: 0,
        });
    }

    let (value, error) = gk21(&mut f, a, b);
    let scale: [f64; N] = std::array::from_fn(|c| value[c].abs().max(cfg.abs_tol));
    let priority = |err: &[f64; N]| (0..N).map(|c| err[c] / scale[c]).fold(0.0, f64::max);

    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value,
        error,
        priority: priority(&error),
    });
    let mut subdivisions = 0usize;
    let mut evaluations = 21usize;

    let converged = |total: &[f64; N], err: &[f64; N]| {
        (0..N).all(|c| err[c] <= cfg.abs_tol.max(cfg.rel_tol * total[c].abs()))
    };

    while !converged(&total, &total_err) {
        if subdivisions >= cfg.max_subdivisions {
            let worst = (0..N)
                .max_by(|&i, &j| total_err[i].total_cmp(&total_err[j]))
                .unwrap_or(0);
            return Err(Error::Quadrature {
                value: total[worst],
                abs_error: total_err[worst],
                tolerance: cfg.abs_tol.max(cfg.rel_tol * total[worst].abs()),
                subdivisions,
            });
        }
        let Some(piece) = heap.pop() else { break };
        let mid = 0.5 * (piece.a + piece.b);
        if mid <= piece.a || mid >= piece.b {
            // interval exhausted at machine resolution; its error is final
            heap.push(Piece {
                priority: f64::NEG_INFINITY,
                ..piece
            });
            if heap.peek().is_some_and(|p| p.priority == f64::NEG_INFINITY) {
                break;
            }
            continue;
        }
        let (lv, le) = gk21(&mut f, piece.a, mid);
        let (rv, re) = gk21(&mut f, mid, piece.b);
        evaluations += 42;
        subdivisions += 1;
        for c in 0..N {
            total[c] += lv[c] + rv[c] - piece.value[c];
            total_err[c] += le[c] + re[c] - piece.error[c];
        }
        heap.push(Piece {
            a: piece.a,
            b: mid,
            value: lv,
            error: le,
            priority: priority(&le),
        });
        heap.push(Piece {
            a: mid,
            b: piece.b,
            value: rv,
            error: re,
            priority: priority(&re),
        });
    }

    // re-sum from the pieces to shed the drift of incremental updates
    let mut value = [0.0; N];
    let mut abs_error = [0.0; N];
    for p in heap.iter() {
        for c in 0..N {
            value[c] += p.value[c];
            abs_error[c] += p.error[c];
        }
    }
    if !converged(&value, &abs_error) {
        let worst = (0..N)
            .max_by(|&i, &j| abs_error[i].total_cmp(&abs_error[j]))
            .unwrap_or(0);
        return Err(Error::Quadrature {
            value: value[worst],
            abs_error: abs_error[worst],
            tolerance: cfg.abs_tol.max(cfg.rel_tol * value[worst].abs()),
            subdivisions,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error,
        subdivisions,
        evaluations,
    })
}

/// Scalar convenience wrapper around [`integrate_vec`]. Returns `(value, abs_error)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let r = integrate_vec(|x| [f(x)], a, b, cfg)?;
    Ok((r.value[0], r.abs_error[0]))
}
