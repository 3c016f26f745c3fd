//! Elementary symmetric polynomials of nonnegative arguments.

use crate::error::{Error, Result};

/// Spread beyond which the arguments are rescaled by their geometric mean.
const RESCALE_SPREAD: f64 = 1e100;

/// One-row recurrence: `e[j] += v * e[j-1]`, swept downward so each value
/// enters a product at most once. Returns `e_0..=e_kmax`.
fn recurrence(values: impl Iterator<Item = f64>, kmax: usize) -> Vec<f64> {
    let mut e = vec![0.0; kmax + 1];
    e[0] = 1.0;
    let mut seen = 0usize;
    for v in values {
        seen += 1;
        let top = seen.min(kmax);
        for j in (1..=top).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e
}

fn check(values: &[f64], k: usize) -> Result<()> {
    if k > values.len() {
        return Err(Error::Index(format!(
            "e_k needs 0 <= k <= n, got k = {k} with n = {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain(format!(
            "elementary symmetric arguments must be finite and nonnegative, got {v}"
        )));
    }
    Ok(())
}

/// Geometric mean of the positive entries, if their spread demands rescaling.
fn rescale_factor(values: &[f64]) -> Option<f64> {
    let (mut lo, mut hi, mut log_sum, mut count) = (f64::INFINITY, 0.0f64, 0.0, 0usize);
    for &v in values.iter().filter(|v| **v > 0.0) {
        lo = lo.min(v);
        hi = hi.max(v);
        log_sum += v.ln();
        count += 1;
    }
    if count == 0 || hi / lo <= RESCALE_SPREAD {
        return None;
    }
    Some((log_sum / count as f64).exp())
}

/// `ln e_k(values)`; `-inf` when the sum is zero.
pub fn ln_elementary_symmetric(values: &[f64], k: usize) -> Result<f64> {
    check(values, k)?;
    if k == 0 {
        return Ok(0.0);
    }
    let (scale, ln_scale) = match rescale_factor(values) {
        Some(g) => (g, g.ln()),
        None => {
            // keep the running sums near 1 even when they would not overflow
            let hi = values.iter().cloned().fold(0.0f64, f64::max);
            if hi == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            (hi, hi.ln())
        }
    };
    let e = recurrence(values.iter().map(|v| v / scale), k);
    Ok(e[k].ln() + k as f64 * ln_scale)
}

/// `e_k(values)`: the sum of all products of `k` distinct entries.
///
/// O(n·k). Inputs spanning more than 100 decades are rescaled by their
/// geometric mean and the scale restored in log space.
pub fn elementary_symmetric(values: &[f64], k: usize) -> Result<f64> {
    check(values, k)?;
    if k == 0 {
        return Ok(1.0);
    }
    match rescale_factor(values) {
        None => Ok(recurrence(values.iter().cloned(), k)[k]),
        Some(g) => {
            let e = recurrence(values.iter().map(|v| v / g), k);
            Ok((e[k].ln() + k as f64 * g.ln()).exp())
        }
    }
}

/// All of `e_0, …, e_n` in one pass.
pub fn elementary_symmetric_all(values: &[f64]) -> Result<Vec<f64>> {
    check(values, 0)?;
    Ok(recurrence(values.iter().cloned(), values.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::MultiIndex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(values: &[f64], k: usize) -> f64 {
        MultiIndex::all(values.len(), k)
            .map(|i| i.iter().map(|j| values[j]).product::<f64>())
            .sum()
    }

    #[test]
    fn small_cases() {
        let v = [1.0, 2.0, 3.0];
        assert_eq!(elementary_symmetric(&v, 0).unwrap(), 1.0);
        assert_eq!(elementary_symmetric(&v, 1).unwrap(), 6.0);
        assert_eq!(elementary_symmetric(&v, 2).unwrap(), 11.0);
        assert_eq!(elementary_symmetric(&v, 3).unwrap(), 6.0);
        assert_eq!(elementary_symmetric_all(&v).unwrap(), vec![1.0, 6.0, 11.0, 6.0]);
    }

    #[test]
    fn out_of_range_k() {
        assert!(matches!(elementary_symmetric(&[1.0, 2.0], 3), Err(Error::Index(_))));
        assert!(elementary_symmetric(&[1.0, -2.0], 1).is_err());
    }

    #[test]
    fn matches_enumeration_up_to_twelve() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=12 {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..3.0)).collect();
            for k in 0..=n {
                let fast = elementary_symmetric(&v, k).unwrap();
                let slow = brute(&v, k);
                assert!(((fast - slow) / slow).abs() <= 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn widely_scaled_inputs() {
        let v = [1e-200, 1e150, 3.0, 1e120];
        // e_2 is dominated by 1e150 * 1e120
        let e2 = elementary_symmetric(&v, 2).unwrap();
        assert!(((e2 - 1e270) / 1e270).abs() < 1e-12);
        let l = ln_elementary_symmetric(&v, 4).unwrap();
        let expect = (1e-200f64).ln() + (1e150f64).ln() + 3f64.ln() + (1e120f64).ln();
        assert!((l - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn log_form_survives_overflow() {
        // e_n of 400 copies of 1e10 is 1e4000
        let v = vec![1e10; 400];
        let l = ln_elementary_symmetric(&v, 400).unwrap();
        assert!((l - 4000.0 * 10f64.ln()).abs() < 1e-9);
        assert_eq!(ln_elementary_symmetric(&[0.0, 0.0], 1).unwrap(), f64::NEG_INFINITY);
    }
}
