use std::f64::consts::PI;

use ellipsoid_measures::geom::sphere_moment_factor;
use ellipsoid_measures::sphere::{lp_sphere_mean, sphere_mean_homogeneous, LpMode, SphereMode};
use ellipsoid_measures::MonteCarloConfig;

type Integrand = Box<dyn Fn(&[f64]) -> f64 + Sync>;

fn lp(x: &[f64], p: f64) -> f64 {
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

#[test]
fn gaussian_and_direct_modes_agree() {
    let n = 4;
    let cfg = MonteCarloConfig::new(1_000_000, 21);
    for d in [1.0, 2.0, 3.0] {
        let fs: [Integrand; 2] =
            [Box::new(move |x: &[f64]| x[0].abs().powf(d)), Box::new(move |x: &[f64]| lp(x, 3.0).powf(d))];
        for f in fs.iter() {
            let g = sphere_mean_homogeneous(f, d, n, SphereMode::Gaussian, &cfg).unwrap();
            let s = sphere_mean_homogeneous(f, d, n, SphereMode::Direct, &cfg).unwrap();
            assert!(g.sigma_distance(&s) <= 4.0, "d = {d}: {g:?} {s:?}");
        }
    }
}

#[test]
fn standard_error_scales_with_sample_count() {
    let f = |x: &[f64]| x[0].abs();
    let a = sphere_mean_homogeneous(f, 1.0, 5, SphereMode::Direct, &MonteCarloConfig::new(50_000, 3)).unwrap();
    let b = sphere_mean_homogeneous(f, 1.0, 5, SphereMode::Direct, &MonteCarloConfig::new(200_000, 3)).unwrap();
    let ratio = a.std_error / b.std_error;
    assert!((2.0 / 1.5..=2.0 * 1.5).contains(&ratio), "{ratio}");
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = MonteCarloConfig {
        samples: 300_000,
        master_seed: 77,
        chunk_size: 10_000,
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sphere_mean_homogeneous(|x| lp(x, 1.5), 1.0, 7, SphereMode::Gaussian, &cfg).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.value.to_bits(), four.value.to_bits());
    assert_eq!(one.std_error.to_bits(), four.std_error.to_bits());
}

#[test]
fn l1_mean_on_circle_matches_angular_oracle() {
    // (1/2π) ∫ |cos θ| + |sin θ| dθ = 4/π
    let e = lp_sphere_mean(2, 1.0, &MonteCarloConfig::new(1_000_000, 5), LpMode::ExactMc).unwrap();
    assert!((e.value - 4.0 / PI).abs() <= 4.0 * e.std_error);
}

#[test]
fn l2_asymptotic_tends_to_one() {
    let cfg = MonteCarloConfig::new(20_000, 1);
    let a = lp_sphere_mean(200, 2.0, &cfg, LpMode::Asymptotic).unwrap();
    assert!((a.value - 1.0).abs() < 0.005);
    let mc = lp_sphere_mean(200, 2.0, &cfg, LpMode::ExactMc).unwrap();
    assert!((mc.value - 1.0).abs() <= 4.0 * mc.std_error);
    let f = sphere_moment_factor(200, 1.0).unwrap() * 100f64.sqrt();
    assert!(f > 1.0 && f - 1.0 < 1.0 / 800.0 + 1e-6);
}
