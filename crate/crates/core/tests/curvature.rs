use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ellipsoid_measures::curvature::{
    curvature_bounds, haar_subspace_sample, kubota_mc, mk_ball, CurvatureQuery,
};
use ellipsoid_measures::geom::unit_sphere_area;
use ellipsoid_measures::sphere::MeanAccumulator;
use ellipsoid_measures::MonteCarloConfig;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn haar_first_coordinate_is_beta_distributed() {
    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut m1, mut m2) = (MeanAccumulator::default(), MeanAccumulator::default());
    for _ in 0..100_000 {
        let f = haar_subspace_sample(n, 2, &mut rng).unwrap();
        let t = f.matrix()[(0, 0)].powi(2);
        m1.push(t);
        m2.push(t * t);
    }
    let nf = n as f64;
    assert!((m1.mean - 1.0 / nf).abs() <= 3.0 * m1.std_error());
    assert!((m2.mean - 3.0 / (nf * (nf + 2.0))).abs() <= 3.0 * m2.std_error());
}

#[test]
fn haar_frames_are_orthonormal_and_reproducible() {
    let a = haar_subspace_sample(7, 3, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let b = haar_subspace_sample(7, 3, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    assert_eq!(a, b);
    let g = a.matrix().transpose() * a.matrix();
    assert!((g - nalgebra::DMatrix::identity(3, 3)).amax() < 1e-12);
}

#[test]
fn balls_are_reproduced_for_every_order() {
    let cfg = MonteCarloConfig::new(2_000, 5);
    for n in 2..=8usize {
        for k in 0..=n - 2 {
            let q = CurvatureQuery::from_axes(&vec![1.0; n], k).unwrap();
            let e = kubota_mc(&q, &cfg).unwrap();
            assert!(rel(e.value, unit_sphere_area(n - 1)) < 1e-12, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn radius_scaling() {
    let q = CurvatureQuery::from_axes(&[2.0; 6], 2).unwrap();
    let e = kubota_mc(&q, &MonteCarloConfig::new(10_000, 6)).unwrap();
    let target = unit_sphere_area(5) * 8.0;
    assert!(rel(e.value, mk_ball(6, 2, 2.0).unwrap()) < 1e-12);
    assert!(rel(e.value, target) < 1e-12);
}

#[test]
fn homogeneity_with_common_random_numbers() {
    let axes = [1.2, 0.6, 1.9, 0.8, 1.4];
    let cfg = MonteCarloConfig::new(20_000, 8);
    for k in 0..=3usize {
        let lambda: f64 = 1.7;
        let base = kubota_mc(&CurvatureQuery::from_axes(&axes, k).unwrap(), &cfg).unwrap();
        let scaled: Vec<f64> = axes.iter().map(|a| a * lambda).collect();
        let big = kubota_mc(&CurvatureQuery::from_axes(&scaled, k).unwrap(), &cfg).unwrap();
        let expect = lambda.powi((axes.len() - 1 - k) as i32);
        assert!(rel(big.value / base.value, expect) < 1e-12, "k = {k}");
    }
}

#[test]
fn estimates_lie_between_the_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..20 {
        let axes: Vec<f64> = (0..6).map(|_| rng.random_range(0.5..2.0)).collect();
        let q = CurvatureQuery::from_axes(&axes, 1).unwrap();
        let b = curvature_bounds(&q).unwrap();
        let e = kubota_mc(&q, &MonteCarloConfig::new(20_000, i)).unwrap();
        assert!(e.value >= b.lower - 3.0 * e.std_error && e.value <= b.upper + 3.0 * e.std_error);
    }
}
