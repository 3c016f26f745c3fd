use ellipsoid_measures::lauricella::{centred_alpha, fd, fd_integral, fd_series, ratio_via_fd, FdParams};
use ellipsoid_measures::surface::{ratio_norm, RatioMethod};
use ellipsoid_measures::QuadratureConfig;
use proptest::prelude::*;

fn quad() -> QuadratureConfig {
    QuadratureConfig::with_rel_tol(1e-12)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn monotone_in_each_argument() {
    let b = vec![0.5, 1.5, 0.7];
    for j in 0..3 {
        let mut last = 0.0;
        for step in 0..=18 {
            let mut x = vec![0.1, -0.2, 0.3];
            x[j] = -0.9 + 0.1 * step as f64;
            let v = fd_integral(&FdParams::new(0.6, b.clone(), 1.9, x).unwrap(), &quad()).unwrap();
            assert!(v >= last, "variable {j}, step {step}");
            last = v;
        }
    }
}

#[test]
fn near_unit_arguments_use_the_integral() {
    let p = FdParams::new(0.5, vec![0.5, 1.5], 2.0, vec![0.99, -0.98]).unwrap();
    let v = fd(&p, &quad()).unwrap();
    assert!(rel(v, fd_integral(&p, &quad()).unwrap()) == 0.0);
    assert!(fd_series(&p, 1e-12, 1000).is_err());
}

#[test]
fn corrected_representation_across_dimensions() {
    for n in 2..=10usize {
        let q: Vec<f64> = (0..n).map(|i| 0.4 + 0.13 * ((i * 7) % 5) as f64).collect();
        let alpha = centred_alpha(&q).unwrap();
        let r = ratio_via_fd(&q, alpha, &quad()).unwrap();
        assert!(r.corrected.relative_deviation().unwrap() < 1e-8, "n = {n}: {r:?}");
        let ball = ratio_via_fd(&vec![1.0; n], 1.0, &quad()).unwrap();
        assert!(rel(ball.corrected.value, n as f64) < 1e-12);
        let oracle = ratio_norm(&q, &RatioMethod::MomentIntegral(quad())).unwrap().ratio;
        assert_eq!(r.oracle, oracle);
    }
}

#[test]
fn alpha_sweep_is_flat() {
    let q = [0.9, 0.4, 0.7, 0.55];
    let base = ratio_via_fd(&q, 1.0, &quad()).unwrap().corrected.value;
    let max_q2 = 0.81;
    for i in 1..20 {
        let alpha = 2.0 / max_q2 * i as f64 / 20.0;
        let r = ratio_via_fd(&q, alpha, &quad()).unwrap();
        assert!(rel(r.corrected.value, base) < 1e-9, "α = {alpha}");
    }
}

fn params() -> impl Strategy<Value = FdParams> {
    (1usize..=5).prop_flat_map(|n| {
        (
            0.1f64..3.0,
            0.1f64..3.0,
            prop::collection::vec(-1.0f64..3.0, n),
            prop::collection::vec(-0.5f64..0.5, n),
        )
            .prop_map(|(a, gap, b, x)| FdParams::new(a, b, a + gap, x).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_and_integral_agree(p in params()) {
        let s = fd_series(&p, 1e-14, 20_000).unwrap();
        let i = fd_integral(&p, &quad()).unwrap();
        prop_assert!(rel(s, i) < 1e-8);
    }
}
