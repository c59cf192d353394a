use num_complex::Complex64;
use sixj_core::archimedean::{edge_integral_closed_form, RealParameters, EvalOptions};
use sixj_core::edge_mc::*;
use sixj_core::Error;

const J1: &str = "0.713446i,0.172136i,0.036550i,0.933153i,0.382368i,0.223157i";

fn params(s: &str) -> RealParameters {
    RealParameters::parse(128, s).unwrap()
}

fn cfg(samples: u64, seed: u64) -> McConfig {
    McConfig { samples, seed, strategy: Strategy::Fibered }
}

#[test]
fn integrand_at_a_sample_point() {
    // |2 · (−1) · (−1) · 3 · 5 · 4 · (−2)| = 240.
    let v = edge_integrand(&RealParameters::zero(128), 2.0, 3.0, 5.0).unwrap();
    assert!((v - Complex64::new(240f64.powf(-0.5), 0.0)).norm() < 1e-15);
    assert!(matches!(edge_integrand(&RealParameters::zero(128), 1.0, 3.0, 5.0), Err(Error::Degenerate(_))));
}

#[test]
fn unitary_exponents_only_change_the_phase() {
    let zero = RealParameters::zero(128);
    let p = params(J1);
    for (x, y, z) in [(0.3, -1.2, 2.5), (-4.0, 0.7, 0.2), (1.5, 3.0, -0.01)] {
        let a = edge_integrand(&zero, x, y, z).unwrap().norm();
        let b = edge_integrand(&p, x, y, z).unwrap().norm();
        assert!((a - b).abs() < 1e-13 * a);
    }
}

#[test]
fn configuration_errors() {
    assert!(edge_integral_mc(&RealParameters::zero(128), &cfg(MIN_SAMPLES - 1, 0)).is_err());
    assert_eq!("fibered".parse::<Strategy>().unwrap(), Strategy::Fibered);
    assert_eq!("flatten".parse::<Strategy>().unwrap(), Strategy::Flatten);
    assert!("plain".parse::<Strategy>().is_err());
}

#[test]
fn runs_are_reproducible_across_thread_counts() {
    let p = params(J1);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| edge_integral_mc(&p, &cfg(3 * BLOCK + 123, 7)).unwrap())
    };
    let a = run(1);
    let b = run(3);
    assert_eq!(a.estimate, b.estimate);
    assert_eq!(a.stderr, b.stderr);
    assert_eq!(a.samples, 3 * BLOCK + 123);
    let c = edge_integral_mc(&p, &cfg(3 * BLOCK + 123, 8)).unwrap();
    assert_ne!(a.estimate, c.estimate);
}

#[test]
fn standard_error_shrinks_like_the_square_root() {
    let p = params(J1);
    let small = edge_integral_mc(&p, &cfg(20_000, 1)).unwrap();
    let large = edge_integral_mc(&p, &cfg(80_000, 1)).unwrap();
    let ratio = large.stderr / small.stderr;
    assert!((0.3..0.75).contains(&ratio), "ratio {ratio}");
}

#[test]
fn fibered_estimate_agrees_with_the_closed_form() {
    let p = params(J1);
    let exact = edge_integral_closed_form(&p, &EvalOptions { target: 1e-15 }).unwrap();
    let (re, im) = exact.value.to_f64_pair();
    let mc = edge_integral_mc(&p, &cfg(200_000, 11)).unwrap();
    let dev = (mc.estimate - Complex64::new(re, im)).norm();
    assert!(dev < 4.0 * mc.stderr, "deviation {dev} vs stderr {}", mc.stderr);
}

#[test]
fn flatten_estimate_is_consistent() {
    let p = params(J1);
    let fib = edge_integral_mc(&p, &cfg(100_000, 3)).unwrap();
    let flat = edge_integral_mc(&p, &McConfig { samples: 400_000, seed: 3, strategy: Strategy::Flatten }).unwrap();
    let dev = (fib.estimate - flat.estimate).norm();
    let s = (fib.stderr.powi(2) + flat.stderr.powi(2)).sqrt();
    assert!(dev < 4.0 * s, "deviation {dev} vs combined stderr {s}");
    assert!(flat.stderr > fib.stderr);
}
