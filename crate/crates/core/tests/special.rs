use num_complex::Complex64;
use proptest::prelude::*;
use sixj_core::bigcomplex::{digits_agreed, BigComplex};
use sixj_core::cspecial::{self, Hyp2F1};
use sixj_core::hypergeom::{pfq43_at_one, pfq_at_one, HyperOptions};
use sixj_core::special::gamma;

const P: u32 = 192;

fn c(s: &str) -> BigComplex {
    BigComplex::parse(P, s).unwrap()
}

#[test]
fn parse_and_print() {
    assert_eq!(c("-i").to_f64_pair(), (0.0, -1.0));
    assert_eq!(c("2/5").to_f64_pair(), (0.4, 0.0));
    assert_eq!(c("0.95-0.45i").to_f64_pair(), (0.95, -0.45));
    assert_eq!(c("1e-3+2.5e1i").to_f64_pair(), (1e-3, 25.0));
    assert!(BigComplex::parse(P, "1+").is_err());
    assert!(BigComplex::parse(P, "abc").is_err());
    assert!(c("1.5").to_decimal(10).starts_with("1.5"));
}

#[test]
fn gamma_reference_values() {
    let cases = [
        ("0.3+0.7i", "0.309686256743749128998143205115966116212858358807655756820777-0.856787752939270495949460496113428355558499583606037417401157i"),
        (
            "-2.5+10i",
            "-0.00000000000717460423503259120297298050183094548379422556+0.00000000036189661235676133648358977930099577329170697i",
        ),
        ("20.25-3i", "-182523784688450662.619814823054526686563018106-91238885063310215.9359094030164083598322280862i"),
    ];
    for (z, want) in cases {
        let g = gamma(&c(z)).unwrap();
        assert!(digits_agreed(&g, &c(want)) > 40.0, "Γ({z}) = {}", g.to_decimal(30));
    }
    let half = gamma(&c("0.5")).unwrap().square();
    assert!(digits_agreed(&half, &BigComplex::pi(P)) > 55.0);
    assert!(gamma(&c("-3")).is_err());
    assert!(gamma(&c("0")).is_err());
}

#[test]
fn gamma_factorials() {
    let mut f = BigComplex::one(P);
    for n in 1..30i64 {
        let g = gamma(&BigComplex::from_i64(P, n)).unwrap();
        assert!(g.rel_diff(&f) < 1e-55, "Γ({n})");
        f = f.mul_i64(n);
    }
}

#[test]
fn double_precision_functions() {
    let z = Complex64::new(0.3, 0.7);
    let g = cspecial::gamma(z);
    assert!((g - Complex64::new(0.309686256743749155, -0.856787752939270572)).norm() < 1e-14);
    let d = cspecial::digamma(z);
    assert!((d - Complex64::new(-0.447207920299561099, 1.891810855218526628)).norm() < 1e-13);
    let d = cspecial::digamma(Complex64::new(-1.7, 2.2));
    assert!((d - Complex64::new(1.135102387763476998, 2.360492813468126513)).norm() < 1e-13);
    assert_eq!(cspecial::rgamma(Complex64::new(-2.0, 0.0)), Complex64::new(0.0, 0.0));
}

#[test]
fn hyp2f1_reference_values() {
    let (a, b, cc) = (Complex64::new(0.2, 0.3), Complex64::new(-0.4, 0.1), Complex64::new(1.3, -0.2));
    let h = Hyp2F1::new(a, b, cc);
    assert!((h.eval(0.3) - Complex64::new(0.978390242941970197, -0.028196303087174118)).norm() < 1e-14);
    assert!((h.eval(0.85) - Complex64::new(0.938856142327942524, -0.095099850653192619)).norm() < 1e-13);
    // c = a + b: logarithmic connection at z → 1.
    let h = Hyp2F1::new(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0));
    assert!((h.eval(0.9).re - 1.641264414342370800).abs() < 1e-13);
    let h = Hyp2F1::new(Complex64::new(0.5, 0.2), Complex64::new(0.5, -0.1), Complex64::new(1.0, 0.1));
    assert!((h.eval(0.97) - Complex64::new(2.109977533051990581, 0.117099579979122320)).norm() < 1e-12);
}

#[test]
fn pfq_terminates() {
    let a = [c("0"), c("0.5"), c("0.25+i"), c("3")];
    let b = [c("1.5"), c("2"), c("0.75")];
    let v = pfq43_at_one(&a, &b).unwrap();
    assert_eq!(v.value.to_f64_pair(), (1.0, 0.0));
    assert_eq!(v.error, 0.0);
    // (-1)_n stops after one term: 1 + a2 a3 a4 · (−1)/(b1 b2 b3).
    let a = [c("-1"), c("2"), c("3"), c("4")];
    let b = [c("5"), c("6"), c("7")];
    let v = pfq43_at_one(&a, &b).unwrap();
    assert!(v.value.rel_diff(&c("31/35")) < 1e-55);
}

#[test]
fn pfq_reference_values() {
    let v = pfq_at_one(&[c("0.1"), c("0.2"), c("0.3")], &[c("1.1"), c("1.2")], &HyperOptions::default()).unwrap();
    let want = c("1.0061201151585766686430375102078151380305391417195");
    assert!(digits_agreed(&v.value, &want) > 45.0, "{}", v.value.to_decimal(50));

    let a = [c("0.5+0.3i"), c("0.25-0.7i"), c("-0.1+0.2i"), c("1.5")];
    let b = [c("1.2+0.4i"), c("2-0.1i"), c("1.7+0.2i")];
    let v = pfq43_at_one(&a, &b).unwrap();
    let want = c("1.0252387900289973499228187748473532665972969242673+0.030807804038851162609859110634129006432682458163227i");
    assert!(digits_agreed(&v.value, &want) > 45.0);
    assert!(v.value.rel_diff(&want) <= 10.0 * v.relative_error().max(1e-50));
}

#[test]
fn pfq_reduces_when_a_parameter_cancels() {
    let a3 = [c("0.5+0.3i"), c("0.25-0.7i"), c("-0.1+0.2i")];
    let b2 = [c("1.2+0.4i"), c("2-0.1i")];
    let three = pfq_at_one(&a3, &b2, &HyperOptions::default()).unwrap();
    let a4 = [a3[0].clone(), a3[1].clone(), a3[2].clone(), c("1.5")];
    let b3 = [b2[0].clone(), b2[1].clone(), c("1.5")];
    let four = pfq43_at_one(&a4, &b3).unwrap();
    assert!(three.value.rel_diff(&four.value) < 1e-50);
    let want = c("1.0248157935329519560596389630040110540811589056085+0.039523271064994944007723045888378294623585500269541i");
    assert!(digits_agreed(&four.value, &want) > 45.0);
}

#[test]
fn pfq_rejects_bad_parameters() {
    let bad = pfq43_at_one(&[c("1"), c("1"), c("1"), c("1")], &[c("1"), c("1"), c("1")]);
    assert!(matches!(bad, Err(sixj_core::Error::Convergence(_))));
    let bad = pfq43_at_one(&[c("0.5"), c("1"), c("1"), c("1")], &[c("-2"), c("3"), c("3")]);
    assert!(matches!(bad, Err(sixj_core::Error::Degenerate(_))));
}

#[test]
fn pfq_error_estimate_is_honest() {
    // A loose target stops early; the estimate must cover the true error.
    let a = [c("0.5+0.3i"), c("0.25-0.7i"), c("-0.1+0.2i"), c("1.5")];
    let b = [c("1.2+0.4i"), c("2-0.1i"), c("1.7+0.2i")];
    let exact = pfq43_at_one(&a, &b).unwrap();
    for target in [1e-8, 1e-15, 1e-25] {
        let v = pfq_at_one(&a, &b, &HyperOptions { target: Some(target), ..Default::default() }).unwrap();
        let err = (&v.value - &exact.value).abs().to_f64();
        assert!(err <= v.error, "target {target}: true {err:e} vs estimate {:e}", v.error);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gamma_recurrence(re in -8.0f64..12.0, im in -6.0f64..6.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let z = BigComplex::from_f64(P, re, im);
        let lhs = gamma(&z.add_i64(1)).unwrap();
        let rhs = &z * &gamma(&z).unwrap();
        prop_assert!(lhs.rel_diff(&rhs) < 1e-50);
    }

    #[test]
    fn gamma_reflection(re in 0.05f64..0.95, im in -4.0f64..4.0) {
        let z = BigComplex::from_f64(P, re, im);
        let one_minus = (-&z).add_i64(1);
        let lhs = &gamma(&z).unwrap() * &gamma(&one_minus).unwrap();
        let rhs = &BigComplex::pi(P) / &z.mul_real(&BigComplex::pi(P).re).sin();
        prop_assert!(lhs.rel_diff(&rhs) < 1e-50);
    }

    #[test]
    fn double_gamma_tracks_big_gamma(re in -6.0f64..15.0, im in -8.0f64..8.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let big = gamma(&BigComplex::from_f64(P, re, im)).unwrap().to_f64_pair();
        let small = cspecial::gamma(Complex64::new(re, im));
        let want = Complex64::new(big.0, big.1);
        prop_assert!((small - want).norm() <= 1e-12 * want.norm());
    }

    #[test]
    fn digamma_is_log_derivative(re in 0.3f64..6.0, im in -4.0f64..4.0) {
        let z = Complex64::new(re, im);
        let h = 1e-5;
        let num = (cspecial::gamma(z + h).ln() - cspecial::gamma(z - h).ln()) / (2.0 * h);
        prop_assert!((num - cspecial::digamma(z)).norm() < 1e-7);
    }

    #[test]
    fn hyp2f1_connection_is_continuous(ar in -0.9f64..0.9, ai in -0.5f64..0.5, br in -0.9f64..0.9, cr in 1.2f64..2.5) {
        let h = Hyp2F1::new(Complex64::new(ar, ai), Complex64::new(br, 0.1), Complex64::new(cr, -0.2));
        let below = h.eval(0.5);
        let above = h.eval(0.5 + 1e-12);
        prop_assert!((below - above).norm() < 1e-10 * below.norm().max(1.0));
    }
}
