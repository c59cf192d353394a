use proptest::prelude::*;
use sixj_core::bigcomplex::BigComplex;
use sixj_core::factors::*;
use sixj_core::Error;

const P: u32 = 128;

fn c(s: &str) -> BigComplex {
    BigComplex::parse(P, s).unwrap()
}

fn close(a: &BigComplex, b: &BigComplex, tol: f64) -> bool {
    a.rel_diff(b) < tol
}

fn real(cc: u8, t: &str) -> LocalCharacter {
    LocalCharacter::real(cc, c(t)).unwrap()
}

#[test]
fn l_factor_examples() {
    let triv3 = LocalCharacter::nonarch(3, c("1"), false).unwrap();
    assert!(close(&l_factor(&triv3, &c("2")).unwrap(), &c("9/8"), 1e-35));
    assert!(close(&l_factor(&real(0, "0"), &c("1")).unwrap(), &c("1"), 1e-35));
    let pi_inv = BigComplex::pi(P).recip();
    assert!(close(&l_factor(&LocalCharacter::complex(c("0")), &c("1")).unwrap(), &pi_inv, 1e-35));
}

#[test]
fn l_factor_poles() {
    assert!(matches!(l_factor(&real(0, "0"), &c("0")), Err(Error::Pole(_))));
    assert!(matches!(l_factor(&real(1, "0"), &c("-1")), Err(Error::Pole(_))));
    let triv = LocalCharacter::nonarch(7, c("1"), false).unwrap();
    assert!(matches!(l_factor(&triv, &c("0")), Err(Error::Pole(_))));
    assert!(matches!(l_factor(&LocalCharacter::complex(c("1")), &c("-3")), Err(Error::Pole(_))));
}

#[test]
fn character_construction() {
    assert!(LocalCharacter::real(2, c("0")).is_err());
    assert!(LocalCharacter::nonarch(1, c("1"), false).is_err());
    assert!(LocalCharacter::nonarch(5, c("1"), true).is_err());
    assert!(LocalCharacter::nonarch(5, c("0"), false).is_err());
}

#[test]
fn gamma_factor_examples() {
    assert!(close(&gamma_factor(&real(0, "0"), &c("1/2")).unwrap(), &c("1"), 1e-35));
    let chi = LocalCharacter::nonarch(5, c("1/2"), false).unwrap();
    let want = c("5/6");
    assert!(close(&gamma_factor(&chi, &c("0")).unwrap(), &want, 1e-35));
}

#[test]
fn epsilon_examples() {
    let chi = LocalCharacter::nonarch(11, c("0.3+0.4i"), false).unwrap();
    for s in ["0", "1/2", "2-3i"] {
        assert_eq!(epsilon_factor(&chi, &c(s)).unwrap().to_f64_pair(), (1.0, 0.0));
    }
    assert!(close(&epsilon_factor(&real(0, "0"), &c("1/3")).unwrap(), &c("1"), 1e-35));
    let e = epsilon_factor(&real(1, "0"), &c("1/2")).unwrap();
    assert!((e.abs().to_f64() - 1.0).abs() < 1e-35);
    assert!(close(&e, &epsilon_closed(&real(1, "0"), &c("1/2")).unwrap(), 1e-35));
}

#[test]
fn complex_epsilon_closed_form_matches_the_ratio() {
    for (t, s) in [("0", "1/2"), ("0.3i", "0.2"), ("-0.7+1.1i", "0.4-0.3i")] {
        let chi = LocalCharacter::complex(c(t));
        let direct = epsilon_factor(&chi, &c(s)).unwrap();
        let closed = epsilon_closed(&chi, &c(s)).unwrap();
        assert!(close(&direct, &closed, 1e-30), "t = {t}, s = {s}");
    }
}

#[test]
fn gamma_vanishes_at_poles_of_the_denominator() {
    let g = gamma_factor(&real(0, "0"), &c("-2")).unwrap();
    assert!(g.is_zero());
}

#[test]
fn auxiliary_real_factors() {
    assert!(close(&l_r(&c("2")).unwrap(), &BigComplex::pi(P).recip(), 1e-35));
    assert!(close(&gamma_r(&c("1/2")).unwrap(), &c("1"), 1e-35));
}

fn flavor() -> impl Strategy<Value = LocalCharacter> {
    let real = (0u8..2, -2.0f64..2.0).prop_map(|(cc, im)| LocalCharacter::real(cc, BigComplex::from_f64(P, 0.0, im)).unwrap());
    let complex = (-2.0f64..2.0).prop_map(|im| LocalCharacter::complex(BigComplex::from_f64(P, 0.0, im)));
    let nonarch = (prop::sample::select(vec![2u64, 3, 5, 7, 9, 25]), -3.0f64..3.0)
        .prop_map(|(q, th)| LocalCharacter::nonarch(q, BigComplex::from_f64(P, th.cos(), th.sin()), false).unwrap());
    prop_oneof![real, complex, nonarch]
}

fn generic_s() -> impl Strategy<Value = BigComplex> {
    (0.05f64..0.95, -3.0f64..3.0).prop_map(|(re, im)| BigComplex::from_f64(P, re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn gamma_symmetry(chi in flavor()) {
        let g0 = gamma_factor(&chi, &c("0")).unwrap();
        let g1 = gamma_factor(&chi.inverse(), &c("1")).unwrap();
        prop_assert!(close(&(&g0 * &g1), &chi.at_minus_one(), 1e-20));
    }

    #[test]
    fn twist_compatibility(chi in flavor(), s in generic_s(), u in (-0.3f64..0.3, -2.0f64..2.0)) {
        let u = BigComplex::from_f64(P, u.0, u.1);
        let lhs = gamma_factor(&chi, &(&s + &u)).unwrap();
        let rhs = gamma_factor(&chi.twist(&u), &s).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-20));
    }

    #[test]
    fn real_dual_forms_agree(cc in 0u8..2, t in -2.0f64..2.0, s in generic_s()) {
        let t = BigComplex::from_f64(P, 0.0, t);
        let a = gamma_real_closed(cc, &t, &s).unwrap();
        let b = gamma_real_dual(cc, &t, &s).unwrap();
        prop_assert!(close(&a, &b, 1e-30));
    }

    #[test]
    fn gamma_routes_agree(chi in flavor(), s in generic_s()) {
        let a = gamma_factor(&chi, &s).unwrap();
        let b = gamma_factor_via_l(&chi, &s).unwrap();
        prop_assert!(close(&a, &b, 1e-30));
    }

    #[test]
    fn unitary_epsilon_has_modulus_one(chi in flavor()) {
        let e = epsilon_factor(&chi, &c("1/2")).unwrap();
        prop_assert!((e.abs().to_f64() - 1.0).abs() < 1e-25);
    }
}
