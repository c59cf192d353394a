use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use sixj_core::scalar::Scalar;
use sixj_core::unramified::*;
use sixj_core::BigComplex;

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn sample_point() -> ExactPoint {
    UnramifiedPoint::new([r(2, 3), r(-5, 7), r(3, 11), r(7, 5), r(-4, 9), r(11, 13)], r(1, 3)).unwrap()
}

#[test]
fn duality_exact_at_sample_point() {
    let p = sample_point();
    assert_eq!(duality_lhs(&p).unwrap(), spin_cone_trace(&p).unwrap());
}

#[test]
fn duality_exact_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vs = [r(1, 2), r(1, 3), r(1, 5), r(2, 7)];
    for _ in 0..20 {
        let p = random_regular_point(&mut rng, 9, &vs).unwrap();
        assert_eq!(duality_lhs(&p).unwrap(), spin_cone_trace(&p).unwrap(), "{p:?}");
    }
}

#[test]
fn closed_tree_sum_matches_truncated_sum() {
    // Small v makes the geometric tails tiny.
    let p = UnramifiedPoint::new(
        [r(11, 10), r(-9, 10), r(6, 5), r(5, 4), r(-13, 10), r(7, 6)],
        r(1, 60),
    )
    .unwrap();
    let exact = tree_vertex_sum(&p).unwrap();
    let approx = tree_vertex_sum_truncated(&p, 4).unwrap();
    let diff = Rational::from(&exact - &approx).abs();
    let rel = Rational::from(&diff / exact.clone().abs());
    assert!(rel < r(1, 100_000), "relative gap {}", rel.to_f64());
}

#[test]
fn spherical_function_recursion() {
    // f(0) = 1 and the Hecke relation q f(n+1) + f(n-1) = q^{1/2}(x + 1/x) f(n).
    let (x, v) = (r(3, 7), r(1, 4));
    let q = Rational::from(v.clone().recip() * v.clone().recip());
    assert_eq!(spherical_term(&x, &v, 0).unwrap(), 1);
    let sum = Rational::from(&x + x.clone().recip());
    let f1 = spherical_term(&x, &v, 1).unwrap();
    assert_eq!(Rational::from(&q + 1u32) * f1.clone(), Rational::from(v.clone().recip() * sum.clone()));
    for n in 1..6 {
        let lhs = Rational::from(&q * spherical_term(&x, &v, n + 1).unwrap()) + spherical_term(&x, &v, n - 1).unwrap();
        let rhs = Rational::from(v.clone().recip() * &sum) * spherical_term(&x, &v, n).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn weyl_denominator_identity() {
    let p = sample_point();
    let (a, b) = weyl_denominator(&p).unwrap();
    assert_eq!(a, b);
}

#[test]
fn trace_coefficients_are_spin_characters() {
    let p = sample_point();
    let coeffs = trace_series(&p, 4).unwrap();
    assert_eq!(coeffs[0], 1);
    assert_eq!(coeffs[1], half_spin_character(&p));
    for (n, c) in coeffs.iter().enumerate() {
        assert_eq!(*c, weyl_character(&p, n as i32).unwrap(), "degree {n}");
    }
}

#[test]
fn half_spin_character_has_degree_32() {
    let ones = UnramifiedPoint::new([r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1)], r(1, 2)).unwrap();
    assert_eq!(half_spin_character(&ones), 32);
}

fn residue_point(rest: [Rational; 5], v: Rational) -> ExactPoint {
    restricted_point(rest, v).unwrap()
}

#[test]
fn residue_tree_equals_spin() {
    let pts = [
        ([r(2, 3), r(-5, 7), r(3, 11), r(7, 5), r(-4, 9)], r(1, 3)),
        ([r(9, 4), r(5, 3), r(-2, 7), r(8, 3), r(6, 11)], r(1, 5)),
        ([r(-3, 2), r(7, 9), r(5, 2), r(-1, 4), r(13, 6)], r(1, 2)),
    ];
    for (rest, v) in pts {
        let p = residue_point(rest, v);
        assert_eq!(residue_tree(&p).unwrap(), residue_spin(&p).unwrap());
    }
}

#[test]
fn displayed_residue_carries_an_extra_adjoint_l() {
    let p = residue_point([r(2, 3), r(-5, 7), r(3, 11), r(7, 5), r(-4, 9)], r(1, 3));
    let spin = residue_spin(&p).unwrap();
    assert_eq!(residue_display_without_l(&p).unwrap(), spin);
    assert_eq!(residue_display(&p).unwrap(), spin.mul(&adjoint_l(&p).unwrap()));
}

#[test]
fn residue_matches_limit_of_trace() {
    // (1 − v σ) Tr → Res as the point approaches the locus.
    let base = [r(2, 3), r(-5, 7), r(3, 11), r(7, 5), r(-4, 9)];
    let v = r(1, 3);
    let at = residue_point(base.clone(), v.clone());
    let res = residue_spin(&at).unwrap();
    let mut last = None;
    for k in [4u32, 8, 12] {
        let eps = Rational::from((1, 10i64.pow(k)));
        let mut x = at.x.clone();
        x[0] = Rational::from(&x[0] * (Rational::from(1) + eps));
        let p = UnramifiedPoint::new(x, v.clone()).unwrap();
        let sigma = p.monomial(&RESIDUE_EDGES);
        let f = Rational::from(1) - Rational::from(&v * &sigma);
        let val = Rational::from(&f * spin_cone_trace(&p).unwrap());
        let gap = Rational::from(&val - &res).abs().to_f64() / res.clone().abs().to_f64();
        if let Some(prev) = last {
            assert!(gap < prev, "not converging: {gap} vs {prev}");
        }
        last = Some(gap);
    }
    assert!(last.unwrap() < 1e-9);
}

#[test]
fn symbol_at_complex_point() {
    let prec = 192;
    let x = ["0.9+0.2i", "1.3-0.4i", "-0.7+0.1i", "0.6+0.6i", "1.1", "-1.2-0.3i"]
        .map(|s| BigComplex::parse(prec, s).unwrap());
    let p = UnramifiedPoint::new(x, BigComplex::parse(prec, "1/3").unwrap()).unwrap();
    let lhs = duality_lhs(&p).unwrap();
    let rhs = spin_cone_trace(&p).unwrap();
    assert!(lhs.rel_diff(&rhs) < 1e-50);
    let s = unramified_symbol(&p).unwrap();
    assert!(s.value.is_finite());
    assert!(!s.branch_notes.is_empty());
}

#[test]
fn poles_are_reported() {
    // x = 1 makes the root x² − 1 vanish in the tree coefficients.
    let p = UnramifiedPoint::new([r(1, 1), r(2, 1), r(3, 1), r(5, 1), r(7, 1), r(11, 1)], r(1, 3)).unwrap();
    assert!(tree_vertex_sum(&p).is_err());
    assert!(UnramifiedPoint::new([r(0, 1), r(2, 1), r(3, 1), r(5, 1), r(7, 1), r(11, 1)], r(1, 3)).is_err());
}

#[test]
fn trace_is_weyl_invariant() {
    use sixj_core::lattice::enumerate_weyl;
    let p = sample_point();
    let t = torus_point(&p).unwrap();
    let base = spin_cone_trace_at(t.as_ref(), &p.v).unwrap();
    let w = enumerate_weyl();
    for k in [1usize, 97, 720, 5000, 11111, 23039] {
        let tw = TwistedPoint::new(t.as_ref(), &w[k].w);
        assert_eq!(spin_cone_trace_at(&tw, &p.v).unwrap(), base, "element {k}");
    }
}
