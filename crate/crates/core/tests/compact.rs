use proptest::prelude::*;
use rug::Rational;
use sixj_core::compact::*;
use sixj_core::lattice::s4;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn three_j_values() {
    assert_eq!(wigner_3j([1, 1, 0], [0, 0, 0]).0, q(-1, 3));
    assert_eq!(wigner_3j([1, 1, 1], [1, 0, -1]).0, q(-1, 6));
    assert_eq!(wigner_3j([2, 1, 1], [0, 1, -1]).0, q(1, 30));
    assert_eq!(wigner_3j([3, 2, 1], [-2, 1, 1]).0, q(-2, 21));
    assert!(wigner_3j([1, 1, 1], [0, 0, 0]).is_zero());
    assert!(wigner_3j([1, 1, 3], [0, 0, 0]).is_zero());
    assert!(wigner_3j([2, 2, 2], [1, 1, 1]).is_zero());
}

#[test]
fn three_j_tensors_are_normalized() {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let t = threej_tensor(a, b, c);
                if triangle(a, b, c) {
                    assert_eq!(t.norm_sq(), 1, "({a},{b},{c})");
                } else {
                    assert!(t.is_zero());
                }
            }
        }
    }
}

#[test]
fn six_j_values() {
    assert_eq!(racah_6j([1; 6]).0, q(1, 36));
    assert_eq!(racah_6j([2; 6]).0, q(-9, 4900));
    assert_eq!(racah_6j([3, 2, 1, 2, 3, 2]).0, q(24, 1225));
    assert_eq!(racah_6j([4, 3, 2, 1, 3, 3]).0, q(11, 882));
    assert!(racah_6j([1, 1, 3, 1, 1, 1]).is_zero());
    assert!((racah_6j([1; 6]).to_f64() - 1.0 / 6.0).abs() < 1e-16);
}

#[test]
fn edge_order_matches_the_classical_layout() {
    // Edges 12, 13, 14, 23, 24, 34 ↦ {j12 j13 j14; j34 j24 j23}.
    assert_eq!(to_racah_order(&[1, 2, 3, 4, 5, 6]), [1, 2, 3, 6, 5, 4]);
    let j = [2, 1, 2, 2, 1, 1];
    assert!(admissible(&j));
    assert_eq!(racah_for_edges(&j), racah_6j(to_racah_order(&j)));
    assert!(!admissible(&[1, 1, 3, 1, 1, 1]));
    assert_eq!(contraction_6j(&[1, 1, 3, 1, 1, 1]), 0.0);
}

#[test]
fn orthogonality_small() {
    let (defect, count) = orthogonality_defect(2, 128);
    assert!(count > 100);
    assert!(defect < 1e-35, "{defect:e}");
}

fn spins() -> impl Strategy<Value = EdgeSpins> {
    prop::array::uniform6(0u32..4).prop_filter("admissible", admissible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_matches_racah_up_to_sign(j in spins()) {
        let c = contraction_6j(&j);
        let r = racah_for_edges(&j).to_f64();
        prop_assert!((c.abs() - r.abs()).abs() < 1e-12, "{:?}: {} vs {}", j, c, r);
    }

    #[test]
    fn tetrahedral_symmetry_is_exact(j in spins()) {
        let base = racah_for_edges(&j);
        for s in s4() {
            let k = relabel(&j, s);
            prop_assert!(admissible(&k));
            prop_assert_eq!(racah_for_edges(&k), base.clone());
        }
    }

    #[test]
    fn regge_symmetry_is_exact(j in prop::array::uniform6(0u32..5)) {
        let [a, b, c, d, e, f] = j;
        let s = b + c + e + f;
        prop_assume!(s % 2 == 0 && 2 * b.max(c).max(e).max(f) <= s);
        let h = s / 2;
        // {a b c; d e f} = {a h−b h−c; d h−e h−f} with h = (b+c+e+f)/2.
        let image = [a, h - b, h - c, d, h - e, h - f];
        prop_assert_eq!(racah_6j(j), racah_6j(image));
    }

    #[test]
    fn signed_sqrt_products(n1 in -20i64..20, d1 in 1i64..20, n2 in -20i64..20, d2 in 1i64..20) {
        let x = SignedSqrt(q(n1, d1));
        let y = SignedSqrt(q(n2, d2));
        let p = (&x * &y).to_f64();
        prop_assert!((p - x.to_f64() * y.to_f64()).abs() < 1e-12 * (1.0 + p.abs()));
    }
}
