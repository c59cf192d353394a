use proptest::prelude::*;
use rug::Rational;
use sixj_core::lattice::*;

fn r(n: i64) -> Rational {
    Rational::from(n)
}

#[test]
fn oriented_edges() {
    let all = OrientedEdge::all();
    assert_eq!(all.len(), 12);
    let mut fibers = [0; 6];
    for e in &all {
        assert_eq!(e.reversed().reversed(), *e);
        let (k, s) = e.unordered();
        let (k2, s2) = e.reversed().unordered();
        assert_eq!((k, s), (k2, -s2));
        fibers[k] += 1;
    }
    assert_eq!(fibers, [2; 6]);
    assert!(OrientedEdge::new(2, 2).is_err());
    assert!(OrientedEdge::new(0, 1).is_err());
}

#[test]
fn weyl_group_order_and_order_of_enumeration() {
    let w = enumerate_weyl();
    assert_eq!(w.len(), 23040);
    assert_eq!(w[0].w, WeylElement::identity());
    let mut set: Vec<_> = w.iter().map(|e| e.w).collect();
    set.sort();
    set.dedup();
    assert_eq!(set.len(), 23040);
    // Sorted order of (perm, signs) with + before − equals the enumeration order
    // once signs are mapped + ↦ 0, − ↦ 1.
    let keys: Vec<_> = w.iter().map(|e| (e.w.perm, e.w.signs.map(|s| (s < 0) as u8))).collect();
    assert!(keys.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn permutation_only_elements() {
    let n = enumerate_weyl().iter().filter(|e| e.w.signs.iter().all(|&s| s > 0)).count();
    assert_eq!(n, 720);
}

#[test]
fn lengths() {
    assert_eq!(WeylElement::identity().length_sign(), (0, 1));
    let t = WeylElement::new([1, 0, 2, 3, 4, 5], [1; 6]).unwrap();
    assert_eq!(t.length_sign(), (1, -1));
    // −id has an even number of sign changes in rank 6 and sends every positive root negative.
    let minus = WeylElement::new([0, 1, 2, 3, 4, 5], [-1; 6]).unwrap();
    assert_eq!(minus.length_sign(), (30, 1));
    let max = enumerate_weyl().iter().map(|e| e.length).max().unwrap();
    assert_eq!(max, 30);
    assert_eq!(enumerate_weyl().iter().filter(|e| e.length == 30).count(), 1);
    assert!(WeylElement::new([0, 1, 2, 3, 4, 5], [-1, 1, 1, 1, 1, 1]).is_err());
}

#[test]
fn length_distribution_matches_poincare_polynomial() {
    // Σ_w t^{ℓ(w)} = ∏ (1 + t + … + t^{d−1}) over degrees 2, 4, 6, 8, 10, 6.
    let mut poly = vec![1u64];
    for d in [2usize, 4, 6, 8, 10, 6] {
        let mut next = vec![0u64; poly.len() + d - 1];
        for (i, c) in poly.iter().enumerate() {
            for k in 0..d {
                next[i + k] += c;
            }
        }
        poly = next;
    }
    let mut counts = vec![0u64; 31];
    for e in enumerate_weyl() {
        counts[e.length as usize] += 1;
    }
    assert_eq!(counts, poly);
}

#[test]
fn isogeny_examples() {
    let z = EdgeAssignment([0i64, 0, 0, 0, 0, 0].map(r));
    assert_eq!(embed_isogeny(&z), [0i64; 6].map(r));
    let e12 = EdgeAssignment([1i64, 0, 0, 0, 0, 0].map(r));
    assert_eq!(embed_isogeny(&e12), [1i64, 1, 0, 0, 0, 0].map(r));
    let ones = EdgeAssignment([1i64; 6].map(r));
    assert_eq!(embed_isogeny(&ones), [2i64, 0, 2, 0, 2, 0].map(r));
}

#[test]
fn spin_weight_sets() {
    let all = spin_weights();
    assert_eq!(all.len(), 32);
    let (plus, minus) = spin_partition();
    assert_eq!((plus.len(), minus.len()), (16, 16));
    let first = all[0];
    assert_eq!((first.vertex, first.exponents, first.is_plus()), (1, [1, 1, 1, 0, 0, 0], true));
    for w in &all {
        let neg = w.exponents.map(|e| -e);
        let partner = all.iter().find(|u| u.exponents == neg).expect("closed under negation");
        assert_ne!(w.is_plus(), partner.is_plus());
    }
}

#[test]
fn spin_weights_are_the_orbit_of_varpi6() {
    let orbit = varpi6_orbit();
    assert_eq!(orbit.len(), 32);
    let mut from_spin: Vec<[i32; 6]> = spin_weights().iter().map(|w| edges_to_doubled_weight(&w.exponents)).collect();
    from_spin.sort();
    assert_eq!(orbit, from_spin);
}

#[test]
fn regge_examples() {
    let j = [r(9), r(2), r(3), r(11), r(4), r(5)];
    let out = regge_blackboard(1, &j).unwrap();
    assert_eq!(out, [r(9), r(5), r(4), r(11), r(3), r(2)]);
    assert_eq!(regge_blackboard(1, &out).unwrap(), j);
    assert!(regge_blackboard(4, &j).is_err());
}

#[test]
fn generated_subgroups() {
    let mut oriented: Vec<WeylElement> = (1..=3).map(|k| generator_to_weyl(Generator::Regge(k)).unwrap()).collect();
    for s in s4() {
        oriented.push(generator_to_weyl(Generator::TetraPermVortex(s)).unwrap());
    }
    assert_eq!(generated_order(&oriented), 144);

    let mut full = vec![generator_to_weyl(Generator::Regge(1)).unwrap()];
    for e in 0..6 {
        full.push(generator_to_weyl(Generator::Flip(e)).unwrap());
    }
    for s in s4() {
        full.push(generator_to_weyl(Generator::TetraPerm(s)).unwrap());
    }
    assert_eq!(generated_order(&full), 23040);
}

#[test]
fn generators_match_their_weyl_elements() {
    let f = EdgeAssignment([3i64, -1, 4, 1, -5, 9].map(r));
    let lam = |f: &EdgeAssignment<Rational>| {
        let v = embed_isogeny(f);
        v.map(|x| x.to_f64() as i32)
    };
    let mut gens = vec![Generator::Regge(1), Generator::Regge(2), Generator::Regge(3), Generator::Flip(2)];
    gens.extend(s4().into_iter().map(Generator::TetraPerm));
    for g in gens {
        let w = generator_to_weyl(g).unwrap();
        assert_eq!(lam(&symmetry_apply(g, &f).unwrap()), w.act(&lam(&f)), "{g:?}");
    }
}

fn weyl_strategy() -> impl Strategy<Value = WeylElement> {
    (0usize..23040).prop_map(|i| enumerate_weyl()[i].w)
}

proptest! {
    #[test]
    fn inverse_and_composition(a in weyl_strategy(), b in weyl_strategy(), v in prop::array::uniform6(-7i32..8)) {
        prop_assert_eq!(a.compose(&a.inverse()), WeylElement::identity());
        prop_assert_eq!(a.compose(&b).act(&v), a.act(&b.act(&v)));
        prop_assert_eq!(a.inverse().length(), a.length());
        let sq: i32 = v.iter().map(|x| x * x).sum();
        prop_assert_eq!(a.act(&v).iter().map(|x| x * x).sum::<i32>(), sq);
    }

    #[test]
    fn length_sign_is_multiplicative(a in weyl_strategy(), b in weyl_strategy()) {
        let s = |w: &WeylElement| w.length_sign().1;
        prop_assert_eq!(s(&a.compose(&b)), s(&a) * s(&b));
    }

    #[test]
    fn regge_is_an_involution(k in 1u8..4, j in prop::array::uniform6(-20i64..20)) {
        let j = j.map(r);
        let once = regge_blackboard(k, &j).unwrap();
        prop_assert_eq!(regge_blackboard(k, &once).unwrap(), j);
    }

    #[test]
    fn oddness(vals in prop::array::uniform6(-20i64..20)) {
        let f = EdgeAssignment(vals.map(r));
        for e in OrientedEdge::all() {
            prop_assert_eq!(f.oriented(e), -f.oriented(e.reversed()));
        }
        prop_assert_eq!(EdgeAssignment::from_blackboard(&f.to_blackboard()), f);
    }

    #[test]
    fn edge_weight_roundtrip(e in prop::array::uniform6(-9i32..10)) {
        prop_assert_eq!(doubled_weight_to_edges(&edges_to_doubled_weight(&e)), Some(e));
    }
}
