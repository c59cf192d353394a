use sixj_core::archimedean::*;
use sixj_core::bigcomplex::{digits_agreed, BigComplex};
use sixj_core::Error;

const P: u32 = 192;
const J1: &str = "0.713446i,0.172136i,0.036550i,0.933153i,0.382368i,0.223157i";
const J2: &str = "0.953991+0.458649i,0.284370+0.590858i,0.777124+0.667484i,0.036922+0.102931i,0.542879+0.223050i,0.395720+0.897602i";
const A1: &str = "1730.348536844976745554895072481538288183";
const A2: &str = "-70.0141698970658774227811653621105061501-344.8019718022410817955734451589062806451i";

fn fast() -> EvalOptions {
    EvalOptions { target: 1e-16 }
}

fn params(s: &str) -> RealParameters {
    RealParameters::parse(P, s).unwrap()
}

#[test]
fn minus_table_is_the_half_with_two_or_more_minus_signs() {
    let t = sigma_minus_table();
    let mut seen = Vec::new();
    for (r, row) in t.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            assert!(e.minus_count() >= 2, "({r},{c})");
            let star = SIGMA_STAR[r][c];
            assert_eq!(star.minus_count() == 1, underlined(r, c) && e.minus_count() == 2);
            seen.push(*e);
        }
    }
    seen.sort_by_key(|w| (w.vertex, w.signs));
    seen.dedup();
    assert_eq!(seen.len(), 16);
}

#[test]
fn sigma_is_minus_and_its_negation() {
    let s = sigma_sets(&params(J2));
    assert_eq!(s.sigma.len(), 32);
    for m in &s.minus {
        let neg = -m;
        assert!(s.sigma.iter().any(|x| x.rel_diff(m) < 1e-50));
        assert!(s.sigma.iter().any(|x| x.rel_diff(&neg) < 1e-50));
    }
    for k in 0..4 {
        assert_eq!(s.rows[k].len(), 16);
        assert_eq!(s.cols[k].len(), 16);
    }
    let zero = sigma_sets(&RealParameters::zero(P));
    assert!(zero.sigma.iter().all(BigComplex::is_zero));
}

#[test]
fn parse_rejects_wrong_arity() {
    assert!(RealParameters::parse(P, "1,2,3").is_err());
    assert!(RealParameters::parse(P, "1,2,3,4,5,x").is_err());
    assert!(params(J1).is_unitary());
    assert!(!params(J2).is_unitary());
}

#[test]
fn reproduces_the_unitary_reference_value() {
    let a = symbol_real_a(&params(J1), &fast()).unwrap();
    let want = BigComplex::parse(P, A1).unwrap();
    assert!(digits_agreed(&a.value, &want) > 14.0, "{}", a.value.to_decimal(40));
    assert!(a.value.rel_diff(&want) <= 10.0 * a.relative_error());
    // −id lies in W(D6), so a unitary J gives a real value.
    assert!(a.value.im.to_f64().abs() < 1e-14 * a.value.re.to_f64().abs());
}

#[test]
fn reproduces_the_generic_reference_value() {
    let a = symbol_real_a(&params(J2), &fast()).unwrap();
    let want = BigComplex::parse(P, A2).unwrap();
    assert!(digits_agreed(&a.value, &want) > 14.0, "{}", a.value.to_decimal(40));
}

#[test]
fn column_expression_is_the_negated_row_expression() {
    for j in [J1, J2] {
        let p = params(j);
        let a = symbol_real_a(&p, &fast()).unwrap();
        let b = symbol_real_b(&p, &fast()).unwrap();
        assert!(a.value.rel_diff(&-&b.value) < 1e-14);
    }
}

#[test]
fn conjugation_equivariance() {
    let p = params(J2);
    let a = symbol_real_a(&p, &fast()).unwrap();
    let c = symbol_real_a(&p.conj(), &fast()).unwrap();
    assert!(c.value.rel_diff(&a.value.conj()) < 1e-14);
}

#[test]
fn precision_refinement_is_consistent() {
    let lo = symbol_real_a(&RealParameters::parse(128, J2).unwrap(), &EvalOptions { target: 1e-25 }).unwrap();
    let hi = symbol_real_a(&params(J2), &EvalOptions { target: 1e-30 }).unwrap();
    assert!(lo.value.rel_diff(&hi.value) < 1e-24);
    assert!(hi.relative_error() < 1e-29);
}

#[test]
fn f_at_one_expressions() {
    let (a, b) = dictionary(&params(J1));
    let inner = f_at_one_inner_printed(&a, &b, &fast()).unwrap();
    let outer = f_at_one_outer(&a, &b, &fast()).unwrap();
    let f = f_at_one(&a, &b, &fast()).unwrap();
    assert!(f.value.rel_diff(&outer.value) < 1e-14);
    assert!(inner.value.rel_diff(&-&outer.value) < 1e-14);
    let want = BigComplex::parse(P, "-28.3447072256710013874+9.05712475558356421i").unwrap();
    assert!(digits_agreed(&f.value, &want) > 15.0);
}

#[test]
fn confluent_parameters_are_reported() {
    let z = RealParameters::zero(P);
    assert!(matches!(symbol_real_a(&z, &fast()), Err(Error::Degenerate(_))));
    let (a, b) = dictionary(&z);
    assert!(matches!(f_at_one(&a, &b, &fast()), Err(Error::Degenerate(_))));
}

#[test]
fn confluent_limit_is_continuous_at_generic_points() {
    let p = params(J1);
    let (a, b) = dictionary(&p);
    let direct = f_at_one(&a, &b, &EvalOptions { target: 1e-25 }).unwrap();
    let limit = confluent_limit(&p, &EvalOptions { target: 1e-25 }, 1e-4).unwrap();
    let gap = (&limit.value - &direct.value).abs().to_f64();
    assert!(gap <= limit.error.max(1e-20), "gap {gap:e}, estimate {:e}", limit.error);
}

#[test]
fn symmetry_report_on_a_unitary_point() {
    let p = params(J1);
    let report = weyl_invariance_report(&p, &EvalOptions { target: 1e-14 }).unwrap();
    assert_eq!(report.len(), 1 + 3 + 24 + 6);
    for e in &report {
        assert!(e.deviation < 1e-10, "{} {:e}", e.generator, e.deviation);
    }
}

#[test]
fn regge_moves_the_point() {
    let p = params(J2);
    let q = p.apply(sixj_core::lattice::Generator::Regge(1)).unwrap();
    assert!(p.j.iter().zip(&q.j).any(|(x, y)| x.rel_diff(y) > 1e-3));
    let back = q.apply(sixj_core::lattice::Generator::Regge(1)).unwrap();
    assert!(p.j.iter().zip(&back.j).all(|(x, y)| x.rel_diff(y) < 1e-50));
}
