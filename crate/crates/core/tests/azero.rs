mod common;

use common::phase;
use proptest::prelude::*;
use qzero::areps::{all_words, canonical_model};
use qzero::azero::{
    check_relations, eval_star_poly, parse_star_poly, relation_catalog, su02_relations, StarPolynomial,
};
use qzero::bialg::su2_zero_model;
use qzero::kernel::{interior_residual, TruncatedOperator};
use qzero::relations::check;
use qzero::{Complex64, Error};

#[test]
fn every_relation_holds_at_its_degree() {
    for w in all_words() {
        let m = canonical_model(phase(1.0 / 12.0), phase(7.0 / 12.0), &w, 6).unwrap();
        for rel in relation_catalog(2) {
            let margin = rel.degree().min(5);
            let rep = check(&m.rep.gens, std::slice::from_ref(&rel), 1e-12, margin).unwrap();
            assert!(rep.pass, "{w} {} {:?}: {:?}", rel.id, rel.indices, rep.worst());
        }
    }
}

#[test]
fn rank_one_catalog_matches_su02() {
    let good = su2_zero_model(6).unwrap();
    let a = check_relations(&good, 1e-12, 2).unwrap();
    let b = check(&good.gens, &su02_relations(), 1e-12, 2).unwrap();
    assert!(a.pass && b.pass);
    // a perturbed model breaks both sets
    let bad = qzero::azero::Representation::new(good.gens.map(|i, j, g| Ok(if (i, j) == (1, 2) { g.scale(Complex64::new(0.5, 0.0)) } else { g.clone() })).unwrap());
    assert!(!check_relations(&bad, 1e-6, 2).unwrap().pass);
    assert!(!check(&bad.gens, &su02_relations(), 1e-6, 2).unwrap().pass);
}

#[test]
fn row_sum_evaluates_to_identity() {
    let m = canonical_model(phase(0.3), phase(0.9), &all_words()[5], 5).unwrap();
    let p = parse_star_poly("z[2,1]*z[2,1]' + z[2,2]*z[2,2]'").unwrap();
    let v = eval_star_poly(&p, &m.rep.gens).unwrap();
    let id = TruncatedOperator::identity(m.rep.shape());
    assert!(interior_residual(&v, &id, 2).unwrap() < 1e-12);
}

#[test]
fn syntax_errors() {
    for bad in ["z[1,", "2 +", "(z[1,1]", "z[1,1]]", "z[a,1]", "", "2 + 3 i"] {
        assert!(matches!(parse_star_poly(bad), Err(Error::Syntax { .. })), "{bad:?}");
    }
    let m = canonical_model(phase(0.0), phase(0.0), &all_words()[1], 3).unwrap();
    assert!(eval_star_poly(&parse_star_poly("z[4,1]").unwrap(), &m.rep.gens).is_err());
}

#[test]
fn literals() {
    let cases = [("2+3i", Complex64::new(2.0, 3.0)), ("-i", Complex64::new(0.0, -1.0)), ("0.5-i", Complex64::new(0.5, -1.0))];
    for (text, value) in cases {
        assert_eq!(parse_star_poly(text).unwrap(), StarPolynomial::scalar(value));
    }
    assert_eq!(
        parse_star_poly("2 + 3i").unwrap(),
        StarPolynomial::real(2.0).plus(StarPolynomial::scalar(Complex64::new(0.0, 3.0)))
    );
}

fn scalar() -> impl Strategy<Value = Complex64> {
    let part = prop_oneof![Just(0.0), Just(1.0), Just(-2.0), Just(0.5), Just(-0.25), Just(3.0)];
    (part.clone(), part).prop_map(|(re, im)| Complex64::new(re, im))
}

fn poly() -> impl Strategy<Value = StarPolynomial> {
    let leaf = prop_oneof![
        (1usize..=3, 1usize..=3).prop_map(|(i, j)| StarPolynomial::gen(i, j)),
        scalar().prop_map(StarPolynomial::scalar),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(StarPolynomial::adjoint),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.plus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.minus(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.times(b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(p in poly()) {
        let text = p.to_string();
        let back = parse_star_poly(&text).unwrap();
        prop_assert_eq!(&back, &p, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lower_generators_are_partial_isometries(a in 0usize..12, b in 0usize..12, pick in 0usize..6) {
        let w = &all_words()[pick];
        let m = canonical_model(phase(a as f64 / 12.0), phase(b as f64 / 12.0), w, 5).unwrap();
        for i in 1..=3 {
            for j in 1..=i {
                let g = m.rep.get(i, j);
                let law = g.mul(&g.adjoint()).unwrap().mul(g).unwrap();
                prop_assert!(interior_residual(&law, g, 3).unwrap() <= 1e-12, "{} z[{},{}]", w, i, j);
            }
        }
    }
}
