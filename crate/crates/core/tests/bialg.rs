mod common;

use common::{block_unitary, phase};
use proptest::prelude::*;
use qzero::areps::canonical_model;
use qzero::azero::{check_relations, Representation};
use qzero::bialg::{a1_quotient, antipode_obstruction, check_bialgebra, delta_on_models, quotient_intertwining, su2_zero_model};
use qzero::crystal::crystal_gens_limit;
use qzero::qrep::ReducedWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model(word: &str, dim: usize) -> Representation {
    canonical_model(phase(0.1), phase(0.35), &ReducedWord::parse(2, word).unwrap(), dim).unwrap().rep
}

#[test]
fn s1_s2_pair_preserves_relations() {
    let (a, b) = (model("s1", 6), model("s2", 6));
    let rep = check_bialgebra(&a, &b, &model("s1s2", 4), 1e-12, 4).unwrap();
    assert!(rep.relation_preservation.pass, "{:?}", rep.relation_preservation.worst());
    assert!(rep.max_coassociativity() <= 1e-15);
    assert_eq!(rep.max_counit(), 0.0);
    assert_eq!(rep.antipode_obstruction, 1.0);
    assert!(rep.pass);
}

#[test]
fn delta_of_corner_has_three_terms() {
    let (a, b) = (model("s1s2", 4), model("s2s1", 4));
    let expect = a
        .get(1, 1)
        .tensor(b.get(1, 3))
        .unwrap()
        .add(&a.get(1, 2).tensor(b.get(2, 3)).unwrap())
        .unwrap()
        .add(&a.get(1, 3).tensor(b.get(3, 3)).unwrap())
        .unwrap();
    assert_eq!(delta_on_models(&a, &b, 1, 3).unwrap(), expect);
}

#[test]
fn quotient_of_rank_one_models() {
    let one = qzero::Complex64::new(1.0, 0.0);
    let s1 = su2_zero_model(6).unwrap();
    let q = a1_quotient(&s1, 1e-12, 3).unwrap();
    assert!(check_relations(&q, 1e-12, 3).unwrap().pass);
    assert_eq!(quotient_intertwining(&s1, &s1, 1e-12, 3).unwrap(), 0.0);
    let t = a1_quotient(&Representation::trivial(1).unwrap(), 1e-12, 0).unwrap();
    let t2 = Representation::trivial(2).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            assert_eq!(t.get(i, j).get(0, 0), t2.get(i, j).get(0, 0));
        }
    }
    let e = crystal_gens_limit(1, &[one], &ReducedWord::empty(1), 4).unwrap();
    assert!(a1_quotient(&e, 1e-12, 0).is_ok());
    let bad = Representation::new(s1.gens.map(|i, j, g| Ok(if (i, j) == (1, 2) { g.scale(2.0 * one) } else { g.clone() })).unwrap());
    assert!(a1_quotient(&bad, 1e-12, 3).is_err());
}

#[test]
fn obstruction_over_dims() {
    for dim in 2..=32 {
        assert!((antipode_obstruction(dim).unwrap() - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quotient_keeps_relations(a in 0usize..24, seed in 0u64..1000, s1 in any::<bool>()) {
        let word = ReducedWord::parse(1, if s1 { "s1" } else { "" }).unwrap();
        let r = crystal_gens_limit(1, &[phase(a as f64 / 24.0)], &word, 5).unwrap();
        let u = block_unitary(&mut ChaCha8Rng::seed_from_u64(seed), r.shape(), 2);
        let r = r.conjugate(&u).unwrap();
        let q = a1_quotient(&r, 1e-10, 2).unwrap();
        prop_assert!(check_relations(&q, 1e-10, 2).unwrap().pass);
        prop_assert!(quotient_intertwining(&r, &r, 1e-10, 2).unwrap() < 1e-12);
    }
}
