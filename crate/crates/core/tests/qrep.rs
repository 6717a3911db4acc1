mod common;

use proptest::prelude::*;
use qzero::kernel::{interior_residual, TruncatedOperator};
use qzero::qrep::{
    all_reduced_words, build_qrep, canonical_reduced_words, check_determinant, check_star_formula, check_t_relations,
    lemma_perm_min, quantum_determinant, ReducedWord,
};

#[test]
fn reduced_word_counts() {
    let counts: Vec<usize> = (1..=3).map(|n| all_reduced_words(n).len()).collect();
    assert_eq!(counts, vec![2, 7, 66]);
    assert_eq!(canonical_reduced_words(3).len(), 24);
    let longest = all_reduced_words(3).into_iter().filter(|w| w.len() == 6).count();
    assert_eq!(longest, 16);
}

#[test]
fn lemma_values_match_brute_force() {
    let table = [
        (3, 2, 1, 1), (3, 3, 1, 2), (3, 3, 2, 1), (3, 4, 1, 3), (3, 4, 2, 2), (3, 4, 3, 1),
        (4, 2, 1, 1), (4, 3, 1, 2), (4, 3, 2, 1), (4, 4, 1, 3), (4, 4, 2, 2), (4, 4, 3, 1),
        (4, 5, 1, 4), (4, 5, 2, 3), (4, 5, 3, 2), (4, 5, 4, 1),
    ];
    for (n, r, s, v) in table {
        assert_eq!(lemma_perm_min(n, r, s).unwrap(), v, "n={n} r={r} s={s}");
    }
    assert!(lemma_perm_min(3, 2, 2).is_err());
    assert!(lemma_perm_min(3, 5, 1).is_err());
}

#[test]
fn rank_one_longest_word_at_small_q() {
    let w = ReducedWord::parse(1, "s1").unwrap();
    let r = build_qrep(1, &[common::phase(0.25)], &w, 0.5, 6).unwrap();
    let rep = check_t_relations(&r, 1e-12, 1).unwrap();
    assert!(rep.pass, "{:?}", rep.worst());
    let d = quantum_determinant(&r).unwrap();
    let id = TruncatedOperator::identity(r.shape());
    assert!(interior_residual(&d, &id, 1).unwrap() < 1e-12);
}

#[test]
fn non_reduced_words_are_rejected() {
    assert!(ReducedWord::parse(2, "s1s1").is_err());
    assert!(ReducedWord::parse(2, "s3").is_err());
    assert!(ReducedWord::parse(2, "s1s2s1s2").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_hold_on_random_words(q in 0.05f64..0.95, n in 1usize..=2, pick in 0usize..7, t in 0.0f64..1.0) {
        let words = all_reduced_words(n);
        let w = &words[pick % words.len()];
        let phases: Vec<_> = (0..n).map(|k| common::phase(t + 0.37 * k as f64)).collect();
        let r = build_qrep(n, &phases, w, q, 6).unwrap();
        let rep = check_t_relations(&r, 1e-10, 2).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.worst());
        prop_assert!(rep.max_for("t-star").unwrap() < 1e-10);
        let det = check_determinant(&r, 1e-10, 2).unwrap();
        prop_assert!(det.pass, "{:?}", det.worst());
        let star = check_star_formula(&r, 1e-10, 2).unwrap();
        prop_assert!(star.pass, "{:?}", star.worst());
    }

    #[test]
    fn lemma_bound(n in 1usize..=5, r in 2usize..=6, s in 1usize..=5) {
        prop_assume!(s < r && r <= n + 1);
        prop_assert!(lemma_perm_min(n, r, s).unwrap() >= r - s);
    }
}
