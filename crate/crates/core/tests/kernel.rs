mod common;

use common::c;
use proptest::prelude::*;
use qzero::areps::{all_words, canonical_model};
use qzero::kernel::{make_diag, make_shift, op_norm, spectrum_normal, tensor, FactorSpec, SpaceShape, TruncatedOperator};
use qzero::qrep::{all_reduced_words, build_qrep};
use qzero::Complex64;

fn factor() -> impl Strategy<Value = FactorSpec> {
    prop_oneof![(2usize..5).prop_map(|d| FactorSpec::half(d).unwrap()), Just(FactorSpec::line(3).unwrap())]
}

/// Sparse operator with small Gaussian-integer entries, so products are
/// exact in floating point.
fn integer_operator() -> impl Strategy<Value = TruncatedOperator> {
    factor().prop_flat_map(|f| {
        let shape = SpaceShape::new(vec![f]).unwrap();
        let d = shape.total_dim();
        proptest::collection::vec((-3i8..=3, -3i8..=3, 0u8..3), d * d).prop_map(move |cells| {
            let m = nalgebra::DMatrix::from_fn(d, d, |r, col| {
                let (re, im, keep) = cells[r * d + col];
                if keep == 0 {
                    c(re as f64, im as f64)
                } else {
                    c(0.0, 0.0)
                }
            });
            TruncatedOperator::from_dense(shape.clone(), &m).unwrap()
        })
    })
}

fn dense_operator(d: usize) -> impl Strategy<Value = TruncatedOperator> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let m = nalgebra::DMatrix::from_fn(d, d, |r, col| c(v[r * d + col].0, v[r * d + col].1));
        TruncatedOperator::from_dense(SpaceShape::half_lines(1, d).unwrap(), &m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(a in integer_operator(), b in integer_operator(), x in integer_operator()) {
        let left = tensor(&tensor(&a, &b).unwrap(), &x).unwrap();
        let right = tensor(&a, &tensor(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn op_norm_is_submultiplicative((a, b) in (2usize..7).prop_flat_map(|d| (dense_operator(d), dense_operator(d)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert!(op_norm(&ab) <= op_norm(&a) * op_norm(&b) + 1e-10);
    }

    #[test]
    fn unitary_diagonal_spectrum_on_circle(turns in proptest::collection::vec(0.0f64..1.0, 2..12)) {
        let d = turns.len();
        let u = make_diag(d, |k| Complex64::from_polar(1.0, std::f64::consts::TAU * turns[k])).unwrap();
        for z in spectrum_normal(&u, 1e-12).unwrap() {
            prop_assert!((z.norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn q_generators_are_contractions(q in 0.01f64..0.99, n in 1usize..=2, pick in 0usize..7, dim in 3usize..6) {
        let words = all_reduced_words(n);
        let w = &words[pick % words.len()];
        let phases = vec![common::phase(0.3); n];
        let r = build_qrep(n, &phases, w, q, dim).unwrap();
        for g in r.gens.gens() {
            prop_assert!(g.op_norm() <= 1.0 + 1e-10, "{} at q={}: {}", w, q, g.op_norm());
        }
    }
}

#[test]
fn canonical_generators_are_contractions() {
    for w in all_words() {
        let m = canonical_model(common::phase(0.1), common::phase(0.7), &w, 5).unwrap();
        for g in m.rep.gens.gens() {
            assert!(g.op_norm() <= 1.0 + 1e-10, "{w}");
        }
    }
}

#[test]
fn shift_norms_and_spectrum() {
    let s = make_shift(6).unwrap();
    assert!((s.op_norm() - 1.0).abs() < 1e-12);
    let sd_s = s.adjoint().mul(&s).unwrap();
    let spec = spectrum_normal(&sd_s, 1e-12).unwrap();
    assert_eq!(spec.iter().filter(|z| z.norm() < 1e-12).count(), 1);
    assert!(spectrum_normal(&s, 1e-12).is_err());
}

#[test]
fn interior_of_mixed_shape() {
    let shape = SpaceShape::new(vec![FactorSpec::half(4).unwrap(), FactorSpec::line(5).unwrap()]).unwrap();
    let inner = shape.interior(1).unwrap();
    // half-line keeps 0..=2, line keeps 1..=3
    assert_eq!(inner.len(), 9);
    assert_eq!(shape.unflatten(inner[0]), vec![0, 1]);
    assert!(shape.interior(3).is_err());
    assert_eq!(SpaceShape::scalar().interior(5).unwrap(), vec![0]);
}
