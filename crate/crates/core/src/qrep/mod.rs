//! Truncations of the irreducible representations of the q-deformed
//! algebra and checks of its defining identities.

pub mod perm;
pub mod relations;
pub mod rep;

pub use perm::{all_reduced_words, canonical_reduced_words, lemma_perm_min, Permutation, ReducedWord};
pub use relations::{
    check_determinant, check_star_formula, check_t_relations, cofactor, quantum_determinant, t_relations,
};
pub use rep::{build_qrep, chi_lambda, convolve, psi_sk, QRepresentation};
