use num_complex::Complex64;

use super::perm::ReducedWord;
use crate::error::{Error, Result};
use crate::gens::GenTable;
use crate::kernel::{make_diag, make_shift, SpaceShape, TruncatedOperator};

/// Phases must lie on the unit circle within this distance.
pub const PHASE_TOL: f64 = 1e-12;

/// A truncated representation of the q-deformed algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct QRepresentation {
    pub n: usize,
    /// `None` for a q-independent (character) representation.
    pub q: Option<f64>,
    pub phases: Vec<Complex64>,
    /// Letters of the word, which need not stay reduced under convolution.
    pub word: Vec<usize>,
    pub gens: GenTable,
}

impl QRepresentation {
    pub fn shape(&self) -> &SpaceShape {
        self.gens.shape()
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedOperator {
        self.gens.get(i, j)
    }
}

pub fn check_phase(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if !modulus.is_finite() || (modulus - 1.0).abs() > PHASE_TOL {
        return Err(Error::InvalidPhase { re: z.re, im: z.im, modulus });
    }
    Ok(())
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} is outside (0, 1)")));
    }
    Ok(())
}

/// The diagonal phase character: `t_11 ↦ λ_1`, `t_ii ↦ conj(λ_{i-1}) λ_i`,
/// `t_{n+1,n+1} ↦ conj(λ_n)`.
pub fn chi_lambda(n: usize, phases: &[Complex64]) -> Result<QRepresentation> {
    if n == 0 || phases.len() != n {
        return Err(Error::InvalidParameter(format!("expected {n} phases, got {}", phases.len())));
    }
    for &z in phases {
        check_phase(z)?;
    }
    let diag = diagonal_phases(phases);
    let gens = GenTable::from_fn(n, SpaceShape::scalar(), |i, j| {
        Ok(TruncatedOperator::scalar(if i == j { diag[i - 1] } else { Complex64::new(0.0, 0.0) }))
    })?;
    Ok(QRepresentation { n, q: None, phases: phases.to_vec(), word: Vec::new(), gens })
}

/// Diagonal values of the phase character, `n + 1` of them.
pub fn diagonal_phases(phases: &[Complex64]) -> Vec<Complex64> {
    let n = phases.len();
    (1..=n + 1)
        .map(|i| {
            if i == 1 {
                phases[0]
            } else if i == n + 1 {
                phases[n - 1].conj()
            } else {
                phases[i - 2].conj() * phases[i - 1]
            }
        })
        .collect()
}

/// The elementary representation attached to `s_k` on one truncated
/// half-line.
pub fn psi_sk(n: usize, k: usize, q: f64, dim: usize) -> Result<QRepresentation> {
    check_q(q)?;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("letter s{k} is outside s1..s{n}")));
    }
    let root = |m: usize| (1.0 - q.powi(2 * m as i32)).sqrt();
    let s = make_shift(dim)?;
    let sqrt_defect = make_diag(dim, |m| Complex64::new(root(m), 0.0))?;
    let kk = s.mul(&sqrt_defect)?;
    let k1k1 = sqrt_defect.mul(&s.adjoint())?;
    let up = make_diag(dim, |m| Complex64::new(-q.powi(m as i32 + 1), 0.0))?;
    let down = make_diag(dim, |m| Complex64::new(q.powi(m as i32), 0.0))?;
    let shape = s.shape().clone();
    let gens = GenTable::from_fn(n, shape.clone(), |i, j| {
        Ok(match (i, j) {
            _ if i == k && j == k => kk.clone(),
            _ if i == k + 1 && j == k + 1 => k1k1.clone(),
            _ if i == k && j == k + 1 => up.clone(),
            _ if i == k + 1 && j == k => down.clone(),
            _ if i == j => TruncatedOperator::identity(&shape),
            _ => TruncatedOperator::zeros(&shape),
        })
    })?;
    Ok(QRepresentation { n, q: Some(q), phases: Vec::new(), word: vec![k], gens })
}

/// `(a ∗ b)(t_ij) = Σ_{k=1}^{n+1} a(t_ik) ⊗ b(t_kj)`.
pub fn convolve(a: &QRepresentation, b: &QRepresentation) -> Result<QRepresentation> {
    if a.n != b.n {
        return Err(Error::IncompatibleRepresentations(format!("ranks {} and {} differ", a.n, b.n)));
    }
    let q = match (a.q, b.q) {
        (Some(x), Some(y)) if x != y => {
            return Err(Error::IncompatibleRepresentations(format!("q = {x} and q = {y} differ")))
        }
        (x, y) => x.or(y),
    };
    let n = a.n;
    let gens = a.gens.convolve(&b.gens, |_, _| 1..=n + 1)?;
    let mut word = a.word.clone();
    word.extend_from_slice(&b.word);
    let phases = if a.phases.is_empty() { b.phases.clone() } else { a.phases.clone() };
    Ok(QRepresentation { n, q, phases, word, gens })
}

/// `χ_λ ∗ ψ_{s_{k_1}} ∗ ⋯ ∗ ψ_{s_{k_ℓ}}` with every factor truncated to `dim`.
pub fn build_qrep(n: usize, phases: &[Complex64], word: &ReducedWord, q: f64, dim: usize) -> Result<QRepresentation> {
    check_q(q)?;
    if word.n() != n {
        return Err(Error::InvalidWord(format!("word is for rank {}, expected {n}", word.n())));
    }
    let mut rep = chi_lambda(n, phases)?;
    rep.q = Some(q);
    for &k in word.letters() {
        rep = convolve(&rep, &psi_sk(n, k, q, dim)?)?;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chi_diagonal() {
        let r = chi_lambda(2, &[c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.get(1, 1).get(0, 0), c(0.0, 1.0));
        assert_eq!(r.get(2, 2).get(0, 0), c(0.0, -1.0));
        assert_eq!(r.get(3, 3).get(0, 0), c(1.0, 0.0));
        assert_eq!(r.get(1, 2).csr().nnz(), 0);
        assert!(matches!(chi_lambda(1, &[c(2.0, 0.0)]), Err(Error::InvalidPhase { .. })));
    }

    #[test]
    fn psi_blocks() {
        let r = psi_sk(2, 1, 0.5, 3).unwrap();
        let t12 = r.get(1, 2);
        assert_eq!(t12.get(0, 0), c(-0.5, 0.0));
        assert_eq!(t12.get(1, 1), c(-0.25, 0.0));
        assert_eq!(t12.get(2, 2), c(-0.125, 0.0));
        assert_eq!(r.get(2, 1).get(2, 2), c(0.25, 0.0));
        assert_eq!(r.get(3, 3), &TruncatedOperator::identity(r.shape()));
        assert!(psi_sk(2, 1, 1.0, 3).is_err());
    }

    #[test]
    fn word_shapes() {
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        let w = ReducedWord::parse(2, "s1s2s1").unwrap();
        let r = build_qrep(2, &one, &w, 0.3, 4).unwrap();
        assert_eq!(r.shape().rank(), 3);
        assert_eq!(r.shape().total_dim(), 64);
        let e = build_qrep(2, &one, &ReducedWord::empty(2), 0.3, 4).unwrap();
        assert!(e.shape().is_scalar());
    }

    #[test]
    fn trivial_character_is_a_unit_for_convolution() {
        let psi = psi_sk(2, 2, 0.4, 5).unwrap();
        let chi = chi_lambda(2, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let both = convolve(&chi, &psi).unwrap();
        assert_eq!(both.gens, psi.gens);
        let both = convolve(&psi, &chi).unwrap();
        assert_eq!(both.gens, psi.gens);
    }
}
