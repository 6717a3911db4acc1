//! Canonical irreducible representations of the rank-two algebra at q = 0,
//! matrix-unit witnesses, the Toeplitz embedding and its character
//! factorisations.

pub mod symbolic;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::azero::{parse_star_poly, Representation, StarPolynomial};
use crate::error::{Error, Result};
use crate::gens::{Letter, Monomial};
use crate::kernel::{linalg::op_norm, Csr};
use crate::qrep::ReducedWord;
pub use symbolic::{SymbolicRep, Sym, Term};

/// The six reduced words of the rank-two Weyl group.
pub const WORDS: [&str; 6] = ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"];

pub fn all_words() -> Vec<ReducedWord> {
    WORDS.iter().map(|w| ReducedWord::parse(2, w).expect("listed words are reduced")).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalModel {
    pub lambda: Complex64,
    pub mu: Complex64,
    pub word: ReducedWord,
    pub rep: Representation,
}

fn check_rank_two(word: &ReducedWord) -> Result<()> {
    if word.n() != 2 {
        return Err(Error::InvalidWord(format!("expected a word for rank 2, got rank {}", word.n())));
    }
    Ok(())
}

/// `χ_{(λ, μ)} ∗ ψ_{s_{k_1}} ∗ ⋯` as a symbolic representation.
pub fn canonical_symbolic(lambda: Complex64, mu: Complex64, word: &ReducedWord) -> Result<SymbolicRep> {
    check_rank_two(word)?;
    let mut r = SymbolicRep::character(2, &[lambda, mu])?;
    for &k in word.letters() {
        r = r.convolve(&SymbolicRep::elementary(2, k)?)?;
    }
    Ok(r)
}

pub fn canonical_model(lambda: Complex64, mu: Complex64, word: &ReducedWord, dim: usize) -> Result<CanonicalModel> {
    let sym = canonical_symbolic(lambda, mu, word)?;
    let mut rep = sym.realize(dim, dim)?;
    rep.meta = Some(crate::azero::Meta { phases: vec![lambda, mu], word: word.letters().to_vec() });
    Ok(CanonicalModel { lambda, mu, word: word.clone(), rep })
}

/// One matrix-unit identity `E = c · W`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessResidual {
    pub family: usize,
    pub indices: Vec<usize>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub word: String,
    pub checked: usize,
    pub max_deviation: f64,
    pub entries: Vec<WitnessResidual>,
}

fn pow(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.conj().powu((-e) as u32)
    }
}

fn power(l: Letter, e: usize) -> Vec<Letter> {
    vec![l; e]
}

/// `|e_j⟩⟨e_k|` on factor `slot` of `factors`, identity elsewhere, as a
/// sparse matrix on the full space.
fn matrix_unit(dim: usize, factors: usize, units: &[(usize, usize, usize)]) -> Csr {
    let total = dim.pow(factors as u32);
    let mut trips = Vec::new();
    for row in 0..total {
        let mut idx: Vec<usize> = (0..factors).map(|f| (row / dim.pow((factors - 1 - f) as u32)) % dim).collect();
        let mut ok = true;
        for &(slot, j, k) in units {
            if idx[slot] != j {
                ok = false;
                break;
            }
            idx[slot] = k;
        }
        if ok {
            let col = idx.iter().fold(0, |acc, &x| acc * dim + x);
            trips.push((row, col, Complex64::new(1.0, 0.0)));
        }
    }
    Csr::from_triplets(total, total, trips)
}

struct Witness {
    family: usize,
    indices: Vec<usize>,
    coeff: Complex64,
    word: Vec<Letter>,
    units: Vec<(usize, usize, usize)>,
}

fn witnesses(lambda: Complex64, mu: Complex64, word: &str, max_index: usize) -> Result<Vec<Witness>> {
    let nu = lambda.conj() * mu;
    let z = Letter::gen;
    let zs = Letter::star;
    let r = 0..=max_index;
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = r.clone().flat_map(|j| r.clone().map(move |k| (j, k))).collect();
    let cat = |parts: Vec<Vec<Letter>>| parts.concat();
    match word {
        "s1" => {
            for &(j, k) in &pairs {
                out.push(Witness {
                    family: 1,
                    indices: vec![j, k],
                    coeff: pow(lambda, j as i64 - k as i64 - 1),
                    word: cat(vec![power(zs(1, 1), j), vec![z(1, 2)], power(z(1, 1), k)]),
                    units: vec![(0, j, k)],
                });
            }
        }
        "s2" => {
            for &(j, k) in &pairs {
                out.push(Witness {
                    family: 1,
                    indices: vec![j, k],
                    coeff: pow(nu, j as i64 - k as i64 - 1),
                    word: cat(vec![power(zs(2, 2), j), vec![z(2, 3)], power(z(2, 2), k)]),
                    units: vec![(0, j, k)],
                });
            }
        }
        "s1s2" => {
            for &(j, k) in &pairs {
                out.push(Witness {
                    family: 1,
                    indices: vec![j, k],
                    coeff: pow(lambda, j as i64 - k as i64) * nu.conj(),
                    word: cat(vec![power(zs(1, 1), j), vec![z(2, 1)], power(z(1, 1), k)]),
                    units: vec![(0, j, k)],
                });
                out.push(Witness {
                    family: 2,
                    indices: vec![j, k],
                    coeff: pow(mu, j as i64 - k as i64 + 1),
                    word: cat(vec![power(z(3, 3), j), vec![z(3, 2)], power(zs(3, 3), k)]),
                    units: vec![(1, j, k)],
                });
            }
        }
        "s2s1" => {
            for &(j, k) in &pairs {
                out.push(Witness {
                    family: 1,
                    indices: vec![j, k],
                    coeff: pow(lambda, j as i64 - k as i64 - 1),
                    word: cat(vec![power(zs(1, 1), j), vec![z(1, 2)], power(z(1, 1), k)]),
                    units: vec![(1, j, k)],
                });
                out.push(Witness {
                    family: 2,
                    indices: vec![j, k],
                    coeff: lambda * pow(mu, j as i64 - k as i64 - 1),
                    word: cat(vec![power(z(3, 3), j), vec![z(2, 3)], power(zs(3, 3), k)]),
                    units: vec![(0, j, k)],
                });
            }
        }
        "s1s2s1" => {
            for &(j, k) in &pairs {
                for &(m, n) in &pairs {
                    let (j_, k_, m_, n_) = (j as i64, k as i64, m as i64, n as i64);
                    out.push(Witness {
                        family: 1,
                        indices: vec![j, k, m, n],
                        coeff: lambda.conj() * pow(mu, m_ - n_) * pow(nu, k_ - j_),
                        word: cat(vec![
                            power(z(3, 3), m),
                            power(z(2, 3), j),
                            vec![z(1, 3)],
                            power(zs(2, 3), k),
                            power(zs(3, 3), n),
                        ]),
                        units: vec![(0, j, k), (1, m, n)],
                    });
                    out.push(Witness {
                        family: 2,
                        indices: vec![j, k, m, n],
                        coeff: pow(mu, j_ - k_ + m_ - n_ + 1),
                        word: cat(vec![
                            power(z(3, 3), j),
                            power(z(3, 2), m),
                            vec![z(3, 1)],
                            power(zs(3, 2), n),
                            power(zs(3, 3), k),
                        ]),
                        units: vec![(1, j, k), (2, m, n)],
                    });
                }
            }
        }
        _ => return Err(Error::InvalidWord(format!("no matrix-unit witness for the word {word}"))),
    }
    Ok(out)
}

/// Checks the matrix-unit formulas `|e_j⟩⟨e_k| ⊗ ⋯ = c · (word in the
/// generators)` for all indices up to `max_index`, on the interior at
/// `margin`.
pub fn irreducibility_witness(m: &CanonicalModel, max_index: usize, margin: usize) -> Result<WitnessReport> {
    let name = m.word.to_string();
    let list = witnesses(m.lambda, m.mu, &name, max_index)?;
    let shape = m.rep.shape();
    let dim = shape.factors()[0].dim;
    if max_index >= dim {
        return Err(Error::InvalidParameter(format!("index {max_index} does not fit in dimension {dim}")));
    }
    let rows = shape.interior(margin)?;
    let factors = shape.rank();
    let entries = list
        .par_iter()
        .map(|w| {
            let got = m.rep.gens.eval_compressed(&[Monomial::new(w.coeff, w.word.clone())], &rows)?;
            let unit = matrix_unit(dim, factors, &w.units).select_rows(&rows).select_cols(&rows);
            Ok(WitnessResidual { family: w.family, indices: w.indices.clone(), residual: op_norm(&got.sub(&unit)) })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(WitnessReport { word: name, checked: entries.len(), max_deviation, entries })
}

/// Line and half-line sizes of the embedding model.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    pub line_radius: usize,
    pub half_dim: usize,
    pub rep: Representation,
}

/// The embedding into `C(S¹) ⊗ C(S¹) ⊗ T^{⊗3}` in symbolic form.
pub fn phi_symbolic() -> Result<SymbolicRep> {
    let one = Complex64::new(1.0, 0.0);
    let base = canonical_symbolic(one, one, &ReducedWord::parse(2, "s1s2s1")?)?;
    Ok(base.with_row_prefix(|i| match i {
        1 => vec![Sym::U, Sym::One],
        2 => vec![Sym::Ud, Sym::U],
        _ => vec![Sym::One, Sym::Ud],
    }))
}

/// `φ` realized on `Line(2M+1)² ⊗ HalfLine(N)³`.
pub fn phi_embedding(m: usize, n: usize) -> Result<EmbeddingModel> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!("embedding needs M ≥ 2 and N ≥ 2, got M = {m}, N = {n}")));
    }
    let rep = phi_symbolic()?.realize(n, 2 * m + 1)?;
    Ok(EmbeddingModel { line_radius: m, half_dim: n, rep })
}

/// Which half-line factors `θ_τ` keeps.
pub fn theta_keeps(word: &ReducedWord) -> Result<[bool; 3]> {
    check_rank_two(word)?;
    Ok(match word.letters() {
        [] => [false, false, false],
        [1] => [true, false, false],
        [2] => [false, true, false],
        [1, 2] => [true, true, false],
        [2, 1] => [false, true, true],
        [1, 2, 1] => [true, true, true],
        other => return Err(Error::InvalidWord(format!("unexpected rank-two word {other:?}"))),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub word: String,
    pub lambda: Complex64,
    pub mu: Complex64,
    /// Largest entrywise difference over all generators.
    pub max_entry_difference: f64,
    pub exact: bool,
}

/// `(ev_λ ⊗ ev_μ ⊗ θ_τ) ∘ φ`, applied to the symbolic blocks and compared
/// with the canonical model entrywise at `dim`.
pub fn theta_factorize(lambda: Complex64, mu: Complex64, word: &ReducedWord, dim: usize) -> Result<ThetaReport> {
    let keeps = theta_keeps(word)?;
    let one = Complex64::new(1.0, 0.0);
    let mut at = vec![Some(lambda), Some(mu)];
    at.extend(keeps.iter().map(|&k| if k { None } else { Some(one) }));
    let factored = phi_symbolic()?.evaluate(&at)?.realize(dim, dim)?;
    let canonical = canonical_model(lambda, mu, word, dim)?.rep;
    if factored.shape() != canonical.shape() {
        return Err(Error::ShapeMismatch("factorisation lands on a different space".into()));
    }
    let mut diff: f64 = 0.0;
    for (a, b) in factored.gens.gens().iter().zip(canonical.gens.gens()) {
        diff = diff.max(a.csr().sub(b.csr()).max_abs());
    }
    Ok(ThetaReport { word: word.to_string(), lambda, mu, max_entry_difference: diff, exact: diff == 0.0 })
}

/// `N`-th roots of unity, starting at 1.
pub fn roots_of_unity(count: usize) -> Vec<Complex64> {
    (0..count).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / count as f64)).collect()
}

/// `max_λ |λ² − c|` where `c` is the value of `p` under `z[i,j] ↦ δ_ij`.
pub fn toeplitz_gap(p: &StarPolynomial, sample: &[Complex64]) -> Result<f64> {
    if p.max_index() > 3 {
        return Err(Error::IndexOutOfRange { i: p.max_index(), j: p.max_index(), n: 2 });
    }
    if sample.is_empty() {
        return Err(Error::InvalidParameter("empty phase sample".into()));
    }
    let c = p.eval_scalar(&|i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
    Ok(sample.iter().map(|l| (l * l - c).norm()).fold(0.0, f64::max))
}

/// [`toeplitz_gap`] on a parsed expression.
pub fn toeplitz_gap_demo(text: &str, sample: &[Complex64]) -> Result<f64> {
    toeplitz_gap(&parse_star_poly(text)?, sample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{make_shift, rank_one_ground};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn s1_table() {
        let (l, m) = (c(0.0, 1.0), c(-1.0, 0.0));
        let model = canonical_model(l, m, &ReducedWord::parse(2, "s1").unwrap(), 5).unwrap();
        let s = make_shift(5).unwrap();
        let p0 = rank_one_ground(5).unwrap();
        assert_eq!(model.rep.get(1, 1), &s.scale(l));
        assert_eq!(model.rep.get(2, 2), &s.adjoint().scale(l.conj() * m));
        assert_eq!(model.rep.get(2, 1), &p0.scale(l.conj() * m));
        assert_eq!(model.rep.get(3, 1).csr().nnz(), 0);
    }

    #[test]
    fn gap_values() {
        let eighth = roots_of_unity(8);
        assert!((toeplitz_gap_demo("1", &eighth).unwrap() - 2.0).abs() < 1e-15);
        assert!((toeplitz_gap_demo("0", &eighth).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn witness_needs_a_nonempty_word() {
        let model = canonical_model(c(1.0, 0.0), c(1.0, 0.0), &ReducedWord::empty(2), 3).unwrap();
        assert!(irreducibility_witness(&model, 1, 0).is_err());
    }
}
