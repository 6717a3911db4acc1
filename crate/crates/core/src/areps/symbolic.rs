//! Generator images as formal sums of tensor words in the Toeplitz and
//! circle symbols, so that characters can be applied exactly.

use std::fmt;

use num_complex::Complex64;

use crate::azero::Representation;
use crate::error::{Error, Result};
use crate::gens::GenTable;
use crate::kernel::{
    half_identity, line_identity, make_bilateral_shift, make_shift, rank_one_ground, FactorKind, FactorSpec,
    SpaceShape, TruncatedOperator, DEFAULT_CAPACITY,
};
use crate::qrep::rep::{check_phase, diagonal_phases};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    /// Identity on a half-line factor.
    I,
    S,
    Sd,
    P0,
    /// Identity on a line factor.
    One,
    U,
    Ud,
}

impl Sym {
    pub fn kind(self) -> FactorKind {
        match self {
            Sym::I | Sym::S | Sym::Sd | Sym::P0 => FactorKind::HalfLine,
            Sym::One | Sym::U | Sym::Ud => FactorKind::Line,
        }
    }

    /// Value under the character that sends the shift symbol to `x`.
    pub fn at(self, x: Complex64) -> Complex64 {
        match self {
            Sym::I | Sym::One => Complex64::new(1.0, 0.0),
            Sym::S | Sym::U => x,
            Sym::Sd | Sym::Ud => x.conj(),
            Sym::P0 => Complex64::new(0.0, 0.0),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Sym::I => "I",
            Sym::S => "S",
            Sym::Sd => "S*",
            Sym::P0 => "P0",
            Sym::One => "1",
            Sym::U => "u",
            Sym::Ud => "u*",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub factors: Vec<Sym>,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}i)", self.coeff.re, self.coeff.im)?;
        for s in &self.factors {
            write!(f, " {}", s.name())?;
        }
        Ok(())
    }
}

/// A representation whose generator images are sums of [`Term`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicRep {
    pub n: usize,
    pub kinds: Vec<FactorKind>,
    /// Row-major, `(n + 1)²` entries.
    pub gens: Vec<Vec<Term>>,
}

fn simplify(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| a.factors.cmp(&b.factors));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.factors == t.factors => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
    out
}

impl SymbolicRep {
    pub fn get(&self, i: usize, j: usize) -> &[Term] {
        &self.gens[(i - 1) * (self.n + 1) + (j - 1)]
    }

    /// The phase character on the one-dimensional space.
    pub fn character(n: usize, phases: &[Complex64]) -> Result<Self> {
        if n == 0 || phases.len() != n {
            return Err(Error::InvalidParameter(format!("expected {n} phases, got {}", phases.len())));
        }
        for &z in phases {
            check_phase(z)?;
        }
        let diag = diagonal_phases(phases);
        let m = n + 1;
        let gens = (0..m * m)
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                if i == j {
                    vec![Term { coeff: diag[i], factors: Vec::new() }]
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok(Self { n, kinds: Vec::new(), gens })
    }

    /// The q = 0 block of the letter `s_k`.
    pub fn elementary(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidWord(format!("letter s{k} is outside s1..s{n}")));
        }
        let m = n + 1;
        let one = Complex64::new(1.0, 0.0);
        let term = |s: Sym| vec![Term { coeff: one, factors: vec![s] }];
        let gens = (0..m * m)
            .map(|idx| {
                let (i, j) = (idx / m + 1, idx % m + 1);
                match (i, j) {
                    _ if i == k && j == k => term(Sym::S),
                    _ if i == k + 1 && j == k + 1 => term(Sym::Sd),
                    _ if (i == k && j == k + 1) || (i == k + 1 && j == k) => term(Sym::P0),
                    _ if i == j => term(Sym::I),
                    _ => Vec::new(),
                }
            })
            .collect();
        Ok(Self { n, kinds: vec![FactorKind::HalfLine], gens })
    }

    /// Crystal convolution, summing `k` over `[i∧j, i∨j]`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::IncompatibleRepresentations(format!("ranks {} and {} differ", self.n, other.n)));
        }
        let m = self.n + 1;
        let mut gens = Vec::with_capacity(m * m);
        for i in 1..=m {
            for j in 1..=m {
                let mut terms = Vec::new();
                for k in i.min(j)..=i.max(j) {
                    for a in self.get(i, k) {
                        for b in other.get(k, j) {
                            let mut factors = a.factors.clone();
                            factors.extend_from_slice(&b.factors);
                            terms.push(Term { coeff: a.coeff * b.coeff, factors });
                        }
                    }
                }
                gens.push(simplify(terms));
            }
        }
        let mut kinds = self.kinds.clone();
        kinds.extend_from_slice(&other.kinds);
        Ok(Self { n: self.n, kinds, gens })
    }

    /// Multiplies row `i` by `prefix(i)` on new leading factors.
    pub fn with_row_prefix(&self, prefix: impl Fn(usize) -> Vec<Sym>) -> Self {
        let m = self.n + 1;
        let gens = self
            .gens
            .iter()
            .enumerate()
            .map(|(idx, terms)| {
                let pre = prefix(idx / m + 1);
                terms
                    .iter()
                    .map(|t| {
                        let mut factors = pre.clone();
                        factors.extend_from_slice(&t.factors);
                        Term { coeff: t.coeff, factors }
                    })
                    .collect()
            })
            .collect();
        let first = prefix(1);
        let mut kinds: Vec<FactorKind> = first.iter().map(|s| s.kind()).collect();
        kinds.extend_from_slice(&self.kinds);
        Self { n: self.n, kinds, gens }
    }

    /// Applies a character on every factor with `Some(x)`; those factors
    /// disappear.
    pub fn evaluate(&self, at: &[Option<Complex64>]) -> Result<Self> {
        if at.len() != self.kinds.len() {
            return Err(Error::ShapeMismatch(format!("{} evaluations for {} factors", at.len(), self.kinds.len())));
        }
        let gens = self
            .gens
            .iter()
            .map(|terms| {
                simplify(
                    terms
                        .iter()
                        .map(|t| {
                            let mut coeff = t.coeff;
                            let mut factors = Vec::new();
                            for (s, x) in t.factors.iter().zip(at) {
                                match x {
                                    Some(x) => coeff = s.at(*x) * coeff,
                                    None => factors.push(*s),
                                }
                            }
                            Term { coeff, factors }
                        })
                        .collect(),
                )
            })
            .collect();
        let kinds = self.kinds.iter().zip(at).filter(|(_, x)| x.is_none()).map(|(k, _)| *k).collect();
        Ok(Self { n: self.n, kinds, gens })
    }

    pub fn shape(&self, half_dim: usize, line_dim: usize) -> Result<SpaceShape> {
        let factors = self
            .kinds
            .iter()
            .map(|k| match k {
                FactorKind::HalfLine => FactorSpec::half(half_dim),
                FactorKind::Line => FactorSpec::line(line_dim),
            })
            .collect::<Result<Vec<_>>>()?;
        SpaceShape::new(factors)
    }

    /// Matrices with half-line factors of size `half_dim` and line factors
    /// of size `line_dim`.
    pub fn realize(&self, half_dim: usize, line_dim: usize) -> Result<Representation> {
        let shape = self.shape(half_dim, line_dim)?;
        shape.check_capacity(DEFAULT_CAPACITY)?;
        let s = make_shift(half_dim)?;
        let ops = [
            (Sym::I, half_identity(half_dim)?),
            (Sym::S, s.clone()),
            (Sym::Sd, s.adjoint()),
            (Sym::P0, rank_one_ground(half_dim)?),
            (Sym::One, line_identity(line_dim)?),
            (Sym::U, make_bilateral_shift(line_dim)?),
            (Sym::Ud, make_bilateral_shift(line_dim)?.adjoint()),
        ];
        let op = |s: Sym| &ops.iter().find(|(t, _)| *t == s).expect("every symbol has an operator").1;
        let gens = GenTable::from_fn(self.n, shape.clone(), |i, j| {
            let mut acc = TruncatedOperator::zeros(&shape);
            for t in self.get(i, j) {
                let mut prod = TruncatedOperator::scalar(t.coeff);
                for &s in &t.factors {
                    prod = prod.tensor(op(s))?;
                }
                acc = acc.add(&prod)?;
            }
            Ok(acc)
        })?;
        Ok(Representation::new(gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_evaluation_collapses_factors() {
        let one = Complex64::new(1.0, 0.0);
        let r = SymbolicRep::elementary(1, 1).unwrap();
        let e = r.evaluate(&[Some(one)]).unwrap();
        assert!(e.kinds.is_empty());
        assert!(e.get(1, 2).is_empty());
        assert_eq!(e.get(1, 1), &[Term { coeff: one, factors: vec![] }]);
    }
}
