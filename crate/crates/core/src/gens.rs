//! Generator tables `(i, j) ↦ operator` and evaluation of noncommutative
//! monomials in the generators and their adjoints.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Csr, SpaceShape, TruncatedOperator};

/// One generator or its adjoint, 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub adjoint: bool,
}

impl Letter {
    pub fn gen(i: usize, j: usize) -> Self {
        Self { i, j, adjoint: false }
    }

    pub fn star(i: usize, j: usize) -> Self {
        Self { i, j, adjoint: true }
    }

    pub fn flipped(self) -> Self {
        Self { adjoint: !self.adjoint, ..self }
    }
}

/// `coeff · l_1 l_2 ⋯ l_k`; the empty word is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: Complex64,
    pub letters: Vec<Letter>,
}

impl Monomial {
    pub fn new(coeff: Complex64, letters: Vec<Letter>) -> Self {
        Self { coeff, letters }
    }

    pub fn unit(letters: Vec<Letter>) -> Self {
        Self { coeff: Complex64::new(1.0, 0.0), letters }
    }

    pub fn adjoint(&self) -> Self {
        Self { coeff: self.coeff.conj(), letters: self.letters.iter().rev().map(|l| l.flipped()).collect() }
    }
}

/// Merges monomials with equal words and drops zero coefficients.
pub fn collect(monomials: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(monomials.len());
    for m in monomials {
        match out.iter_mut().find(|o| o.letters == m.letters) {
            Some(o) => o.coeff += m.coeff,
            None => out.push(m),
        }
    }
    out.retain(|m| m.coeff != Complex64::new(0.0, 0.0));
    out
}

/// Sorts a sparse vector by index, sums duplicates and drops exact zeros.
fn merge(v: &mut Vec<(usize, Complex64)>) {
    if v.len() < 2 {
        v.retain(|e| e.1 != Complex64::new(0.0, 0.0));
        return;
    }
    v.sort_unstable_by_key(|e| e.0);
    let mut w = 0;
    for k in 0..v.len() {
        if w > 0 && v[w - 1].0 == v[k].0 {
            let x = v[k].1;
            v[w - 1].1 += x;
        } else {
            v[w] = v[k];
            w += 1;
        }
    }
    v.truncate(w);
    v.retain(|e| e.1 != Complex64::new(0.0, 0.0));
}

/// Spaces up to this size use a dense scratch row; larger ones sort.
const SPA_LIMIT: usize = 1 << 13;

/// Dense scratch row with a list of touched positions.
struct Spa {
    vals: Vec<Complex64>,
    seen: Vec<bool>,
    touched: Vec<usize>,
}

impl Spa {
    fn new(d: usize) -> Self {
        Self { vals: vec![Complex64::new(0.0, 0.0); d], seen: vec![false; d], touched: Vec::new() }
    }

    fn add(&mut self, c: usize, v: Complex64) {
        if !self.seen[c] {
            self.seen[c] = true;
            self.touched.push(c);
        }
        self.vals[c] += v;
    }

    /// Moves the nonzero entries into `out` and resets.
    fn drain_into(&mut self, out: &mut Vec<(usize, Complex64)>) {
        out.clear();
        for &c in &self.touched {
            let v = std::mem::replace(&mut self.vals[c], Complex64::new(0.0, 0.0));
            self.seen[c] = false;
            if v != Complex64::new(0.0, 0.0) {
                out.push((c, v));
            }
        }
        self.touched.clear();
    }
}

pub fn degree(monomials: &[Monomial]) -> usize {
    monomials.iter().map(|m| m.letters.len()).max().unwrap_or(0)
}

/// The `(n+1)²` generator images of a representation, all on one shape.
#[derive(Debug)]
pub struct GenTable {
    n: usize,
    shape: SpaceShape,
    gens: Vec<TruncatedOperator>,
    adj: Vec<OnceLock<TruncatedOperator>>,
}

impl Clone for GenTable {
    fn clone(&self) -> Self {
        Self::from_parts(self.n, self.shape.clone(), self.gens.clone())
    }
}

impl PartialEq for GenTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.shape == other.shape && self.gens == other.gens
    }
}

impl GenTable {
    fn from_parts(n: usize, shape: SpaceShape, gens: Vec<TruncatedOperator>) -> Self {
        let adj = (0..gens.len()).map(|_| OnceLock::new()).collect();
        Self { n, shape, gens, adj }
    }

    /// Row-major list of generators `z[1,1], z[1,2], …`.
    pub fn new(n: usize, shape: SpaceShape, gens: Vec<TruncatedOperator>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("rank n must be at least 1".into()));
        }
        if gens.len() != (n + 1) * (n + 1) {
            return Err(Error::MalformedRepresentation(format!(
                "expected {} generators for n = {n}, got {}",
                (n + 1) * (n + 1),
                gens.len()
            )));
        }
        for (k, g) in gens.iter().enumerate() {
            if g.shape() != &shape {
                return Err(Error::MalformedRepresentation(format!(
                    "generator z[{},{}] has shape {:?}, expected {:?}",
                    k / (n + 1) + 1,
                    k % (n + 1) + 1,
                    g.shape(),
                    shape
                )));
            }
        }
        Ok(Self::from_parts(n, shape, gens))
    }

    pub fn from_fn(n: usize, shape: SpaceShape, mut f: impl FnMut(usize, usize) -> Result<TruncatedOperator>) -> Result<Self> {
        let mut gens = Vec::with_capacity((n + 1) * (n + 1));
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                gens.push(f(i, j)?);
            }
        }
        Self::new(n, shape, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    pub fn gens(&self) -> &[TruncatedOperator] {
        &self.gens
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n + 1).contains(&i) && (1..=self.n + 1).contains(&j), "z[{i},{j}] out of range");
        (i - 1) * (self.n + 1) + (j - 1)
    }

    pub fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if (1..=self.n + 1).contains(&i) && (1..=self.n + 1).contains(&j) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { i, j, n: self.n })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedOperator {
        &self.gens[self.slot(i, j)]
    }

    pub fn adj(&self, i: usize, j: usize) -> &TruncatedOperator {
        let k = self.slot(i, j);
        self.adj[k].get_or_init(|| self.gens[k].adjoint())
    }

    pub fn letter(&self, l: Letter) -> &TruncatedOperator {
        if l.adjoint {
            self.adj(l.i, l.j)
        } else {
            self.get(l.i, l.j)
        }
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, &TruncatedOperator) -> Result<TruncatedOperator>) -> Result<Self> {
        let shape = self.shape.clone();
        let mut gens = Vec::with_capacity(self.gens.len());
        for i in 1..=self.n + 1 {
            for j in 1..=self.n + 1 {
                gens.push(f(i, j, self.get(i, j))?);
            }
        }
        let shape = gens.first().map(|g: &TruncatedOperator| g.shape().clone()).unwrap_or(shape);
        Self::new(self.n, shape, gens)
    }

    /// `(a ∗ b)(i, j) = Σ_{k ∈ range(i, j)} a(i, k) ⊗ b(k, j)`.
    pub fn convolve(
        &self,
        other: &GenTable,
        range: impl Fn(usize, usize) -> std::ops::RangeInclusive<usize>,
    ) -> Result<GenTable> {
        if self.n != other.n {
            return Err(Error::IncompatibleRepresentations(format!("ranks {} and {} differ", self.n, other.n)));
        }
        let shape = self.shape.concat(&other.shape);
        shape.check_capacity(crate::kernel::DEFAULT_CAPACITY)?;
        GenTable::from_fn(self.n, shape.clone(), |i, j| {
            let mut acc = TruncatedOperator::zeros(&shape);
            for k in range(i, j) {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.csr().nnz() == 0 || b.csr().nnz() == 0 {
                    continue;
                }
                acc = acc.add(&a.tensor(b)?)?;
            }
            Ok(acc)
        })
    }

    fn check_letters(&self, poly: &[Monomial]) -> Result<()> {
        for m in poly {
            for l in &m.letters {
                self.check_index(l.i, l.j)?;
            }
        }
        Ok(())
    }

    /// Full matrix of a polynomial.
    pub fn eval(&self, poly: &[Monomial]) -> Result<TruncatedOperator> {
        self.check_letters(poly)?;
        let d = self.shape.total_dim();
        let mut acc = Csr::zeros(d, d);
        for m in poly {
            let mut prod = match m.letters.first() {
                None => Csr::identity(d),
                Some(&l) => self.letter(l).csr().clone(),
            };
            for &l in m.letters.iter().skip(1) {
                prod = prod.mul(self.letter(l).csr());
            }
            acc = acc.axpby(Complex64::new(1.0, 0.0), &prod, m.coeff);
        }
        TruncatedOperator::new(self.shape.clone(), acc)
    }

    /// `C p C` on the interior positions `rows` (increasing), computed one
    /// row at a time.
    pub fn eval_compressed(&self, poly: &[Monomial], rows: &[usize]) -> Result<Csr> {
        self.check_letters(poly)?;
        let d = self.shape.total_dim();
        let mut pos = vec![usize::MAX; d];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let factors: Vec<(Complex64, Vec<&Csr>)> = poly
            .iter()
            .map(|m| (m.coeff, m.letters.iter().map(|&l| self.letter(l).csr()).collect()))
            .collect();
        let dense = d <= SPA_LIMIT;
        let scratch = if dense { d } else { 0 };
        let mut acc = Spa::new(scratch);
        let mut step = Spa::new(scratch);
        let mut cur: Vec<(usize, Complex64)> = Vec::new();
        let mut next: Vec<(usize, Complex64)> = Vec::new();
        let mut total: Vec<(usize, Complex64)> = Vec::new();
        let mut out = Csr::zeros(0, rows.len());
        for &r in rows {
            for (coeff, ops) in &factors {
                cur.clear();
                cur.push((r, *coeff));
                for op in ops {
                    if dense {
                        for &(c, v) in &cur {
                            let (cols, vals) = op.row(c);
                            for (&c2, &w) in cols.iter().zip(vals) {
                                step.add(c2, v * w);
                            }
                        }
                        step.drain_into(&mut cur);
                    } else {
                        next.clear();
                        for &(c, v) in &cur {
                            let (cols, vals) = op.row(c);
                            next.extend(cols.iter().zip(vals).map(|(&c2, &w)| (c2, v * w)));
                        }
                        merge(&mut next);
                        std::mem::swap(&mut cur, &mut next);
                    }
                    if cur.is_empty() {
                        break;
                    }
                }
                if dense {
                    for &(c, v) in &cur {
                        acc.add(c, v);
                    }
                } else {
                    total.extend_from_slice(&cur);
                }
            }
            if dense {
                acc.drain_into(&mut cur);
            } else {
                merge(&mut total);
                std::mem::swap(&mut cur, &mut total);
                total.clear();
            }
            cur.retain_mut(|e| {
                e.0 = pos[e.0];
                e.0 != usize::MAX
            });
            out.push_row(&mut cur);
        }
        Ok(out)
    }

    /// Interior operator norm of a polynomial at `margin`.
    pub fn interior_norm(&self, poly: &[Monomial], margin: usize) -> Result<f64> {
        let rows = self.shape.interior(margin)?;
        Ok(crate::kernel::linalg::op_norm(&self.eval_compressed(poly, &rows)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{make_shift, rank_one_ground};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn toy() -> GenTable {
        // n = 1 table with z11 = S, z12 = z21 = P0, z22 = S*
        let s = make_shift(6).unwrap();
        let p = rank_one_ground(6).unwrap();
        GenTable::new(1, s.shape().clone(), vec![s.clone(), p.clone(), p, s.adjoint()]).unwrap()
    }

    #[test]
    fn compressed_matches_full_evaluation() {
        let t = toy();
        let poly = vec![
            Monomial::unit(vec![Letter::gen(1, 1), Letter::star(1, 1)]),
            Monomial::new(c(-1.0), vec![]),
        ];
        assert_eq!(t.interior_norm(&poly, 1).unwrap(), 0.0);
        let full = t.eval(&poly).unwrap();
        assert_eq!(full.op_norm(), 1.0);
        let poly2 = vec![
            Monomial::unit(vec![Letter::star(1, 1), Letter::gen(1, 1)]),
            Monomial::unit(vec![Letter::star(2, 1), Letter::gen(2, 1)]),
            Monomial::new(c(-1.0), vec![]),
        ];
        assert_eq!(t.interior_norm(&poly2, 0).unwrap(), 0.0);
        assert_eq!(t.eval(&poly2).unwrap().op_norm(), 0.0);
    }

    #[test]
    fn collect_cancels() {
        let m = vec![
            Monomial::unit(vec![Letter::gen(1, 2)]),
            Monomial::new(c(-1.0), vec![Letter::gen(1, 2)]),
            Monomial::unit(vec![]),
        ];
        let out = collect(m);
        assert_eq!(out.len(), 1);
        assert!(out[0].letters.is_empty());
    }

    #[test]
    fn out_of_range_letter_is_an_error() {
        let t = toy();
        let poly = vec![Monomial::unit(vec![Letter::gen(3, 1)])];
        assert_eq!(t.eval(&poly), Err(Error::IndexOutOfRange { i: 3, j: 1, n: 1 }));
    }

    #[test]
    fn wrong_generator_count_rejected() {
        let s = make_shift(3).unwrap();
        assert!(matches!(
            GenTable::new(1, s.shape().clone(), vec![s.clone()]),
            Err(Error::MalformedRepresentation(_))
        ));
    }
}
