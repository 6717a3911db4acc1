//! Compressed sparse row storage for complex matrices.
//!
//! Every operator the workbench builds is a short sum of tensor products of
//! weighted shifts, so rows carry only a handful of entries even on spaces
//! with hundreds of thousands of basis vectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Csr {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
}

impl Csr {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, indptr: vec![0; nrows + 1], indices: Vec::new(), data: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut out = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            if v != ZERO {
                out.indices.push(i);
                out.data.push(v);
            }
            out.indptr[i + 1] = out.indices.len();
        }
        out
    }

    /// Builds from unordered `(row, col, value)` triplets; duplicates are summed
    /// and exact zeros dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, mut trips: Vec<(usize, usize, Complex64)>) -> Self {
        trips.sort_by_key(|&(r, c, _)| (r, c));
        let mut out = Self::zeros(nrows, ncols);
        let mut row = 0;
        let mut k = 0;
        while k < trips.len() {
            let (r, c, mut v) = trips[k];
            debug_assert!(r < nrows && c < ncols);
            k += 1;
            while k < trips.len() && trips[k].0 == r && trips[k].1 == c {
                v += trips[k].2;
                k += 1;
            }
            while row < r {
                row += 1;
                out.indptr[row] = out.indices.len();
            }
            if v != ZERO {
                out.indices.push(c);
                out.data.push(v);
            }
        }
        while row < nrows {
            row += 1;
            out.indptr[row] = out.indices.len();
        }
        out
    }

    /// Appends a row given as unordered `(col, value)` pairs with distinct
    /// columns; the pairs are sorted in place.
    pub fn push_row(&mut self, entries: &mut [(usize, Complex64)]) {
        entries.sort_unstable_by_key(|e| e.0);
        for &(c, v) in entries.iter() {
            debug_assert!(c < self.ncols);
            if v != ZERO {
                self.indices.push(c);
                self.data.push(v);
            }
        }
        self.nrows += 1;
        self.indptr.push(self.indices.len());
    }

    pub fn from_dense(m: &DMatrix<Complex64>) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                if v != ZERO {
                    out.indices.push(c);
                    out.data.push(v);
                }
            }
            out.indptr[r + 1] = out.indices.len();
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[Complex64]) {
        let span = self.indptr[r]..self.indptr[r + 1];
        (&self.indices[span.clone()], &self.data[span])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(k) => vals[k],
            Err(_) => ZERO,
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == ZERO {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// `alpha * self + beta * other`.
    pub fn axpby(&self, alpha: Complex64, other: &Csr, beta: Complex64) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = Self::zeros(self.nrows, self.ncols);
        out.indices.reserve(self.nnz() + other.nnz());
        out.data.reserve(self.nnz() + other.nnz());
        for r in 0..self.nrows {
            let (ac, av) = self.row(r);
            let (bc, bv) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < ac.len() || j < bc.len() {
                let (c, v) = if j == bc.len() || (i < ac.len() && ac[i] < bc[j]) {
                    i += 1;
                    (ac[i - 1], alpha * av[i - 1])
                } else if i == ac.len() || bc[j] < ac[i] {
                    j += 1;
                    (bc[j - 1], beta * bv[j - 1])
                } else {
                    i += 1;
                    j += 1;
                    (ac[i - 1], alpha * av[i - 1] + beta * bv[j - 1])
                };
                if v != ZERO {
                    out.indices.push(c);
                    out.data.push(v);
                }
            }
            out.indptr[r + 1] = out.indices.len();
        }
        out
    }

    pub fn add(&self, other: &Csr) -> Self {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Csr) -> Self {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    pub fn mul(&self, other: &Csr) -> Self {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let mut out = Self::zeros(self.nrows, other.ncols);
        let mut acc = vec![ZERO; other.ncols];
        let mut seen = vec![false; other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.nrows {
            let (ac, av) = self.row(r);
            for (&k, &a) in ac.iter().zip(av) {
                let (bc, bv) = other.row(k);
                for (&c, &b) in bc.iter().zip(bv) {
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                let v = acc[c];
                if v != ZERO {
                    out.indices.push(c);
                    out.data.push(v);
                }
                acc[c] = ZERO;
                seen[c] = false;
            }
            touched.clear();
            out.indptr[r + 1] = out.indices.len();
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for k in 0..self.ncols {
            counts[k + 1] += counts[k];
        }
        let mut next = counts.clone();
        let mut indices = vec![0; self.nnz()];
        let mut data = vec![ZERO; self.nnz()];
        for (r, c, v) in self.iter() {
            let slot = next[c];
            indices[slot] = r;
            data[slot] = v.conj();
            next[c] += 1;
        }
        Self { nrows: self.ncols, ncols: self.nrows, indptr: counts, indices, data }
    }

    /// Kronecker product in lexicographic order (`other` varies fastest).
    pub fn kron(&self, other: &Csr) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut out = Self::zeros(nrows, ncols);
        out.indices.reserve(self.nnz() * other.nnz());
        out.data.reserve(self.nnz() * other.nnz());
        for ra in 0..self.nrows {
            let (ac, av) = self.row(ra);
            for rb in 0..other.nrows {
                let (bc, bv) = other.row(rb);
                for (&ca, &a) in ac.iter().zip(av) {
                    for (&cb, &b) in bc.iter().zip(bv) {
                        let v = a * b;
                        if v != ZERO {
                            out.indices.push(ca * other.ncols + cb);
                            out.data.push(v);
                        }
                    }
                }
                out.indptr[ra * other.nrows + rb + 1] = out.indices.len();
            }
        }
        out
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), self.ncols);
        for (k, &r) in rows.iter().enumerate() {
            let (cols, vals) = self.row(r);
            out.indices.extend_from_slice(cols);
            out.data.extend_from_slice(vals);
            out.indptr[k + 1] = out.indices.len();
        }
        out
    }

    /// Keeps the listed columns (which must be increasing) and renumbers them.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            map[c] = k;
        }
        let mut out = Self::zeros(self.nrows, cols.len());
        for r in 0..self.nrows {
            let (cs, vs) = self.row(r);
            for (&c, &v) in cs.iter().zip(vs) {
                if map[c] != usize::MAX {
                    out.indices.push(map[c]);
                    out.data.push(v);
                }
            }
            out.indptr[r + 1] = out.indices.len();
        }
        out
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.ncols);
        (0..self.nrows)
            .map(|r| {
                let (cs, vs) = self.row(r);
                cs.iter().zip(vs).map(|(&c, &v)| v * x[c]).sum()
            })
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Drops entries with modulus at or below `threshold`.
    pub fn prune(&self, threshold: f64) -> Self {
        let mut out = Self::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            let (cs, vs) = self.row(r);
            for (&c, &v) in cs.iter().zip(vs) {
                if v.norm() > threshold {
                    out.indices.push(c);
                    out.data.push(v);
                }
            }
            out.indptr[r + 1] = out.indices.len();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> Csr {
        Csr::from_triplets(
            3,
            2,
            vec![(0, 1, c(1.0, 2.0)), (2, 0, c(-3.0, 0.0)), (0, 1, c(1.0, 0.0)), (1, 1, c(0.0, 0.0))],
        )
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = sample();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 1), c(2.0, 2.0));
        assert_eq!(m.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn products_match_dense() {
        let a = sample();
        let b = Csr::from_triplets(2, 3, vec![(0, 0, c(1.0, 1.0)), (1, 2, c(0.5, 0.0)), (1, 0, c(2.0, 0.0))]);
        assert_eq!(a.mul(&b).to_dense(), a.to_dense() * b.to_dense());
        assert_eq!(a.kron(&b).to_dense(), a.to_dense().kronecker(&b.to_dense()));
        assert_eq!(a.adjoint().to_dense(), a.to_dense().adjoint());
    }

    #[test]
    fn row_and_column_selection() {
        let a = sample();
        let s = a.select_rows(&[2, 0]).select_cols(&[1]);
        assert_eq!(s.nrows(), 2);
        assert_eq!(s.ncols(), 1);
        assert_eq!(s.get(1, 0), c(2.0, 2.0));
        assert_eq!(s.get(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn axpby_cancels_exactly() {
        let a = sample();
        assert_eq!(a.sub(&a).nnz(), 0);
    }
}
