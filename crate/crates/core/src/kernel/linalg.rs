//! Norms and spectra of sparse operators.
//!
//! Both routines split the matrix into the connected components of its
//! row/column incidence graph first. A weighted shift on a tensor product of
//! truncated sequence spaces decomposes into many short chains, so the dense
//! factorizations only ever see small blocks.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::sparse::Csr;
use crate::error::{Error, Result};

/// Largest block (rows + columns) handed to a dense factorization.
pub const DENSE_BLOCK_LIMIT: usize = 3_000;

const POWER_MAX_ITERS: usize = 2_000;
const POWER_REL_TOL: f64 = 1e-14;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Row/column index sets of one connected component.
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Components of the bipartite graph rows ↔ columns given by the nonzeros.
/// Empty rows and columns are dropped. With `square` set, row `k` and column
/// `k` are the same vertex, which is what an eigenvalue problem needs.
pub fn components(m: &Csr, square: bool) -> Vec<Block> {
    let (nr, nc) = (m.nrows(), m.ncols());
    let offset = if square { 0 } else { nr };
    let mut uf = UnionFind::new(offset + nc.max(if square { nr } else { 0 }));
    let mut used_rows = vec![false; nr];
    let mut used_cols = vec![false; nc];
    for (r, c, _) in m.iter() {
        uf.union(r, offset + c);
        used_rows[r] = true;
        used_cols[c] = true;
    }
    let mut slot = vec![usize::MAX; uf.parent.len()];
    let mut blocks: Vec<Block> = Vec::new();
    let mut touch = |root: usize, blocks: &mut Vec<Block>| -> usize {
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
        }
        slot[root]
    };
    for r in (0..nr).filter(|&r| used_rows[r] || (square && used_cols[r])) {
        let root = uf.find(r);
        let b = touch(root, &mut blocks);
        blocks[b].rows.push(r);
    }
    for c in (0..nc).filter(|&c| used_cols[c] || (square && used_rows[c])) {
        let root = uf.find(offset + c);
        let b = touch(root, &mut blocks);
        blocks[b].cols.push(c);
    }
    blocks
}

fn dense_block(m: &Csr, b: &Block) -> DMatrix<Complex64> {
    let mut col_pos = std::collections::HashMap::with_capacity(b.cols.len());
    for (k, &c) in b.cols.iter().enumerate() {
        col_pos.insert(c, k);
    }
    let mut d = DMatrix::zeros(b.rows.len(), b.cols.len());
    for (kr, &r) in b.rows.iter().enumerate() {
        let (cols, vals) = m.row(r);
        for (c, v) in cols.iter().zip(vals) {
            if let Some(&kc) = col_pos.get(c) {
                d[(kr, kc)] = *v;
            }
        }
    }
    d
}

/// Largest singular value.
///
/// Blocks are visited in decreasing order of a cheap upper bound; a block
/// whose bound does not beat the best norm found so far cannot change the
/// maximum and is skipped.
pub fn op_norm(m: &Csr) -> f64 {
    if m.nnz() == 0 {
        return 0.0;
    }
    let blocks = components(m, false);
    let mut row_sq = vec![0.0; m.nrows()];
    let mut col_sq = vec![0.0; m.ncols()];
    let mut row_abs = vec![0.0; m.nrows()];
    let mut col_abs = vec![0.0; m.ncols()];
    for (r, c, v) in m.iter() {
        let a = v.norm();
        row_sq[r] += a * a;
        col_sq[c] += a * a;
        row_abs[r] += a;
        col_abs[c] += a;
    }
    let mut bounds: Vec<(f64, f64, usize)> = blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let frob: f64 = b.rows.iter().map(|&r| row_sq[r]).sum::<f64>().sqrt();
            let rmax = b.rows.iter().map(|&r| row_abs[r]).fold(0.0, f64::max);
            let cmax = b.cols.iter().map(|&c| col_abs[c]).fold(0.0, f64::max);
            let lower = b
                .rows
                .iter()
                .map(|&r| row_sq[r])
                .chain(b.cols.iter().map(|&c| col_sq[c]))
                .fold(0.0, f64::max)
                .sqrt();
            (frob.min((rmax * cmax).sqrt()), lower, k)
        })
        .collect();
    let mut best = bounds.iter().map(|b| b.1).fold(0.0, f64::max);
    bounds.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (upper, lower, k) in bounds {
        if upper <= best {
            break;
        }
        if upper <= lower * (1.0 + 1e-13) {
            best = best.max(lower);
            continue;
        }
        best = best.max(block_norm(m, &blocks[k]));
    }
    best
}

fn block_norm(m: &Csr, b: &Block) -> f64 {
    if b.rows.len() == 1 || b.cols.len() == 1 {
        // a single row or column: the Euclidean norm of its entries
        let sub = m.select_rows(&b.rows).select_cols(&b.cols);
        return sub.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    }
    if b.rows.len() + b.cols.len() <= DENSE_BLOCK_LIMIT {
        return dense_block(m, b).singular_values().max();
    }
    large_block_norm(&m.select_rows(&b.rows).select_cols(&b.cols))
}

/// Power iteration on `A*A`. If it fails to settle, the cheaper of the
/// Frobenius and Schur-test upper bounds is returned instead, so the result
/// never underestimates.
fn large_block_norm(a: &Csr) -> f64 {
    let frob = a.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mut row_sums = vec![0.0; a.nrows()];
    let mut col_sums = vec![0.0; a.ncols()];
    for (r, c, v) in a.iter() {
        row_sums[r] += v.norm();
        col_sums[c] += v.norm();
    }
    let schur = (row_sums.iter().cloned().fold(0.0, f64::max) * col_sums.iter().cloned().fold(0.0, f64::max)).sqrt();
    let upper = frob.min(schur);
    if upper == 0.0 {
        return 0.0;
    }
    let ah = a.adjoint();
    let mut x: Vec<Complex64> = (0..a.ncols())
        .map(|k| Complex64::new(1.0 + 0.37 * ((k as f64) * 0.7).sin(), 0.11 * ((k as f64) * 1.3).cos()))
        .collect();
    normalize(&mut x);
    let mut prev = 0.0;
    for _ in 0..POWER_MAX_ITERS {
        let y = a.apply(&x);
        let sigma = norm2(&y);
        if sigma == 0.0 {
            return upper;
        }
        let mut z = ah.apply(&y);
        normalize(&mut z);
        x = z;
        if (sigma - prev).abs() <= POWER_REL_TOL * sigma {
            return sigma;
        }
        prev = sigma;
    }
    upper
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm2(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
}

/// Eigenvalues of a normal matrix, clustered so that values within `tol` merge.
/// Each cluster is reported once per member, at the cluster mean.
pub fn spectrum_normal(m: &Csr, tol: f64) -> Result<Vec<Complex64>> {
    assert_eq!(m.nrows(), m.ncols());
    let mh = m.adjoint();
    let commutator = op_norm(&m.mul(&mh).sub(&mh.mul(m)));
    if commutator > tol {
        return Err(Error::NonNormalOperator { commutator_norm: commutator, tol });
    }
    let mut eig = Vec::with_capacity(m.nrows());
    let mut covered = vec![false; m.nrows()];
    for b in components(m, true) {
        if b.rows.len() > DENSE_BLOCK_LIMIT {
            return Err(Error::CapacityExceeded { requested: b.rows.len(), cap: DENSE_BLOCK_LIMIT });
        }
        for &r in &b.rows {
            covered[r] = true;
        }
        let block = dense_block(m, &Block { rows: b.rows.clone(), cols: b.rows.clone() });
        let (_, t) = Schur::new(block).unpack();
        eig.extend(t.diagonal().iter().copied());
    }
    eig.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), covered.iter().filter(|c| !**c).count()));
    Ok(cluster(eig, tol))
}

/// Greedy single-linkage clustering; output sorted by decreasing modulus,
/// then by argument.
pub fn cluster(mut values: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            if (values[a] - values[b]).norm() <= tol {
                let (la, lb) = (label[a], label[b]);
                if la != lb {
                    for l in label.iter_mut() {
                        if *l == lb {
                            *l = la;
                        }
                    }
                }
            }
        }
    }
    let mut sums = vec![(Complex64::new(0.0, 0.0), 0usize); n];
    for (k, &l) in label.iter().enumerate() {
        sums[l].0 += values[k];
        sums[l].1 += 1;
    }
    for (k, &l) in label.iter().enumerate() {
        values[k] = sums[l].0 / sums[l].1 as f64;
    }
    values.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.arg().partial_cmp(&b.arg()).unwrap_or(std::cmp::Ordering::Equal))
    });
    values
}

/// Distinct values of a clustered spectrum with multiplicities.
pub fn distinct(spectrum: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &v in spectrum {
        match out.iter_mut().find(|(w, _)| (*w - v).norm() <= tol) {
            Some(slot) => slot.1 += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_of_blocks_matches_dense() {
        let m = Csr::from_triplets(
            4,
            4,
            vec![(0, 1, c(3.0, 0.0)), (1, 0, c(0.0, 1.0)), (2, 3, c(1.0, 1.0)), (3, 3, c(-2.0, 0.0))],
        );
        let dense = m.to_dense().singular_values().max();
        assert!((op_norm(&m) - dense).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_agrees_with_svd() {
        let n = 40;
        let mut t = Vec::new();
        for k in 0..n {
            t.push((k, k, c(1.0 + k as f64 / n as f64, 0.0)));
            if k + 1 < n {
                t.push((k, k + 1, c(0.3, 0.1)));
            }
        }
        let m = Csr::from_triplets(n, n, t);
        let exact = m.to_dense().singular_values().max();
        assert!((large_block_norm(&m) - exact).abs() < 1e-9);
    }

    #[test]
    fn spectrum_of_rotated_projection() {
        let m = Csr::from_triplets(2, 2, vec![(0, 0, c(0.0, -1.0))]);
        let s = spectrum_normal(&m, 1e-8).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!(s[1].norm() < 1e-12);
    }

    #[test]
    fn non_normal_rejected() {
        let m = Csr::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0))]);
        assert!(matches!(spectrum_normal(&m, 1e-8), Err(Error::NonNormalOperator { .. })));
    }
}
