//! The rescaled q → 0 limit of the q-representations and the q = 0
//! convolution of generator tables.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::azero::{relation_catalog, Representation};
use crate::error::{Error, Result};
use crate::gens::GenTable;
use crate::kernel::{make_shift, rank_one_ground, SpaceShape, TruncatedOperator};
use crate::qrep::{build_qrep, rep::check_phase, rep::diagonal_phases, QRepresentation, ReducedWord};
use crate::relations::{check, RelationReport};

/// Margin used when comparing rescaled generators with their limits.
pub const SCAN_MARGIN: usize = 1;

/// `(−q)^{min(i−j, 0)}`.
pub fn rescale_factor(i: usize, j: usize, q: f64) -> Complex64 {
    let e = (i as i64 - j as i64).min(0) as i32;
    Complex64::new((-q).powi(e), 0.0)
}

/// `Z[i,j] = rescale_factor(i, j, q) · t[i,j]`.
pub fn rescaled_gens(r: &QRepresentation) -> Result<Representation> {
    let q = r.q.ok_or_else(|| Error::InvalidParameter("representation carries no q".into()))?;
    let gens = r.gens.map(|i, j, g| Ok(g.scale(rescale_factor(i, j, q))))?;
    Ok(Representation::with_meta(gens, r.phases.clone(), r.word.clone()))
}

/// The phase character at q = 0 on the one-dimensional space.
pub fn crystal_character(n: usize, phases: &[Complex64]) -> Result<Representation> {
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
    Ok(Representation::with_meta(gens, phases.to_vec(), Vec::new()))
}

/// The q = 0 block for the letter `s_k`: `z[k,k] = S`, `z[k+1,k+1] = S*`,
/// `z[k,k+1] = z[k+1,k] = P_0`, identity on the other diagonal entries.
pub fn crystal_elementary(n: usize, k: usize, dim: usize) -> Result<Representation> {
    if k == 0 || k > n {
        return Err(Error::InvalidWord(format!("letter s{k} is outside s1..s{n}")));
    }
    let s = make_shift(dim)?;
    let p0 = rank_one_ground(dim)?;
    let shape = s.shape().clone();
    let gens = GenTable::from_fn(n, shape.clone(), |i, j| {
        Ok(match (i, j) {
            _ if i == k && j == k => s.clone(),
            _ if i == k + 1 && j == k + 1 => s.adjoint(),
            _ if (i == k && j == k + 1) || (i == k + 1 && j == k) => p0.clone(),
            _ if i == j => TruncatedOperator::identity(&shape),
            _ => TruncatedOperator::zeros(&shape),
        })
    })?;
    Ok(Representation::with_meta(gens, Vec::new(), vec![k]))
}

/// `(a ∗ b)(z[i,j]) = Σ_{k = i∧j}^{i∨j} a(z[i,k]) ⊗ b(z[k,j])`.
pub fn crystal_convolve(a: &Representation, b: &Representation) -> Result<Representation> {
    let gens = a.gens.convolve(&b.gens, |i, j| i.min(j)..=i.max(j))?;
    let meta = match (&a.meta, &b.meta) {
        (None, None) => None,
        (x, y) => {
            let phases = [x, y]
                .iter()
                .filter_map(|m| m.as_ref())
                .map(|m| m.phases.clone())
                .find(|p| !p.is_empty())
                .unwrap_or_default();
            let word = [x, y].iter().filter_map(|m| m.as_ref()).flat_map(|m| m.word.clone()).collect();
            Some(crate::azero::Meta { phases, word })
        }
    };
    Ok(Representation { gens, meta })
}

/// The q = 0 representation `χ_λ ∗ ψ_{s_{k_1}} ∗ ⋯` with every factor
/// truncated to `dim`.
pub fn crystal_gens_limit(n: usize, phases: &[Complex64], word: &ReducedWord, dim: usize) -> Result<Representation> {
    if word.n() != n {
        return Err(Error::InvalidWord(format!("word is for rank {}, expected {n}", word.n())));
    }
    let mut rep = crystal_character(n, phases)?;
    for &k in word.letters() {
        rep = crystal_convolve(&rep, &crystal_elementary(n, k, dim)?)?;
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitScanReport {
    pub q: Vec<f64>,
    pub deviation: Vec<f64>,
    /// `deviation[k+1] / deviation[k]`, 0 where the ratio is undefined.
    pub slope: Vec<f64>,
    pub verdict: Verdict,
}

/// `2^{-1}, …, 2^{-steps}`.
pub fn dyadic_grid(steps: u32) -> Vec<f64> {
    (1..=steps as i32).map(|k| 2f64.powi(-k)).collect()
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty q grid".into()));
    }
    if grid.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err(Error::InvalidParameter("q grid must lie in (0, 1)".into()));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("q grid must be strictly decreasing".into()));
    }
    Ok(())
}

/// Max over generators of the interior distance between two tables.
pub fn table_deviation(a: &GenTable, b: &GenTable, margin: usize) -> Result<f64> {
    let rows = a.shape().interior(margin)?;
    let mut worst: f64 = 0.0;
    for (x, y) in a.gens().iter().zip(b.gens()) {
        let d = x.csr().sub(y.csr()).select_rows(&rows).select_cols(&rows);
        worst = worst.max(crate::kernel::linalg::op_norm(&d));
    }
    Ok(worst)
}

/// Deviation of the rescaled q-generators from the q = 0 model along a
/// decreasing q grid.
pub fn limit_scan(
    n: usize,
    phases: &[Complex64],
    word: &ReducedWord,
    dim: usize,
    q_grid: &[f64],
) -> Result<LimitScanReport> {
    validate_grid(q_grid)?;
    let limit = crystal_gens_limit(n, phases, word, dim)?;
    let deviation = q_grid
        .par_iter()
        .map(|&q| {
            let z = rescaled_gens(&build_qrep(n, phases, word, q, dim)?)?;
            table_deviation(&z.gens, &limit.gens, SCAN_MARGIN)
        })
        .collect::<Result<Vec<_>>>()?;
    let slope = deviation.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 }).collect();
    let decreasing = deviation.windows(2).all(|w| w[1] < w[0] || (w[0] <= 1e-15 && w[1] <= 1e-15));
    let q_min = q_grid[q_grid.len() - 1];
    let last = deviation[deviation.len() - 1];
    let verdict = if decreasing && last < 2.0 * q_min { Verdict::Converged } else { Verdict::Inconclusive };
    Ok(LimitScanReport { q: q_grid.to_vec(), deviation, slope, verdict })
}

/// The crystallised commutation relations and the diagonal product
/// identity, evaluated on any generator table.
pub fn check_y_relations(r: &Representation, tol: f64, margin: usize) -> Result<RelationReport> {
    const IDS: [&str; 7] = ["comm-z1", "comm-z2", "comm-z3", "comm-z4", "comm-z5", "comm-z6", "comm-z7a"];
    let rels: Vec<_> = relation_catalog(r.n()).into_iter().filter(|x| IDS.contains(&x.id.as_str())).collect();
    check(&r.gens, &rels, tol, margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factors() {
        assert_eq!(rescale_factor(2, 1, 0.3), c(1.0, 0.0));
        assert_eq!(rescale_factor(1, 3, 0.5), c(4.0, 0.0));
        assert_eq!(rescale_factor(1, 2, 0.5), c(-2.0, 0.0));
    }

    #[test]
    fn s1_limit_blocks() {
        let (l, m) = (c(0.0, 1.0), c(-1.0, 0.0));
        let w = ReducedWord::parse(2, "s1").unwrap();
        let r = crystal_gens_limit(2, &[l, m], &w, 4).unwrap();
        let p0 = rank_one_ground(4).unwrap();
        assert_eq!(r.get(2, 1), &p0.scale(l.conj() * m));
        assert_eq!(r.get(1, 2), &p0.scale(l));
        assert_eq!(r.get(1, 1), &make_shift(4).unwrap().scale(l));
    }

    #[test]
    fn s1_deviation_is_q() {
        let w = ReducedWord::parse(2, "s1").unwrap();
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        let rep = limit_scan(2, &one, &w, 8, &[0.1, 0.01]).unwrap();
        assert!((rep.deviation[0] - 0.1).abs() < 1e-9);
        assert!((rep.deviation[1] - 0.01).abs() < 1e-9);
        assert_eq!(rep.verdict, Verdict::Converged);
        assert!(limit_scan(2, &one, &w, 8, &[]).is_err());
        assert!(limit_scan(2, &one, &w, 8, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn empty_word_has_no_deviation() {
        let one = [c(1.0, 0.0), c(0.0, 1.0)];
        let rep = limit_scan(2, &one, &ReducedWord::empty(2), 4, &dyadic_grid(4)).unwrap();
        assert!(rep.deviation.iter().all(|&d| d == 0.0));
        assert_eq!(rep.verdict, Verdict::Converged);
    }

    #[test]
    fn limit_model_satisfies_crystal_relations() {
        let w = ReducedWord::parse(2, "s1s2s1").unwrap();
        let r = crystal_gens_limit(2, &[c(1.0, 0.0), c(1.0, 0.0)], &w, 6).unwrap();
        let rep = check_y_relations(&r, 1e-12, 4).unwrap();
        assert!(rep.pass, "{:?}", rep.worst());
    }
}
