//! Case split and phase extraction for irreducible representations of the
//! rank-two algebra at q = 0, with an explicit unitary equivalence onto the
//! matching canonical model.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::areps::{canonical_model, CanonicalModel};
use crate::azero::{check_relations, Representation};
use crate::error::{Error, Result};
use crate::kernel::linalg::{distinct, op_norm, spectrum_normal};
use crate::kernel::{Csr, FactorKind, TruncatedOperator};
use crate::qrep::ReducedWord;

pub const DEFAULT_TOL: f64 = 1e-6;
/// Spectral values closer than this are one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Orbit vectors shorter than this are dropped as boundary artefacts.
pub const COLUMN_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    /// Margin for the relation pre-check and the intertwiner residual.
    pub margin: usize,
    pub verify_relations: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, margin: 4, verify_relations: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionNorms {
    pub z31: f64,
    pub z32: f64,
    pub z21: f64,
    pub z21_z32: f64,
}

impl DecisionNorms {
    pub fn of(r: &Representation) -> Result<Self> {
        if r.n() != 2 {
            return Err(Error::InvalidParameter(format!("classification needs rank 2, got {}", r.n())));
        }
        Ok(Self {
            z31: r.get(3, 1).op_norm(),
            z32: r.get(3, 2).op_norm(),
            z21: r.get(2, 1).op_norm(),
            z21_z32: r.get(2, 1).mul(r.get(3, 2))?.op_norm(),
        })
    }

    fn named(&self) -> [(&'static str, f64); 4] {
        [("z[3,1]", self.z31), ("z[3,2]", self.z32), ("z[2,1]", self.z21), ("z[2,1] z[3,2]", self.z21_z32)]
    }

    /// Errors when a norm sits within a decade of `tol` on either side.
    pub fn check_separated(&self, tol: f64) -> Result<()> {
        for (name, v) in self.named() {
            if v >= tol / 10.0 && v <= tol * 10.0 {
                return Err(Error::Indeterminate { operator: name.into(), norm: v, tol });
            }
        }
        Ok(())
    }

    /// The case whose norm signature matches, if any.
    pub fn case(&self, tol: f64) -> Option<u8> {
        let nz = |v: f64| v > tol;
        match (nz(self.z31), nz(self.z32), nz(self.z21), nz(self.z21_z32)) {
            (false, false, false, _) => Some(1),
            (false, false, true, _) => Some(2),
            (false, true, false, _) => Some(3),
            (false, true, true, true) => Some(4),
            (true, _, _, false) => Some(5),
            (true, _, _, true) => Some(6),
            (false, true, true, false) => None,
        }
    }
}

pub fn case_word(case: u8) -> &'static str {
    match case {
        2 => "s1",
        3 => "s2",
        4 => "s1s2",
        5 => "s2s1",
        6 => "s1s2s1",
        _ => "e",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case: u8,
    pub word: Vec<usize>,
    /// The two phases read off the anchor, before the case's parameter map.
    pub extracted: (Complex64, Complex64),
    /// `(λ, μ)` of the equivalent canonical model.
    pub canonical_params: (Complex64, Complex64),
    pub intertwiner_residual: f64,
    pub isometry_defect: f64,
    pub norms: DecisionNorms,
}

fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn unit(z: Complex64, what: &str) -> Result<Complex64> {
    let m = z.norm();
    if m < 0.5 {
        return Err(Error::DegenerateAnchor { projection: what.into(), top: m });
    }
    Ok(z / m)
}

fn expect(op: &TruncatedOperator, v: &[Complex64]) -> Complex64 {
    let w = op.csr().apply(v);
    v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum()
}

fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for k in 0..v.len() {
        if v[k].norm() > v[best].norm() + 1e-12 {
            best = k;
        }
    }
    if v[best].norm() > 0.0 {
        let p = v[best].conj() / v[best].norm();
        v.iter_mut().for_each(|z| *z *= p);
    }
}

/// Unit eigenvector of a Hermitian operator for the eigenvalue nearest
/// `target` (the lowest one when `None`), ties to the lowest basis index of
/// the leading component.
fn eigvec_near(h: &TruncatedOperator, target: Option<f64>) -> Result<(f64, Vec<Complex64>)> {
    let d = h.to_dense()?;
    let sym = (&d + d.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let target = target.unwrap_or_else(|| eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    let lead = |k: usize| {
        let col = eig.eigenvectors.column(k);
        (0..col.len()).find(|&i| col[i].norm() > 1e-8).unwrap_or(usize::MAX)
    };
    order.sort_by(|&a, &b| {
        let (da, db) = ((eig.eigenvalues[a] - target).abs(), (eig.eigenvalues[b] - target).abs());
        if (da - db).abs() <= 1e-9 {
            lead(a).cmp(&lead(b))
        } else {
            da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
        }
    });
    let k = order[0];
    let mut v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
    fix_phase(&mut v);
    Ok((eig.eigenvalues[k], v))
}

fn projection(r: &Representation, i: usize, j: usize) -> Result<TruncatedOperator> {
    let z = r.get(i, j);
    z.adjoint().mul(z)
}

/// Anchor projection of each case.
fn anchor_projection(r: &Representation, case: u8) -> Result<(String, TruncatedOperator)> {
    Ok(match case {
        2 => ("P[2,1]".into(), projection(r, 2, 1)?),
        3 => ("P[3,2]".into(), projection(r, 3, 2)?),
        4 => ("P[1,3]".into(), projection(r, 1, 3)?),
        5 => ("P[3,1]".into(), projection(r, 3, 1)?),
        6 => ("P[1,3] P[3,1]".into(), projection(r, 1, 3)?.mul(&projection(r, 3, 1)?)?),
        _ => return Err(Error::InvalidParameter(format!("case {case} has no anchor projection"))),
    })
}

/// The anchor vector `ξ` of a classified representation.
pub fn anchor(r: &Representation, case: u8) -> Result<Vec<Complex64>> {
    if case == 1 {
        return case_one_vector(r);
    }
    let (name, p) = anchor_projection(r, case)?;
    let (top, v) = eigvec_near(&p, Some(1.0))?;
    if top < 0.5 {
        return Err(Error::DegenerateAnchor { projection: name, top });
    }
    Ok(v)
}

/// A joint eigenvector of the diagonal generators, via one generic
/// Hermitian combination of them.
fn case_one_vector(r: &Representation) -> Result<Vec<Complex64>> {
    if r.shape().total_dim() == 1 {
        return Ok(vec![c1()]);
    }
    let weights = [1.0, std::f64::consts::SQRT_2, 3f64.sqrt(), 5f64.sqrt()];
    let mut h = TruncatedOperator::zeros(r.shape());
    for (k, idx) in [1usize, 2].iter().enumerate() {
        let z = r.get(*idx, *idx);
        let re = z.add(&z.adjoint())?;
        let im = z.sub(&z.adjoint())?.scale(Complex64::new(0.0, -1.0));
        h = h.add(&re.scale(Complex64::new(weights[2 * k], 0.0)))?;
        h = h.add(&im.scale(Complex64::new(weights[2 * k + 1], 0.0)))?;
    }
    Ok(eigvec_near(&h, None)?.1)
}

fn top_cluster(op: &TruncatedOperator, what: &str) -> Result<Complex64> {
    let spec = spectrum_normal(op.csr(), CLUSTER_TOL)?;
    let values = distinct(&spec, CLUSTER_TOL);
    let best = values
        .iter()
        .map(|(v, _)| *v)
        .fold(Complex64::new(0.0, 0.0), |a, b| if b.norm() > a.norm() + 1e-12 { b } else { a });
    unit(best, what)
}

/// Extracted phases and canonical parameters for a classified case.
fn extract(r: &Representation, case: u8, xi: &[Complex64]) -> Result<((Complex64, Complex64), (Complex64, Complex64))> {
    let at = |i: usize, j: usize, name: &str| unit(expect(r.get(i, j), xi), name);
    Ok(match case {
        1 => {
            let (a, b) = (at(1, 1, "z[1,1]")?, at(2, 2, "z[2,2]")?);
            ((a, b), (a, a * b))
        }
        2 => {
            let (l, m) = (top_cluster(r.get(2, 1), "z[2,1]")?, at(3, 3, "z[3,3]")?);
            ((l, m), (l.conj() * m.conj(), m.conj()))
        }
        3 => {
            let (l, m) = (top_cluster(r.get(3, 2), "z[3,2]")?, at(1, 1, "z[1,1]")?);
            ((l, m), (m, l.conj()))
        }
        4 => {
            let (l, m) = (at(2, 1, "z[2,1]")?, at(3, 2, "z[3,2]")?);
            ((l, m), (l.conj() * m.conj(), m.conj()))
        }
        5 => {
            let (a, b) = (at(1, 2, "z[1,2]")?, at(2, 3, "z[2,3]")?);
            ((a, b), (a, a * b))
        }
        6 => {
            let (l, m) = (at(1, 3, "z[1,3]")?, at(3, 1, "z[3,1]")?);
            ((l, m), (l, m.conj()))
        }
        _ => unreachable!("cases are 1..=6"),
    })
}

/// Decides the case, extracts the phases and measures the equivalence with
/// the canonical model of the same truncation size.
pub fn classify(r: &Representation, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let norms = DecisionNorms::of(r)?;
    if opts.verify_relations {
        let rep = check_relations(r, opts.tol, opts.margin)?;
        if let Some(w) = rep.relations.iter().filter(|x| x.residual > opts.tol).max_by(|a, b| a.residual.total_cmp(&b.residual)) {
            return Err(Error::NotARepresentation {
                relation: format!("{}{:?}", w.id, w.indices),
                residual: w.residual,
            });
        }
    }
    norms.check_separated(opts.tol)?;
    let case = norms.case(opts.tol).ok_or_else(|| {
        Error::NotARepresentation { relation: "z[2,1] z[3,2] = 0 with z[2,1], z[3,2] nonzero".into(), residual: norms.z21_z32 }
    })?;
    let xi = anchor(r, case)?;
    let (extracted, canonical_params) = extract(r, case, &xi)?;
    let word = ReducedWord::parse(2, case_word(case))?;
    let mut report = ClassificationReport {
        case,
        word: word.letters().to_vec(),
        extracted,
        canonical_params,
        intertwiner_residual: f64::NAN,
        isometry_defect: f64::NAN,
        norms,
    };
    let u = build_intertwiner(r, &report, canonical_dim(r), opts.margin)?;
    report.intertwiner_residual = u.residual;
    report.isometry_defect = u.isometry_defect;
    Ok(report)
}

/// Largest half-line factor size of the input, at least 2.
pub fn canonical_dim(r: &Representation) -> usize {
    r.shape().factors().iter().filter(|f| f.kind == FactorKind::HalfLine).map(|f| f.dim).max().unwrap_or(2).max(2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitColumn {
    /// Canonical basis multi-index.
    pub index: Vec<usize>,
    pub norm: f64,
    pub kept: bool,
}

#[derive(Debug, Clone)]
pub struct Intertwiner {
    /// Input dimension × canonical dimension.
    pub matrix: DMatrix<Complex64>,
    pub anchor: Vec<Complex64>,
    pub orbit: Vec<OrbitColumn>,
    pub canonical: CanonicalModel,
    /// `max_{i,j} ‖r(z[i,j]) U − U c(z[i,j])‖` on interior canonical columns.
    pub residual: f64,
    /// `‖U*U − I‖` on interior canonical columns.
    pub isometry_defect: f64,
}

/// `ops[0]^{k_0} ops[1]^{k_1} ⋯ ξ`, applying the last operator first.
fn orbit_vector(ops: &[(&TruncatedOperator, usize)], xi: &[Complex64]) -> Vec<Complex64> {
    let mut v = xi.to_vec();
    for (op, k) in ops.iter().rev() {
        for _ in 0..*k {
            v = op.csr().apply(&v);
        }
    }
    v
}

/// Image of the canonical basis vector with multi-index `idx`.
fn orbit_column(r: &Representation, case: u8, params: (Complex64, Complex64), idx: &[usize], xi: &[Complex64]) -> Result<Vec<Complex64>> {
    let (l, m) = params;
    let pw = |z: Complex64, e: i64| z.powi(e as i32);
    let (coeff, v) = match case {
        1 => (c1(), xi.to_vec()),
        2 => {
            let le = l.conj() * m;
            (pw(le, -(idx[0] as i64)), orbit_vector(&[(r.get(2, 2), idx[0])], xi))
        }
        3 => {
            let le = m.conj();
            (pw(le, -(idx[0] as i64)), orbit_vector(&[(r.get(3, 3), idx[0])], xi))
        }
        4 => {
            let (le, me) = (l.conj() * m, m.conj());
            let (a, b) = (idx[0] as i64, idx[1] as i64);
            let z11s = r.get(1, 1).adjoint();
            (pw(me, -a - b) * pw(le, -a), orbit_vector(&[(&z11s, idx[0]), (r.get(3, 3), idx[1])], xi))
        }
        5 => {
            let (a, b) = (l, l.conj() * m);
            let z11s = r.get(1, 1).adjoint();
            (pw(a * b, idx[0] as i64) * pw(a, idx[1] as i64), orbit_vector(&[(r.get(3, 3), idx[0]), (&z11s, idx[1])], xi))
        }
        6 => {
            let (le, me) = (l, m.conj());
            let (k, mm, n) = (idx[0] as i64, idx[1] as i64, idx[2] as i64);
            (
                pw(le, k) * pw(me, k - mm - n),
                orbit_vector(&[(r.get(3, 3), idx[1]), (r.get(2, 3), idx[0]), (r.get(3, 2), idx[2])], xi),
            )
        }
        _ => return Err(Error::InvalidParameter(format!("no case {case}"))),
    };
    Ok(v.into_iter().map(|z| z * coeff).collect())
}

fn dense_norm(m: &DMatrix<Complex64>) -> f64 {
    op_norm(&Csr::from_dense(m))
}

/// Orbit map from the canonical model onto the input space, column by
/// column, and its intertwining residual at `margin`.
pub fn build_intertwiner(r: &Representation, report: &ClassificationReport, dim: usize, margin: usize) -> Result<Intertwiner> {
    let word = ReducedWord::new(2, report.word.clone())?;
    let (l, m) = report.canonical_params;
    let canonical = canonical_model(l, m, &word, dim)?;
    let cshape = canonical.rep.shape().clone();
    let xi = anchor(r, report.case)?;
    let din = r.shape().total_dim();
    let dcan = cshape.total_dim();
    let mut matrix = DMatrix::zeros(din, dcan);
    let mut orbit = Vec::with_capacity(dcan);
    for col in 0..dcan {
        let idx = cshape.unflatten(col);
        let v = orbit_column(r, report.case, (l, m), &idx, &xi)?;
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let kept = norm >= COLUMN_CUTOFF;
        if kept {
            for (row, z) in v.into_iter().enumerate() {
                matrix[(row, col)] = z;
            }
        }
        orbit.push(OrbitColumn { index: idx, norm, kept });
    }
    let cols = cshape.interior(margin)?;
    let u_int = matrix.select_columns(cols.iter());
    let mut residual: f64 = 0.0;
    for i in 1..=3 {
        for j in 1..=3 {
            let rz = r.get(i, j).to_dense()?;
            let cz = canonical.rep.get(i, j).to_dense()?.select_columns(cols.iter());
            let diff = &rz * &u_int - &matrix * cz;
            residual = residual.max(dense_norm(&diff));
        }
    }
    let gram = u_int.adjoint() * &u_int - DMatrix::identity(cols.len(), cols.len());
    let isometry_defect = dense_norm(&gram);
    Ok(Intertwiner { matrix, anchor: xi, orbit, canonical, residual, isometry_defect })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn signature_table() {
        let n = |a: f64, b: f64, cc: f64, d: f64| DecisionNorms { z31: a, z32: b, z21: cc, z21_z32: d };
        assert_eq!(n(0.0, 0.0, 0.0, 0.0).case(1e-6), Some(1));
        assert_eq!(n(0.0, 0.0, 1.0, 0.0).case(1e-6), Some(2));
        assert_eq!(n(0.0, 1.0, 0.0, 0.0).case(1e-6), Some(3));
        assert_eq!(n(0.0, 1.0, 1.0, 1.0).case(1e-6), Some(4));
        assert_eq!(n(0.0, 1.0, 1.0, 0.0).case(1e-6), None);
        assert_eq!(n(1.0, 1.0, 1.0, 0.0).case(1e-6), Some(5));
        assert_eq!(n(1.0, 1.0, 1.0, 1.0).case(1e-6), Some(6));
        assert!(n(0.0, 5e-7, 1.0, 0.0).check_separated(1e-6).is_err());
    }

    #[test]
    fn s1_example() {
        let w = ReducedWord::parse(2, "s1").unwrap();
        let m = canonical_model(c(0.0, 1.0), c(1.0, 0.0), &w, 6).unwrap();
        let rep = classify(&m.rep, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.case, 2);
        assert!((rep.extracted.0 - c(0.0, -1.0)).norm() < 1e-12);
        assert!((rep.extracted.1 - c(1.0, 0.0)).norm() < 1e-12);
        assert!((rep.canonical_params.0 - c(0.0, 1.0)).norm() < 1e-12);
        assert!(rep.intertwiner_residual < 1e-12);
        let u = build_intertwiner(&m.rep, &rep, 6, 4).unwrap();
        assert!((u.matrix.clone() - DMatrix::identity(6, 6)).norm() < 1e-12);
    }
}
