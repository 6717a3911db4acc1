//! The coproduct and counit checked on models, the embedding of the rank-one
//! algebra, and the failure of the antipode law.

use serde::{Deserialize, Serialize};

use crate::azero::{check_relations, Representation};
use crate::crystal::{crystal_convolve, crystal_gens_limit};
use crate::error::{Error, Result};
use crate::gens::GenTable;
use crate::kernel::{interior_residual, FactorKind, TruncatedOperator};
use crate::qrep::ReducedWord;
use crate::relations::RelationReport;
use crate::Complex64;

fn same_rank(a: &Representation, b: &Representation) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::IncompatibleRepresentations(format!("ranks {} and {} differ", a.n(), b.n())));
    }
    Ok(())
}

/// `Σ_{k=i∧j}^{i∨j} a(z[i,k]) ⊗ b(z[k,j])`.
pub fn delta_on_models(a: &Representation, b: &Representation, i: usize, j: usize) -> Result<TruncatedOperator> {
    same_rank(a, b)?;
    a.gens.check_index(i, j)?;
    let shape = a.shape().concat(b.shape());
    let mut acc = TruncatedOperator::zeros(&shape);
    for k in i.min(j)..=i.max(j) {
        acc = acc.add(&a.get(i, k).tensor(b.get(k, j))?)?;
    }
    Ok(acc)
}

/// All generator images under the coproduct, as a representation on the
/// tensor product space.
pub fn delta_rep(a: &Representation, b: &Representation) -> Result<Representation> {
    same_rank(a, b)?;
    crystal_convolve(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorResidual {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BialgebraReport {
    pub relation_preservation: RelationReport,
    pub coassociativity: Vec<GeneratorResidual>,
    pub counit_left: Vec<GeneratorResidual>,
    pub counit_right: Vec<GeneratorResidual>,
    pub antipode_obstruction: f64,
    pub pass: bool,
}

fn max_of(v: &[GeneratorResidual]) -> f64 {
    v.iter().map(|g| g.residual).fold(0.0, f64::max)
}

impl BialgebraReport {
    pub fn max_coassociativity(&self) -> f64 {
        max_of(&self.coassociativity)
    }

    pub fn max_counit(&self) -> f64 {
        max_of(&self.counit_left).max(max_of(&self.counit_right))
    }
}

fn per_generator(n: usize, mut f: impl FnMut(usize, usize) -> Result<f64>) -> Result<Vec<GeneratorResidual>> {
    let mut out = Vec::new();
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            out.push(GeneratorResidual { i, j, residual: f(i, j)? });
        }
    }
    Ok(out)
}

fn diff_norm(x: &TruncatedOperator, y: &TruncatedOperator) -> Result<f64> {
    Ok(x.sub(y)?.op_norm())
}

/// Relations on the coproduct images of `(a, b)`, coassociativity over
/// `(a, b, c)` and both counit laws on `a`.
pub fn check_bialgebra(
    a: &Representation,
    b: &Representation,
    c: &Representation,
    tol: f64,
    margin: usize,
) -> Result<BialgebraReport> {
    same_rank(a, b)?;
    same_rank(a, c)?;
    let n = a.n();
    let ab = delta_rep(a, b)?;
    let bc = delta_rep(b, c)?;
    let relation_preservation = check_relations(&ab, tol, margin)?;
    let coassociativity = per_generator(n, |i, j| {
        let left = delta_on_models(&ab, c, i, j)?;
        let right = delta_on_models(a, &bc, i, j)?;
        diff_norm(&left, &right)
    })?;
    let eps = Representation::trivial(n)?;
    let counit_left = per_generator(n, |i, j| diff_norm(&delta_on_models(&eps, a, i, j)?, a.get(i, j)))?;
    let counit_right = per_generator(n, |i, j| diff_norm(&delta_on_models(a, &eps, i, j)?, a.get(i, j)))?;
    let antipode = antipode_obstruction(half_dim(a))?;
    let mut report = BialgebraReport {
        relation_preservation,
        coassociativity,
        counit_left,
        counit_right,
        antipode_obstruction: antipode,
        pass: false,
    };
    report.pass = report.relation_preservation.pass && report.max_coassociativity() <= tol && report.max_counit() <= tol;
    Ok(report)
}

fn half_dim(r: &Representation) -> usize {
    r.shape().factors().iter().filter(|f| f.kind == FactorKind::HalfLine).map(|f| f.dim).max().unwrap_or(2).max(2)
}

/// `z[i,j] ↦ y[i,j]` for `i, j ≤ 2`, `z[i,j] ↦ δ_{ij}` when `i` or `j` is 3.
pub fn a1_quotient(r1: &Representation, tol: f64, margin: usize) -> Result<Representation> {
    if r1.n() != 1 {
        return Err(Error::InvalidParameter(format!("expected a rank-one representation, got rank {}", r1.n())));
    }
    let rep = check_relations(r1, tol, margin)?;
    if let Some(w) = rep.relations.iter().filter(|x| x.residual > tol).max_by(|a, b| a.residual.total_cmp(&b.residual)) {
        return Err(Error::NotARepresentation { relation: format!("{}{:?}", w.id, w.indices), residual: w.residual });
    }
    let shape = r1.shape().clone();
    let gens = GenTable::from_fn(2, shape.clone(), |i, j| {
        Ok(if i <= 2 && j <= 2 {
            r1.get(i, j).clone()
        } else if i == j {
            TruncatedOperator::identity(&shape)
        } else {
            TruncatedOperator::zeros(&shape)
        })
    })?;
    Ok(Representation::new(gens))
}

/// Max over generators of `‖(φ⊗φ)Δ(z[i,j]) − Δ₁φ(z[i,j])‖`, where `Δ₁` is
/// the rank-one coproduct and `φ` the quotient map.
pub fn quotient_intertwining(r: &Representation, s: &Representation, tol: f64, margin: usize) -> Result<f64> {
    let (qr, qs) = (a1_quotient(r, tol, margin)?, a1_quotient(s, tol, margin)?);
    let shape = r.shape().concat(s.shape());
    let mut worst: f64 = 0.0;
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = delta_on_models(&qr, &qs, i, j)?;
            let rhs = if i <= 2 && j <= 2 {
                delta_on_models(r, s, i, j)?
            } else if i == j {
                TruncatedOperator::identity(&shape)
            } else {
                TruncatedOperator::zeros(&shape)
            };
            worst = worst.max(diff_norm(&lhs, &rhs)?);
        }
    }
    Ok(worst)
}

/// The rank-one model for `s1` with trivial phase.
pub fn su2_zero_model(dim: usize) -> Result<Representation> {
    crystal_gens_limit(1, &[Complex64::new(1.0, 0.0)], &ReducedWord::parse(1, "s1")?, dim)
}

/// `‖y[1,1]* y[1,1] − I‖` on the rank-one model. An antipode would force
/// `S(y[1,1]) = y[1,1]*` and this norm to vanish; it equals `‖P_0‖ = 1`.
pub fn antipode_obstruction(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim });
    }
    let r = su2_zero_model(dim)?;
    let y = r.get(1, 1);
    let id = TruncatedOperator::identity(r.shape());
    diff_norm(&y.adjoint().mul(y)?, &id)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntipodeReport {
    pub dim: usize,
    pub obstruction: f64,
    /// `y[1,1] y[1,1]* − I` on the interior at margin 1.
    pub coisometry_residual: f64,
    /// `y[1,1]* y[1,1] + y[2,1]* y[2,1] − I`.
    pub first_relation_residual: f64,
    pub explanation: String,
}

pub fn antipode_report(dim: usize) -> Result<AntipodeReport> {
    let obstruction = antipode_obstruction(dim)?;
    let r = su2_zero_model(dim)?;
    let (y11, y21) = (r.get(1, 1), r.get(2, 1));
    let id = TruncatedOperator::identity(r.shape());
    let coisometry_residual = interior_residual(&y11.mul(&y11.adjoint())?, &id, 1)?;
    let first = y11.adjoint().mul(y11)?.add(&y21.adjoint().mul(y21)?)?;
    let first_relation_residual = diff_norm(&first, &id)?;
    let explanation = "m(id⊗S)Δ(y[1,1]) = ε(y[1,1]) with y[1,2] = y[2,1]* = P_0 gives S(y[1,1]) = y[1,1]*, \
so y[1,1]* y[1,1] = 1 would follow; it equals 1 − P_0. The rank-one algebra is a quotient of the \
rank-two one compatible with the coproduct, so the density conditions fail there as well."
        .to_string();
    Ok(AntipodeReport { dim, obstruction, coisometry_residual, first_relation_residual, explanation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_single_term_on_diagonal() {
        let r = su2_zero_model(3).unwrap();
        let d = delta_on_models(&r, &r, 2, 2).unwrap();
        assert_eq!(d, r.get(2, 2).tensor(r.get(2, 2)).unwrap());
    }

    #[test]
    fn trivial_pair_gives_delta() {
        let t = Representation::trivial(2).unwrap();
        let d = delta_on_models(&t, &t, 1, 3).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(delta_on_models(&t, &t, 2, 2).unwrap().get(0, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn obstruction_is_one() {
        assert_eq!(antipode_obstruction(8).unwrap(), 1.0);
        assert!(antipode_obstruction(1).is_err());
        let rep = antipode_report(8).unwrap();
        assert_eq!(rep.coisometry_residual, 0.0);
        assert_eq!(rep.first_relation_residual, 0.0);
    }
}
