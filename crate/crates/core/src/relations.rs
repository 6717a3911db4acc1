//! Instantiated relations `lhs = rhs` and residual reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::azero::poly::StarPolynomial;
use crate::error::Result;
use crate::gens::{GenTable, Monomial};

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub id: String,
    pub indices: Vec<usize>,
    pub lhs: StarPolynomial,
    pub rhs: StarPolynomial,
}

impl Relation {
    pub fn new(id: &str, indices: Vec<usize>, lhs: StarPolynomial, rhs: StarPolynomial) -> Self {
        Self { id: id.to_string(), indices, lhs, rhs }
    }

    /// `lhs − rhs` as collected monomials.
    pub fn difference(&self) -> Vec<Monomial> {
        self.lhs.clone().minus(self.rhs.clone()).expand()
    }

    pub fn degree(&self) -> usize {
        crate::gens::degree(&self.difference())
    }

    fn sort_key(&self) -> (&str, &[usize]) {
        (&self.id, &self.indices)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub id: String,
    pub indices: Vec<usize>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relations: Vec<RelationResidual>,
    pub pass: bool,
}

impl RelationReport {
    pub fn from_residuals(mut relations: Vec<RelationResidual>, tol: f64) -> Self {
        relations.sort_by(|a, b| (&a.id, &a.indices).cmp(&(&b.id, &b.indices)));
        let pass = relations.iter().all(|r| r.residual <= tol);
        Self { relations, pass }
    }

    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// The largest residual among relations with this id.
    pub fn max_for(&self, id: &str) -> Option<f64> {
        self.relations.iter().filter(|r| r.id == id).map(|r| r.residual).reduce(f64::max)
    }

    pub fn worst(&self) -> Option<&RelationResidual> {
        self.relations.iter().max_by(|a, b| a.residual.total_cmp(&b.residual))
    }

    pub fn merge(mut self, other: RelationReport, tol: f64) -> Self {
        self.relations.extend(other.relations);
        Self::from_residuals(self.relations, tol)
    }
}

/// Interior residual of every relation, in parallel.
pub fn check(table: &GenTable, relations: &[Relation], tol: f64, margin: usize) -> Result<RelationReport> {
    let rows = table.shape().interior(margin)?;
    let mut sorted: Vec<&Relation> = relations.iter().collect();
    sorted.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let residuals = sorted
        .par_iter()
        .map(|r| {
            let m = table.eval_compressed(&r.difference(), &rows)?;
            Ok(RelationResidual { id: r.id.clone(), indices: r.indices.clone(), residual: crate::kernel::linalg::op_norm(&m) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationReport::from_residuals(residuals, tol))
}
