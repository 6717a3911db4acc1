//! The crystallised algebra at q = 0: relation catalog, relation checker,
//! projection diagnostics and the *-polynomial language.

pub mod catalog;
pub mod diagnostics;
pub mod poly;

use num_complex::Complex64;

use crate::error::Result;
use crate::gens::GenTable;
use crate::kernel::{SpaceShape, TruncatedOperator};
use crate::relations::{check, RelationReport};

pub use catalog::{relation_catalog, su02_relations};
pub use diagnostics::{diagnostic_relations, projection_diagnostics};
pub use poly::{eval_star_poly, parse_star_poly, StarPolynomial};

/// Where a representation came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub phases: Vec<Complex64>,
    pub word: Vec<usize>,
}

/// An assignment `z[i,j] ↦ operator` for the generators of the q = 0
/// algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub gens: GenTable,
    pub meta: Option<Meta>,
}

impl Representation {
    pub fn new(gens: GenTable) -> Self {
        Self { gens, meta: None }
    }

    pub fn with_meta(gens: GenTable, phases: Vec<Complex64>, word: Vec<usize>) -> Self {
        Self { gens, meta: Some(Meta { phases, word }) }
    }

    /// `z[i,j] ↦ δ_ij` on the one-dimensional space.
    pub fn trivial(n: usize) -> Result<Self> {
        let gens = GenTable::from_fn(n, SpaceShape::scalar(), |i, j| {
            Ok(TruncatedOperator::scalar(Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)))
        })?;
        Ok(Self::with_meta(gens, vec![Complex64::new(1.0, 0.0); n], Vec::new()))
    }

    pub fn n(&self) -> usize {
        self.gens.n()
    }

    pub fn shape(&self) -> &SpaceShape {
        self.gens.shape()
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedOperator {
        self.gens.get(i, j)
    }

    /// `U z U*` for every generator.
    pub fn conjugate(&self, u: &TruncatedOperator) -> Result<Self> {
        Ok(Self { gens: self.gens.map(|_, _, g| g.conjugate_by(u))?, meta: self.meta.clone() })
    }
}

/// Residual of every catalog relation on the interior at `margin`.
pub fn check_relations(r: &Representation, tol: f64, margin: usize) -> Result<RelationReport> {
    check(&r.gens, &relation_catalog(r.n()), tol, margin)
}
