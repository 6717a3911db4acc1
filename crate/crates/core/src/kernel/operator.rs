use nalgebra::DMatrix;
use num_complex::Complex64;

use super::linalg;
use super::shape::{FactorSpec, SpaceShape, DEFAULT_CAPACITY, DENSE_CAPACITY};
use super::sparse::Csr;
use crate::error::{Error, Result};

/// A matrix on a truncated tensor-product space, indexed by the
/// lexicographic basis of its shape.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    shape: SpaceShape,
    mat: Csr,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl TruncatedOperator {
    pub fn new(shape: SpaceShape, mat: Csr) -> Result<Self> {
        let d = shape.total_dim();
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, shape has dimension {d}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if let Some(k) = mat.values().iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidEntry { index: k, value: mat.values()[k].to_string() });
        }
        Ok(Self { shape, mat })
    }

    pub fn from_dense(shape: SpaceShape, m: &DMatrix<Complex64>) -> Result<Self> {
        shape.check_capacity(DENSE_CAPACITY)?;
        Self::new(shape, Csr::from_dense(m))
    }

    pub fn identity(shape: &SpaceShape) -> Self {
        Self { mat: Csr::identity(shape.total_dim()), shape: shape.clone() }
    }

    pub fn zeros(shape: &SpaceShape) -> Self {
        let d = shape.total_dim();
        Self { mat: Csr::zeros(d, d), shape: shape.clone() }
    }

    /// `c` on the one-dimensional space.
    pub fn scalar(c: Complex64) -> Self {
        Self { shape: SpaceShape::scalar(), mat: Csr::diagonal(&[c]) }
    }

    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    pub fn csr(&self) -> &Csr {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.mat.get(r, c)
    }

    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        self.shape.check_capacity(DENSE_CAPACITY)?;
        Ok(self.mat.to_dense())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { shape: self.shape.clone(), mat: self.mat.mul(&other.mat) })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { shape: self.shape.clone(), mat: self.mat.add(&other.mat) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { shape: self.shape.clone(), mat: self.mat.sub(&other.mat) })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { shape: self.shape.clone(), mat: self.mat.scale(c) }
    }

    pub fn adjoint(&self) -> Self {
        Self { shape: self.shape.clone(), mat: self.mat.adjoint() }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.tensor_with_cap(other, DEFAULT_CAPACITY)
    }

    pub fn tensor_with_cap(&self, other: &Self, cap: usize) -> Result<Self> {
        let shape = self.shape.concat(&other.shape);
        shape.check_capacity(cap)?;
        Ok(Self { shape, mat: self.mat.kron(&other.mat) })
    }

    /// `U A U*`, for `u` acting on the same space.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.mul(self)?.mul(&u.adjoint())
    }

    pub fn op_norm(&self) -> f64 {
        linalg::op_norm(&self.mat)
    }

    /// Drops entries of modulus at most `threshold`.
    pub fn pruned(&self, threshold: f64) -> Self {
        Self { shape: self.shape.clone(), mat: self.mat.prune(threshold) }
    }

    /// `C A C` as a matrix on the interior basis positions.
    pub fn compress(&self, margin: usize) -> Result<Csr> {
        let int = self.shape.interior(margin)?;
        Ok(self.mat.select_rows(&int).select_cols(&int))
    }
}

/// Left shift `S e_0 = 0, S e_k = e_{k-1}` on one half-line factor.
pub fn make_shift(dim: usize) -> Result<TruncatedOperator> {
    let shape = SpaceShape::new(vec![FactorSpec::half(dim)?])?;
    let mat = Csr::from_triplets(dim, dim, (1..dim).map(|k| (k - 1, k, one())).collect());
    TruncatedOperator::new(shape, mat)
}

/// Diagonal operator `e_k ↦ f(k) e_k` on one half-line factor.
pub fn make_diag(dim: usize, f: impl Fn(usize) -> Complex64) -> Result<TruncatedOperator> {
    let shape = SpaceShape::new(vec![FactorSpec::half(dim)?])?;
    let values: Vec<Complex64> = (0..dim).map(f).collect();
    if let Some(k) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::InvalidEntry { index: k, value: values[k].to_string() });
    }
    TruncatedOperator::new(shape, Csr::diagonal(&values))
}

/// The projection onto `e_0`.
pub fn rank_one_ground(dim: usize) -> Result<TruncatedOperator> {
    make_diag(dim, |k| if k == 0 { one() } else { Complex64::new(0.0, 0.0) })
}

pub fn half_identity(dim: usize) -> Result<TruncatedOperator> {
    Ok(TruncatedOperator::identity(&SpaceShape::new(vec![FactorSpec::half(dim)?])?))
}

/// Truncated bilateral shift `u e_k = e_{k+1}` on one line factor; the top
/// basis vector is sent to zero.
pub fn make_bilateral_shift(dim: usize) -> Result<TruncatedOperator> {
    let shape = SpaceShape::new(vec![FactorSpec::line(dim)?])?;
    let mat = Csr::from_triplets(dim, dim, (0..dim - 1).map(|k| (k + 1, k, one())).collect());
    TruncatedOperator::new(shape, mat)
}

pub fn line_identity(dim: usize) -> Result<TruncatedOperator> {
    Ok(TruncatedOperator::identity(&SpaceShape::new(vec![FactorSpec::line(dim)?])?))
}

pub fn tensor(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    a.tensor(b)
}

pub fn op_norm(a: &TruncatedOperator) -> f64 {
    a.op_norm()
}

pub fn spectrum_normal(a: &TruncatedOperator, tol: f64) -> Result<Vec<Complex64>> {
    linalg::spectrum_normal(a.csr(), tol)
}

/// `‖C(a − b)C‖` with `C` the projection onto the interior at `margin`.
pub fn interior_residual(a: &TruncatedOperator, b: &TruncatedOperator, margin: usize) -> Result<f64> {
    Ok(linalg::op_norm(&a.sub(b)?.compress(margin)?))
}
