use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the total dimension of a truncated space.
pub const DEFAULT_CAPACITY: usize = 1 << 20;

/// Largest total dimension that may be materialized densely (JSON export,
/// dense linear algebra on a whole operator).
pub const DENSE_CAPACITY: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    /// `l2(N)` truncated to `e_0 .. e_{dim-1}`.
    #[serde(rename = "half")]
    HalfLine,
    /// `l2(Z)` truncated to `e_{-M} .. e_{M}`, `dim = 2M + 1`.
    #[serde(rename = "line")]
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorSpec {
    pub kind: FactorKind,
    pub dim: usize,
}

impl FactorSpec {
    pub fn half(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        Ok(Self { kind: FactorKind::HalfLine, dim })
    }

    pub fn line(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        Ok(Self { kind: FactorKind::Line, dim })
    }

    /// Basis positions that stay `margin` away from the truncation boundary.
    /// Half-line factors are exact at `e_0`, so only the top is cut.
    fn interior_range(&self, margin: usize) -> Option<std::ops::Range<usize>> {
        match self.kind {
            FactorKind::HalfLine => (margin < self.dim).then(|| 0..self.dim - margin),
            FactorKind::Line => (2 * margin < self.dim).then(|| margin..self.dim - margin),
        }
    }
}

/// Ordered list of tensor factors. The empty shape is the one-dimensional
/// scalar space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceShape {
    factors: Vec<FactorSpec>,
}

impl SpaceShape {
    pub fn scalar() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn new(factors: Vec<FactorSpec>) -> Result<Self> {
        for f in &factors {
            if f.dim < 2 {
                return Err(Error::InvalidDimension { dim: f.dim });
            }
        }
        let shape = Self { factors };
        shape.check_capacity(DEFAULT_CAPACITY)?;
        Ok(shape)
    }

    pub fn half_lines(count: usize, dim: usize) -> Result<Self> {
        Self::new(vec![FactorSpec::half(dim)?; count])
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the factor dimensions, saturating on overflow.
    pub fn total_dim(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, f| acc.saturating_mul(f.dim))
    }

    pub fn check_capacity(&self, cap: usize) -> Result<()> {
        let requested = self.total_dim();
        if requested > cap {
            return Err(Error::CapacityExceeded { requested, cap });
        }
        Ok(())
    }

    pub fn concat(&self, other: &SpaceShape) -> SpaceShape {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        SpaceShape { factors }
    }

    /// Lexicographic multi-index of a flat basis position (last factor fastest).
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.factors.len()];
        for (slot, f) in idx.iter_mut().zip(&self.factors).rev() {
            *slot = flat % f.dim;
            flat /= f.dim;
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.factors.len());
        idx.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, f)| acc * f.dim + i)
    }

    /// Flat basis positions that lie in the interior at the given margin, in
    /// increasing order.
    pub fn interior(&self, margin: usize) -> Result<Vec<usize>> {
        let mut ranges = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            match f.interior_range(margin) {
                Some(r) if !r.is_empty() => ranges.push(r),
                _ => return Err(Error::EmptyInterior { margin }),
            }
        }
        let mut out = vec![0usize];
        for (r, f) in ranges.iter().zip(&self.factors) {
            let mut next = Vec::with_capacity(out.len() * r.len());
            for &base in &out {
                for i in r.clone() {
                    next.push(base * f.dim + i);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Boolean mask of `interior(margin)`.
    pub fn interior_mask(&self, margin: usize) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.total_dim()];
        for i in self.interior(margin)? {
            mask[i] = true;
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_roundtrip() {
        let s = SpaceShape::new(vec![FactorSpec::half(3).unwrap(), FactorSpec::line(5).unwrap()]).unwrap();
        assert_eq!(s.total_dim(), 15);
        for k in 0..15 {
            assert_eq!(s.flatten(&s.unflatten(k)), k);
        }
        assert_eq!(s.unflatten(7), vec![1, 2]);
    }

    #[test]
    fn interior_cuts_top_of_half_line_and_both_ends_of_line() {
        let s = SpaceShape::new(vec![FactorSpec::half(4).unwrap(), FactorSpec::line(5).unwrap()]).unwrap();
        let int = s.interior(1).unwrap();
        let tuples: Vec<_> = int.iter().map(|&k| s.unflatten(k)).collect();
        assert_eq!(tuples.len(), 3 * 3);
        assert!(tuples.iter().all(|t| t[0] <= 2 && (1..=3).contains(&t[1])));
        assert!(tuples.contains(&vec![0, 1]));
    }

    #[test]
    fn empty_interior_is_an_error() {
        let s = SpaceShape::half_lines(2, 3).unwrap();
        assert_eq!(s.interior(3), Err(Error::EmptyInterior { margin: 3 }));
        let l = SpaceShape::new(vec![FactorSpec::line(5).unwrap()]).unwrap();
        assert!(l.interior(2).is_ok());
        assert!(l.interior(3).is_err());
    }

    #[test]
    fn scalar_shape_has_one_interior_point() {
        let s = SpaceShape::scalar();
        assert_eq!(s.total_dim(), 1);
        assert_eq!(s.interior(5).unwrap(), vec![0]);
    }

    #[test]
    fn factor_dims_below_two_rejected() {
        assert_eq!(FactorSpec::half(1), Err(Error::InvalidDimension { dim: 1 }));
    }
}
