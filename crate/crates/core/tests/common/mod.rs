#![allow(dead_code)]

use nalgebra::DMatrix;
use qzero::kernel::{SpaceShape, TruncatedOperator};
use qzero::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn phase(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * turns)
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q.
pub fn haar<R: Rng>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) / std::f64::consts::SQRT_2
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let p = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= p;
        }
    }
    q
}

/// Random unitary that maps interior basis vectors (at `margin`) among
/// themselves and boundary vectors among themselves.
pub fn block_unitary<R: Rng>(rng: &mut R, shape: &SpaceShape, margin: usize) -> TruncatedOperator {
    let d = shape.total_dim();
    let inner = shape.interior(margin).unwrap();
    let mask = shape.interior_mask(margin).unwrap();
    let outer: Vec<usize> = (0..d).filter(|&k| !mask[k]).collect();
    let mut u = DMatrix::zeros(d, d);
    for set in [&inner, &outer] {
        if set.is_empty() {
            continue;
        }
        let h = haar(rng, set.len());
        for (a, &i) in set.iter().enumerate() {
            for (b, &j) in set.iter().enumerate() {
                u[(i, j)] = h[(a, b)];
            }
        }
    }
    TruncatedOperator::from_dense(shape.clone(), &u).unwrap()
}
