//! Seeded random unitaries that keep interior and boundary basis vectors
//! apart, so that conjugated models still pass interior relation checks.

use nalgebra::DMatrix;
use qzero::kernel::{SpaceShape, TruncatedOperator};
use qzero::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn haar(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let (mut q, r) = g.qr().unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let p = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        q.column_mut(k).iter_mut().for_each(|z| *z *= p);
    }
    q
}

pub fn block_unitary(seed: u64, shape: &SpaceShape, margin: usize) -> qzero::Result<TruncatedOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = shape.interior_mask(margin)?;
    let d = shape.total_dim();
    let mut u = DMatrix::zeros(d, d);
    for side in [true, false] {
        let set: Vec<usize> = (0..d).filter(|&k| mask[k] == side).collect();
        if set.is_empty() {
            continue;
        }
        let h = haar(&mut rng, set.len());
        for (a, &i) in set.iter().enumerate() {
            for (b, &j) in set.iter().enumerate() {
                u[(i, j)] = h[(a, b)];
            }
        }
    }
    TruncatedOperator::from_dense(shape.clone(), &u)
}
