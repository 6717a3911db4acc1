use super::poly::StarPolynomial as P;
use super::Representation;
use crate::error::Result;
use crate::relations::{check, Relation, RelationReport};

/// Tag for `p[i,j] = z[i,j]* z[i,j]` in index tuples.
pub const P_TAG: usize = 1;
/// Tag for `q[i,j] = z[i,j] z[i,j]*` in index tuples.
pub const Q_TAG: usize = 2;

fn z(i: usize, j: usize) -> P {
    P::gen(i, j)
}

fn p(i: usize, j: usize) -> P {
    z(i, j).adjoint().times(z(i, j))
}

fn q(i: usize, j: usize) -> P {
    z(i, j).times(z(i, j).adjoint())
}

fn proj(tag: usize, i: usize, j: usize) -> P {
    if tag == P_TAG {
        p(i, j)
    } else {
        q(i, j)
    }
}

fn lower(n: usize) -> Vec<(usize, usize)> {
    let m = n + 1;
    (1..=m).flat_map(|i| (1..=i).map(move |j| (i, j))).collect()
}

/// The projection identities and partial-isometry checks on the
/// lower-triangular generators.
pub fn diagnostic_relations(n: usize) -> Vec<Relation> {
    let m = n + 1;
    let low = lower(n);
    let projs: Vec<(usize, usize, usize)> =
        [P_TAG, Q_TAG].iter().flat_map(|&t| low.iter().map(move |&(i, j)| (t, i, j))).collect();
    let mut out = Vec::new();
    for &(t, i, j) in &projs {
        let x = proj(t, i, j);
        out.push(Relation::new("proj-idempotent", vec![t, i, j], x.clone().times(x.clone()), x.clone()));
        out.push(Relation::new("proj-selfadjoint", vec![t, i, j], x.clone().adjoint(), x));
    }
    for (a, &(t1, i1, j1)) in projs.iter().enumerate() {
        for &(t2, i2, j2) in &projs[a + 1..] {
            let (x, y) = (proj(t1, i1, j1), proj(t2, i2, j2));
            out.push(Relation::new(
                "proj-commute",
                vec![t1, i1, j1, t2, i2, j2],
                x.clone().times(y.clone()).minus(y.times(x)),
                P::real(0.0),
            ));
        }
    }
    for j in 1..=m {
        out.push(Relation::new("proj-sum", vec![P_TAG, j], P::sum((j..=m).map(|i| p(i, j))), P::real(1.0)));
    }
    for i in 1..=m {
        out.push(Relation::new("proj-sum", vec![Q_TAG, i], P::sum((1..=i).map(|j| q(i, j))), P::real(1.0)));
    }
    if n == 2 {
        out.push(Relation::new("proj-derived", vec![1], p(3, 1), q(3, 1)));
        out.push(Relation::new("proj-derived", vec![2], p(1, 1), q(2, 2)));
        out.push(Relation::new("proj-derived", vec![3], p(2, 2), q(3, 3)));
        out.push(Relation::new("proj-derived", vec![4], p(2, 1), q(2, 1).minus(q(3, 1))));
        out.push(Relation::new("proj-derived", vec![5], p(3, 2), q(3, 2).plus(q(3, 1))));
    }
    // letters as (adjoint flag, i, j); flag 1 means the adjoint
    let letters: Vec<(usize, usize, usize)> =
        [0, 1].iter().flat_map(|&f| low.iter().map(move |&(i, j)| (f, i, j))).collect();
    let letter = |(f, i, j): (usize, usize, usize)| if f == 1 { z(i, j).adjoint() } else { z(i, j) };
    let pi_law = |v: P| v.clone().times(v.clone().adjoint()).times(v.clone()).minus(v);
    for &(i, j) in &low {
        out.push(Relation::new("partial-isometry", vec![i, j], pi_law(z(i, j)), P::real(0.0)));
    }
    for &a in &letters {
        for &b in &letters {
            out.push(Relation::new(
                "partial-isometry-product",
                vec![a.0, a.1, a.2, b.0, b.1, b.2],
                pi_law(letter(a).times(letter(b))),
                P::real(0.0),
            ));
        }
    }
    out
}

/// Evaluates [`diagnostic_relations`] on `r`.
pub fn projection_diagnostics(r: &Representation, tol: f64, margin: usize) -> Result<RelationReport> {
    check(&r.gens, &diagnostic_relations(r.n()), tol, margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_rank_two() {
        let rels = diagnostic_relations(2);
        let count = |id: &str| rels.iter().filter(|r| r.id == id).count();
        assert_eq!(count("proj-idempotent"), 12);
        assert_eq!(count("proj-commute"), 66);
        assert_eq!(count("proj-sum"), 6);
        assert_eq!(count("proj-derived"), 5);
        assert_eq!(count("partial-isometry-product"), 144);
    }

    #[test]
    fn trivial_rep_is_clean() {
        let r = Representation::trivial(2).unwrap();
        let rep = projection_diagnostics(&r, 0.0, 0).unwrap();
        assert!(rep.pass, "{:?}", rep.worst());
    }
}
