use super::poly::StarPolynomial as P;
use crate::gens::Letter;
use crate::relations::Relation;

fn z(i: usize, j: usize) -> P {
    P::gen(i, j)
}

fn zero() -> P {
    P::real(0.0)
}

fn one() -> P {
    P::real(1.0)
}

fn diag_run(from: usize, to: usize) -> Vec<Letter> {
    (from..=to).map(|k| Letter::gen(k, k)).collect()
}

/// The product that `z[r,s]*` equals.
pub fn star_formula_word(n: usize, r: usize, s: usize) -> Vec<Letter> {
    let m = n + 1;
    let mut w = Vec::new();
    if r > s {
        w.extend(diag_run(1, s - 1));
        w.extend((s..r).map(|k| Letter::gen(k, k + 1)));
        w.extend(diag_run(r + 1, m));
    } else if r < s {
        w.extend(diag_run(1, r - 1));
        w.extend((r + 1..=s).map(|k| Letter::gen(k, k - 1)));
        w.extend(diag_run(s + 1, m));
    } else {
        w.extend(diag_run(1, s - 1));
        w.extend(diag_run(s + 1, m));
    }
    w
}

/// Every instantiated defining relation of the rank-`n` algebra, plus the
/// derived row and column sums.
pub fn relation_catalog(n: usize) -> Vec<Relation> {
    let m = n + 1;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            for l in j + 1..=m {
                out.push(Relation::new("comm-z1", vec![i, j, l], z(i, j).times(z(i, l)), zero()));
            }
        }
    }
    for j in 1..=m {
        for i in 1..=m {
            for k in i + 1..=m {
                out.push(Relation::new("comm-z2", vec![i, k, j], z(i, j).times(z(k, j)), zero()));
            }
        }
    }
    for i in 1..=m {
        for k in i + 1..=m {
            for j in 1..=m {
                for l in j + 1..=m {
                    let idx = vec![i, j, k, l];
                    out.push(Relation::new(
                        "comm-z4",
                        idx.clone(),
                        z(i, l).times(z(k, j)),
                        z(k, j).times(z(i, l)),
                    ));
                    let (hi, lo) = (i.max(j), k.min(l));
                    if hi >= lo {
                        out.push(Relation::new("comm-z3", idx.clone(), z(i, l).times(z(k, j)), zero()));
                    }
                    let bracket = z(i, j).times(z(k, l)).minus(z(k, l).times(z(i, j)));
                    if hi + 1 < lo {
                        out.push(Relation::new("comm-z5", idx.clone(), bracket, zero()));
                    } else if hi + 1 == lo {
                        out.push(Relation::new("comm-z6", idx, bracket, z(i, l).times(z(k, j))));
                    }
                }
            }
        }
    }
    out.push(Relation::new("comm-z7a", vec![], P::word(&diag_run(1, m)), one()));
    for r in 1..=m {
        for s in 1..=m {
            out.push(Relation::new("comm-z7", vec![r, s], z(r, s).adjoint(), P::word(&star_formula_word(n, r, s))));
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            for r in (1..=m).filter(|&r| r != i) {
                for s in (1..=m).filter(|&s| s != j) {
                    out.push(Relation::new(
                        "comm-z8",
                        vec![i, j, r, s],
                        z(i, j).adjoint().times(z(r, s)),
                        z(r, s).times(z(i, j).adjoint()),
                    ));
                }
            }
        }
    }
    for j in 1..=m {
        out.push(Relation::new(
            "comm-z9",
            vec![1, j],
            P::sum((1..=j).map(|k| z(j, k).times(z(j, k).adjoint()))),
            one(),
        ));
        out.push(Relation::new(
            "comm-z9",
            vec![2, j],
            P::sum((j..=m).map(|k| z(k, j).adjoint().times(z(k, j)))),
            one(),
        ));
    }
    out
}

/// The defining relations of the rank-one algebra in the generators
/// `y[i,j]` (written `z[i,j]`).
pub fn su02_relations() -> Vec<Relation> {
    vec![
        Relation::new(
            "su02",
            vec![1],
            z(1, 1).adjoint().times(z(1, 1)).plus(z(2, 1).adjoint().times(z(2, 1))),
            one(),
        ),
        Relation::new("su02", vec![2], z(1, 1).times(z(1, 1).adjoint()), one()),
        Relation::new("su02", vec![3], z(1, 1).times(z(1, 2)), zero()),
        Relation::new("su02", vec![4], z(1, 1).times(z(2, 1)), zero()),
        Relation::new("su02", vec![5], z(2, 1).times(z(1, 2)), z(1, 2).times(z(2, 1))),
        Relation::new("su02", vec![6], z(1, 1).adjoint(), z(2, 2)),
        Relation::new("su02", vec![7], z(2, 1).adjoint(), z(1, 2)),
    ]
}
