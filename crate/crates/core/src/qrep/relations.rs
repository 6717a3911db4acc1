use num_complex::Complex64;

use super::perm::Permutation;
use super::rep::QRepresentation;
use crate::azero::poly::StarPolynomial as P;
use crate::error::{Error, Result};
use crate::gens::Letter;
use crate::relations::{check, Relation, RelationReport, RelationResidual};

/// Stand-in deformation parameter for q-free representations; their
/// relations hold for every q.
pub const NOMINAL_Q: f64 = 0.5;

fn t(i: usize, j: usize) -> P {
    P::gen(i, j)
}

fn two(a: P, b: P) -> P {
    a.times(b)
}

fn real(x: f64) -> P {
    P::real(x)
}

/// Quadratic exchange relations, star commutation and unitarity of the
/// generator matrix.
pub fn t_relations(n: usize, q: f64) -> Vec<Relation> {
    let m = n + 1;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            for l in j + 1..=m {
                out.push(Relation::new(
                    "t-row",
                    vec![i, j, l],
                    two(t(i, j), t(i, l)),
                    real(q).times(two(t(i, l), t(i, j))),
                ));
            }
        }
    }
    for j in 1..=m {
        for i in 1..=m {
            for k in i + 1..=m {
                out.push(Relation::new(
                    "t-col",
                    vec![i, k, j],
                    two(t(i, j), t(k, j)),
                    real(q).times(two(t(k, j), t(i, j))),
                ));
            }
        }
    }
    for i in 1..=m {
        for k in i + 1..=m {
            for j in 1..=m {
                for l in j + 1..=m {
                    out.push(Relation::new("t-cross", vec![i, j, k, l], two(t(i, l), t(k, j)), two(t(k, j), t(i, l))));
                    out.push(Relation::new(
                        "t-bracket",
                        vec![i, j, k, l],
                        two(t(i, j), t(k, l)).minus(two(t(k, l), t(i, j))),
                        real(q - 1.0 / q).times(two(t(i, l), t(k, j))),
                    ));
                }
            }
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            for r in (1..=m).filter(|&r| r != i) {
                for s in (1..=m).filter(|&s| s != j) {
                    out.push(Relation::new(
                        "t-star",
                        vec![i, j, r, s],
                        two(t(i, j), t(r, s).adjoint()),
                        two(t(r, s).adjoint(), t(i, j)),
                    ));
                }
            }
        }
    }
    // the (j, i) instance is the adjoint of the (i, j) one and has the same norm
    for i in 1..=m {
        for j in i..=m {
            let delta = real(if i == j { 1.0 } else { 0.0 });
            out.push(Relation::new(
                "t-unitary-row",
                vec![i, j],
                P::sum((1..=m).map(|k| two(t(i, k), t(j, k).adjoint()))),
                delta.clone(),
            ));
            out.push(Relation::new(
                "t-unitary-col",
                vec![i, j],
                P::sum((1..=m).map(|k| two(t(k, i).adjoint(), t(k, j)))),
                delta,
            ));
        }
    }
    out
}

fn rep_q(r: &QRepresentation) -> f64 {
    r.q.unwrap_or(NOMINAL_Q)
}

fn mirrored_star(rel: &Relation) -> bool {
    rel.id == "t-star" && rel.indices[..2] > rel.indices[2..]
}

/// The `(r, s, i, j)` star instance is the adjoint of `(i, j, r, s)`, so
/// only one of each pair is evaluated.
pub fn check_t_relations(r: &QRepresentation, tol: f64, margin: usize) -> Result<RelationReport> {
    let rels: Vec<Relation> = t_relations(r.n, rep_q(r)).into_iter().filter(|x| !mirrored_star(x)).collect();
    let report = check(&r.gens, &rels, tol, margin)?;
    let mut all = report.relations;
    let mirrors: Vec<RelationResidual> = all
        .iter()
        .filter(|x| x.id == "t-star")
        .map(|x| {
            let idx = &x.indices;
            RelationResidual { id: x.id.clone(), indices: vec![idx[2], idx[3], idx[0], idx[1]], residual: x.residual }
        })
        .collect();
    all.extend(mirrors);
    Ok(RelationReport::from_residuals(all, tol))
}

fn signed_sum(q: f64, rows: &[usize], cols: &[usize]) -> P {
    P::sum(Permutation::all(rows.len()).iter().map(|sigma| {
        let letters: Vec<Letter> = rows.iter().enumerate().map(|(k, &i)| Letter::gen(i, cols[sigma.apply(k + 1) - 1])).collect();
        P::scalar(Complex64::new((-q).powi(sigma.length() as i32), 0.0)).times(P::word(&letters))
    }))
}

const MAX_DET_RANK: usize = 6;

fn det_guard(n: usize) -> Result<()> {
    if n > MAX_DET_RANK {
        return Err(Error::CapacityExceeded { requested: n, cap: MAX_DET_RANK });
    }
    Ok(())
}

/// `Σ_σ (−q)^{ℓ(σ)} t_{1,σ(1)} ⋯ t_{n+1,σ(n+1)}` as a polynomial.
pub fn determinant_poly(n: usize, q: f64) -> Result<P> {
    det_guard(n)?;
    let idx: Vec<usize> = (1..=n + 1).collect();
    Ok(signed_sum(q, &idx, &idx))
}

/// The quantum minor with row `r` and column `s` deleted.
pub fn cofactor_poly(n: usize, q: f64, r: usize, s: usize) -> Result<P> {
    det_guard(n)?;
    if !(1..=n + 1).contains(&r) || !(1..=n + 1).contains(&s) {
        return Err(Error::IndexOutOfRange { i: r, j: s, n });
    }
    let rows: Vec<usize> = (1..=n + 1).filter(|&k| k != r).collect();
    let cols: Vec<usize> = (1..=n + 1).filter(|&k| k != s).collect();
    Ok(signed_sum(q, &rows, &cols))
}

pub fn quantum_determinant(r: &QRepresentation) -> Result<crate::kernel::TruncatedOperator> {
    r.gens.eval(&determinant_poly(r.n, rep_q(r))?.expand())
}

pub fn cofactor(r: &QRepresentation, row: usize, col: usize) -> Result<crate::kernel::TruncatedOperator> {
    r.gens.eval(&cofactor_poly(r.n, rep_q(r), row, col)?.expand())
}

/// `D_q = 1` on the interior.
pub fn check_determinant(r: &QRepresentation, tol: f64, margin: usize) -> Result<RelationReport> {
    let rel = Relation::new("t-det", vec![], determinant_poly(r.n, rep_q(r))?, real(1.0));
    check(&r.gens, &[rel], tol, margin)
}

/// `t_rs* = (−q)^{s−r} D^{r,s}` for every `(r, s)`.
pub fn star_formula_relations(n: usize, q: f64) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for r in 1..=n + 1 {
        for s in 1..=n + 1 {
            let c = (-q).powi(s as i32 - r as i32);
            out.push(Relation::new(
                "t-star-formula",
                vec![r, s],
                t(r, s).adjoint(),
                P::scalar(Complex64::new(c, 0.0)).times(cofactor_poly(n, q, r, s)?),
            ));
        }
    }
    Ok(out)
}

pub fn check_star_formula(r: &QRepresentation, tol: f64, margin: usize) -> Result<RelationReport> {
    check(&r.gens, &star_formula_relations(r.n, rep_q(r))?, tol, margin)
}

#[cfg(test)]
mod tests {
    use super::super::perm::ReducedWord;
    use super::super::rep::{build_qrep, chi_lambda, psi_sk};
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elementary_block_relations() {
        let r = psi_sk(1, 1, 0.5, 8).unwrap();
        let rep = check_t_relations(&r, 1e-12, 2).unwrap();
        assert!(rep.pass, "{:?}", rep.worst());
    }

    #[test]
    fn characters_satisfy_everything_exactly() {
        let r = chi_lambda(2, &[c(0.0, 1.0), c(-1.0, 0.0)]).unwrap();
        let rep = check_t_relations(&r, 0.0, 0).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.max_residual(), 0.0);
    }

    #[test]
    fn corrupted_generator_breaks_unitarity() {
        let r = psi_sk(1, 1, 0.5, 8).unwrap();
        let gens = r.gens.map(|i, j, g| Ok(if (i, j) == (1, 1) { g.scale(c(1.1, 0.0)) } else { g.clone() })).unwrap();
        let bad = QRepresentation { gens, ..r };
        let rep = check_t_relations(&bad, 1e-10, 2).unwrap();
        assert!(!rep.pass);
        let u = rep.max_for("t-unitary-row").unwrap();
        assert!((u - 0.21).abs() < 0.01, "{u}");
    }

    #[test]
    fn determinant_of_small_word() {
        let w = ReducedWord::parse(2, "s1s2").unwrap();
        let r = build_qrep(2, &[c(1.0, 0.0), c(0.0, 1.0)], &w, 0.3, 7).unwrap();
        assert!(check_determinant(&r, 1e-12, 3).unwrap().pass);
        assert!(check_star_formula(&r, 1e-12, 3).unwrap().pass);
    }

    #[test]
    fn rank_one_cofactor() {
        let r = psi_sk(1, 1, 0.5, 6).unwrap();
        assert_eq!(cofactor(&r, 2, 2).unwrap(), r.get(1, 1).clone());
    }
}
