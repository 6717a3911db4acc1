use qzero::areps::{canonical_model, roots_of_unity, toeplitz_gap_demo, CanonicalModel};
use qzero::azero::{check_relations, eval_star_poly, parse_star_poly, projection_diagnostics, Representation};
use qzero::bialg::{antipode_report, check_bialgebra};
use qzero::classifier::{build_intertwiner, canonical_dim, classify, ClassificationReport, ClassifyOptions, OrbitColumn};
use qzero::crystal::{crystal_gens_limit, limit_scan, Verdict};
use qzero::json::{canonical_to_json, qrep_to_json, read_rep, rep_to_json, MatrixJson};
use qzero::kernel::{interior_residual, FactorSpec};
use qzero::qrep::{
    all_reduced_words, build_qrep, check_determinant, check_star_formula, check_t_relations, lemma_perm_min, ReducedWord,
};
use qzero::relations::RelationReport;
use qzero::Complex64;
use serde::Serialize;

use crate::config::{parse_phase, parse_q_grid, Command, ModelArgs, RunConfig, CLASSIFY_TOL, EXACT_TOL};
use crate::output::{emit, indices, num, Table};
use crate::scramble::block_unitary;
use crate::CliError;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn phases_for(cfg: &RunConfig, n: usize) -> Result<Vec<Complex64>, CliError> {
    let p = cfg.phases.clone().unwrap_or_else(|| vec![one(); n]);
    if p.len() != n {
        return Err(CliError::usage(format!("expected {n} phases, got {}", p.len())));
    }
    Ok(p)
}

fn rank_two_phases(model: &ModelArgs, cfg: &RunConfig) -> Result<(Complex64, Complex64), CliError> {
    let base = phases_for(&RunConfig { phases: cfg.phases.clone(), ..cfg.clone() }, 2)?;
    let l = model.lambda.as_deref().map(parse_phase).transpose()?.unwrap_or(base[0]);
    let m = model.mu.as_deref().map(parse_phase).transpose()?.unwrap_or(base[1]);
    Ok((l, m))
}

fn canonical(model: &ModelArgs, cfg: &RunConfig) -> Result<CanonicalModel, CliError> {
    let (l, m) = rank_two_phases(model, cfg)?;
    Ok(canonical_model(l, m, &ReducedWord::parse(2, &model.word)?, cfg.dim)?)
}

fn load_model(model: &ModelArgs, cfg: &RunConfig) -> Result<Representation, CliError> {
    if let Some(p) = &model.input {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?;
        return Ok(read_rep(&text)?);
    }
    if cfg.n == 2 || model.lambda.is_some() || model.mu.is_some() {
        return Ok(canonical(model, cfg)?.rep);
    }
    let word = ReducedWord::parse(cfg.n, &model.word)?;
    Ok(crystal_gens_limit(cfg.n, &phases_for(cfg, cfg.n)?, &word, cfg.dim)?)
}

fn scrambled(r: Representation, on: bool, cfg: &RunConfig) -> Result<Representation, CliError> {
    if !on {
        return Ok(r);
    }
    let u = block_unitary(cfg.seed, r.shape(), cfg.margin)?;
    Ok(r.conjugate(&u)?)
}

fn relation_table(report: &RelationReport) -> Table {
    Table {
        header: vec!["id", "indices", "residual"],
        rows: report.relations.iter().map(|r| vec![r.id.clone(), indices(&r.indices), num(r.residual)]).collect(),
    }
}

fn parse_qs(text: &str) -> Result<Vec<f64>, CliError> {
    parse_q_grid(text)
}

#[derive(Serialize)]
struct Run {
    word: String,
    q: f64,
    report: RelationReport,
}

#[derive(Serialize)]
struct Sweep {
    runs: Vec<Run>,
    pass: bool,
}

fn q_sweep(
    word: &str,
    all_words: bool,
    qs: &str,
    cfg: &RunConfig,
    check: impl Fn(&qzero::qrep::QRepresentation) -> qzero::Result<RelationReport>,
) -> Result<bool, CliError> {
    let n = cfg.n;
    let phases = phases_for(cfg, n)?;
    let words = if all_words { all_reduced_words(n) } else { vec![ReducedWord::parse(n, word)?] };
    let mut runs = Vec::new();
    for w in &words {
        for &q in &parse_qs(qs)? {
            let r = build_qrep(n, &phases, w, q, cfg.dim)?;
            runs.push(Run { word: w.to_string(), q, report: check(&r)? });
        }
    }
    let pass = runs.iter().all(|r| r.report.pass);
    let table = Table {
        header: vec!["word", "q", "id", "indices", "residual"],
        rows: runs
            .iter()
            .flat_map(|run| {
                run.report.relations.iter().map(move |r| {
                    vec![run.word.clone(), run.q.to_string(), r.id.clone(), indices(&r.indices), num(r.residual)]
                })
            })
            .collect(),
    };
    if runs.len() == 1 {
        emit(&runs[0].report, Some(table), cfg.format, cfg.out.as_deref())?;
    } else {
        emit(&Sweep { runs, pass }, Some(table), cfg.format, cfg.out.as_deref())?;
    }
    Ok(pass)
}

#[derive(Serialize)]
struct IntertwinerJson {
    case: u8,
    word: String,
    canonical_params: (Complex64, Complex64),
    canonical_dim: usize,
    anchor: Vec<Complex64>,
    orbit: Vec<OrbitColumn>,
    residual: f64,
    isometry_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Serialize)]
struct GapRow {
    expr: String,
    gap: f64,
}

#[derive(Serialize)]
struct LemmaRow {
    r: usize,
    s: usize,
    min_sum: usize,
    bound: usize,
    ok: bool,
}

#[derive(Serialize)]
struct LemmaReport {
    n: usize,
    rows: Vec<LemmaRow>,
    pass: bool,
}

#[derive(Serialize)]
struct EvalReport {
    expr: String,
    shape: Vec<FactorSpec>,
    op_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interior_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixJson>,
}

fn classification_table(r: &ClassificationReport) -> Table {
    let c = |z: Complex64| format!("{},{}", z.re, z.im);
    Table {
        header: vec!["case", "word", "lambda", "mu", "intertwiner_residual", "z31", "z32", "z21", "z21_z32"],
        rows: vec![vec![
            r.case.to_string(),
            qzero::qrep::perm::display_letters(&r.word),
            c(r.canonical_params.0),
            c(r.canonical_params.1),
            num(r.intertwiner_residual),
            num(r.norms.z31),
            num(r.norms.z32),
            num(r.norms.z21),
            num(r.norms.z21_z32),
        ]],
    }
}

/// Runs one subcommand; `Ok(false)` means a check failed.
pub fn run(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::BuildQrep { word, q, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let w = ReducedWord::parse(cfg.n, &word)?;
            let r = build_qrep(cfg.n, &phases_for(&cfg, cfg.n)?, &w, q, cfg.dim)?;
            emit(&qrep_to_json(&r)?, None, cfg.format, cfg.out.as_deref())?;
            Ok(true)
        }
        Command::CheckQ { word, all_words, q, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let (tol, margin) = (cfg.tol, cfg.margin);
            q_sweep(&word, all_words, &q, &cfg, |r| check_t_relations(r, tol, margin))
        }
        Command::Qdet { word, all_words, q, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let (tol, margin) = (cfg.tol, cfg.margin);
            q_sweep(&word, all_words, &q, &cfg, |r| {
                Ok(check_determinant(r, tol, margin)?.merge(check_star_formula(r, tol, margin)?, tol))
            })
        }
        Command::Crystallise { word, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let w = ReducedWord::parse(cfg.n, &word)?;
            let rep = limit_scan(cfg.n, &phases_for(&cfg, cfg.n)?, &w, cfg.dim, &cfg.q_grid)?;
            let table = Table {
                header: vec!["q", "deviation", "slope"],
                rows: (0..rep.q.len())
                    .map(|k| {
                        let slope = if k == 0 { String::new() } else { num(rep.slope[k - 1]) };
                        vec![rep.q[k].to_string(), num(rep.deviation[k]), slope]
                    })
                    .collect(),
            };
            emit(&rep, Some(table), cfg.format, cfg.out.as_deref())?;
            Ok(rep.verdict == Verdict::Converged)
        }
        Command::BuildZero { word, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let w = ReducedWord::parse(cfg.n, &word)?;
            let r = crystal_gens_limit(cfg.n, &phases_for(&cfg, cfg.n)?, &w, cfg.dim)?;
            emit(&rep_to_json(&r)?, None, cfg.format, cfg.out.as_deref())?;
            Ok(true)
        }
        Command::CheckZero { model, diagnostics, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let r = load_model(&model, &cfg)?;
            let mut report = check_relations(&r, cfg.tol, cfg.margin)?;
            if diagnostics {
                report = report.merge(projection_diagnostics(&r, cfg.tol, cfg.margin)?, cfg.tol);
            }
            emit(&report, Some(relation_table(&report)), cfg.format, cfg.out.as_deref())?;
            Ok(report.pass)
        }
        Command::Canonical { model, scramble, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let mut m = canonical(&model, &cfg)?;
            m.rep = scrambled(m.rep, scramble, &cfg)?;
            emit(&canonical_to_json(&m)?, None, cfg.format, cfg.out.as_deref())?;
            Ok(true)
        }
        Command::Classify { model, scramble, common } => {
            let cfg = common.resolve(CLASSIFY_TOL)?;
            let r = scrambled(load_model(&model, &cfg)?, scramble, &cfg)?;
            let opts = ClassifyOptions { tol: cfg.tol, margin: cfg.margin, verify_relations: true };
            let report = classify(&r, &opts)?;
            emit(&report, Some(classification_table(&report)), cfg.format, cfg.out.as_deref())?;
            Ok(report.intertwiner_residual <= cfg.tol)
        }
        Command::Intertwine { model, scramble, matrix, common } => {
            let cfg = common.resolve(CLASSIFY_TOL)?;
            let r = scrambled(load_model(&model, &cfg)?, scramble, &cfg)?;
            let opts = ClassifyOptions { tol: cfg.tol, margin: cfg.margin, verify_relations: true };
            let report = classify(&r, &opts)?;
            let dim = canonical_dim(&r);
            let u = build_intertwiner(&r, &report, dim, cfg.margin)?;
            let out = IntertwinerJson {
                case: report.case,
                word: qzero::qrep::perm::display_letters(&report.word),
                canonical_params: report.canonical_params,
                canonical_dim: dim,
                anchor: u.anchor.clone(),
                orbit: u.orbit.clone(),
                residual: u.residual,
                isometry_defect: u.isometry_defect,
                matrix: matrix.then(|| {
                    (0..u.matrix.nrows())
                        .map(|i| (0..u.matrix.ncols()).map(|j| [u.matrix[(i, j)].re, u.matrix[(i, j)].im]).collect())
                        .collect()
                }),
            };
            emit(&out, None, cfg.format, cfg.out.as_deref())?;
            Ok(u.residual <= cfg.tol && u.isometry_defect <= cfg.tol)
        }
        Command::Bialgebra { a, b, c, lambda, mu, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let model = |w: &str| -> Result<Representation, CliError> {
                let args = ModelArgs { input: None, word: w.to_string(), lambda: lambda.clone(), mu: mu.clone() };
                Ok(canonical(&args, &cfg)?.rep)
            };
            let report = check_bialgebra(&model(&a)?, &model(&b)?, &model(&c)?, cfg.tol, cfg.margin)?;
            let mut table = relation_table(&report.relation_preservation);
            table.header = vec!["check", "indices", "residual"];
            for (name, rows) in [
                ("coassociativity", &report.coassociativity),
                ("counit-left", &report.counit_left),
                ("counit-right", &report.counit_right),
            ] {
                for g in rows {
                    table.rows.push(vec![name.to_string(), indices(&[g.i, g.j]), num(g.residual)]);
                }
            }
            table.rows.push(vec!["antipode-obstruction".into(), String::new(), num(report.antipode_obstruction)]);
            emit(&report, Some(table), cfg.format, cfg.out.as_deref())?;
            Ok(report.pass)
        }
        Command::DemoAntipode { common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let rep = antipode_report(cfg.dim)?;
            let table = Table {
                header: vec!["dim", "obstruction", "coisometry_residual", "first_relation_residual"],
                rows: vec![vec![
                    rep.dim.to_string(),
                    num(rep.obstruction),
                    num(rep.coisometry_residual),
                    num(rep.first_relation_residual),
                ]],
            };
            emit(&rep, Some(table), cfg.format, cfg.out.as_deref())?;
            Ok((rep.obstruction - 1.0).abs() <= 1e-12)
        }
        Command::DemoToeplitzGap { exprs, samples, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            if samples == 0 {
                return Err(CliError::usage("samples must be positive"));
            }
            let sample = roots_of_unity(samples);
            let rows = exprs
                .iter()
                .map(|e| Ok(GapRow { expr: e.clone(), gap: toeplitz_gap_demo(e, &sample)? }))
                .collect::<Result<Vec<_>, CliError>>()?;
            let pass = rows.iter().all(|r| r.gap >= 1.0 - 1e-12);
            let table = Table {
                header: vec!["expr", "gap"],
                rows: rows.iter().map(|r| vec![r.expr.clone(), num(r.gap)]).collect(),
            };
            emit(&rows, Some(table), cfg.format, cfg.out.as_deref())?;
            Ok(pass)
        }
        Command::LemmaPerm { common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let n = cfg.n;
            let mut rows = Vec::new();
            for r in 2..=n + 1 {
                for s in 1..r {
                    let min_sum = lemma_perm_min(n, r, s)?;
                    rows.push(LemmaRow { r, s, min_sum, bound: r - s, ok: min_sum >= r - s });
                }
            }
            let pass = rows.iter().all(|r| r.ok);
            let table = Table {
                header: vec!["r", "s", "min_sum", "bound", "ok"],
                rows: rows
                    .iter()
                    .map(|x| vec![x.r.to_string(), x.s.to_string(), x.min_sum.to_string(), x.bound.to_string(), x.ok.to_string()])
                    .collect(),
            };
            emit(&LemmaReport { n, rows, pass }, Some(table), cfg.format, cfg.out.as_deref())?;
            Ok(pass)
        }
        Command::Eval { expr, expect, model, matrix, common } => {
            let cfg = common.resolve(EXACT_TOL)?;
            let r = load_model(&model, &cfg)?;
            let p = parse_star_poly(&expr)?;
            let op = eval_star_poly(&p, &r.gens)?;
            let residual = match &expect {
                Some(e) => Some(interior_residual(&op, &eval_star_poly(&parse_star_poly(e)?, &r.gens)?, cfg.margin)?),
                None => None,
            };
            let report = EvalReport {
                expr: p.to_string(),
                shape: op.shape().factors().to_vec(),
                op_norm: op.op_norm(),
                expect,
                interior_residual: residual,
                matrix: if matrix { Some(MatrixJson::from_operator(&op)?) } else { None },
            };
            emit(&report, None, cfg.format, cfg.out.as_deref())?;
            Ok(residual.is_none_or(|x| x <= cfg.tol))
        }
    }
}
