use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qzero::Complex64;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qzero", version, about = "Truncated-operator checks for quantized function algebras at q = 0")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by every subcommand; a `--config` file fills whatever
/// the flags leave unset.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON file with any of: n, dim, margin, tol, q_grid, phases, seed, out, format.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Size of each truncated factor.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub margin: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// `dyadic:K` for 2^-1..2^-K, or a comma-separated decreasing list.
    #[arg(long)]
    pub q_grid: Option<String>,
    /// Semicolon-separated phases, each `re,im` or `deg:θ`.
    #[arg(long, allow_hyphen_values = true)]
    pub phases: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub margin: Option<usize>,
    pub tol: Option<f64>,
    pub q_grid: Option<String>,
    pub phases: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub dim: usize,
    pub margin: usize,
    pub tol: f64,
    pub q_grid: Vec<f64>,
    pub phases: Option<Vec<Complex64>>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub const EXACT_TOL: f64 = 1e-10;
pub const CLASSIFY_TOL: f64 = 1e-6;

impl Common {
    pub fn resolve(&self, default_tol: f64) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let tol = self.tol.or(file.tol).unwrap_or(default_tol);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::usage(format!("tol must be positive, got {tol}")));
        }
        let q_grid = parse_q_grid(self.q_grid.as_deref().or(file.q_grid.as_deref()).unwrap_or("dyadic:10"))?;
        let phases = match self.phases.as_deref().or(file.phases.as_deref()) {
            Some(t) => Some(parse_phase_list(t)?),
            None => None,
        };
        let dim = self.dim.or(file.dim).unwrap_or(6);
        if dim < 2 {
            return Err(CliError::usage(format!("dim must be at least 2, got {dim}")));
        }
        Ok(RunConfig {
            n: self.n.or(file.n).unwrap_or(2),
            dim,
            margin: self.margin.or(file.margin).unwrap_or(4),
            tol,
            q_grid,
            phases,
            seed: self.seed.or(file.seed).unwrap_or(0),
            out: self.out.clone().or(file.out),
            format: self.format.or(file.format).unwrap_or(Format::Json),
        })
    }
}

fn read_config(p: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(p).map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("bad config {}: {e}", p.display())))
}

pub fn parse_q_grid(text: &str) -> Result<Vec<f64>, CliError> {
    if let Some(k) = text.strip_prefix("dyadic:") {
        let k: u32 = k.trim().parse().map_err(|_| CliError::usage(format!("bad q grid {text:?}")))?;
        if k == 0 || k > 60 {
            return Err(CliError::usage("dyadic grid needs 1..=60 steps"));
        }
        return Ok(qzero::crystal::dyadic_grid(k));
    }
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad q value {s:?}"))))
        .collect()
}

/// `re,im` (normalized onto the unit circle, warning when the modulus was
/// off by more than 1e-9) or `deg:θ`.
pub fn parse_phase(text: &str) -> Result<Complex64, CliError> {
    let t = text.trim();
    if let Some(deg) = t.strip_prefix("deg:") {
        let d: f64 = deg.trim().parse().map_err(|_| CliError::usage(format!("bad angle in {t:?}")))?;
        return Ok(Complex64::from_polar(1.0, d.to_radians()));
    }
    let (re, im) = t.split_once(',').ok_or_else(|| CliError::usage(format!("phase {t:?} is not re,im or deg:θ")))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad number in phase {t:?}")));
    let z = Complex64::new(parse(re)?, parse(im)?);
    let m = z.norm();
    if !(m > 0.0 && m.is_finite()) {
        return Err(CliError::usage(format!("phase {t:?} has no direction")));
    }
    if (m - 1.0).abs() > 1e-9 {
        crate::output::warn(&format!("phase {t} has modulus {m}; normalized"));
    }
    Ok(z / m)
}

pub fn parse_phase_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_phase).collect()
}

/// Where a rank-two model comes from: a JSON file or a canonical word.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Representation JSON to read instead of building a model.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Reduced word such as `s1s2s1`; `e` is the empty word.
    #[arg(long, default_value = "e")]
    pub word: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated q-representation for a reduced word, as JSON.
    BuildQrep {
        #[arg(long, default_value = "e")]
        word: String,
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Exchange, star and unitarity relations of q-representations.
    CheckQ {
        #[arg(long, default_value = "e")]
        word: String,
        /// Sweep every reduced word of every element instead of `--word`.
        #[arg(long)]
        all_words: bool,
        /// Comma-separated q values.
        #[arg(long, default_value = "0.5")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quantum determinant and star-formula identities.
    Qdet {
        #[arg(long, default_value = "e")]
        word: String,
        #[arg(long)]
        all_words: bool,
        #[arg(long, default_value = "0.5")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Deviation of the rescaled generators from their q = 0 limit.
    Crystallise {
        #[arg(long, default_value = "e")]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// The q = 0 model of a word, as Representation JSON.
    BuildZero {
        #[arg(long, default_value = "e")]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// The relation catalog at q = 0 on a model.
    CheckZero {
        #[command(flatten)]
        model: ModelArgs,
        /// Add the projection and partial-isometry diagnostics.
        #[arg(long)]
        diagnostics: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Canonical rank-two model, optionally conjugated by a seeded random unitary.
    Canonical {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        scramble: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Case, word and parameters of an irreducible rank-two model.
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        scramble: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Unitary equivalence onto the canonical model.
    Intertwine {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        scramble: bool,
        /// Include the full matrix in the report.
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Coproduct relations, coassociativity and counit on canonical models.
    Bialgebra {
        #[arg(long, default_value = "s1")]
        a: String,
        #[arg(long, default_value = "s2")]
        b: String,
        #[arg(long, default_value = "s1s2")]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Norm that an antipode would force to vanish.
    DemoAntipode {
        #[command(flatten)]
        common: Common,
    },
    /// Distance of a polynomial from the Toeplitz symbols λ ↦ λ².
    DemoToeplitzGap {
        /// Polynomial in the generators; repeatable.
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force minimum sums against the bound r − s.
    LemmaPerm {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluates a polynomial in a model.
    Eval {
        #[arg(long)]
        expr: String,
        /// Second polynomial; report the interior distance to it.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        common: Common,
    },
}
