use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use nu_dirac::potential::{BoundProblem, PotentialSpec, QuantumState, SymmetryLimit};
use nu_dirac::{CentrifugalMode, Transcription};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "nu-dirac", version, about = "Dirac bound states under spin and pseudospin symmetry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels from the analytic eigenvalue equations.
    Spectrum(RunArgs),
    /// Sampled normalized radial wavefunction of one level.
    Wavefunction(RunArgs),
    /// Analytic levels against the shooting oracle (default: validation grid).
    Verify(RunArgs),
    /// Oracle levels with exact vs approximated centrifugal term over α.
    ApproxError(RunArgs),
    /// Table of transcription discrepancies and the selected variants.
    Errata(RunArgs),
}

impl Command {
    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Spectrum(a)
            | Command::Wavefunction(a)
            | Command::Verify(a)
            | Command::ApproxError(a)
            | Command::Errata(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    Hypergeometric,
    Morse,
    #[serde(alias = "poschl_teller")]
    PoschlTeller,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Pseudospin,
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Centrifugal {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

/// Run parameters. Every field can also come from the JSON config file;
/// flags win over file values.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Hypergeometric depth D.
    #[arg(long, allow_hyphen_values = true)]
    pub depth: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Hypergeometric with σ = 1 (Manning–Rosen, A = 0).
    #[arg(long)]
    pub manning_rosen: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub v1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, value_enum)]
    pub symmetry: Option<Symmetry>,
    /// C (pseudospin) or Δ (spin).
    #[arg(long = "const", allow_hyphen_values = true)]
    #[serde(rename = "const")]
    pub constant: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<i32>,
    /// Single radial quantum number; overrides --n-max.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Use the printed eigenvalue equations and parameter sets.
    #[arg(long)]
    pub paper_verbatim: bool,
    #[arg(long, value_enum)]
    pub centrifugal: Option<Centrifugal>,
    /// Wavefunction sample count.
    #[arg(long)]
    pub points: Option<usize>,
    /// α values for approx-error.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long)]
    pub scan_points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub bracket_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub bracket_hi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub e_tol: Option<f64>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! overlay {
    ($flags:ident, $file:ident; opt: $($o:ident),*; flag: $($b:ident),*) => {
        RunArgs {
            $($o: $flags.$o.or($file.$o),)*
            $($b: $flags.$b || $file.$b,)*
            config: None,
        }
    };
}

impl RunArgs {
    /// Merge with the config file, if any.
    pub fn resolve(self) -> Result<RunArgs, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: RunArgs = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        let flags = self;
        Ok(overlay!(flags, file;
            opt: potential, depth, sigma, v1, v2, v0, alpha, mass, symmetry, constant, kappa, n, n_max,
                 centrifugal, points, alphas, scan_points, tol, bracket_lo, bracket_hi, r_max, steps, e_tol,
                 output, out;
            flag: manning_rosen, paper_verbatim))
    }

    pub fn has_problem(&self) -> bool {
        self.potential.is_some() || self.manning_rosen
    }

    pub fn transcription(&self) -> Transcription {
        if self.paper_verbatim {
            Transcription::PaperVerbatim
        } else {
            Transcription::Rederived
        }
    }

    pub fn centrifugal_mode(&self) -> CentrifugalMode {
        match self.centrifugal {
            Some(Centrifugal::Exact) => CentrifugalMode::Exact,
            _ => CentrifugalMode::ApproxExponential,
        }
    }

    pub fn format(&self) -> OutputFormat {
        self.output.unwrap_or_default()
    }

    /// Quantum numbers to solve for.
    pub fn levels(&self, default_max: u32) -> Vec<u32> {
        match self.n {
            Some(n) => vec![n],
            None => (0..=self.n_max.unwrap_or(default_max)).collect(),
        }
    }

    pub fn potential_spec(&self) -> Result<PotentialSpec, CliError> {
        let kind = match (self.potential, self.manning_rosen) {
            (Some(PotentialKind::Hypergeometric) | None, true) => PotentialKind::Hypergeometric,
            (Some(_), true) => {
                return Err(CliError::Usage("--manning-rosen requires the hypergeometric potential".into()))
            }
            (Some(k), false) => k,
            (None, false) => return Err(CliError::Usage("--potential is required".into())),
        };
        let alpha = need(self.alpha, "alpha")?;
        Ok(match kind {
            PotentialKind::Hypergeometric => {
                let sigma = match (self.manning_rosen, self.sigma) {
                    (true, Some(s)) if s != 1.0 => {
                        return Err(CliError::Usage(format!("--manning-rosen fixes sigma = 1, got --sigma {s}")))
                    }
                    (true, _) => 1.0,
                    (false, s) => need(s, "sigma")?,
                };
                PotentialSpec::Hypergeometric { depth: need(self.depth, "depth")?, sigma, alpha }
            }
            PotentialKind::Morse => PotentialSpec::Morse { v1: need(self.v1, "v1")?, v2: need(self.v2, "v2")?, alpha },
            PotentialKind::PoschlTeller => PotentialSpec::PoschlTeller { v0: need(self.v0, "v0")?, alpha },
        })
    }

    pub fn problem(&self) -> Result<BoundProblem, CliError> {
        let potential = self.potential_spec()?;
        self.problem_with(potential)
    }

    pub fn problem_with(&self, potential: PotentialSpec) -> Result<BoundProblem, CliError> {
        let c = self.constant.unwrap_or(0.0);
        let symmetry = match need(self.symmetry, "symmetry")? {
            Symmetry::Pseudospin => SymmetryLimit::Pseudospin { c },
            Symmetry::Spin => SymmetryLimit::Spin { delta: c },
        };
        let kappa = self.kappa.unwrap_or(match potential {
            PotentialSpec::Hypergeometric { .. } => 1,
            _ => 0,
        });
        let mass = need(self.mass, "mass")?;
        BoundProblem::new(potential, symmetry, mass, QuantumState::new(self.n.unwrap_or(0), kappa))
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{} is required", name.replace('_', "-"))))
}
