use serde::Serialize;

use nu_dirac::errata::{Erratum, ERRATA};
use nu_dirac::exec::{self, ExecMode};
use nu_dirac::oracle::{self, OracleConfig};
use nu_dirac::potential::{BoundProblem, PotentialSpec};
use nu_dirac::spectrum::{self, SolverConfig, SpectrumError};
use nu_dirac::validation::{self, OracleOverrides, VerificationRow, VerifyOptions};
use nu_dirac::{wavefunction, CentrifugalMode, EnergyLevel};

use crate::args::{Command, PotentialKind, RunArgs, Symmetry};
use crate::output::{float, opt_float, write_rows, Row};
use crate::CliError;

pub fn execute(command: Command) -> Result<(), CliError> {
    let args = command.args().clone().resolve()?;
    match command {
        Command::Spectrum(_) => run_spectrum(&args),
        Command::Wavefunction(_) => run_wavefunction(&args),
        Command::Verify(_) => run_verify(&args),
        Command::ApproxError(_) => run_approx_error(&args),
        Command::Errata(_) => run_errata(&args),
    }
}

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub kappa: i32,
    pub energy: f64,
    pub residual: f64,
    pub branch: &'static str,
    pub equation_id: &'static str,
    pub grazing: bool,
}

impl Row for SpectrumRow {
    fn header() -> &'static [&'static str] {
        &["n", "kappa", "energy", "residual", "branch", "equation_id", "grazing"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.kappa.to_string(),
            float(self.energy),
            float(self.residual),
            self.branch.to_string(),
            self.equation_id.to_string(),
            self.grazing.to_string(),
        ]
    }
}

impl From<&EnergyLevel> for SpectrumRow {
    fn from(l: &EnergyLevel) -> Self {
        Self {
            n: l.n,
            kappa: l.kappa,
            energy: l.energy,
            residual: l.residual,
            branch: l.branch.label(),
            equation_id: l.equation_id.label(),
            grazing: l.grazing,
        }
    }
}

fn solver_config(args: &RunArgs, prob: &BoundProblem) -> SolverConfig {
    let mut cfg = SolverConfig::for_problem(prob).with_transcription(args.transcription());
    if let Some(v) = args.scan_points {
        cfg.scan_points = v;
    }
    if let Some(v) = args.tol {
        cfg.tol = v;
    }
    if let Some(v) = args.bracket_lo {
        cfg.bracket_lo = v;
    }
    if let Some(v) = args.bracket_hi {
        cfg.bracket_hi = v;
    }
    cfg
}

fn overrides(args: &RunArgs) -> OracleOverrides {
    OracleOverrides { r_max: args.r_max, steps: args.steps, e_tol: args.e_tol }
}

fn solve_levels(args: &RunArgs, prob: &BoundProblem, n: u32) -> Result<Vec<EnergyLevel>, CliError> {
    let p = prob.with_n(n);
    match spectrum::solve(&p, &solver_config(args, &p)) {
        Ok(levels) => Ok(levels),
        Err(SpectrumError::NoRootFound { .. }) | Err(SpectrumError::BracketTooNarrow { .. }) => Ok(Vec::new()),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

pub fn run_spectrum(args: &RunArgs) -> Result<(), CliError> {
    let prob = args.problem()?;
    let ns = args.levels(3);
    let solved = exec::map(ExecMode::from_env(), &ns, |&n| solve_levels(args, &prob, n));
    let mut rows = Vec::new();
    for levels in solved {
        rows.extend(levels?.iter().map(SpectrumRow::from));
    }
    rows.sort_by(|a, b| (a.n, a.kappa).cmp(&(b.n, b.kappa)).then(a.energy.total_cmp(&b.energy)));
    write_rows(&rows, args.format(), args.out.as_deref())?;
    if rows.is_empty() {
        return Err(CliError::Empty("no bound level found".into()));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct WavefunctionRow {
    pub r: f64,
    pub value: f64,
}

impl Row for WavefunctionRow {
    fn header() -> &'static [&'static str] {
        &["r", "value"]
    }
    fn cells(&self) -> Vec<String> {
        vec![float(self.r), float(self.value)]
    }
}

pub fn run_wavefunction(args: &RunArgs) -> Result<(), CliError> {
    let prob = args.problem()?;
    let points = args.points.unwrap_or(500);
    if points < 2 {
        return Err(CliError::Usage("--points must be >= 2".into()));
    }
    let n = args.n.unwrap_or(0);
    let levels = solve_levels(args, &prob, n)?;
    let level = levels.first().ok_or_else(|| CliError::Empty(format!("no bound level with n = {n}")))?;
    let w = wavefunction::build_with(&prob, level, args.transcription())
        .map_err(|e| CliError::Empty(format!("level n = {n} has no wavefunction: {e}")))?;
    let rows: Vec<WavefunctionRow> =
        wavefunction::sample_grid(&w, points).into_iter().map(|r| WavefunctionRow { r, value: w.value(r) }).collect();
    write_rows(&rows, args.format(), args.out.as_deref())
}

impl Row for VerificationRow {
    fn header() -> &'static [&'static str] {
        &[
            "case",
            "n",
            "kappa",
            "equation_id",
            "e_analytic",
            "e_oracle",
            "rel_diff",
            "ode_residual",
            "nodes",
            "node_check",
            "approx_error",
            "pass",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.case.clone(),
            self.n.to_string(),
            self.kappa.to_string(),
            self.equation_id.clone(),
            opt_float(self.e_analytic),
            opt_float(self.e_oracle),
            opt_float(self.rel_diff),
            opt_float(self.ode_residual),
            self.nodes.map(|v| v.to_string()).unwrap_or_default(),
            self.node_check.to_string(),
            opt_float(self.approx_error),
            self.pass.to_string(),
        ]
    }
}

fn case_id(prob: &BoundProblem) -> String {
    let limit = if prob.symmetry.is_pseudospin() { "pseudospin" } else { "spin" };
    format!("{}-{}", prob.potential.name(), limit)
}

pub fn run_verify(args: &RunArgs) -> Result<(), CliError> {
    let opts = VerifyOptions {
        transcription: args.transcription(),
        exact_centrifugal: args.centrifugal_mode() == CentrifugalMode::Exact,
        exec: ExecMode::from_env(),
        oracle: overrides(args),
    };
    let rows = if args.has_problem() {
        let prob = args.problem()?;
        let n_max = args.n.or(args.n_max).unwrap_or(3);
        let mut rows = validation::verify_problem(&case_id(&prob), &prob, n_max, &opts);
        if let Some(n) = args.n {
            rows.retain(|r| r.n == n);
        }
        rows
    } else {
        validation::verify_grid(&opts)
    };
    write_rows(&rows, args.format(), args.out.as_deref())?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} of {} rows failed", rows.len())));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct ApproxRow {
    pub alpha: f64,
    pub n: u32,
    pub kappa: i32,
    pub e_analytic: Option<f64>,
    pub e_approx: Option<f64>,
    pub e_exact: Option<f64>,
    pub gap: Option<f64>,
}

impl Row for ApproxRow {
    fn header() -> &'static [&'static str] {
        &["alpha", "n", "kappa", "e_analytic", "e_approx", "e_exact", "gap"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            float(self.alpha),
            self.n.to_string(),
            self.kappa.to_string(),
            opt_float(self.e_analytic),
            opt_float(self.e_approx),
            opt_float(self.e_exact),
            opt_float(self.gap),
        ]
    }
}

/// Without a problem on the command line: hypergeometric spin, κ = 2.
fn approx_defaults(args: &RunArgs) -> RunArgs {
    let mut a = args.clone();
    if !a.has_problem() {
        a.potential = Some(PotentialKind::Hypergeometric);
        a.depth = a.depth.or(Some(1.0));
        a.sigma = a.sigma.or(Some(3.0));
        a.mass = a.mass.or(Some(5.0));
        a.symmetry = a.symmetry.or(Some(Symmetry::Spin));
        a.kappa = a.kappa.or(Some(2));
    }
    a
}

fn with_alpha(p: PotentialSpec, alpha: f64) -> PotentialSpec {
    match p {
        PotentialSpec::Hypergeometric { depth, sigma, .. } => PotentialSpec::Hypergeometric { depth, sigma, alpha },
        PotentialSpec::Morse { v1, v2, .. } => PotentialSpec::Morse { v1, v2, alpha },
        PotentialSpec::PoschlTeller { v0, .. } => PotentialSpec::PoschlTeller { v0, alpha },
    }
}

pub fn run_approx_error(args: &RunArgs) -> Result<(), CliError> {
    let args = approx_defaults(args);
    let alphas = args.alphas.clone().unwrap_or_else(|| vec![0.4, 0.2, 0.1]);
    if alphas.is_empty() {
        return Err(CliError::Usage("--alphas must not be empty".into()));
    }
    let ns = args.levels(0);
    let n_max = *ns.iter().max().unwrap_or(&0);
    let mut rows = Vec::new();
    for &alpha in &alphas {
        let mut a = args.clone();
        a.alpha = Some(alpha);
        let base = a.potential_spec()?;
        let prob = a.problem_with(with_alpha(base, alpha))?;
        let ov = overrides(&a);
        let oracle_at = |mode: CentrifugalMode| {
            let cfg = ov.apply(OracleConfig::for_problem(&prob).with_mode(mode));
            oracle::find_levels(&prob, &cfg, n_max).map_err(|e| CliError::Usage(e.to_string()))
        };
        let approx = oracle_at(CentrifugalMode::ApproxExponential)?;
        let exact = oracle_at(CentrifugalMode::Exact)?;
        for &n in &ns {
            let e_approx = approx[n as usize].as_ref().ok().map(|l| l.energy);
            let e_exact = exact[n as usize].as_ref().ok().map(|l| l.energy);
            let e_analytic = solve_levels(&a, &prob, n)?.first().map(|l| l.energy);
            if e_analytic.is_none() && e_approx.is_none() && e_exact.is_none() {
                continue;
            }
            rows.push(ApproxRow {
                alpha,
                n,
                kappa: prob.state.kappa,
                e_analytic,
                e_approx,
                e_exact,
                gap: e_approx.zip(e_exact).map(|(x, y)| (x - y).abs()),
            });
        }
    }
    write_rows(&rows, args.format(), args.out.as_deref())?;
    if rows.is_empty() {
        return Err(CliError::Empty("no bound level at any alpha".into()));
    }
    Ok(())
}

impl Row for Erratum {
    fn header() -> &'static [&'static str] {
        &["id", "location", "printed", "rederived", "selected", "evidence"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            self.location.to_string(),
            self.printed.to_string(),
            self.rederived.to_string(),
            self.selected.label().to_string(),
            self.evidence.to_string(),
        ]
    }
}

pub fn run_errata(args: &RunArgs) -> Result<(), CliError> {
    write_rows(ERRATA, args.format(), args.out.as_deref())
}
