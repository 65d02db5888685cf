//! The validation grid and the analytic-vs-oracle comparison run over it.

use serde::{Deserialize, Serialize};

use crate::errata::Transcription;
use crate::exec::{self, ExecMode};
use crate::oracle::{self, OracleConfig};
use crate::potential::{BoundProblem, CentrifugalMode, PotentialSpec, QuantumState, SymmetryLimit};
use crate::spectrum::{self, EnergyLevel, SolverConfig};
use crate::wavefunction;

/// Pass threshold on |E_analytic − E_oracle| / |E_analytic|.
pub const REL_TOL: f64 = 1e-5;
/// Pass threshold on the closed-form ODE residual.
pub const ODE_TOL: f64 = 1e-5;
const GRID_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationCase {
    pub id: &'static str,
    pub problem: BoundProblem,
    pub n_max: u32,
}

fn case(
    id: &'static str,
    potential: PotentialSpec,
    symmetry: SymmetryLimit,
    mass: f64,
    kappa: i32,
    n_max: u32,
) -> ValidationCase {
    ValidationCase {
        id,
        problem: BoundProblem { potential, symmetry, mass, state: QuantumState::new(0, kappa) },
        n_max,
    }
}

/// Twelve problems: two parameter sets per potential and symmetry limit,
/// with σ = 1 standing in for Manning–Rosen.
pub fn validation_grid() -> Vec<ValidationCase> {
    use PotentialSpec::*;
    use SymmetryLimit::*;
    vec![
        case("morse-spin-a", Morse { v1: 4.0, v2: 8.0, alpha: 0.5 }, Spin { delta: 0.0 }, 5.0, 0, 3),
        case("morse-spin-b", Morse { v1: 2.0, v2: 6.0, alpha: 0.8 }, Spin { delta: 1.0 }, 3.0, -1, 3),
        case("morse-pseudospin-a", Morse { v1: 4.0, v2: 8.0, alpha: 0.5 }, Pseudospin { c: -12.0 }, 5.0, 0, 3),
        case("morse-pseudospin-b", Morse { v1: 2.0, v2: 6.0, alpha: 0.8 }, Pseudospin { c: -8.0 }, 3.0, 1, 3),
        case("poschl-teller-spin", PoschlTeller { v0: 2.0, alpha: 0.5 }, Spin { delta: 0.0 }, 3.0, 0, 3),
        case("poschl-teller-pseudospin", PoschlTeller { v0: 2.0, alpha: 0.5 }, Pseudospin { c: -8.0 }, 3.0, 0, 3),
        case(
            "hypergeometric-pseudospin-k1",
            Hypergeometric { depth: 0.03, sigma: -8.0, alpha: 1.0 },
            Pseudospin { c: 2.0 },
            5.0,
            1,
            2,
        ),
        case(
            "hypergeometric-pseudospin-k2",
            Hypergeometric { depth: 0.02, sigma: -12.0, alpha: 0.5 },
            Pseudospin { c: 10.0 },
            5.0,
            2,
            3,
        ),
        case(
            "hypergeometric-spin-k1",
            Hypergeometric { depth: 1.0, sigma: 3.0, alpha: 0.5 },
            Spin { delta: 0.0 },
            5.0,
            1,
            2,
        ),
        case(
            "hypergeometric-spin-k2",
            Hypergeometric { depth: 2.0, sigma: 2.0, alpha: 0.3 },
            Spin { delta: 0.0 },
            3.0,
            2,
            2,
        ),
        case(
            "manning-rosen-pseudospin",
            Hypergeometric { depth: 1.0, sigma: 1.0, alpha: 0.5 },
            Pseudospin { c: 0.0 },
            5.0,
            1,
            2,
        ),
        case(
            "manning-rosen-spin",
            Hypergeometric { depth: 1.0, sigma: 1.0, alpha: 0.5 },
            Spin { delta: 0.0 },
            5.0,
            1,
            2,
        ),
    ]
}

/// Optional replacements for the oracle defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleOverrides {
    pub r_max: Option<f64>,
    pub steps: Option<usize>,
    pub e_tol: Option<f64>,
}

impl OracleOverrides {
    pub fn apply(&self, mut cfg: OracleConfig) -> OracleConfig {
        if let Some(v) = self.r_max {
            cfg.r_max = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = self.e_tol {
            cfg.e_tol = v;
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub transcription: Transcription,
    /// Also run the oracle with the exact 1/r² term and report the shift.
    pub exact_centrifugal: bool,
    pub exec: ExecMode,
    pub oracle: OracleOverrides,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            transcription: Transcription::Rederived,
            exact_centrifugal: false,
            exec: ExecMode::from_env(),
            oracle: OracleOverrides::default(),
        }
    }
}

/// One (problem, n) comparison. A row where neither side finds a level is a
/// pass: both agree there is none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub case: String,
    pub n: u32,
    pub kappa: i32,
    pub equation_id: String,
    pub e_analytic: Option<f64>,
    pub e_oracle: Option<f64>,
    pub rel_diff: Option<f64>,
    pub ode_residual: Option<f64>,
    pub nodes: Option<usize>,
    pub node_check: bool,
    /// (E_oracle,exact − E_analytic)/|E_analytic| when requested.
    pub approx_error: Option<f64>,
    pub pass: bool,
}

fn analytic_level(prob: &BoundProblem, t: Transcription, near: Option<f64>) -> Option<EnergyLevel> {
    let cfg = SolverConfig::for_problem(prob).with_transcription(t);
    let levels = spectrum::solve(prob, &cfg).ok()?;
    match near {
        Some(e) => levels.into_iter().min_by(|a, b| (a.energy - e).abs().total_cmp(&(b.energy - e).abs())),
        None => levels.into_iter().next(),
    }
}

fn oracle_levels(prob: &BoundProblem, n_max: u32, mode: CentrifugalMode, opts: &VerifyOptions) -> Vec<Option<f64>> {
    let cfg = OracleConfig { exec: opts.exec, ..opts.oracle.apply(OracleConfig::for_problem(prob).with_mode(mode)) };
    match oracle::find_levels(prob, &cfg, n_max) {
        Ok(levels) => levels.into_iter().map(|l| l.ok().map(|l| l.energy)).collect(),
        Err(_) => vec![None; n_max as usize + 1],
    }
}

/// Compare the analytic spectrum (in the chosen transcription) with the
/// shooting oracle for n = 0..=n_max.
pub fn verify_problem(id: &str, prob: &BoundProblem, n_max: u32, opts: &VerifyOptions) -> Vec<VerificationRow> {
    let oracle = oracle_levels(prob, n_max, CentrifugalMode::ApproxExponential, opts);
    let exact = if opts.exact_centrifugal {
        oracle_levels(prob, n_max, CentrifugalMode::Exact, opts)
    } else {
        vec![None; n_max as usize + 1]
    };
    let ns: Vec<u32> = (0..=n_max).collect();
    exec::map(opts.exec, &ns, |&n| {
        let p = prob.with_n(n);
        let e_oracle = oracle[n as usize];
        let level = analytic_level(&p, opts.transcription, e_oracle);
        let e_analytic = level.map(|l| l.energy);
        let rel_diff = match (e_analytic, e_oracle) {
            (Some(a), Some(o)) => Some((a - o).abs() / a.abs()),
            _ => None,
        };
        let (ode_residual, nodes) = match level.map(|l| wavefunction::build_with(&p, &l, opts.transcription)) {
            Some(Ok(w)) => {
                let grid = wavefunction::sample_grid(&w, GRID_POINTS);
                (Some(wavefunction::ode_residual(&w, &p, &grid)), Some(wavefunction::node_count(&w, &grid)))
            }
            _ => (None, None),
        };
        let node_check = nodes == Some(n as usize);
        let approx_error = match (e_analytic, exact[n as usize]) {
            (Some(a), Some(x)) => Some((x - a) / a.abs()),
            _ => None,
        };
        let pass = match (e_analytic, e_oracle) {
            (None, None) => true,
            (Some(_), Some(_)) => {
                rel_diff.is_some_and(|d| d < REL_TOL) && ode_residual.is_some_and(|r| r < ODE_TOL) && node_check
            }
            _ => false,
        };
        VerificationRow {
            case: id.to_string(),
            n,
            kappa: prob.state.kappa,
            equation_id: spectrum::equation_for(prob).label().to_string(),
            e_analytic,
            e_oracle,
            rel_diff,
            ode_residual,
            nodes,
            node_check,
            approx_error,
            pass,
        }
    })
}

pub fn verify_grid(opts: &VerifyOptions) -> Vec<VerificationRow> {
    validation_grid().iter().flat_map(|c| verify_problem(c.id, &c.problem, c.n_max, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_valid() {
        let g = validation_grid();
        assert_eq!(g.len(), 12);
        for c in &g {
            c.problem.validate().unwrap();
        }
        assert_eq!(g.iter().filter(|c| c.problem.potential.is_manning_rosen()).count(), 2);
    }

    #[test]
    fn morse_spin_rows_pass() {
        let c = validation_grid()[0];
        let rows = verify_problem(c.id, &c.problem, 1, &VerifyOptions::default());
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }
}
