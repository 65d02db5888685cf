use nu_dirac::exec::ExecMode;
use nu_dirac::oracle::{eigenfunction, find_levels, OracleConfig, OracleError};
use nu_dirac::validation::validation_grid;
use nu_dirac::{BoundProblem, PotentialSpec, QuantumState, SymmetryLimit};

fn case(id: &str) -> BoundProblem {
    validation_grid().into_iter().find(|c| c.id == id).unwrap().problem
}

fn energies(prob: &BoundProblem, cfg: &OracleConfig, n_max: u32) -> Vec<f64> {
    find_levels(prob, cfg, n_max).unwrap().into_iter().map(|l| l.unwrap().energy).collect()
}

fn fixed(prob: &BoundProblem) -> OracleConfig {
    OracleConfig { auto_extend: false, exec: ExecMode::Serial, ..OracleConfig::for_problem(prob) }
}

#[test]
fn halving_the_step_is_converged() {
    for id in ["morse-spin-a", "poschl-teller-pseudospin", "hypergeometric-spin-k1", "hypergeometric-pseudospin-k2"] {
        let p = case(id);
        let cfg = fixed(&p);
        let fine = OracleConfig { steps: 2 * cfg.steps, ..cfg };
        for (a, b) in energies(&p, &cfg, 1).iter().zip(energies(&p, &fine, 1)) {
            assert!((a - b).abs() < 10.0 * cfg.e_tol * a.abs().max(1.0), "{id}: {a} vs {b}");
        }
    }
}

#[test]
fn doubling_r_max_changes_nothing() {
    for id in ["morse-pseudospin-b", "poschl-teller-spin", "hypergeometric-spin-k2"] {
        let p = case(id);
        let cfg = fixed(&p);
        let wide = OracleConfig { r_max: 2.0 * cfg.r_max, ..cfg };
        for (a, b) in energies(&p, &cfg, 2).iter().zip(energies(&p, &wide, 2)) {
            assert!((a - b).abs() < 10.0 * cfg.e_tol * a.abs().max(1.0), "{id}: {a} vs {b}");
        }
    }
}

fn sign_changes(ys: &[(f64, f64)]) -> usize {
    let vals: Vec<f64> = ys.iter().map(|p| p.1).filter(|v| v.abs() > 1e-8).collect();
    vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

#[test]
fn nth_level_has_n_nodes() {
    for id in ["morse-spin-a", "poschl-teller-pseudospin", "hypergeometric-spin-k1"] {
        let p = case(id);
        let cfg = OracleConfig::for_problem(&p);
        for (n, e) in energies(&p, &cfg, 2).into_iter().enumerate() {
            let u = eigenfunction(&p, e, &cfg, 4000).unwrap();
            assert_eq!(sign_changes(&u), n, "{id} n={n}");
        }
    }
}

#[test]
fn serial_and_parallel_agree() {
    let p = case("morse-spin-b");
    let serial = OracleConfig { exec: ExecMode::Serial, ..OracleConfig::for_problem(&p) };
    let parallel = OracleConfig { exec: ExecMode::Parallel { threads: None }, ..serial };
    assert_eq!(find_levels(&p, &serial, 3).unwrap(), find_levels(&p, &parallel, 3).unwrap());
}

#[test]
fn morse_without_attraction_binds_nothing() {
    // V₂ = 0 leaves a purely repulsive exponential wall
    for symmetry in [SymmetryLimit::Pseudospin { c: 0.0 }, SymmetryLimit::Spin { delta: 0.0 }] {
        let p = BoundProblem::new(
            PotentialSpec::Morse { v1: 4.0, v2: 0.0, alpha: 0.5 },
            symmetry,
            1.0,
            QuantumState::new(0, 0),
        )
        .unwrap();
        let levels = find_levels(&p, &OracleConfig::for_problem(&p), 1).unwrap();
        assert!(levels.iter().all(|l| matches!(l, Err(OracleError::LevelAbsent { .. }))), "{levels:?}");
    }
}
