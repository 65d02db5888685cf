//! Energy eigenvalue equations for each potential and symmetry limit, and a
//! scan-plus-bisection root finder over their real-domain windows.
//!
//! The re-derived equations are written unsquared so that their zeros are
//! exactly the normalizable roots of the general quantization condition.
//! The printed forms are available through [`Transcription::PaperVerbatim`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::errata::Transcription;
use crate::potential::{beta_sq, BoundProblem, ModelError, PotentialSpec, SymmetryLimit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquationId {
    Eq34,
    Eq36,
    Eq39,
    Eq41,
    Eq45,
    Eq48,
    Eq53,
    Eq56,
    /// Level located by the numerical shooting oracle.
    Oracle,
}

impl EquationId {
    pub fn label(self) -> &'static str {
        match self {
            EquationId::Eq34 => "eq34",
            EquationId::Eq36 => "eq36",
            EquationId::Eq39 => "eq39",
            EquationId::Eq41 => "eq41",
            EquationId::Eq45 => "eq45",
            EquationId::Eq48 => "eq48",
            EquationId::Eq53 => "eq53",
            EquationId::Eq56 => "eq56",
            EquationId::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergyBranch {
    PseudospinNegative,
    SpinPositive,
}

impl EnergyBranch {
    pub fn of(symmetry: &SymmetryLimit) -> Self {
        if symmetry.is_pseudospin() {
            EnergyBranch::PseudospinNegative
        } else {
            EnergyBranch::SpinPositive
        }
    }

    pub fn admits(self, e: f64) -> bool {
        match self {
            EnergyBranch::PseudospinNegative => e < 0.0,
            EnergyBranch::SpinPositive => e > 0.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EnergyBranch::PseudospinNegative => "pseudospin_negative",
            EnergyBranch::SpinPositive => "spin_positive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub energy: f64,
    pub n: u32,
    pub kappa: i32,
    pub residual: f64,
    pub branch: EnergyBranch,
    pub equation_id: EquationId,
    /// Root sits on the edge of a real-domain window.
    pub grazing: bool,
}

/// A square-root argument went negative: E is outside the window where the
/// eigenvalue equation is real.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("square-root argument {argument} < 0")]
pub struct DomainViolation {
    pub argument: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("no root found; real-domain windows scanned: {windows:?}")]
    NoRootFound { windows: Vec<(f64, f64)> },
    #[error("no root found and a real-domain window touches the scan boundary: {windows:?}")]
    BracketTooNarrow { windows: Vec<(f64, f64)> },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub scan_points: usize,
    pub tol: f64,
    pub max_iter: u32,
    pub transcription: Transcription,
}

impl SolverConfig {
    /// `[-m - |c| - 10·scale, m + |c| + 10·scale]` with 2000 scan points.
    pub fn for_problem(prob: &BoundProblem) -> Self {
        let m = prob.mass;
        let c = prob.symmetry.constant().abs();
        let s = 10.0 * prob.potential.scale();
        Self {
            bracket_lo: -m - c - s,
            bracket_hi: m + c + s,
            scan_points: 2000,
            tol: 1e-10,
            max_iter: 200,
            transcription: Transcription::Rederived,
        }
    }

    pub fn with_transcription(mut self, t: Transcription) -> Self {
        self.transcription = t;
        self
    }

    pub fn validate(&self) -> Result<(), SpectrumError> {
        if !(self.bracket_lo < self.bracket_hi) || !self.bracket_lo.is_finite() || !self.bracket_hi.is_finite() {
            return Err(SpectrumError::InvalidConfig("bracket_lo < bracket_hi required"));
        }
        if !(self.tol > 0.0) {
            return Err(SpectrumError::InvalidConfig("tol > 0 required"));
        }
        if self.scan_points < 2 {
            return Err(SpectrumError::InvalidConfig("scan_points >= 2 required"));
        }
        if self.max_iter == 0 {
            return Err(SpectrumError::InvalidConfig("max_iter >= 1 required"));
        }
        Ok(())
    }
}

/// The eigenvalue equation that applies to the problem.
pub fn equation_for(prob: &BoundProblem) -> EquationId {
    let pseudo = prob.symmetry.is_pseudospin();
    match prob.potential {
        PotentialSpec::Hypergeometric { .. } => match (prob.potential.is_manning_rosen(), pseudo) {
            (false, true) => EquationId::Eq34,
            (true, true) => EquationId::Eq36,
            (false, false) => EquationId::Eq39,
            (true, false) => EquationId::Eq41,
        },
        PotentialSpec::Morse { .. } => {
            if pseudo {
                EquationId::Eq45
            } else {
                EquationId::Eq48
            }
        }
        PotentialSpec::PoschlTeller { .. } => {
            if pseudo {
                EquationId::Eq53
            } else {
                EquationId::Eq56
            }
        }
    }
}

fn root(x: f64) -> Result<f64, DomainViolation> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else {
        Err(DomainViolation { argument: x })
    }
}

/// LHS − RHS of the applicable eigenvalue equation at trial energy `e`.
pub fn residual(prob: &BoundProblem, e: f64, transcription: Transcription) -> Result<f64, DomainViolation> {
    residual_for(equation_for(prob), prob, e, transcription)
}

/// Residual of a specific equation. The hypergeometric forms accept any σ
/// (the Manning–Rosen forms read only D); the others need their potential.
pub fn residual_for(
    eq: EquationId,
    prob: &BoundProblem,
    e: f64,
    transcription: Transcription,
) -> Result<f64, DomainViolation> {
    let m = prob.mass;
    let n = prob.state.n as f64;
    let kt = prob.kappa_term();
    let verbatim = transcription == Transcription::PaperVerbatim;
    let alpha = prob.alpha();
    let b2 = beta_sq(alpha);
    let b = b2.sqrt();
    let a2 = alpha * alpha;
    let c = prob.symmetry.constant();
    let (d1, d2) = prob.potential.d1_d2();
    let depth = match prob.potential {
        PotentialSpec::Hypergeometric { depth, .. } => depth,
        _ => 0.0,
    };
    let (v1, v2, v0) = match prob.potential {
        PotentialSpec::Morse { v1, v2, .. } => (v1, v2, 0.0),
        PotentialSpec::PoschlTeller { v0, .. } => (0.0, 0.0, v0),
        _ => (0.0, 0.0, 0.0),
    };
    let constant = n * (n + 1.0) + 0.5;
    match eq {
        EquationId::Eq34 => {
            let mu = m - e + c;
            let eps = m * (m + c) + e * (c - e);
            let s1 = root(b2 * (4.0 * a2 * kt - mu * (d1 + d2).powi(2)) + 0.25)?;
            let s2 = root(eps - mu * d1 * d1)?;
            Ok((s1 + b * s2) * (2.0 * n + 1.0 + 2.0 * b * s2)
                + b2 * (4.0 * a2 * kt - 2.0 * (eps + mu * d1 * d2))
                + constant)
        }
        EquationId::Eq36 => {
            let mu = m - e + c;
            let eps = m * (m + c) + e * (c - e);
            let s1 = root(4.0 * b2 * (a2 * kt - depth * mu) + 0.25)?;
            let s2 = root(eps)?;
            Ok((s1 + b * s2) * (2.0 * n + 1.0 + 2.0 * b * s2)
                + 4.0 * b2 * (a2 * kt - eps / 2.0)
                + 0.25 * ((2.0 * n + 1.0).powi(2) + 1.0))
        }
        EquationId::Eq39 => {
            let mu = m + e - c;
            let eps = m * (c - m) + e * (e - c);
            let s1 = root(b2 * mu * (d1 + d2).powi(2) + kt + 0.25)?;
            let s2 = root(mu * d1 * d1 - eps)?;
            Ok((s1 + b * s2) * (2.0 * n + 1.0 + 2.0 * b * s2)
                + b2 * (4.0 * a2 * kt + 2.0 * (eps + mu * d1 * d2))
                + constant)
        }
        EquationId::Eq41 => {
            let s1 = root(4.0 * b2 * depth * (m + e - c) + kt + 0.25)?;
            let s2 = root(m * (m - c) + e * (c - e))?;
            Ok((s1 + b * s2) * (2.0 * n + 1.0 + 2.0 * b * s2)
                + b2 * (4.0 * a2 * kt + 2.0 * (m * (c - m) + e * (e - c)))
                + 0.25 * ((2.0 * n + 1.0).powi(2) + 1.0))
        }
        EquationId::Eq45 => {
            let big_m = m - e + c;
            if verbatim {
                let t = 2.0 * n + 1.0 - 2.0 * b * v2 / v1.sqrt() * root(big_m)?;
                Ok(e * e - e * (m + c) - m * m - t * t / (16.0 * b2))
            } else {
                let lead = root(big_m * (m + e))?;
                Ok(2.0 * b * lead + n + 0.5 - b * v2 * root(-big_m)? / v1.sqrt())
            }
        }
        EquationId::Eq48 => {
            let big_n = m + e - c;
            if verbatim {
                let t = 2.0 * n + 1.0 - 2.0 * b * v2 / v1.sqrt() * root(big_n)?;
                Ok(m * m - e * e + c * (e - m) - t * t / (16.0 * b2))
            } else {
                let lead = root(big_n * (m - e))?;
                Ok(2.0 * b * lead + n + 0.5 - b * v2 * root(big_n)? / v1.sqrt())
            }
        }
        EquationId::Eq53 => {
            let big_m = m - e + c;
            if verbatim {
                let t = (2.0 * n + 1.0) * alpha + root(4.0 * v0 * big_m + a2)?;
                Ok(e * e - m * m - c * (m + e) - 0.25 * t * t)
            } else {
                // M = 0 zeroes both sides for n = 0 with Q ≡ 0; binding needs M < 0
                if big_m >= 0.0 {
                    return Err(DomainViolation { argument: -big_m });
                }
                let lead = root(big_m * (m + e))?;
                Ok(lead - 0.5 * (root(a2 - 4.0 * big_m * v0)? - (2.0 * n + 1.0) * alpha))
            }
        }
        EquationId::Eq56 => {
            let big_n = m + e - c;
            if verbatim {
                let t = (2.0 * n + 1.0) * alpha + root(4.0 * v0 * big_n + a2)?;
                Ok(e * e + m * m - c * (m - e) - 0.25 * t * t)
            } else {
                if big_n <= 0.0 {
                    return Err(DomainViolation { argument: big_n });
                }
                let lead = root(big_n * (m - e))?;
                Ok(lead - 0.5 * (root(a2 + 4.0 * big_n * v0)? - (2.0 * n + 1.0) * alpha))
            }
        }
        EquationId::Oracle => Err(DomainViolation { argument: f64::NAN }),
    }
}

/// All roots of the applicable equation at the problem's (n, κ) inside the
/// configured window, after the energy-branch filter.
pub fn solve(prob: &BoundProblem, cfg: &SolverConfig) -> Result<Vec<EnergyLevel>, SpectrumError> {
    solve_equation(equation_for(prob), prob, cfg)
}

pub fn solve_equation(
    eq: EquationId,
    prob: &BoundProblem,
    cfg: &SolverConfig,
) -> Result<Vec<EnergyLevel>, SpectrumError> {
    prob.validate()?;
    cfg.validate()?;
    let f = |e: f64| residual_for(eq, prob, e, cfg.transcription).ok();
    let scan = scan_roots(&f, cfg);
    let branch = EnergyBranch::of(&prob.symmetry);
    let levels: Vec<EnergyLevel> = scan
        .roots
        .iter()
        .filter(|r| branch.admits(r.energy))
        .map(|r| EnergyLevel {
            energy: r.energy,
            n: prob.state.n,
            kappa: prob.state.kappa,
            residual: r.residual,
            branch,
            equation_id: eq,
            grazing: r.grazing,
        })
        .collect();
    if levels.is_empty() {
        let touches = scan.windows.iter().any(|&(lo, hi)| lo <= cfg.bracket_lo || hi >= cfg.bracket_hi);
        return Err(if touches {
            SpectrumError::BracketTooNarrow { windows: scan.windows }
        } else {
            SpectrumError::NoRootFound { windows: scan.windows }
        });
    }
    Ok(levels)
}

/// Levels for n = 0..=n_max; each n contributes all of its roots.
pub fn solve_spectrum(prob: &BoundProblem, cfg: &SolverConfig, n_max: u32) -> Result<Vec<EnergyLevel>, SpectrumError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        match solve(&prob.with_n(n), cfg) {
            Ok(levels) => out.extend(levels),
            Err(SpectrumError::NoRootFound { .. }) | Err(SpectrumError::BracketTooNarrow { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub energy: f64,
    pub residual: f64,
    pub grazing: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanResult {
    pub roots: Vec<Root>,
    /// Maximal sub-intervals of the scan on which the function was defined.
    pub windows: Vec<(f64, f64)>,
}

/// Bisect `f` on [lo, hi] where `flo` and `fhi` differ in sign.
fn bisect<F: Fn(f64) -> Option<f64>>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
    mut fhi: f64,
    max_iter: u32,
) -> Root {
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let Some(fm) = f(mid) else { break };
        if fm == 0.0 {
            return Root { energy: mid, residual: 0.0, grazing: false };
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if flo.abs() <= fhi.abs() {
        Root { energy: lo, residual: flo, grazing: false }
    } else {
        Root { energy: hi, residual: fhi, grazing: false }
    }
}

/// Locate the boundary between a defined point `inside` and an undefined
/// point `outside`; returns the last defined point and its value.
fn domain_edge<F: Fn(f64) -> Option<f64>>(
    f: &F,
    mut inside: f64,
    mut f_in: f64,
    mut outside: f64,
    max_iter: u32,
) -> (f64, f64) {
    for _ in 0..max_iter {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        match f(mid) {
            Some(v) => {
                inside = mid;
                f_in = v;
            }
            None => outside = mid,
        }
    }
    (inside, f_in)
}

/// Scan `[bracket_lo, bracket_hi]`, bisect every sign change inside the
/// defined windows (including changes between the last scan point and a
/// window edge), and deduplicate within 10·tol.
pub fn scan_roots<F: Fn(f64) -> Option<f64>>(f: &F, cfg: &SolverConfig) -> ScanResult {
    let npts = cfg.scan_points;
    let (lo, hi) = (cfg.bracket_lo, cfg.bracket_hi);
    let xs: Vec<f64> = (0..npts).map(|i| lo + (hi - lo) * i as f64 / (npts - 1) as f64).collect();
    let ys: Vec<Option<f64>> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<Root> = Vec::new();
    let mut windows = Vec::new();
    let mut window_start: Option<f64> = None;
    let edge_tol = |x: f64| 10.0 * cfg.tol * x.abs().max(1.0);

    let push = |roots: &mut Vec<Root>, r: Root| {
        if let Some(last) = roots.last() {
            if (last.energy - r.energy).abs() <= edge_tol(r.energy) {
                return;
            }
        }
        roots.push(r);
    };

    for i in 0..npts {
        match (ys[i], window_start) {
            (Some(yi), None) => {
                if i == 0 {
                    window_start = Some(xs[0]);
                } else {
                    let (edge, fe) = domain_edge(f, xs[i], yi, xs[i - 1], cfg.max_iter);
                    window_start = Some(edge);
                    if fe == 0.0 {
                        push(&mut roots, Root { energy: edge, residual: fe, grazing: true });
                    } else if (fe < 0.0) != (yi < 0.0) {
                        let mut r = bisect(f, edge, xs[i], fe, yi, cfg.max_iter);
                        r.grazing = (r.energy - edge).abs() <= edge_tol(edge);
                        push(&mut roots, r);
                    }
                }
            }
            (None, Some(start)) => {
                let (edge, fe) = domain_edge(f, xs[i - 1], ys[i - 1].unwrap(), xs[i], cfg.max_iter);
                let yp = ys[i - 1].unwrap();
                if fe == 0.0 {
                    push(&mut roots, Root { energy: edge, residual: fe, grazing: true });
                } else if (fe < 0.0) != (yp < 0.0) {
                    let mut r = bisect(f, xs[i - 1], edge, yp, fe, cfg.max_iter);
                    r.grazing = (r.energy - edge).abs() <= edge_tol(edge);
                    push(&mut roots, r);
                }
                windows.push((start, edge));
                window_start = None;
            }
            _ => {}
        }
        if i + 1 < npts {
            if let (Some(a), Some(b)) = (ys[i], ys[i + 1]) {
                if a == 0.0 {
                    push(&mut roots, Root { energy: xs[i], residual: 0.0, grazing: false });
                } else if b != 0.0 && (a < 0.0) != (b < 0.0) {
                    push(&mut roots, bisect(f, xs[i], xs[i + 1], a, b, cfg.max_iter));
                }
            } else if let (Some(0.0), None) = (ys[i], ys[i + 1]) {
                push(&mut roots, Root { energy: xs[i], residual: 0.0, grazing: true });
            }
        } else if ys[i] == Some(0.0) {
            push(&mut roots, Root { energy: xs[i], residual: 0.0, grazing: false });
        }
    }
    if let Some(start) = window_start {
        windows.push((start, hi));
    }
    roots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    roots.dedup_by(|a, b| (a.energy - b.energy).abs() <= edge_tol(a.energy));
    ScanResult { roots, windows }
}
