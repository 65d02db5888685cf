//! Independent numerical solution of the decoupled radial equations.
//!
//! `u'' = Q(r; E) u` is integrated with Numerov's method. Q depends on E
//! quadratically, so levels are not eigenvalues of one linear operator; they
//! are found instead from the Sturm count. At fixed E the number of nodes of
//! the regular solution inside a box equals the number of negative Dirichlet
//! eigenvalues of `-d²/dr² + Q(r; E)` there, and it steps from n to n + 1
//! exactly where the n-th level crosses E. Bisecting those steps locates
//! each level without reference to the analytic formulas.
//!
//! On the half line the grid is uniform in `x = ln r + αr` (a Liouville
//! transform keeps the equation in Numerov form), which resolves the 1/r²
//! region and the exponential tail with the same number of steps. On the
//! full line the grid is uniform in r. In both cases the box is closed where
//! the WKB decay integral past the outermost turning point reaches
//! `tail_decay`, capped by `r_max`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::potential::{BoundProblem, CentrifugalMode, Domain, ModelError, PotentialSpec};
use crate::spectrum::{EnergyBranch, EnergyLevel, EquationId, SolverConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("E = {energy} is outside the bound-state window")]
    OutsideWindow { energy: f64 },
    #[error("no bound level with n = {n}")]
    LevelAbsent { n: u32 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub centrifugal_mode: CentrifugalMode,
    pub e_tol: f64,
    /// Energy scan resolution used to bracket the node-count steps.
    pub scan_points: usize,
    /// Redo each level with doubled r_max and steps until it moves < 10·e_tol.
    pub auto_extend: bool,
    /// WKB decay exponent at which the box is closed.
    pub tail_decay: f64,
    pub exec: ExecMode,
}

impl OracleConfig {
    pub fn for_problem(prob: &BoundProblem) -> Self {
        let alpha = prob.alpha();
        Self {
            r_min: 1e-4 / alpha,
            r_max: 40.0 / alpha,
            steps: 20_000,
            centrifugal_mode: CentrifugalMode::ApproxExponential,
            e_tol: 1e-9,
            scan_points: 400,
            auto_extend: true,
            tail_decay: 60.0,
            exec: ExecMode::from_env(),
        }
    }

    pub fn with_mode(mut self, mode: CentrifugalMode) -> Self {
        self.centrifugal_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(OracleError::InvalidConfig("0 < r_min < r_max required"));
        }
        if self.steps < 1000 {
            return Err(OracleError::InvalidConfig("steps >= 1000 required"));
        }
        if !(self.e_tol > 0.0) {
            return Err(OracleError::InvalidConfig("e_tol > 0 required"));
        }
        if self.scan_points < 2 {
            return Err(OracleError::InvalidConfig("scan_points >= 2 required"));
        }
        if !(self.tail_decay > 0.0) {
            return Err(OracleError::InvalidConfig("tail_decay > 0 required"));
        }
        Ok(())
    }

    fn extended(&self) -> Self {
        Self { r_max: 2.0 * self.r_max, steps: 2 * self.steps, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shot {
    pub node_count: u32,
    /// Numerical u'/u minus the decaying-tail value -√Q(∞) at the matching
    /// point (outer turning point + 5 decay lengths).
    pub mismatch: f64,
    /// Integration interval actually used.
    pub r_lo: f64,
    pub r_hi: f64,
}

/// Q(r; E) split as `kt·cf(r) + a + b·V(r)`.
#[derive(Clone, Copy)]
struct Equation<'a> {
    prob: &'a BoundProblem,
    mode: CentrifugalMode,
    a: f64,
    b: f64,
}

impl Equation<'_> {
    fn new(prob: &BoundProblem, e: f64, mode: CentrifugalMode) -> Equation<'_> {
        let (a, b) = prob.energy_factors(e);
        Equation { prob, mode, a, b }
    }

    fn q(&self, r: f64) -> f64 {
        let kt = self.prob.kappa_term();
        let cf = if kt == 0.0 {
            0.0
        } else {
            match self.mode {
                CentrifugalMode::Exact => kt / (r * r),
                CentrifugalMode::ApproxExponential => crate::potential::centrifugal_approx(kt, self.prob.alpha(), r),
            }
        };
        cf + self.a + self.b * self.prob.potential.value(r)
    }

    /// Q(r → +∞).
    fn q_right(&self) -> f64 {
        self.a + self.b * self.prob.potential.asymptote()
    }

    /// `lim r→0 r²Q` on the half line.
    fn origin_strength(&self) -> f64 {
        self.prob.kappa_term() + self.b * self.prob.potential.origin_coefficient()
    }

    /// Taylor coefficients of r²Q about r = 0 through r⁴ (half line only).
    fn origin_series(&self) -> [f64; 5] {
        let kt = self.prob.kappa_term();
        let alpha = self.prob.alpha();
        let mut c = [kt, 0.0, self.a, 0.0, 0.0];
        if self.mode == CentrifugalMode::ApproxExponential {
            // (αr)²/sinh²(αr) = 1 − t²/3 + t⁴/15
            c[2] -= kt * alpha * alpha / 3.0;
            c[4] += kt * alpha.powi(4) / 15.0;
        }
        if let PotentialSpec::Hypergeometric { .. } = self.prob.potential {
            // r(A coth t + B) with t coth t = 1 + t²/3 − t⁴/45
            let (d1, d2) = self.prob.potential.d1_d2();
            let (a, b) = (0.5 * (d1 + d2), 0.5 * (d1 - d2));
            let v = [a * a, 2.0 * a * b, 2.0 * a * a / 3.0 + b * b, 2.0 * a * b / 3.0, a * a / 15.0];
            for (k, vk) in v.iter().enumerate() {
                c[k] += self.b * vk * alpha.powi(k as i32 - 2);
            }
        }
        c
    }

    /// Regular Frobenius solution `r^s Σ a_k r^k` through k = 4, a₀ = 1.
    fn frobenius(&self, r: f64) -> f64 {
        let c = self.origin_series();
        let s = 0.5 + (0.25 + c[0]).max(0.0).sqrt();
        let mut a = [1.0, 0.0, 0.0, 0.0, 0.0];
        for k in 1..5 {
            let rhs: f64 = (1..=k).map(|j| c[j] * a[k - j]).sum();
            a[k] = rhs / (k as f64 * (2.0 * s + k as f64 - 1.0));
        }
        let poly = a.iter().rev().fold(0.0, |acc, ak| acc * r + ak);
        r.powf(s) * poly
    }

    fn bound(&self) -> bool {
        if !(self.q_right() > 0.0) {
            return false;
        }
        match self.prob.potential {
            PotentialSpec::Hypergeometric { .. } => self.origin_strength() >= -0.25,
            PotentialSpec::Morse { .. } => self.b > 0.0,
            PotentialSpec::PoschlTeller { .. } => true,
        }
    }
}

/// True when E admits bound states: Q > 0 at both ends of the domain and no
/// fall to the center.
pub fn in_bound_window(prob: &BoundProblem, e: f64, mode: CentrifugalMode) -> bool {
    Equation::new(prob, e, mode).bound()
}

/// Interval to integrate over at this energy.
fn box_limits(eq: &Equation, cfg: &OracleConfig, domain: Domain) -> (f64, f64, f64) {
    const COARSE: usize = 4000;
    let rs: Vec<f64> = match domain {
        Domain::HalfLine => {
            let ratio = (cfg.r_max / cfg.r_min).ln();
            (0..COARSE).map(|i| cfg.r_min * (ratio * i as f64 / (COARSE - 1) as f64).exp()).collect()
        }
        Domain::FullLine => {
            (0..COARSE).map(|i| -cfg.r_max + 2.0 * cfg.r_max * i as f64 / (COARSE - 1) as f64).collect()
        }
    };
    let qs: Vec<f64> = rs.iter().map(|&r| eq.q(r)).collect();
    let (inner, outer) = match (qs.iter().position(|&q| q < 0.0), qs.iter().rposition(|&q| q < 0.0)) {
        (Some(i), Some(o)) => (i, o),
        _ => {
            let k = qs.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).map(|(k, _)| k).unwrap_or(0);
            (k, k)
        }
    };
    let mut acc = 0.0;
    let mut hi = cfg.r_max;
    for k in outer + 1..COARSE {
        acc += qs[k].max(0.0).sqrt() * (rs[k] - rs[k - 1]);
        if acc >= cfg.tail_decay {
            hi = rs[k];
            break;
        }
    }
    let lo = match domain {
        Domain::HalfLine => cfg.r_min,
        Domain::FullLine => {
            let mut acc = 0.0;
            let mut lo = -cfg.r_max;
            for k in (0..inner).rev() {
                acc += qs[k].max(0.0).sqrt() * (rs[k + 1] - rs[k]);
                if acc >= cfg.tail_decay {
                    lo = rs[k];
                    break;
                }
            }
            lo
        }
    };
    (lo, hi, rs[outer])
}

const RESCALE: f64 = 1e100;

/// Numerov grid at one energy. `f` is the coefficient in `y'' = f y` in the
/// grid variable and `u = scale · y` recovers the radial function.
struct Grid {
    r: Vec<f64>,
    f: Vec<f64>,
    scale: Vec<f64>,
    h: f64,
    /// Starting values y₀, y₁ of the regular solution.
    start: (f64, f64),
    /// Index of the matching point and the decaying-tail log-derivative there.
    matching: usize,
    tail_slope: f64,
    lo: f64,
    hi: f64,
}

fn build_grid(eq: &Equation, cfg: &OracleConfig, domain: Domain) -> Grid {
    let (lo, hi, turn) = box_limits(eq, cfg, domain);
    let n = cfg.steps;
    let q_inf = eq.q_right();
    let r_match = (turn + 5.0 / q_inf.sqrt()).min(hi);
    let (r, f, scale, h, start) = match domain {
        Domain::FullLine => {
            let h = (hi - lo) / n as f64;
            let r: Vec<f64> = (0..=n).map(|i| lo + i as f64 * h).collect();
            let f = r.iter().map(|&x| eq.q(x)).collect();
            (r, f, vec![1.0; n + 1], h, (0.0, h))
        }
        Domain::HalfLine => {
            let rs = 1.0 / eq.prob.alpha();
            let x_of = |r: f64| r.ln() + r / rs;
            let g_of = |r: f64| 1.0 / r + 1.0 / rs;
            let x0 = x_of(lo);
            let h = (x_of(hi) - x0) / n as f64;
            let mut r = Vec::with_capacity(n + 1);
            r.push(lo);
            for i in 1..=n {
                let x = x0 + i as f64 * h;
                let prev: f64 = r[i - 1];
                let mut t = prev + h / g_of(prev);
                for _ in 0..4 {
                    t -= (x_of(t) - x) / g_of(t);
                }
                r.push(t);
            }
            let f = r
                .iter()
                .map(|&x| {
                    let g = g_of(x);
                    let rg = x * g;
                    eq.q(x) / (g * g) + 1.0 / (rg * rg * rg) - 0.75 / (rg * rg * rg * rg)
                })
                .collect();
            let scale: Vec<f64> = r.iter().map(|&x| 1.0 / g_of(x).sqrt()).collect();
            let y0 = eq.frobenius(r[0]) / scale[0];
            let y1 = eq.frobenius(r[1]) / scale[1];
            let norm = y0.abs().max(1e-300);
            (r, f, scale, h, (y0 / norm, y1 / norm))
        }
    };
    let matching = r.iter().position(|&x| x >= r_match).unwrap_or(n).clamp(1, n - 1);
    Grid { r, f, scale, h, start, matching, tail_slope: -q_inf.sqrt(), lo, hi }
}

impl Grid {
    fn step(&self, y: f64, y_prev: f64, i: usize, prev: usize, next: usize) -> f64 {
        let k = self.h * self.h / 12.0;
        (2.0 * y * (1.0 + 5.0 * k * self.f[i]) - y_prev * (1.0 - k * self.f[prev])) / (1.0 - k * self.f[next])
    }

    /// u'/u at interior index i from y on the grid.
    fn log_derivative(&self, y_prev: f64, y: f64, y_next: f64, i: usize) -> f64 {
        let dy = (y_next - y_prev) / (2.0 * self.h);
        let dr = (self.r[i + 1] - self.r[i - 1]) / (2.0 * self.h);
        let ds = (self.scale[i + 1] - self.scale[i - 1]) / (2.0 * self.h);
        (dy / y + ds / self.scale[i]) / dr
    }
}

/// Integrate outward at energy `e`; count interior nodes and measure the
/// tail mismatch.
pub fn shoot(prob: &BoundProblem, e: f64, cfg: &OracleConfig) -> Result<Shot, OracleError> {
    prob.validate()?;
    cfg.validate()?;
    let eq = Equation::new(prob, e, cfg.centrifugal_mode);
    if !eq.bound() {
        return Err(OracleError::OutsideWindow { energy: e });
    }
    let grid = build_grid(&eq, cfg, prob.potential.domain());
    let n = cfg.steps;
    let (mut y_prev, mut y) = grid.start;
    let mut nodes = 0u32;
    let mut log_deriv = f64::NAN;
    for i in 1..n {
        let mut y_next = grid.step(y, y_prev, i, i - 1, i + 1);
        if y_next.abs() > RESCALE {
            y_next /= RESCALE;
            y /= RESCALE;
        }
        if i == grid.matching {
            log_deriv = grid.log_derivative(y_prev, y, y_next, i);
        }
        if (y_next < 0.0) != (y < 0.0) && y_next != 0.0 && y != 0.0 {
            nodes += 1;
        }
        y_prev = y;
        y = y_next;
    }
    Ok(Shot { node_count: nodes, mismatch: log_deriv - grid.tail_slope, r_lo: grid.lo, r_hi: grid.hi })
}

fn count(prob: &BoundProblem, e: f64, cfg: &OracleConfig) -> Option<u32> {
    shoot(prob, e, cfg).ok().map(|s| s.node_count)
}

/// Bracket `[lo, hi]` across which the node count steps between `n` and `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Step {
    n: u32,
    lo: f64,
    hi: f64,
    count_lo: u32,
}

fn isolate(prob: &BoundProblem, cfg: &OracleConfig, a: (f64, u32), b: (f64, u32), depth: u32, out: &mut Vec<Step>) {
    let (ea, ca) = a;
    let (eb, cb) = b;
    if ca == cb || depth > 80 {
        return;
    }
    if ca.abs_diff(cb) == 1 {
        out.push(Step { n: ca.min(cb), lo: ea, hi: eb, count_lo: ca });
        return;
    }
    let mid = 0.5 * (ea + eb);
    if mid <= ea || mid >= eb {
        return;
    }
    if let Some(cm) = count(prob, mid, cfg) {
        isolate(prob, cfg, a, (mid, cm), depth + 1, out);
        isolate(prob, cfg, (mid, cm), b, depth + 1, out);
    }
}

/// Last point inside the bound window between `inside` and `outside`.
fn window_edge(prob: &BoundProblem, mode: CentrifugalMode, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..100 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if in_bound_window(prob, mid, mode) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

fn scan_steps(prob: &BoundProblem, cfg: &OracleConfig) -> Vec<Step> {
    let window = SolverConfig::for_problem(prob);
    let npts = cfg.scan_points;
    let (lo, hi) = (window.bracket_lo, window.bracket_hi);
    let mode = cfg.centrifugal_mode;
    let mut es: Vec<f64> = (0..npts).map(|i| lo + (hi - lo) * i as f64 / (npts - 1) as f64).collect();
    // add the exact window edges so steps next to an edge are not missed
    let inside: Vec<bool> = es.iter().map(|&e| in_bound_window(prob, e, mode)).collect();
    let mut extra = Vec::new();
    for i in 0..npts - 1 {
        if inside[i] != inside[i + 1] {
            extra.push(if inside[i] {
                window_edge(prob, mode, es[i], es[i + 1])
            } else {
                window_edge(prob, mode, es[i + 1], es[i])
            });
        }
    }
    es.extend(extra);
    es.sort_by(f64::total_cmp);
    let counts = exec::map(cfg.exec, &es, |&e| count(prob, e, cfg));
    let mut steps = Vec::new();
    for i in 0..es.len() - 1 {
        if let (Some(a), Some(b)) = (counts[i], counts[i + 1]) {
            isolate(prob, cfg, (es[i], a), (es[i + 1], b), 0, &mut steps);
        }
    }
    steps
}

/// Bisect a node-count step down to `e_tol`.
fn refine(prob: &BoundProblem, cfg: &OracleConfig, step: Step) -> (f64, f64) {
    let (mut lo, mut hi) = (step.lo, step.hi);
    for _ in 0..200 {
        let width = hi - lo;
        if width <= 0.5 * cfg.e_tol * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match count(prob, mid, cfg) {
            Some(c) if c == step.count_lo => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    (0.5 * (lo + hi), hi - lo)
}

/// Re-locate a level near `guess` under `cfg`, falling back to `step`.
fn relocate(prob: &BoundProblem, cfg: &OracleConfig, step: Step, guess: f64) -> (f64, f64) {
    let w = 1e3 * cfg.e_tol * guess.abs().max(1.0);
    let (a, b) = (guess - w, guess + w);
    if let (Some(ca), Some(cb)) = (count(prob, a, cfg), count(prob, b, cfg)) {
        if ca.min(cb) == step.n && ca.abs_diff(cb) == 1 {
            return refine(prob, cfg, Step { lo: a, hi: b, count_lo: ca, ..step });
        }
    }
    let mut fresh = Vec::new();
    if let (Some(ca), Some(cb)) = (count(prob, step.lo, cfg), count(prob, step.hi, cfg)) {
        isolate(prob, cfg, (step.lo, ca), (step.hi, cb), 0, &mut fresh);
    }
    match fresh.into_iter().find(|s| s.n == step.n) {
        Some(s) => refine(prob, cfg, s),
        None => (guess, f64::NAN),
    }
}

fn settle(prob: &BoundProblem, cfg: &OracleConfig, step: Step) -> (f64, f64) {
    let (mut e, mut width) = refine(prob, cfg, step);
    if !cfg.auto_extend {
        return (e, width);
    }
    let mut c = *cfg;
    for _ in 0..3 {
        c = c.extended();
        let (e2, w2) = relocate(prob, &c, step, e);
        let moved = (e2 - e).abs();
        e = e2;
        width = w2;
        if moved < 10.0 * cfg.e_tol * e.abs().max(1.0) {
            break;
        }
    }
    (e, width)
}

/// Levels n = 0..=n_max on the problem's energy branch. Entry n is
/// `LevelAbsent` when no node-count step n ↔ n+1 exists there.
pub fn find_levels(
    prob: &BoundProblem,
    cfg: &OracleConfig,
    n_max: u32,
) -> Result<Vec<Result<EnergyLevel, OracleError>>, OracleError> {
    prob.validate()?;
    cfg.validate()?;
    let branch = EnergyBranch::of(&prob.symmetry);
    let steps = scan_steps(prob, cfg);
    let wanted: Vec<u32> = (0..=n_max).collect();
    let inner = ExecMode::Serial;
    let serial_cfg = OracleConfig { exec: inner, ..*cfg };
    Ok(exec::map(cfg.exec, &wanted, |&n| {
        let step = steps
            .iter()
            .find(|s| s.n == n && branch.admits(0.5 * (s.lo + s.hi)))
            .copied()
            .ok_or(OracleError::LevelAbsent { n })?;
        let (e, width) = settle(prob, &serial_cfg, step);
        if !branch.admits(e) || width.is_nan() {
            return Err(OracleError::LevelAbsent { n });
        }
        Ok(EnergyLevel {
            energy: e,
            n,
            kappa: prob.state.kappa,
            residual: width,
            branch,
            equation_id: EquationId::Oracle,
            grazing: false,
        })
    }))
}

/// The level with the problem's own n.
pub fn find_level(prob: &BoundProblem, cfg: &OracleConfig) -> Result<EnergyLevel, OracleError> {
    let n = prob.state.n;
    find_levels(prob, cfg, n)?.pop().unwrap_or(Err(OracleError::LevelAbsent { n }))
}

/// Numerically integrated eigenfunction at energy `e` on the shooting grid,
/// as (r, u) pairs with max |u| = 1 (unnormalized otherwise).
/// Numerical eigenfunction at energy `e` as (r, u) pairs with max |u| = 1.
/// Outward and inward solutions are joined at the matching point, so the
/// exponential tails stay clean even a little off the eigenvalue.
pub fn eigenfunction(
    prob: &BoundProblem,
    e: f64,
    cfg: &OracleConfig,
    npts: usize,
) -> Result<Vec<(f64, f64)>, OracleError> {
    prob.validate()?;
    cfg.validate()?;
    let eq = Equation::new(prob, e, cfg.centrifugal_mode);
    if !eq.bound() {
        return Err(OracleError::OutsideWindow { energy: e });
    }
    let grid = build_grid(&eq, cfg, prob.potential.domain());
    let n = cfg.steps;
    let m = grid.matching;
    let mut y = vec![0.0; n + 1];
    (y[0], y[1]) = grid.start;
    for i in 1..m {
        y[i + 1] = grid.step(y[i], y[i - 1], i, i - 1, i + 1);
        if y[i + 1].abs() > RESCALE {
            y[..=i + 1].iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    let mut inward = vec![0.0; n + 1];
    inward[n - 1] = 1e-200;
    for i in (m + 1..n).rev() {
        inward[i - 1] = grid.step(inward[i], inward[i + 1], i, i + 1, i - 1);
        if inward[i - 1].abs() > RESCALE {
            inward[i - 1..].iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    let join = y[m] / inward[m];
    for i in m + 1..=n {
        y[i] = inward[i] * join;
    }
    let u: Vec<f64> = y.iter().zip(&grid.scale).map(|(a, s)| a * s).collect();
    let peak = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let stride = (n / npts.max(1)).max(1);
    Ok((0..=n).step_by(stride).map(|i| (grid.r[i], u[i] / peak)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{QuantumState, SymmetryLimit};
    use approx::assert_relative_eq;

    fn morse_spin() -> BoundProblem {
        BoundProblem::new(
            PotentialSpec::Morse { v1: 4.0, v2: 8.0, alpha: 0.5 },
            SymmetryLimit::Spin { delta: 0.0 },
            5.0,
            QuantumState::new(0, 0),
        )
        .unwrap()
    }

    #[test]
    fn window_rules() {
        let p = morse_spin();
        let mode = CentrifugalMode::ApproxExponential;
        assert!(in_bound_window(&p, 2.0, mode));
        assert!(!in_bound_window(&p, 5.5, mode));
        assert!(!in_bound_window(&p, -5.5, mode));
    }

    #[test]
    fn below_spectrum_has_no_nodes() {
        let p = morse_spin();
        let cfg = OracleConfig::for_problem(&p);
        for e in [-4.9, -3.0, 0.5, 1.2] {
            let s = shoot(&p, e, &cfg).unwrap();
            assert_eq!(s.node_count, 0);
            assert!(s.mismatch > 0.0, "E={e} {s:?}");
        }
        assert!(matches!(shoot(&p, 6.0, &cfg), Err(OracleError::OutsideWindow { .. })));
    }

    #[test]
    fn morse_spin_levels() {
        let p = morse_spin();
        let cfg = OracleConfig { exec: ExecMode::Serial, ..OracleConfig::for_problem(&p) };
        let levels = find_levels(&p, &cfg, 3).unwrap();
        let want = [1.38593, 2.05007, 2.60741, 3.08323];
        for (l, w) in levels.iter().zip(want) {
            let l = l.as_ref().unwrap();
            assert_relative_eq!(l.energy, w, max_relative = 1e-5);
            assert_eq!(l.equation_id, EquationId::Oracle);
            let s = shoot(&p, l.energy + 1e-6, &cfg).unwrap();
            let t = shoot(&p, l.energy - 1e-6, &cfg).unwrap();
            assert_eq!(s.node_count.min(t.node_count), l.n);
        }
    }

    #[test]
    fn zero_potential_has_no_levels() {
        let p = BoundProblem::new(
            PotentialSpec::Hypergeometric { depth: 0.0, sigma: 2.0, alpha: 0.5 },
            SymmetryLimit::Spin { delta: 0.0 },
            1.0,
            QuantumState::new(0, 1),
        )
        .unwrap();
        let cfg = OracleConfig { exec: ExecMode::Serial, ..OracleConfig::for_problem(&p) };
        for (n, l) in find_levels(&p, &cfg, 2).unwrap().into_iter().enumerate() {
            assert_eq!(l, Err(OracleError::LevelAbsent { n: n as u32 }));
        }
    }

    #[test]
    fn frobenius_start_solves_equation() {
        let p = BoundProblem::new(
            PotentialSpec::Hypergeometric { depth: 0.03, sigma: -8.0, alpha: 1.0 },
            SymmetryLimit::Pseudospin { c: 2.0 },
            5.0,
            QuantumState::new(0, 2),
        )
        .unwrap();
        for mode in [CentrifugalMode::Exact, CentrifugalMode::ApproxExponential] {
            let eq = Equation::new(&p, -1.3, mode);
            for r in [1e-3, 1e-2, 3e-2] {
                let h = 1e-3 * r;
                let u = |x: f64| eq.frobenius(x);
                let d2 = (u(r + h) - 2.0 * u(r) + u(r - h)) / (h * h);
                let rel = (d2 - eq.q(r) * u(r)).abs() / d2.abs();
                assert!(rel < 1e-5, "{mode:?} r={r} rel={rel}");
            }
        }
    }

    #[test]
    fn config_checks() {
        let p = morse_spin();
        let mut c = OracleConfig::for_problem(&p);
        c.steps = 10;
        assert!(matches!(shoot(&p, 2.0, &c), Err(OracleError::InvalidConfig(_))));
        let mut c = OracleConfig::for_problem(&p);
        c.r_min = c.r_max;
        assert!(c.validate().is_err());
    }
}
