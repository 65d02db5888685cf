//! Closed-form spinor components, normalized numerically.
//!
//! Pseudospin problems solve the lower component G, spin problems the upper
//! component F. The hypergeometric forms live on the half line r > 0; the
//! Morse and Pöschl–Teller forms are eigenfunctions on the whole line
//! r ∈ ℝ, so normalization and node counts use the whole line there.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::errata::Transcription;
use crate::nu_engine::{FormBranch, WavefunctionForm};
use crate::potential::{beta_sq, BoundProblem, CentrifugalMode, Domain, ModelError, PotentialSpec, VariableMap};
use crate::special_fn::{integrate_to_infinity, PolynomialKind, QuadratureError};
use crate::spectrum::EnergyLevel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefunctionError {
    #[error("not normalizable: {0}")]
    NonNormalizable(&'static str),
    #[error("closed form undefined at this energy: {0} < 0 under a square root")]
    Undefined(&'static str),
    #[error("wavefunction vanishes identically")]
    Zero,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    UpperF,
    LowerG,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialWavefunction {
    pub form: WavefunctionForm,
    pub variable_map: VariableMap,
    pub domain: Domain,
    pub component: Component,
    pub level: EnergyLevel,
    /// Positive constant with ∫|norm·sign·raw|² dr = 1.
    pub norm: f64,
    /// ±1, chosen so the function is positive where it first rises from zero.
    pub sign: f64,
}

fn sqrt_of(x: f64, what: &'static str) -> Result<f64, WavefunctionError> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else {
        Err(WavefunctionError::Undefined(what))
    }
}

fn jacobi_form(lead: f64, edge: f64, a: f64, b: f64, n: u32) -> WavefunctionForm {
    WavefunctionForm {
        variable_exponent: lead,
        edge_factor: edge,
        alpha3: 1.0,
        polynomial: PolynomialKind::jacobi(n as usize, a, b),
        argument_scale: 2.0,
        branch: FormBranch::Jacobi,
        normalizable: a > -1.0 && b > -1.0,
    }
}

fn laguerre_form(lead: f64, decay: f64, n: u32) -> WavefunctionForm {
    let a = 2.0 * lead;
    WavefunctionForm {
        variable_exponent: lead,
        edge_factor: -decay,
        alpha3: 0.0,
        polynomial: PolynomialKind::laguerre(n as usize, a),
        argument_scale: 2.0 * decay,
        branch: FormBranch::Laguerre,
        normalizable: a > -1.0,
    }
}

/// The closed form of the applicable spinor equation at energy `e`,
/// built directly from the physical parameters.
pub fn closed_form(
    prob: &BoundProblem,
    e: f64,
    transcription: Transcription,
) -> Result<WavefunctionForm, WavefunctionError> {
    prob.validate()?;
    let m = prob.mass;
    let n = prob.state.n;
    let alpha = prob.alpha();
    let b2 = beta_sq(alpha);
    let b = b2.sqrt();
    let c = prob.symmetry.constant();
    let kt = prob.kappa_term();
    let verbatim = transcription == Transcription::PaperVerbatim;
    let pseudo = prob.symmetry.is_pseudospin();
    Ok(match prob.potential {
        PotentialSpec::Hypergeometric { .. } => {
            let (d1, d2) = prob.potential.d1_d2();
            let (lead, s9, jacobi_a) = if pseudo {
                let mu = m - e + c;
                let eps = m * (m + c) + e * (c - e);
                let lead = b * sqrt_of(eps - mu * d1 * d1, "eps - mu D1^2")?;
                let s9 = sqrt_of(-mu * b2 * (d1 + d2).powi(2) + kt + 0.25, "alpha9")?;
                let ja = if verbatim { 2.0 * b * sqrt_of(eps * mu * d1 * d1, "eps mu D1^2")? } else { 2.0 * lead };
                (lead, s9, ja)
            } else {
                let mu = m + e - c;
                let eps = m * (c - m) + e * (e - c);
                let lead = b * sqrt_of(mu * d1 * d1 - eps, "mu' D1^2 - eps'")?;
                let s9 = sqrt_of(mu * b2 * (d1 + d2).powi(2) + kt + 0.25, "alpha9")?;
                (lead, s9, 2.0 * lead)
            };
            jacobi_form(lead, 0.5 + s9, jacobi_a, 2.0 * s9, n)
        }
        PotentialSpec::Morse { v1, .. } => {
            let (lead_arg, decay_arg) = if pseudo {
                let big_m = m - e + c;
                if verbatim {
                    (e * e - m * m - e * (m + c), v1 * big_m)
                } else {
                    (big_m * (m + e), -big_m * v1)
                }
            } else {
                let big_n = m + e - c;
                (big_n * (m - e), v1 * big_n)
            };
            let lead = 2.0 * b * sqrt_of(lead_arg, "leading exponent")?;
            let decay = 2.0 * b * sqrt_of(decay_arg, "decay constant")?;
            laguerre_form(lead, decay, n)
        }
        PotentialSpec::PoschlTeller { v0, .. } => {
            let (lead_arg, w) = if pseudo {
                let big_m = m - e + c;
                if verbatim {
                    (-big_m * (m + e), 1.0 + 16.0 * v0 * b2 * big_m)
                } else {
                    (big_m * (m + e), 1.0 - 16.0 * v0 * b2 * big_m)
                }
            } else {
                let big_n = m + e - c;
                (big_n * (m - e), 1.0 + 16.0 * v0 * b2 * big_n)
            };
            let lead = b * sqrt_of(lead_arg, "leading exponent")?;
            let s = sqrt_of(w, "1 + 16 V0 beta^2 (...)")?;
            let s = if verbatim { s } else { -s };
            jacobi_form(lead, 0.5 * (1.0 + s), 2.0 * lead, s, n)
        }
    })
}

/// Unnormalized closed form as a function of r, evaluated in log space so
/// large |z| does not overflow before the decaying factor takes over.
pub fn raw_value(form: &WavefunctionForm, map: &VariableMap, r: f64) -> f64 {
    let log_lead = if form.variable_exponent == 0.0 { 0.0 } else { form.variable_exponent * map.ln_abs_z(r) };
    let z = map.z(r);
    let log_edge = match form.branch {
        FormBranch::Jacobi => {
            if form.edge_factor == 0.0 {
                0.0
            } else {
                form.edge_factor * map.ln_one_minus_z(r)
            }
        }
        FormBranch::Laguerre => form.edge_factor * z,
    };
    let x = form.polynomial_argument(z);
    // |P_n(x)| grows at most like |x|^n; skip the polynomial where the
    // prefactor has already underflowed
    let log_bound = log_lead + log_edge + form.polynomial.degree as f64 * x.abs().max(1.0).ln();
    if !(log_bound > -745.0) {
        return 0.0;
    }
    (log_lead + log_edge).exp() * form.polynomial.eval(x)
}

/// r-space decay at both ends of the domain.
fn check_normalizable(form: &WavefunctionForm, domain: Domain) -> Result<(), WavefunctionError> {
    if !(form.variable_exponent > 0.0) {
        return Err(WavefunctionError::NonNormalizable("no decay as r -> infinity"));
    }
    match (domain, form.branch) {
        (Domain::HalfLine, FormBranch::Jacobi) => {
            if !(form.edge_factor > 0.0) {
                return Err(WavefunctionError::NonNormalizable("not regular at r = 0"));
            }
        }
        (Domain::FullLine, FormBranch::Laguerre) => {
            if !(form.edge_factor < 0.0) {
                return Err(WavefunctionError::NonNormalizable("no decay as r -> -infinity"));
            }
        }
        (Domain::FullLine, FormBranch::Jacobi) => {
            let power = form.variable_exponent + form.edge_factor + form.polynomial.degree as f64;
            if !(power < 0.0) {
                return Err(WavefunctionError::NonNormalizable("no decay as r -> -infinity"));
            }
        }
        (Domain::HalfLine, FormBranch::Laguerre) => {
            return Err(WavefunctionError::NonNormalizable("Laguerre form on the half line"));
        }
    }
    Ok(())
}

pub fn build(prob: &BoundProblem, level: &EnergyLevel) -> Result<RadialWavefunction, WavefunctionError> {
    build_with(prob, level, Transcription::Rederived)
}

pub fn build_with(
    prob: &BoundProblem,
    level: &EnergyLevel,
    transcription: Transcription,
) -> Result<RadialWavefunction, WavefunctionError> {
    let prob = prob.with_n(level.n);
    let form = closed_form(&prob, level.energy, transcription)?;
    let domain = prob.potential.domain();
    check_normalizable(&form, domain)?;
    let map = prob.potential.variable_map();
    let mut w = RadialWavefunction {
        form,
        variable_map: map,
        domain,
        component: if prob.symmetry.is_pseudospin() { Component::LowerG } else { Component::UpperF },
        level: *level,
        norm: 1.0,
        sign: 1.0,
    };
    let (lo, hi) = support(&w);
    let probe: Vec<f64> = linspace(lo, hi, 400).into_iter().map(|r| raw_value(&form, &map, r)).collect();
    let peak = probe.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(WavefunctionError::Zero);
    }
    let first = probe.iter().find(|v| v.abs() > 1e-6 * peak).copied().unwrap_or(1.0);
    let f = |r: f64| {
        let v = raw_value(&form, &map, r) / peak;
        v * v
    };
    let span = (hi - lo).max(1.0 / prob.alpha()) / 4.0;
    let tol = 1e-14 * (hi - lo).max(1.0);
    let total = match domain {
        Domain::HalfLine => integrate_to_infinity(f, 0.0, span, tol)?,
        Domain::FullLine => {
            let mid = 0.5 * (lo + hi);
            integrate_to_infinity(f, mid, span, tol)? + integrate_to_infinity(|t| f(2.0 * mid - t), mid, span, tol)?
        }
    };
    if !(total > 0.0) {
        return Err(WavefunctionError::Zero);
    }
    w.norm = 1.0 / (peak * total.sqrt());
    w.sign = if first < 0.0 { -1.0 } else { 1.0 };
    Ok(w)
}

impl RadialWavefunction {
    /// Normalized value at r.
    pub fn value(&self, r: f64) -> f64 {
        self.sign * self.norm * raw_value(&self.form, &self.variable_map, r)
    }
}

/// Normalized value at r; r must lie in the domain (r > 0 on the half line).
pub fn evaluate(w: &RadialWavefunction, r: f64) -> f64 {
    w.value(r)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Interval outside of which |w| is below 1e-10 of its peak.
pub fn support(w: &RadialWavefunction) -> (f64, f64) {
    let alpha = match w.variable_map {
        VariableMap::Exp1 { alpha } | VariableMap::Exp2 { alpha } | VariableMap::NegExp2 { alpha } => alpha,
    };
    let (lo, hi) = match w.domain {
        Domain::HalfLine => (0.0, 400.0 / alpha),
        Domain::FullLine => (-400.0 / alpha, 400.0 / alpha),
    };
    let grid = linspace(lo, hi, 16001);
    let vals: Vec<f64> = grid
        .iter()
        .map(|&r| if r == 0.0 && w.domain == Domain::HalfLine { 0.0 } else { raw_value(&w.form, &w.variable_map, r) })
        .collect();
    let peak = vals.iter().fold(0.0f64, |a, v| if v.is_finite() { a.max(v.abs()) } else { a });
    let keep = |v: &f64| v.is_finite() && v.abs() > 1e-10 * peak;
    let first = vals.iter().position(keep).unwrap_or(0);
    let last = vals.iter().rposition(keep).unwrap_or(grid.len() - 1);
    let step = grid[1] - grid[0];
    let a = match w.domain {
        Domain::HalfLine => grid[first.saturating_sub(1)].max(0.0),
        Domain::FullLine => grid[first] - step,
    };
    (a, grid[last] + step)
}

/// Uniform sample grid across the support (strictly positive on the half line).
pub fn sample_grid(w: &RadialWavefunction, npts: usize) -> Vec<f64> {
    let (lo, hi) = support(w);
    let lo = match w.domain {
        Domain::HalfLine => lo.max(1e-3 * (hi - lo)),
        Domain::FullLine => lo,
    };
    linspace(lo, hi, npts.max(2))
}

/// Sign changes of w over the grid, ignoring values below 1e-9 of the peak.
pub fn node_count(w: &RadialWavefunction, grid: &[f64]) -> usize {
    let vals: Vec<f64> = grid.iter().map(|&r| w.value(r)).collect();
    let peak = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut count = 0;
    let mut last_sign = 0.0;
    for v in vals {
        if v.abs() <= 1e-9 * peak {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            count += 1;
        }
        last_sign = s;
    }
    count
}

/// Max over the grid of |u'' - Q u|, relative to the largest |u''| or |Q u|
/// seen on the grid. Derivatives use 5-point central differences.
pub fn ode_residual(w: &RadialWavefunction, prob: &BoundProblem, grid: &[f64]) -> f64 {
    ode_residual_at(w, prob, grid, w.level.energy)
}

/// As [`ode_residual`] but with Q evaluated at energy `e`.
pub fn ode_residual_at(w: &RadialWavefunction, prob: &BoundProblem, grid: &[f64], e: f64) -> f64 {
    let prob = prob.with_n(w.level.n);
    let alpha = prob.alpha();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in grid {
        let q = prob.effective_q(r, e, CentrifugalMode::ApproxExponential);
        let mut h = 2e-3 / alpha.max(q.abs().sqrt());
        if w.domain == Domain::HalfLine {
            h = h.min(0.1 * r);
        }
        let f = |x: f64| w.value(x);
        let (fm2, fm1, f0, fp1, fp2) = (f(r - 2.0 * h), f(r - h), f(r), f(r + h), f(r + 2.0 * h));
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let qu = q * f0;
        worst = worst.max((d2 - qu).abs());
        scale = scale.max(d2.abs()).max(qu.abs());
    }
    if scale == 0.0 {
        f64::INFINITY
    } else {
        worst / scale
    }
}
