//! Exponential potentials, the two exact-symmetry limits, and the map from a
//! physical bound-state problem onto the NU normal form.
//!
//! Natural units throughout (ħ = c = 1). In the pseudospin limit Σ(r) = C is
//! constant and Δ(r) = V(r); the lower component obeys
//!
//! ```text
//! G'' = [κ(κ-1)/r² + (m - E + C)(m + E - V(r))] G
//! ```
//!
//! In the spin limit Δ(r) = Δ and Σ(r) = V(r):
//!
//! ```text
//! F'' = [κ(κ+1)/r² + (m + E - Δ)(m - E + V(r))] F
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::errata::Transcription;
use crate::nu_engine::{NuCoefficients, NuError, RootBranch};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("kappa = {kappa} is outside the supported channel for {potential} ({allowed})")]
    UnsupportedChannel { kappa: i32, potential: &'static str, allowed: &'static str },
    #[error(transparent)]
    Nu(#[from] NuError),
}

fn require(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<(), ModelError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value, reason })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    /// `(D₁ + D₂e^{-2αr})² / (1 - e^{-2αr})²`, i.e. `D(coth αr - σ)²`.
    Hypergeometric { depth: f64, sigma: f64, alpha: f64 },
    /// `V₁e^{-2αr} - V₂e^{-αr}`.
    Morse { v1: f64, v2: f64, alpha: f64 },
    /// `-4V₀e^{-2αr} / (1 + e^{-2αr})²`.
    PoschlTeller { v0: f64, alpha: f64 },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            PotentialSpec::Hypergeometric { depth, sigma, alpha } => {
                require(depth >= 0.0, "depth", depth, "must be >= 0")?;
                require(true, "sigma", sigma, "must be finite")?;
                require(alpha > 0.0, "alpha", alpha, "must be > 0")
            }
            PotentialSpec::Morse { v1, v2, alpha } => {
                require(v1 > 0.0, "v1", v1, "must be > 0")?;
                require(true, "v2", v2, "must be finite")?;
                require(alpha > 0.0, "alpha", alpha, "must be > 0")
            }
            PotentialSpec::PoschlTeller { v0, alpha } => {
                require(v0 > 0.0, "v0", v0, "must be > 0")?;
                require(alpha > 0.0, "alpha", alpha, "must be > 0")
            }
        }
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            PotentialSpec::Hypergeometric { alpha, .. }
            | PotentialSpec::Morse { alpha, .. }
            | PotentialSpec::PoschlTeller { alpha, .. } => alpha,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Hypergeometric { .. } => "hypergeometric",
            PotentialSpec::Morse { .. } => "morse",
            PotentialSpec::PoschlTeller { .. } => "poschl-teller",
        }
    }

    /// `(D₁, D₂) = √D(1 ∓ σ)`; zero for the other potentials.
    pub fn d1_d2(&self) -> (f64, f64) {
        match *self {
            PotentialSpec::Hypergeometric { depth, sigma, .. } => {
                let s = depth.sqrt();
                (s * (1.0 - sigma), s * (1.0 + sigma))
            }
            _ => (0.0, 0.0),
        }
    }

    pub fn is_manning_rosen(&self) -> bool {
        matches!(*self, PotentialSpec::Hypergeometric { sigma, .. } if sigma == 1.0)
    }

    /// Largest potential coefficient; sets the default energy window.
    pub fn scale(&self) -> f64 {
        match *self {
            PotentialSpec::Hypergeometric { depth, .. } => {
                let (d1, d2) = self.d1_d2();
                depth.max(d1 * d1).max(d2 * d2)
            }
            PotentialSpec::Morse { v1, v2, .. } => v1.max(v2.abs()),
            PotentialSpec::PoschlTeller { v0, .. } => v0,
        }
    }

    pub fn variable_map(&self) -> VariableMap {
        match *self {
            PotentialSpec::Hypergeometric { alpha, .. } => VariableMap::Exp2 { alpha },
            PotentialSpec::Morse { alpha, .. } => VariableMap::Exp1 { alpha },
            PotentialSpec::PoschlTeller { alpha, .. } => VariableMap::NegExp2 { alpha },
        }
    }

    /// Radial domain on which the closed forms are eigenfunctions.
    pub fn domain(&self) -> Domain {
        match self {
            PotentialSpec::Hypergeometric { .. } => Domain::HalfLine,
            _ => Domain::FullLine,
        }
    }

    /// V(r) for any real r (the Morse and Pöschl–Teller forms are regular at
    /// r ≤ 0; the hypergeometric form diverges at r = 0).
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            PotentialSpec::Hypergeometric { alpha, .. } => {
                let (d1, d2) = self.d1_d2();
                let z = (-2.0 * alpha * r).exp();
                let q = (d1 + d2 * z) / (-(-2.0 * alpha * r).exp_m1());
                q * q
            }
            PotentialSpec::Morse { v1, v2, alpha } => {
                let z = (-alpha * r).exp();
                v1 * z * z - v2 * z
            }
            PotentialSpec::PoschlTeller { v0, alpha } => {
                let w = (-2.0 * alpha * r).exp();
                -4.0 * v0 * w / ((1.0 + w) * (1.0 + w))
            }
        }
    }

    /// `V(r → ∞)`.
    pub fn asymptote(&self) -> f64 {
        let (d1, _) = self.d1_d2();
        match self {
            PotentialSpec::Hypergeometric { .. } => d1 * d1,
            _ => 0.0,
        }
    }

    /// `lim r→0⁺ r²V(r)`.
    pub fn origin_coefficient(&self) -> f64 {
        match *self {
            PotentialSpec::Hypergeometric { depth, alpha, .. } => depth / (alpha * alpha),
            _ => 0.0,
        }
    }
}

/// V(r) per the closed forms; rejects r ≤ 0.
pub fn evaluate_potential(p: &PotentialSpec, r: f64) -> Result<f64, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::NonPositiveRadius(r));
    }
    Ok(p.value(r))
}

/// `kterm · 4α²e^{-2αr}/(1 - e^{-2αr})²`, the exponential stand-in for `kterm/r²`.
pub fn centrifugal_approx(kterm: f64, alpha: f64, r: f64) -> f64 {
    if kterm == 0.0 {
        return 0.0;
    }
    let z = (-2.0 * alpha * r).exp();
    let d = -(-2.0 * alpha * r).exp_m1();
    kterm * 4.0 * alpha * alpha * z / (d * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    HalfLine,
    FullLine,
}

/// The change of variable z(r) that brings each potential to the NU form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum VariableMap {
    /// z = e^{-2αr}
    Exp2 { alpha: f64 },
    /// z = e^{-αr}
    Exp1 { alpha: f64 },
    /// z = -e^{-2αr}
    NegExp2 { alpha: f64 },
}

impl VariableMap {
    pub fn z(&self, r: f64) -> f64 {
        match *self {
            VariableMap::Exp2 { alpha } => (-2.0 * alpha * r).exp(),
            VariableMap::Exp1 { alpha } => (-alpha * r).exp(),
            VariableMap::NegExp2 { alpha } => -(-2.0 * alpha * r).exp(),
        }
    }

    pub fn r(&self, z: f64) -> f64 {
        match *self {
            VariableMap::Exp2 { alpha } => -z.ln() / (2.0 * alpha),
            VariableMap::Exp1 { alpha } => -z.ln() / alpha,
            VariableMap::NegExp2 { alpha } => -(-z).ln() / (2.0 * alpha),
        }
    }

    /// `1 - z` evaluated without cancellation.
    pub fn one_minus_z(&self, r: f64) -> f64 {
        match *self {
            VariableMap::Exp2 { alpha } => -(-2.0 * alpha * r).exp_m1(),
            VariableMap::Exp1 { alpha } => -(-alpha * r).exp_m1(),
            VariableMap::NegExp2 { alpha } => 1.0 + (-2.0 * alpha * r).exp(),
        }
    }

    /// `ln|z|`, exact for every r.
    pub fn ln_abs_z(&self, r: f64) -> f64 {
        match *self {
            VariableMap::Exp2 { alpha } | VariableMap::NegExp2 { alpha } => -2.0 * alpha * r,
            VariableMap::Exp1 { alpha } => -alpha * r,
        }
    }

    /// `ln(1 - z)` without overflow for large |z|.
    pub fn ln_one_minus_z(&self, r: f64) -> f64 {
        match *self {
            VariableMap::NegExp2 { alpha } => {
                let t = -2.0 * alpha * r;
                if t > 0.0 {
                    t + (-t).exp().ln_1p()
                } else {
                    t.exp().ln_1p()
                }
            }
            _ => self.one_minus_z(r).ln(),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            VariableMap::Exp2 { .. } => "z = exp(-2 alpha r)",
            VariableMap::Exp1 { .. } => "z = exp(-alpha r)",
            VariableMap::NegExp2 { .. } => "z = -exp(-2 alpha r)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "limit", rename_all = "snake_case")]
pub enum SymmetryLimit {
    /// Σ(r) = C; Δ(r) carries the potential.
    Pseudospin { c: f64 },
    /// Δ(r) = Δ; Σ(r) carries the potential.
    Spin { delta: f64 },
}

impl SymmetryLimit {
    pub fn constant(&self) -> f64 {
        match *self {
            SymmetryLimit::Pseudospin { c } => c,
            SymmetryLimit::Spin { delta } => delta,
        }
    }

    pub fn is_pseudospin(&self) -> bool {
        matches!(self, SymmetryLimit::Pseudospin { .. })
    }

    /// κ(κ-1) for pseudospin, κ(κ+1) for spin.
    pub fn kappa_term(&self, kappa: i32) -> f64 {
        let k = kappa as f64;
        match self {
            SymmetryLimit::Pseudospin { .. } => k * (k - 1.0),
            SymmetryLimit::Spin { .. } => k * (k + 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumState {
    pub n: u32,
    pub kappa: i32,
}

impl QuantumState {
    pub fn new(n: u32, kappa: i32) -> Self {
        Self { n, kappa }
    }

    /// Total angular momentum `|κ| - 1/2`.
    pub fn j(&self) -> f64 {
        self.kappa.abs() as f64 - 0.5
    }

    /// Orbital label `|κ + 1/2| - 1/2`.
    pub fn l(&self) -> f64 {
        (self.kappa as f64 + 0.5).abs() - 0.5
    }

    /// Pseudo-orbital label `|κ - 1/2| - 1/2`.
    pub fn l_tilde(&self) -> f64 {
        (self.kappa as f64 - 0.5).abs() - 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentrifugalMode {
    /// `κ-term / r²`.
    Exact,
    /// `κ-term · 4α²z/(1-z)²` with z = e^{-2αr}.
    ApproxExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundProblem {
    pub potential: PotentialSpec,
    pub symmetry: SymmetryLimit,
    pub mass: f64,
    pub state: QuantumState,
}

impl BoundProblem {
    pub fn new(
        potential: PotentialSpec,
        symmetry: SymmetryLimit,
        mass: f64,
        state: QuantumState,
    ) -> Result<Self, ModelError> {
        let p = Self { potential, symmetry, mass, state };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.potential.validate()?;
        require(self.mass > 0.0, "mass", self.mass, "must be > 0")?;
        require(true, "symmetry constant", self.symmetry.constant(), "must be finite")?;
        let kappa = self.state.kappa;
        match self.potential {
            PotentialSpec::Hypergeometric { .. } => {
                if kappa == 0 {
                    return Err(ModelError::UnsupportedChannel {
                        kappa,
                        potential: "hypergeometric",
                        allowed: "kappa != 0",
                    });
                }
            }
            _ => {
                if self.symmetry.kappa_term(kappa) != 0.0 {
                    let allowed = if self.symmetry.is_pseudospin() { "kappa in {0, 1}" } else { "kappa in {0, -1}" };
                    return Err(ModelError::UnsupportedChannel { kappa, potential: self.potential.name(), allowed });
                }
            }
        }
        Ok(())
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.state.n = n;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.potential.alpha()
    }

    pub fn kappa_term(&self) -> f64 {
        self.symmetry.kappa_term(self.state.kappa)
    }

    /// `(a, b)` with the energy-dependent part of the radial equation equal to
    /// `a + b·V(r)`: `(M(m+E), -M)` for pseudospin, `(N(m-E), N)` for spin.
    pub fn energy_factors(&self, e: f64) -> (f64, f64) {
        let m = self.mass;
        match self.symmetry {
            SymmetryLimit::Pseudospin { c } => {
                let big_m = m - e + c;
                (big_m * (m + e), -big_m)
            }
            SymmetryLimit::Spin { delta } => {
                let big_n = m + e - delta;
                (big_n * (m - e), big_n)
            }
        }
    }

    /// Q(r; E) with `u'' = Q u` for the solved spinor component.
    pub fn effective_q(&self, r: f64, e: f64, mode: CentrifugalMode) -> f64 {
        let (a, b) = self.energy_factors(e);
        let kt = self.kappa_term();
        let cf = if kt == 0.0 {
            0.0
        } else {
            match mode {
                CentrifugalMode::Exact => kt / (r * r),
                CentrifugalMode::ApproxExponential => centrifugal_approx(kt, self.alpha(), r),
            }
        };
        cf + a + b * self.potential.value(r)
    }

    /// Root branch of the NU engine that yields the decaying solution.
    pub fn root_branch(&self) -> RootBranch {
        match self.potential {
            PotentialSpec::PoschlTeller { .. } => RootBranch::REFLECTED_ALPHA9,
            _ => RootBranch::PRINCIPAL,
        }
    }
}

/// β² = 1/(4α²).
pub fn beta_sq(alpha: f64) -> f64 {
    0.25 / (alpha * alpha)
}

/// NU coefficients of the problem at trial energy `e`, and the variable map.
pub fn to_nu_coefficients(
    prob: &BoundProblem,
    e: f64,
    transcription: Transcription,
) -> Result<(NuCoefficients, VariableMap), ModelError> {
    prob.validate()?;
    let m = prob.mass;
    let b2 = beta_sq(prob.alpha());
    let verbatim = transcription == Transcription::PaperVerbatim;
    let (a1, a2, a3, xi1, xi2, xi3) = match (prob.potential, prob.symmetry) {
        (PotentialSpec::Hypergeometric { alpha, .. }, SymmetryLimit::Pseudospin { c }) => {
            let (d1, d2) = prob.potential.d1_d2();
            let mu = m - e + c;
            let eps = m * (m + c) + e * (c - e);
            let kt = prob.kappa_term();
            let xi2_eps = if verbatim { -eps } else { eps };
            (
                1.0,
                1.0,
                1.0,
                -b2 * (mu * d2 * d2 - eps),
                2.0 * b2 * (d1 * d2 * mu + xi2_eps - 2.0 * alpha * alpha * kt),
                -b2 * (mu * d1 * d1 - eps),
            )
        }
        (PotentialSpec::Hypergeometric { alpha, .. }, SymmetryLimit::Spin { delta }) => {
            let (d1, d2) = prob.potential.d1_d2();
            let mu = m + e - delta;
            let eps = m * (delta - m) + e * (e - delta);
            let kt = prob.kappa_term();
            (
                1.0,
                1.0,
                1.0,
                -b2 * (eps - mu * d2 * d2),
                -2.0 * b2 * (eps + d1 * d2 * mu + 2.0 * alpha * alpha * kt),
                -b2 * (eps - mu * d1 * d1),
            )
        }
        (PotentialSpec::Morse { v1, v2, .. }, SymmetryLimit::Pseudospin { c }) => {
            let big_m = m - e + c;
            if verbatim {
                (1.0, 0.0, 0.0, 4.0 * b2 * v1 * big_m, 4.0 * b2 * v2 * big_m, 4.0 * b2 * (e * e - m * m - e * (m + c)))
            } else {
                (1.0, 0.0, 0.0, -4.0 * b2 * v1 * big_m, -4.0 * b2 * v2 * big_m, 4.0 * b2 * big_m * (m + e))
            }
        }
        (PotentialSpec::Morse { v1, v2, .. }, SymmetryLimit::Spin { delta }) => {
            let big_n = m + e - delta;
            (1.0, 0.0, 0.0, 4.0 * b2 * v1 * big_n, 4.0 * b2 * v2 * big_n, 4.0 * b2 * big_n * (m - e))
        }
        (PotentialSpec::PoschlTeller { v0, .. }, SymmetryLimit::Pseudospin { c }) => {
            let big_m = m - e + c;
            let s = if verbatim { -1.0 } else { 1.0 };
            let x = s * b2 * big_m * (m + e);
            (1.0, 1.0, 1.0, x, s * 2.0 * b2 * big_m * (m + e + 2.0 * v0), x)
        }
        (PotentialSpec::PoschlTeller { v0, .. }, SymmetryLimit::Spin { delta }) => {
            let big_n = m + e - delta;
            let x = b2 * big_n * (m - e);
            (1.0, 1.0, 1.0, x, 2.0 * b2 * big_n * (m - e - 2.0 * v0), x)
        }
    };
    let c = NuCoefficients::new(a1, a2, a3, xi1, xi2, xi3)?;
    Ok((c, prob.potential.variable_map()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn potential_values() {
        let morse = PotentialSpec::Morse { v1: 5.0, v2: 3.0, alpha: 1.0 };
        assert_relative_eq!(morse.value(0.0), 2.0);
        let pt = PotentialSpec::PoschlTeller { v0: 2.0, alpha: 1.0 };
        assert_relative_eq!(evaluate_potential(&pt, 1e-12).unwrap(), -2.0, epsilon = 1e-10);
        let hyp = PotentialSpec::Hypergeometric { depth: 4.0, sigma: 1.0, alpha: 0.5 };
        let z = (-1.0f64).exp();
        assert_relative_eq!(
            evaluate_potential(&hyp, 1.0).unwrap(),
            16.0 * (z / (1.0 - z)).powi(2),
            max_relative = 1e-14
        );
        assert!(evaluate_potential(&hyp, 0.0).is_err());
        assert!(evaluate_potential(&hyp, -1.0).is_err());
    }

    #[test]
    fn centrifugal_values() {
        assert_eq!(centrifugal_approx(0.0, 0.3, 2.0), 0.0);
        assert_relative_eq!(centrifugal_approx(2.0, 0.01, 1.0), 2.0, max_relative = 2e-4);
        let e2 = (-2.0f64).exp();
        let v = centrifugal_approx(2.0, 1.0, 1.0);
        assert_relative_eq!(v, 8.0 * e2 / (1.0 - e2).powi(2), max_relative = 1e-14);
        // 1/sinh²(1) = 0.724: a 27.6% shortfall against 1/r² at αr = 1
        assert_relative_eq!(v, 2.0 / 1.0f64.sinh().powi(2), max_relative = 1e-14);
        assert!(((v - 2.0).abs() / 2.0 - 0.276).abs() < 1e-3);
    }

    #[test]
    fn variable_map_round_trip() {
        for map in
            [VariableMap::Exp2 { alpha: 0.7 }, VariableMap::Exp1 { alpha: 0.7 }, VariableMap::NegExp2 { alpha: 0.7 }]
        {
            for i in 0..=200 {
                let r = 1e-3 * (30.0f64 / 1e-3).powf(i as f64 / 200.0);
                let back = map.r(map.z(r));
                assert!((back - r).abs() <= 1e-12 * r.max(1.0), "{map:?} r={r} back={back}");
                assert_relative_eq!(map.one_minus_z(r), 1.0 - map.z(r), max_relative = 1e-12, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn coth_representation() {
        // the (D1 + D2 z) form is D(coth αr - σ)²
        for &(d, s, a) in &[(2.0, 0.5, 0.25), (1.0, 3.0, 0.5), (0.3, -4.0, 1.2)] {
            let p = PotentialSpec::Hypergeometric { depth: d, sigma: s, alpha: a };
            let (d1, d2) = p.d1_d2();
            for i in 1..=100 {
                let r = 1e-3 + 0.3 * i as f64;
                let coth = 1.0 / (a * r).tanh();
                assert_relative_eq!(p.value(r), d * (coth - s).powi(2), max_relative = 1e-12);
                let z = (-2.0 * a * r).exp();
                let minus = (d1 - d2 * z).powi(2) / (1.0 - z).powi(2);
                assert_relative_eq!(minus, d * (1.0 - s * coth).powi(2), max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn manning_rosen_reduction() {
        let p = PotentialSpec::Hypergeometric { depth: 1.7, sigma: 1.0, alpha: 0.4 };
        assert!(p.is_manning_rosen());
        let (d1, d2) = p.d1_d2();
        assert_eq!(d1, 0.0);
        for i in 1..50 {
            let r = 0.05 * i as f64;
            let z = (-0.8 * r).exp();
            assert_relative_eq!(p.value(r), d2 * d2 * (z / (1.0 - z)).powi(2), max_relative = 1e-12);
        }
    }

    #[test]
    fn channel_checks() {
        let morse = PotentialSpec::Morse { v1: 4.0, v2: 2.0, alpha: 0.5 };
        let ps = SymmetryLimit::Pseudospin { c: 0.0 };
        let sp = SymmetryLimit::Spin { delta: 0.0 };
        for k in [0, 1] {
            assert!(BoundProblem::new(morse, ps, 1.0, QuantumState::new(0, k)).is_ok());
        }
        for k in [0, -1] {
            assert!(BoundProblem::new(morse, sp, 1.0, QuantumState::new(0, k)).is_ok());
        }
        assert!(matches!(
            BoundProblem::new(morse, ps, 1.0, QuantumState::new(0, -1)),
            Err(ModelError::UnsupportedChannel { .. })
        ));
        let hyp = PotentialSpec::Hypergeometric { depth: 1.0, sigma: 2.0, alpha: 0.5 };
        assert!(BoundProblem::new(hyp, sp, 1.0, QuantumState::new(0, 0)).is_err());
        assert!(BoundProblem::new(hyp, sp, -1.0, QuantumState::new(0, 1)).is_err());
    }

    #[test]
    fn quantum_labels() {
        let s = QuantumState::new(0, -2);
        assert_eq!((s.j(), s.l(), s.l_tilde()), (1.5, 1.0, 2.0));
        let s = QuantumState::new(0, 2);
        assert_eq!((s.j(), s.l(), s.l_tilde()), (1.5, 2.0, 1.0));
    }

    /// z-space coefficients reproduce the r-space equation: with u(r) = Ψ(z(r)),
    /// `z²(1-α₃z)²Ψ'' + z(1-α₃z)(α₁-α₂z)Ψ' = -(−ξ₁z²+ξ₂z−ξ₃)Ψ` must equal
    /// `(1-α₃z)²·Q/(λ²)·Ψ` where z' = -λz.
    #[test]
    fn coefficients_reconstruct_radial_equation() {
        let probs = [
            BoundProblem::new(
                PotentialSpec::Hypergeometric { depth: 0.7, sigma: -3.0, alpha: 0.6 },
                SymmetryLimit::Pseudospin { c: 1.5 },
                2.0,
                QuantumState::new(0, 2),
            ),
            BoundProblem::new(
                PotentialSpec::Hypergeometric { depth: 1.3, sigma: 2.5, alpha: 0.4 },
                SymmetryLimit::Spin { delta: 0.3 },
                3.0,
                QuantumState::new(0, -3),
            ),
            BoundProblem::new(
                PotentialSpec::Morse { v1: 3.0, v2: 5.0, alpha: 0.7 },
                SymmetryLimit::Pseudospin { c: -9.0 },
                4.0,
                QuantumState::new(0, 1),
            ),
            BoundProblem::new(
                PotentialSpec::Morse { v1: 3.0, v2: 5.0, alpha: 0.7 },
                SymmetryLimit::Spin { delta: 0.5 },
                4.0,
                QuantumState::new(0, 0),
            ),
            BoundProblem::new(
                PotentialSpec::PoschlTeller { v0: 2.5, alpha: 0.9 },
                SymmetryLimit::Pseudospin { c: -7.0 },
                3.0,
                QuantumState::new(0, 0),
            ),
            BoundProblem::new(
                PotentialSpec::PoschlTeller { v0: 2.5, alpha: 0.9 },
                SymmetryLimit::Spin { delta: 1.0 },
                3.0,
                QuantumState::new(0, -1),
            ),
        ];
        for prob in probs.iter().map(|p| p.clone().unwrap()) {
            for &e in &[-3.7, -0.4, 1.1, 2.6] {
                let (c, map) = to_nu_coefficients(&prob, e, Transcription::Rederived).unwrap();
                let lambda = match map {
                    VariableMap::Exp1 { alpha } => alpha,
                    VariableMap::Exp2 { alpha } | VariableMap::NegExp2 { alpha } => 2.0 * alpha,
                };
                for i in 1..=50 {
                    let r = 0.02 + 0.12 * i as f64;
                    let z = map.z(r);
                    let s = 1.0 - c.alpha3 * z;
                    let lhs = -c.xi1 * z * z + c.xi2 * z - c.xi3;
                    let rhs = -s * s * prob.effective_q(r, e, CentrifugalMode::ApproxExponential) / (lambda * lambda);
                    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                    assert!((lhs - rhs).abs() / scale < 1e-8, "{prob:?} e={e} r={r}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn verbatim_differs_where_recorded() {
        let prob = BoundProblem::new(
            PotentialSpec::Morse { v1: 4.0, v2: 8.0, alpha: 0.5 },
            SymmetryLimit::Spin { delta: 0.0 },
            5.0,
            QuantumState::new(0, 0),
        )
        .unwrap();
        let a = to_nu_coefficients(&prob, 2.0, Transcription::Rederived).unwrap();
        let b = to_nu_coefficients(&prob, 2.0, Transcription::PaperVerbatim).unwrap();
        assert_eq!(a, b);
        let prob = BoundProblem { symmetry: SymmetryLimit::Pseudospin { c: -12.0 }, ..prob };
        let a = to_nu_coefficients(&prob, -6.0, Transcription::Rederived).unwrap().0;
        let b = to_nu_coefficients(&prob, -6.0, Transcription::PaperVerbatim).unwrap().0;
        assert_relative_eq!(a.xi1, -b.xi1);
        assert_relative_eq!(a.xi2, -b.xi2);
    }
}
