//! Parametric Nikiforov-Uvarov machinery.
//!
//! The engine works on the normal form
//!
//! ```text
//! z²(1-α₃z)² Ψ'' + z(1-α₃z)(α₁-α₂z) Ψ' + (-ξ₁z² + ξ₂z - ξ₃) Ψ = 0
//! ```
//!
//! and maps its six coefficients onto the derived set α₄..α₁₃, the
//! quantization condition, and the closed-form solution
//! `z^{α₁₂} (1-α₃z)^{-α₁₂-α₁₃/α₃} P_n^{(α₁₀-1, α₁₁/α₃-α₁₀-1)}(1-2α₃z)`
//! (or `z^{α₁₂} e^{α₁₃z} L_n^{α₁₀-1}(α₁₁z)` when α₃ = 0).
//!
//! Both square roots `√α₈` and `√α₉` carry an explicit sign through
//! [`RootBranch`]. The principal branch reproduces the textbook formulas and
//! the minus root of `k`; flipping one sign gives the other root of `k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::special_fn::PolynomialKind;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NuError {
    #[error("alpha3 must be >= 0, got {0}")]
    NegativeAlpha3(f64),
    #[error("non-finite NU coefficient")]
    NonFinite,
    #[error("negative discriminant: alpha8 = {alpha8}, alpha9 = {alpha9}")]
    NegativeDiscriminant { alpha8: f64, alpha9: f64 },
}

/// The six inputs of the parametric normal form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
}

impl NuCoefficients {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64, xi1: f64, xi2: f64, xi3: f64) -> Result<Self, NuError> {
        let c = Self { alpha1, alpha2, alpha3, xi1, xi2, xi3 };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), NuError> {
        let all = [self.alpha1, self.alpha2, self.alpha3, self.xi1, self.xi2, self.xi3];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(NuError::NonFinite);
        }
        if self.alpha3 < 0.0 {
            return Err(NuError::NegativeAlpha3(self.alpha3));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Signs attached to `√α₈` and `√α₉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootBranch {
    pub sqrt_alpha8: Sign,
    pub sqrt_alpha9: Sign,
}

impl RootBranch {
    pub const PRINCIPAL: Self = Self { sqrt_alpha8: Sign::Plus, sqrt_alpha9: Sign::Plus };
    /// `√α₉ → -√α₉`: the decaying branch for maps with `z ∈ (-∞, 0)`.
    pub const REFLECTED_ALPHA9: Self = Self { sqrt_alpha8: Sign::Plus, sqrt_alpha9: Sign::Minus };

    /// True when this branch selects the `+2√(α₈α₉)` root of `k`.
    pub fn is_plus_k_root(self) -> bool {
        self.sqrt_alpha8 != self.sqrt_alpha9
    }
}

impl Default for RootBranch {
    fn default() -> Self {
        Self::PRINCIPAL
    }
}

/// Derived parameters α₄..α₁₃ and the chosen `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuDerived {
    pub alpha4: f64,
    pub alpha5: f64,
    pub alpha6: f64,
    pub alpha7: f64,
    pub alpha8: f64,
    pub alpha9: f64,
    pub alpha10: f64,
    pub alpha11: f64,
    pub alpha12: f64,
    pub alpha13: f64,
    pub k: f64,
    pub tau_prime_negative: bool,
    pub branch: RootBranch,
    /// Signed `√α₈` and `√α₉` as used by this branch.
    pub root8: f64,
    pub root9: f64,
}

impl NuDerived {
    /// The other root of `k` (the one this branch did not select).
    pub fn k_alternate(&self, alpha3: f64) -> f64 {
        -(self.alpha7 + 2.0 * alpha3 * self.alpha8) + 2.0 * self.root8 * self.root9
    }

    /// Slope of τ(z) = τ̃(z) + 2π(z).
    pub fn tau_prime(&self, alpha3: f64) -> f64 {
        -2.0 * alpha3 - 2.0 * (self.root9 + alpha3 * self.root8)
    }
}

/// α₄..α₉ only; these exist even when the discriminants are negative.
fn primary_parameters(c: &NuCoefficients) -> [f64; 6] {
    let a4 = 0.5 * (1.0 - c.alpha1);
    let a5 = 0.5 * (c.alpha2 - 2.0 * c.alpha3);
    let a6 = a5 * a5 + c.xi1;
    let a7 = 2.0 * a4 * a5 - c.xi2;
    let a8 = a4 * a4 + c.xi3;
    let a9 = c.alpha3 * a7 + c.alpha3 * c.alpha3 * a8 + a6;
    [a4, a5, a6, a7, a8, a9]
}

/// Derived parameters on the principal branch.
pub fn derive_parameters(c: &NuCoefficients) -> Result<NuDerived, NuError> {
    derive_parameters_with(c, RootBranch::PRINCIPAL)
}

pub fn derive_parameters_with(c: &NuCoefficients, branch: RootBranch) -> Result<NuDerived, NuError> {
    c.validate()?;
    let [alpha4, alpha5, alpha6, alpha7, alpha8, alpha9] = primary_parameters(c);
    if alpha8 < 0.0 || alpha9 < 0.0 {
        return Err(NuError::NegativeDiscriminant { alpha8, alpha9 });
    }
    let a3 = c.alpha3;
    let root8 = branch.sqrt_alpha8.value() * alpha8.sqrt();
    let root9 = branch.sqrt_alpha9.value() * alpha9.sqrt();
    let slope = root9 + a3 * root8;
    let k = -(alpha7 + 2.0 * a3 * alpha8) - 2.0 * root8 * root9;
    let tau_prime = -2.0 * a3 - 2.0 * slope;
    Ok(NuDerived {
        alpha4,
        alpha5,
        alpha6,
        alpha7,
        alpha8,
        alpha9,
        alpha10: c.alpha1 + 2.0 * alpha4 + 2.0 * root8,
        alpha11: c.alpha2 - 2.0 * alpha5 + 2.0 * slope,
        alpha12: alpha4 + root8,
        alpha13: alpha5 - slope,
        k,
        tau_prime_negative: tau_prime < 0.0,
        branch,
        root8,
        root9,
    })
}

/// Quantization condition on the principal branch; zero at an eigenvalue.
///
/// `n[(n-1)α₃ + α₂ - 2α₅] - α₅ + (2n+1)(√α₉ + α₃√α₈) + α₇ + 2α₃α₈ + 2√(α₈α₉)`.
/// The same expression is used for α₃ = 0, where it is the continuous limit.
pub fn quantization_residual(c: &NuCoefficients, n: u32) -> Result<f64, NuError> {
    quantization_residual_with(c, n, RootBranch::PRINCIPAL)
}

pub fn quantization_residual_with(c: &NuCoefficients, n: u32, branch: RootBranch) -> Result<f64, NuError> {
    let d = derive_parameters_with(c, branch)?;
    Ok(residual_from(c, &d, n))
}

fn residual_from(c: &NuCoefficients, d: &NuDerived, n: u32) -> f64 {
    let n = n as f64;
    let a3 = c.alpha3;
    n * ((n - 1.0) * a3 + c.alpha2 - 2.0 * d.alpha5) - d.alpha5
        + (2.0 * n + 1.0) * (d.root9 + a3 * d.root8)
        + d.alpha7
        + 2.0 * a3 * d.alpha8
        + 2.0 * d.root8 * d.root9
}

/// The α₃ = 0 quantization exactly as printed alongside the Laguerre limit:
/// `α₂n - 2α₅n + (2n+1)(√α₉ - α₃√α₈) + n(n-1)α₃ + α₇ + 2α₃α₈ - 2√(α₈α₉) + α₅`.
///
/// Kept for the errata comparison; it selects the `-√α₈` branch.
pub fn quantization_residual_eq27(c: &NuCoefficients, n: u32) -> Result<f64, NuError> {
    let d = derive_parameters(c)?;
    let n = n as f64;
    let a3 = c.alpha3;
    let (s8, s9) = (d.alpha8.sqrt(), d.alpha9.sqrt());
    Ok(c.alpha2 * n - 2.0 * d.alpha5 * n
        + (2.0 * n + 1.0) * (s9 - a3 * s8)
        + n * (n - 1.0) * a3
        + d.alpha7
        + 2.0 * a3 * d.alpha8
        - 2.0 * (d.alpha8 * d.alpha9).sqrt()
        + d.alpha5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormBranch {
    Jacobi,
    Laguerre,
}

/// Closed-form solution of the normal form, as a function of `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionForm {
    /// Power of `z` (α₁₂).
    pub variable_exponent: f64,
    /// Exponent on `(1-α₃z)` for Jacobi, coefficient in `e^{α₁₃z}` for Laguerre.
    pub edge_factor: f64,
    pub alpha3: f64,
    pub polynomial: PolynomialKind,
    /// Jacobi argument is `1 - 2α₃z`; Laguerre argument is `argument_scale·z` (α₁₁).
    pub argument_scale: f64,
    pub branch: FormBranch,
    /// Both Jacobi weight exponents exceed -1 (weight integrable on `0 < z < 1/α₃`).
    /// Always true on the Laguerre branch when α₁₀ - 1 > -1.
    pub normalizable: bool,
}

impl WavefunctionForm {
    /// Unnormalized value at `z`. Negative `z` uses `|z|` for the power.
    pub fn eval(&self, z: f64) -> f64 {
        let lead = z.abs().powf(self.variable_exponent);
        match self.branch {
            FormBranch::Jacobi => {
                let x = 1.0 - 2.0 * self.alpha3 * z;
                lead * (1.0 - self.alpha3 * z).powf(self.edge_factor) * self.polynomial.eval(x)
            }
            FormBranch::Laguerre => lead * (self.edge_factor * z).exp() * self.polynomial.eval(self.argument_scale * z),
        }
    }

    /// Polynomial argument for this `z`.
    pub fn polynomial_argument(&self, z: f64) -> f64 {
        match self.branch {
            FormBranch::Jacobi => 1.0 - 2.0 * self.alpha3 * z,
            FormBranch::Laguerre => self.argument_scale * z,
        }
    }
}

pub fn wavefunction_form(c: &NuCoefficients, n: u32, branch: RootBranch) -> Result<WavefunctionForm, NuError> {
    let d = derive_parameters_with(c, branch)?;
    let degree = n as usize;
    if c.alpha3 == 0.0 {
        let a = d.alpha10 - 1.0;
        Ok(WavefunctionForm {
            variable_exponent: d.alpha12,
            edge_factor: d.alpha13,
            alpha3: 0.0,
            polynomial: PolynomialKind::laguerre(degree, a),
            argument_scale: d.alpha11,
            branch: FormBranch::Laguerre,
            normalizable: a > -1.0,
        })
    } else {
        let a = d.alpha10 - 1.0;
        let b = d.alpha11 / c.alpha3 - d.alpha10 - 1.0;
        Ok(WavefunctionForm {
            variable_exponent: d.alpha12,
            edge_factor: -d.alpha12 - d.alpha13 / c.alpha3,
            alpha3: c.alpha3,
            polynomial: PolynomialKind::jacobi(degree, a, b),
            argument_scale: 2.0 * c.alpha3,
            branch: FormBranch::Jacobi,
            normalizable: a > -1.0 && b > -1.0,
        })
    }
}

/// Residual of the normal form at `z` for a candidate solution `psi`,
/// using central differences with step `h`. Returned relative to the
/// largest of the three terms.
pub fn normal_form_residual<F: Fn(f64) -> f64>(c: &NuCoefficients, psi: F, z: f64, h: f64) -> f64 {
    let f0 = psi(z);
    let (fp1, fm1, fp2, fm2) = (psi(z + h), psi(z - h), psi(z + 2.0 * h), psi(z - 2.0 * h));
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    let s = z * (1.0 - c.alpha3 * z);
    let t1 = s * s * d2;
    let t2 = s * (c.alpha1 - c.alpha2 * z) * d1;
    let t3 = (-c.xi1 * z * z + c.xi2 * z - c.xi3) * f0;
    let scale = t1.abs().max(t2.abs()).max(t3.abs());
    if scale == 0.0 {
        0.0
    } else {
        (t1 + t2 + t3).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn coeffs(a1: f64, a2: f64, a3: f64, x1: f64, x2: f64, x3: f64) -> NuCoefficients {
        NuCoefficients::new(a1, a2, a3, x1, x2, x3).unwrap()
    }

    #[test]
    fn rejects_negative_alpha3() {
        assert_eq!(NuCoefficients::new(1.0, 1.0, -0.5, 0.0, 0.0, 0.0), Err(NuError::NegativeAlpha3(-0.5)));
    }

    #[test]
    fn hypergeometric_pattern() {
        let d = derive_parameters(&coeffs(1.0, 1.0, 1.0, 2.0, 1.0, 0.5)).unwrap();
        assert_eq!(d.alpha4, 0.0);
        assert_eq!(d.alpha5, -0.5);
        assert_relative_eq!(d.alpha6, 2.25);
        assert_relative_eq!(d.alpha7, -1.0);
        assert_relative_eq!(d.alpha8, 0.5);
        assert_relative_eq!(d.alpha9, 1.75);
    }

    #[test]
    fn morse_pattern() {
        let d = derive_parameters(&coeffs(1.0, 0.0, 0.0, 4.0, 2.0, 1.0)).unwrap();
        let got =
            [d.alpha4, d.alpha5, d.alpha6, d.alpha7, d.alpha8, d.alpha9, d.alpha10, d.alpha11, d.alpha12, d.alpha13];
        let want = [0.0, 0.0, 4.0, -2.0, 1.0, 4.0, 3.0, 4.0, 1.0, -2.0];
        for (g, w) in got.iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-15);
        }
    }

    #[test]
    fn zero_input() {
        let d = derive_parameters(&coeffs(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!((d.alpha4, d.alpha5, d.alpha6, d.alpha7), (0.5, 0.0, 0.0, 0.0));
        assert_eq!((d.alpha8, d.alpha9), (0.25, 0.0));
    }

    #[test]
    fn negative_discriminant_is_reported() {
        let err = derive_parameters(&coeffs(1.0, 0.0, 0.0, -1.0, 0.0, 1.0)).unwrap_err();
        assert!(matches!(err, NuError::NegativeDiscriminant { .. }));
        assert!(quantization_residual(&coeffs(1.0, 1.0, 1.0, 0.0, 0.0, -2.0), 0).is_err());
    }

    #[test]
    fn k_choice_and_tau_slope() {
        let c = coeffs(1.0, 1.0, 1.0, 2.0, 1.0, 0.5);
        let d = derive_parameters(&c).unwrap();
        let expected = -(d.alpha7 + 2.0 * d.alpha8) - 2.0 * (d.alpha8 * d.alpha9).sqrt();
        assert_relative_eq!(d.k, expected);
        assert!(d.tau_prime_negative);
        let flipped = derive_parameters_with(&c, RootBranch::REFLECTED_ALPHA9).unwrap();
        assert!(flipped.branch.is_plus_k_root());
        assert_relative_eq!(flipped.k, d.k_alternate(1.0));
    }

    #[test]
    fn trivial_residual() {
        let r = quantization_residual(&coeffs(1.0, 1.0, 1.0, 0.0, 0.0, 0.0), 0).unwrap();
        assert_relative_eq!(r, 1.0);
    }

    #[test]
    fn laguerre_limit_quantization_root() {
        // √ξ₃ = ξ₂/(2√ξ₁) - (n + 1/2) = 1/2 for ξ₁ = ξ₂ = 4, n = 0
        let at_root = quantization_residual(&coeffs(1.0, 0.0, 0.0, 4.0, 4.0, 0.25), 0).unwrap();
        assert!(at_root.abs() < 1e-15);
        for xi3 in [0.1, 0.2, 0.3, 0.5] {
            let r = quantization_residual(&coeffs(1.0, 0.0, 0.0, 4.0, 4.0, xi3), 0).unwrap();
            assert!(r.abs() > 1e-3);
        }
        // the printed α₃ = 0 form has the opposite cross term and no root here
        let eq27 = quantization_residual_eq27(&coeffs(1.0, 0.0, 0.0, 4.0, 4.0, 0.25), 0).unwrap();
        assert_relative_eq!(eq27, -4.0 * (0.25f64 * 4.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn morse_form_matches_pattern() {
        let (xi1, xi3) = (2.25, 0.64);
        let w = wavefunction_form(&coeffs(1.0, 0.0, 0.0, xi1, 1.0, xi3), 2, RootBranch::PRINCIPAL).unwrap();
        assert_eq!(w.branch, FormBranch::Laguerre);
        assert_relative_eq!(w.variable_exponent, xi3.sqrt());
        assert_relative_eq!(w.edge_factor, -xi1.sqrt());
        assert_relative_eq!(w.argument_scale, 2.0 * xi1.sqrt());
        assert_eq!(w.polynomial, PolynomialKind::laguerre(2, 2.0 * xi3.sqrt()));
    }

    #[test]
    fn vanishing_xi3_gives_zero_exponent() {
        let w = wavefunction_form(&coeffs(1.0, 1.0, 1.0, 0.3, -0.2, 0.0), 1, RootBranch::PRINCIPAL).unwrap();
        assert_eq!(w.variable_exponent, 0.0);
        assert_eq!(w.branch, FormBranch::Jacobi);
    }

    /// Pick ξ₂ so the Jacobi-branch quantization holds at level n.
    fn solve_xi2(a1: f64, a2: f64, a3: f64, xi1: f64, xi3: f64, n: u32) -> Option<f64> {
        let f = |xi2: f64| {
            quantization_residual(&NuCoefficients { alpha1: a1, alpha2: a2, alpha3: a3, xi1, xi2, xi3 }, n).ok()
        };
        let (mut lo, mut hi) = (-200.0, 200.0);
        let grid: Vec<f64> = (0..=4000).map(|i| lo + (hi - lo) * i as f64 / 4000.0).collect();
        let mut bracket = None;
        for w in grid.windows(2) {
            if let (Some(a), Some(b)) = (f(w[0]), f(w[1])) {
                if a * b <= 0.0 {
                    bracket = Some((w[0], w[1]));
                    break;
                }
            }
        }
        let (l, h) = bracket?;
        lo = l;
        hi = h;
        let flo = f(lo)?;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid)?;
            if fm * flo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    #[test]
    fn quantized_form_solves_normal_form() {
        for n in 0..3 {
            let xi2 = solve_xi2(1.0, 1.0, 1.0, 20.0, 0.6, n).expect("root");
            let c = coeffs(1.0, 1.0, 1.0, 20.0, xi2, 0.6);
            assert!(quantization_residual(&c, n).unwrap().abs() < 1e-9);
            let w = wavefunction_form(&c, n, RootBranch::PRINCIPAL).unwrap();
            for i in 1..50 {
                let z = i as f64 / 50.0 * 0.9 + 0.02;
                let r = normal_form_residual(&c, |z| w.eval(z), z, 1e-4);
                assert!(r < 1e-6, "n={n} z={z} residual={r}");
            }
        }
    }

    #[test]
    fn alpha3_limit_is_continuous() {
        let (xi1, xi2, xi3) = (1.7, 2.9, 0.4);
        for n in 0..=3 {
            let small = 1e-6;
            let near = quantization_residual(&coeffs(1.0, 2.0 * small, small, xi1, xi2, xi3), n).unwrap();
            let at = quantization_residual(&coeffs(1.0, 0.0, 0.0, xi1, xi2, xi3), n).unwrap();
            assert!((near - at).abs() < 1e-4);
            // the printed α₃ = 0 form differs by the cross term
            let printed = quantization_residual_eq27(&coeffs(1.0, 0.0, 0.0, xi1, xi2, xi3), n).unwrap();
            assert_relative_eq!(at - printed, 4.0 * (xi3 * xi1).sqrt(), epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn parameter_identities(
            a1 in -3.0..3.0f64, a2 in -3.0..3.0f64, a3 in 0.0..2.0f64,
            x1 in -2.0..6.0f64, x2 in -6.0..6.0f64, x3 in 0.0..6.0f64,
        ) {
            let c = NuCoefficients { alpha1: a1, alpha2: a2, alpha3: a3, xi1: x1, xi2: x2, xi3: x3 };
            if let Ok(d) = derive_parameters(&c) {
                prop_assert!((d.alpha4 - (1.0 - a1) / 2.0).abs() < 1e-12);
                prop_assert!((d.alpha5 - (a2 - 2.0 * a3) / 2.0).abs() < 1e-12);
                prop_assert!((d.alpha6 - (d.alpha5 * d.alpha5 + x1)).abs() < 1e-12);
                prop_assert!((d.alpha7 - (2.0 * d.alpha4 * d.alpha5 - x2)).abs() < 1e-12);
                prop_assert!((d.alpha8 - (d.alpha4 * d.alpha4 + x3)).abs() < 1e-12);
                prop_assert!((d.alpha9 - (a3 * d.alpha7 + a3 * a3 * d.alpha8 + d.alpha6)).abs() < 1e-12);
                let (s8, s9) = (d.alpha8.sqrt(), d.alpha9.sqrt());
                prop_assert!((d.alpha10 - (a1 + 2.0 * d.alpha4 + 2.0 * s8)).abs() < 1e-12);
                prop_assert!((d.alpha11 - (a2 - 2.0 * d.alpha5 + 2.0 * (s9 + a3 * s8))).abs() < 1e-12);
                prop_assert!((d.alpha12 - (d.alpha4 + s8)).abs() < 1e-12);
                prop_assert!((d.alpha13 - (d.alpha5 - (s9 + a3 * s8))).abs() < 1e-12);
            }
        }
    }
}
