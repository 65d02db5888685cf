//! Orthogonal polynomials and adaptive quadrature.
//!
//! Jacobi and associated Laguerre polynomials are evaluated with their
//! three-term recurrences. Evaluation is defined for every finite real
//! parameter and argument; the usual `a, b > -1` restrictions only matter
//! for orthogonality.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Polynomial family together with its real parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PolynomialFamily {
    Jacobi { a: f64, b: f64 },
    Laguerre { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialKind {
    pub family: PolynomialFamily,
    pub degree: usize,
}

impl PolynomialKind {
    pub fn jacobi(degree: usize, a: f64, b: f64) -> Self {
        Self { family: PolynomialFamily::Jacobi { a, b }, degree }
    }

    pub fn laguerre(degree: usize, a: f64) -> Self {
        Self { family: PolynomialFamily::Laguerre { a }, degree }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.family {
            PolynomialFamily::Jacobi { a, b } => jacobi_eval(self.degree, a, b, x),
            PolynomialFamily::Laguerre { a } => laguerre_eval(self.degree, a, x),
        }
    }
}

/// Jacobi polynomial `P_n^{(a,b)}(x)`.
///
/// Uses the three-term recurrence. When a recurrence denominator vanishes
/// (`a + b` a negative integer hitting `-2k` or `2 - 2k`), falls back to the
/// terminating hypergeometric sum, which is polynomial in `a` and `b`.
pub fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = a + b;
    let p1 = 0.5 * (2.0 * (a + 1.0) + (ab + 2.0) * (x - 1.0));
    if n == 1 {
        return p1;
    }
    let mut prev = 1.0;
    let mut cur = p1;
    for k in 2..=n {
        let k = k as f64;
        let two_k_ab = 2.0 * k + ab;
        let denom = 2.0 * k * (k + ab) * (two_k_ab - 2.0);
        if denom.abs() < 1e-12 * (1.0 + two_k_ab.abs()).powi(3) {
            return jacobi_hypergeometric_sum(n, a, b, x);
        }
        let lin = (two_k_ab - 1.0) * (a * a - b * b);
        let cub = (two_k_ab - 2.0) * (two_k_ab - 1.0) * two_k_ab;
        let back = 2.0 * (k + a - 1.0) * (k + b - 1.0) * two_k_ab;
        let next = ((lin + cub * x) * cur - back * prev) / denom;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n^{(a,b)}(x) = (1/n!) Σ_k C(n,k) (n+a+b+1)_k (a+k+1)_{n-k} ((x-1)/2)^k`.
fn jacobi_hypergeometric_sum(n: usize, a: f64, b: f64, x: f64) -> f64 {
    let t = 0.5 * (x - 1.0);
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        if k > 0 {
            binom *= (n - k + 1) as f64 / k as f64;
        }
        let rising_top: f64 = (0..k).map(|j| n as f64 + a + b + 1.0 + j as f64).product();
        let rising_low: f64 = (0..n - k).map(|j| a + k as f64 + 1.0 + j as f64).product();
        sum += binom * rising_top * rising_low * t.powi(k as i32);
    }
    let factorial: f64 = (1..=n).map(|j| j as f64).product();
    sum / factorial
}

/// Associated Laguerre polynomial `L_n^{a}(x)`.
pub fn laguerre_eval(n: usize, a: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0 + a - x) * cur - (k - 1.0 + a) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature did not reach tolerance {tol:e} within {intervals} subintervals (estimate {estimate}, error {error:e})")]
    NotConverged { tol: f64, intervals: usize, estimate: f64, error: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
}

/// Subdivision budget for [`integrate`].
pub const MAX_SUBINTERVALS: usize = 4000;

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += w * pair;
        // odd Kronrod indices are the Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment { lo, hi, value: kronrod * half, error: ((kronrod - gauss) * half).abs() })
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[lo, hi]` with absolute
/// error target `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, QuadratureError> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QuadratureError::InvalidInterval { lo, hi });
    }
    let mut segments = vec![gauss_kronrod(&f, lo, hi)?];
    loop {
        let (total, error) = segments.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= tol {
            return Ok(total);
        }
        if segments.len() >= MAX_SUBINTERVALS {
            return Err(QuadratureError::NotConverged { tol, intervals: segments.len(), estimate: total, error });
        }
        let worst =
            segments.iter().enumerate().max_by(|a, b| a.1.error.total_cmp(&b.1.error)).map(|(i, _)| i).unwrap_or(0);
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        if mid <= s.lo || mid >= s.hi {
            // interval exhausted at machine resolution; accept what we have
            return Ok(total);
        }
        segments.push(gauss_kronrod(&f, s.lo, mid)?);
        segments.push(gauss_kronrod(&f, mid, s.hi)?);
    }
}

/// Integrand magnitude below which a cutoff counts as the end of the tail.
pub const TAIL_THRESHOLD: f64 = 1e-14;

/// Integral of an exponentially decaying `f` over `[lo, ∞)`.
///
/// The cutoff starts at `lo + initial_span`, grows until `|f| < 1e-14`
/// there, and is then doubled until the added piece is below `tol`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    initial_span: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    if !(initial_span > 0.0) {
        return Err(QuadratureError::InvalidInterval { lo, hi: lo + initial_span });
    }
    let mut span = initial_span;
    for _ in 0..60 {
        if f(lo + span).abs() < TAIL_THRESHOLD {
            break;
        }
        span *= 2.0;
    }
    let mut total = integrate(&f, lo, lo + span, 0.5 * tol)?;
    for _ in 0..30 {
        let extra = integrate(&f, lo + span, lo + 2.0 * span, 0.25 * tol)?;
        total += extra;
        span *= 2.0;
        if extra.abs() <= 0.5 * tol {
            return Ok(total);
        }
    }
    Err(QuadratureError::NotConverged { tol, intervals: 0, estimate: total, error: f64::NAN })
}
