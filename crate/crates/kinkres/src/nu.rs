//! Parametric Nikiforov-Uvarov engine: maps a canonical second-order ODE
//! to its derived constants, energy-equation residuals, and wavefunction
//! factor descriptions for both quantization branches.

use crate::specfun::{jacobi_p, laguerre_l, SpecFunError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NuError {
    #[error("c3 = 0: constant {0} requires the Jacobi-branch machinery")]
    Degenerate(&'static str),
    #[error("c3 != 0: the Laguerre limit only applies to degenerate ODEs")]
    NotDegenerate,
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Canonical hypergeometric-type ODE
/// psi'' + [(c1 - c2 s) / (s (1 - c3 s))] psi'
///       + [(-A s^2 + B s - C) / (s (1 - c3 s))^2] psi = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalOde {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

/// Which root of the pi(s) quadratic the quantization uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    KMinus,
    KPlus,
}

/// Advisory sign conditions evaluated on real parts. The source constants
/// are genuinely complex for resonance problems, so these are recorded but
/// never enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositivityFlags {
    pub c10_gt_minus_one: bool,
    pub c11_gt_minus_one: bool,
    pub c12_positive: bool,
    pub c13_positive: bool,
}

/// Derived constants of the parametric method. The tilde variants flip the
/// sign of sqrt(c8). `c11`, `c13` and their tildes divide by c3 and are
/// absent for degenerate (c3 = 0) ODEs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuConstants {
    pub c3: Complex64,
    pub c4: Complex64,
    pub c5: Complex64,
    pub c6: Complex64,
    pub c7: Complex64,
    pub c8: Complex64,
    pub c9: Complex64,
    pub c10: Complex64,
    pub c11: Option<Complex64>,
    pub c12: Complex64,
    pub c13: Option<Complex64>,
    pub c10_tilde: Complex64,
    pub c11_tilde: Option<Complex64>,
    pub c12_tilde: Complex64,
    pub c13_tilde: Option<Complex64>,
    pub k_minus: Complex64,
    pub k_plus: Complex64,
    pub sqrt_c8: Complex64,
    pub sqrt_c9: Complex64,
    pub positivity: PositivityFlags,
}

/// Factorized description of psi_n(s) = N s^p (1 - c3 s)^q P_n^(alpha,beta)(1 - 2 c3 s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionFactors {
    pub branch: Branch,
    pub power_exponent: Complex64,
    pub bracket_exponent: Complex64,
    pub jacobi_alpha: Complex64,
    pub jacobi_beta: Complex64,
    pub degree: u32,
    pub c3: Complex64,
}

/// Factorized description of the degenerate (c3 = 0) limit
/// psi_n(s) = N s^p exp(-(sqrt(c9) - c5) s) L_n^(c10)(2 sqrt(c9) s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreFactors {
    pub power_exponent: Complex64,
    pub decay_rate: Complex64,
    pub laguerre_order: Complex64,
    pub argument_scale: Complex64,
    pub degree: u32,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn derive_constants(ode: &CanonicalOde) -> NuConstants {
    let c3 = ode.c3;
    let c4 = 0.5 * (Complex64::new(1.0, 0.0) - ode.c1);
    let c5 = 0.5 * (ode.c2 - 2.0 * c3);
    let c6 = c5 * c5 + ode.a;
    let c7 = 2.0 * c4 * c5 - ode.b;
    let c8 = c4 * c4 + ode.c;
    let c9 = c3 * (c7 + c3 * c8) + c6;
    let sqrt_c8 = c8.sqrt();
    let sqrt_c9 = c9.sqrt();
    let degenerate = c3 == zero();
    let c10 = 2.0 * sqrt_c8;
    let c11 = (!degenerate).then(|| 2.0 / c3 * sqrt_c9);
    let c12 = c4 + sqrt_c8;
    let c13 = (!degenerate).then(|| -c4 + (sqrt_c9 - c5) / c3);
    let positivity = PositivityFlags {
        c10_gt_minus_one: c10.re > -1.0,
        c11_gt_minus_one: c11.map(|v| v.re > -1.0).unwrap_or(true),
        c12_positive: c12.re > 0.0,
        c13_positive: c13.map(|v| v.re > 0.0).unwrap_or(true),
    };
    NuConstants {
        c3,
        c4,
        c5,
        c6,
        c7,
        c8,
        c9,
        c10,
        c11,
        c12,
        c13,
        c10_tilde: -c10,
        c11_tilde: c11,
        c12_tilde: c4 - sqrt_c8,
        c13_tilde: c13,
        k_minus: -(c7 + 2.0 * c3 * c8) - 2.0 * sqrt_c8 * sqrt_c9,
        k_plus: -(c7 + 2.0 * c3 * c8) + 2.0 * sqrt_c8 * sqrt_c9,
        sqrt_c8,
        sqrt_c9,
        positivity,
    }
}

/// Left-hand side of the quantization condition. A zero value means the
/// integer n labels a solution on the selected branch.
pub fn energy_residual(ode: &CanonicalOde, nu: &NuConstants, n: u32, branch: Branch) -> Complex64 {
    let nf = f64::from(n);
    let sign = match branch {
        Branch::KMinus => 1.0,
        Branch::KPlus => -1.0,
    };
    nf * ode.c2 - (2.0 * nf + 1.0) * nu.c5
        + (2.0 * nf + 1.0) * (nu.sqrt_c9 + sign * ode.c3 * nu.sqrt_c8)
        + nf * (nf - 1.0) * ode.c3
        + nu.c7
        + 2.0 * ode.c3 * nu.c8
        + sign * 2.0 * nu.sqrt_c8 * nu.sqrt_c9
}

pub fn wavefunction_factors(
    nu: &NuConstants,
    n: u32,
    branch: Branch,
) -> Result<WavefunctionFactors, NuError> {
    let (p, q, alpha, beta) = match branch {
        Branch::KMinus => (
            nu.c12,
            nu.c13.ok_or(NuError::Degenerate("c13"))?,
            nu.c10,
            nu.c11.ok_or(NuError::Degenerate("c11"))?,
        ),
        Branch::KPlus => (
            nu.c12_tilde,
            nu.c13_tilde.ok_or(NuError::Degenerate("c13~"))?,
            nu.c10_tilde,
            nu.c11_tilde.ok_or(NuError::Degenerate("c11~"))?,
        ),
    };
    Ok(WavefunctionFactors {
        branch,
        power_exponent: p,
        bracket_exponent: q,
        jacobi_alpha: alpha,
        jacobi_beta: beta,
        degree: n,
        c3: nu.c3,
    })
}

/// Evaluate the (unnormalized) factorized wavefunction at a point s.
pub fn eval_psi(f: &WavefunctionFactors, s: Complex64) -> Result<Complex64, NuError> {
    let one = Complex64::new(1.0, 0.0);
    let p = jacobi_p(f.degree, f.jacobi_alpha, f.jacobi_beta, one - 2.0 * f.c3 * s)?;
    Ok(s.powc(f.power_exponent) * (one - f.c3 * s).powc(f.bracket_exponent) * p)
}

/// Weight function rho(s) = s^c10 (1 - c3 s)^c11 (metadata, test use only).
pub fn eval_weight(nu: &NuConstants, s: Complex64) -> Result<Complex64, NuError> {
    let c11 = nu.c11.ok_or(NuError::Degenerate("c11"))?;
    let one = Complex64::new(1.0, 0.0);
    Ok(s.powc(nu.c10) * (one - nu.c3 * s).powc(c11))
}

pub fn laguerre_limit_factors(nu: &NuConstants, n: u32) -> Result<LaguerreFactors, NuError> {
    if nu.c3 != zero() {
        return Err(NuError::NotDegenerate);
    }
    Ok(LaguerreFactors {
        power_exponent: nu.c12,
        decay_rate: nu.sqrt_c9 - nu.c5,
        laguerre_order: nu.c10,
        argument_scale: 2.0 * nu.sqrt_c9,
        degree: n,
    })
}

/// Evaluate the degenerate-limit wavefunction at a point s.
pub fn eval_laguerre_psi(f: &LaguerreFactors, s: Complex64) -> Complex64 {
    s.powc(f.power_exponent)
        * (-f.decay_rate * s).exp()
        * laguerre_l(f.degree, f.laguerre_order, f.argument_scale * s)
}
