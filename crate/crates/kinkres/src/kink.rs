//! Physics layer: the kink-like potential, its reduction to the canonical
//! hypergeometric-type ODE on each half-line, the closed-form resonance
//! equations, the closed-form spinor components, and the linear-potential
//! approximation valid for small field strength and steepness.

use crate::nu::CanonicalOde;
use crate::specfun::{jacobi_p, laguerre_l, SpecFunError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinkError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("position {x} outside the required half-line")]
    Domain { x: f64 },
    #[error("normalization needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("tail contribution {tail_fraction:.3e} of the norm integral exceeds 1%")]
    Divergence { tail_fraction: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Model parameters in natural units (hbar = c = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub m: f64,
    pub lambda: f64,
    pub k: f64,
    /// Point-interaction strength; enters only the numerical matching.
    pub g: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, lambda: f64, k: f64, g: f64) -> Result<Self, KinkError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(KinkError::InvalidParams(format!(
                "mass must be positive and finite, got {m}"
            )));
        }
        if k == 0.0 || !k.is_finite() {
            return Err(KinkError::InvalidParams(format!(
                "steepness k must be nonzero and finite, got {k}"
            )));
        }
        if !lambda.is_finite() || !g.is_finite() {
            return Err(KinkError::InvalidParams(
                "lambda and g must be finite".into(),
            ));
        }
        Ok(PhysicalParams { m, lambda, k, g })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    Positive,
    Negative,
}

/// Which closed-form spectral condition is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactPos,
    ExactNeg,
    Linear,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ExactPos => "EXACT_POS",
            Method::ExactNeg => "EXACT_NEG",
            Method::Linear => "LINEAR",
        }
    }
}

/// One sampled point of the two-component wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub x: f64,
    pub phi: Complex64,
    pub theta: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceResult {
    pub n: u32,
    pub energy: Complex64,
    pub residual: f64,
    pub method: Method,
    pub decay_ok: bool,
}

pub fn potential(p: &PhysicalParams, x: f64) -> f64 {
    p.lambda * (p.k * x).tanh()
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square root used for a decay exponent: principal branch, sign-flipped
/// onto Re >= 0 when needed. The boolean reports whether the principal
/// branch already decayed.
pub fn decay_constant(w: Complex64) -> (Complex64, bool) {
    let r = w.sqrt();
    let ok = r.re > 0.0;
    if r.re < 0.0 {
        (-r, ok)
    } else {
        (r, ok)
    }
}

/// kappa_+ = sqrt(m^2 - (E - Lambda)^2), the x > 0 decay constant.
pub fn kappa_plus(p: &PhysicalParams, e: Complex64) -> (Complex64, bool) {
    decay_constant(c64(p.m * p.m, 0.0) - (e - p.lambda) * (e - p.lambda))
}

/// kappa_- = sqrt(m^2 - (E + Lambda)^2), the x < 0 decay constant.
pub fn kappa_minus(p: &PhysicalParams, e: Complex64) -> (Complex64, bool) {
    decay_constant(c64(p.m * p.m, 0.0) - (e + p.lambda) * (e + p.lambda))
}

/// mu = sqrt((k^2 + 4(ik Lambda - Lambda^2)) / k^2). The quotient is taken
/// before the root so the expression stays well-defined for k < 0.
pub fn mu_exponent(p: &PhysicalParams) -> Complex64 {
    let k2 = p.k * p.k;
    (c64(1.0 - 4.0 * p.lambda * p.lambda / k2, 4.0 * p.k * p.lambda / k2)).sqrt()
}

pub fn canonical_ode(p: &PhysicalParams, e: Complex64, side: HalfLine) -> CanonicalOde {
    let four_k2 = 4.0 * p.k * p.k;
    let m2 = c64(p.m * p.m, 0.0);
    let plus = (m2 - (e + p.lambda) * (e + p.lambda)) / four_k2;
    let minus = (m2 - (e - p.lambda) * (e - p.lambda)) / four_k2;
    let b = (c64(0.0, -4.0 * p.k * p.lambda)
        + 2.0 * p.lambda * p.lambda
        + 2.0 * m2
        - 2.0 * e * e)
        / four_k2;
    let (a, c) = match side {
        HalfLine::Positive => (plus, minus),
        HalfLine::Negative => (minus, plus),
    };
    let one = c64(1.0, 0.0);
    CanonicalOde {
        c1: one,
        c2: one,
        c3: one,
        a,
        b,
        c,
    }
}

/// Principal-branch square root of (m^2 - (E -+ Lambda)^2) / k^2, without
/// the decay sign flip: this is the root the spectral conditions are stated with.
fn spectral_root(p: &PhysicalParams, e: Complex64, sign: f64) -> Complex64 {
    let m2 = c64(p.m * p.m, 0.0);
    ((m2 - (e + sign * p.lambda) * (e + sign * p.lambda)) / (p.k * p.k)).sqrt()
}

/// RHS - LHS of the selected spectral equation, principal square roots.
pub fn energy_equation_residual(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    method: Method,
) -> Complex64 {
    let nf = f64::from(n);
    match method {
        Method::ExactPos => {
            spectral_root(p, e, 1.0) - spectral_root(p, e, -1.0)
                - (2.0 * nf + 1.0)
                - mu_exponent(p)
        }
        Method::ExactNeg => {
            spectral_root(p, e, 1.0) + spectral_root(p, e, -1.0)
                - (2.0 * nf + 1.0)
                - mu_exponent(p)
        }
        Method::Linear => linear_residual(p, e, n, false),
    }
}

/// 1 + 2n + s * sqrt(1 + 4(m^2 - E^2 - ik Lambda)) - 2iE with s = +-1.
pub fn linear_residual(p: &PhysicalParams, e: Complex64, n: u32, flip_branch: bool) -> Complex64 {
    let root = (c64(1.0 + 4.0 * p.m * p.m, -4.0 * p.k * p.lambda) - 4.0 * e * e).sqrt();
    let s = if flip_branch { -1.0 } else { 1.0 };
    c64(1.0 + 2.0 * f64::from(n), 0.0) + s * root - c64(0.0, 2.0) * e
}

/// Closed-form candidate from squaring the linear-potential spectral
/// equation: E = i [1 + 4m^2 - 4ik Lambda - (1+2n)^2] / (4(1+2n)).
pub fn linear_closed_form(p: &PhysicalParams, n: u32) -> Complex64 {
    let q = 1.0 + 2.0 * f64::from(n);
    c64(0.0, 1.0) * (c64(1.0 + 4.0 * p.m * p.m - q * q, -4.0 * p.k * p.lambda)) / (4.0 * q)
}

/// Substitute a candidate back into the unsquared equation and report which
/// square-root branch (if any) it satisfies. `Some(false)` means the
/// principal branch, `Some(true)` the flipped branch.
pub fn linear_branch_check(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    tol: f64,
) -> Option<bool> {
    if linear_residual(p, e, n, false).norm() < tol {
        Some(false)
    } else if linear_residual(p, e, n, true).norm() < tol {
        Some(true)
    } else {
        None
    }
}

/// Coefficient of phi in the second-order half-line ODE:
/// phi'' + [ik Lambda sech^2(kx) + (Lambda tanh(kx) - E)^2 - m^2] phi = 0.
pub fn ode_coefficient(p: &PhysicalParams, e: Complex64, x: f64) -> Complex64 {
    let sech = 1.0 / (p.k * x).cosh();
    let v = potential(p, x);
    c64(0.0, p.k * p.lambda * sech * sech) + (c64(v, 0.0) - e) * (c64(v, 0.0) - e)
        - p.m * p.m
}

pub fn decay_ok(p: &PhysicalParams, e: Complex64, method: Method) -> bool {
    match method {
        Method::ExactNeg => kappa_minus(p, e).1,
        Method::ExactPos | Method::Linear => kappa_plus(p, e).1,
    }
}

/// Jacobi derivative factor: d/dz P_n^(a,b)(z) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)(z).
fn jacobi_with_derivative(
    n: u32,
    a: Complex64,
    b: Complex64,
    z: Complex64,
) -> Result<(Complex64, Complex64), SpecFunError> {
    let pn = jacobi_p(n, a, b, z)?;
    let dpn = if n == 0 {
        c64(0.0, 0.0)
    } else {
        (a + b + f64::from(n) + 1.0) / 2.0 * jacobi_p(n - 1, a + 1.0, b + 1.0, z)?
    };
    Ok((pn, dpn))
}

/// Closed-form spinor on x > 0 (unnormalized). The lower component is
/// assembled from the coupled first-order system, with the derivative of
/// the upper component taken analytically.
pub fn spinor_pos(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    x: f64,
) -> Result<SpinorSample, KinkError> {
    if !(x > 0.0) {
        return Err(KinkError::Domain { x });
    }
    let (kappa, _) = kappa_plus(p, e);
    let mu = mu_exponent(p);
    let nu = kappa / p.k;
    let u = (-2.0 * p.k * x).exp();
    let one_u = c64(1.0 + u, 0.0);
    let pref = (-kappa * x).exp() * one_u.powc((1.0 + mu) / 2.0);
    let (pn, dpn) = jacobi_with_derivative(n, nu, mu, c64(1.0 + 2.0 * u, 0.0))?;
    let phi = pref * pn;
    // phi' = phi [ -kappa - k(1+mu) u/(1+u) ] - 4ku pref dP/dz
    let dphi = phi * (-kappa - p.k * (1.0 + mu) * u / (1.0 + u)) - 4.0 * p.k * u * pref * dpn;
    let theta = (c64(0.0, 1.0) * dphi + (e - potential(p, x)) * phi) / p.m;
    Ok(SpinorSample { x, phi, theta })
}

/// Closed-form spinor on x < 0 (unnormalized), mirror construction in the
/// variable exp(2kx) with Jacobi parameters (-kappa_-/k, mu).
pub fn spinor_neg(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    x: f64,
) -> Result<SpinorSample, KinkError> {
    if !(x < 0.0) {
        return Err(KinkError::Domain { x });
    }
    let (kappa, _) = kappa_minus(p, e);
    let mu = mu_exponent(p);
    let a = -kappa / p.k;
    let u = (2.0 * p.k * x).exp();
    let one_u = c64(1.0 + u, 0.0);
    let pref = (kappa * x).exp() * one_u.powc((1.0 + mu) / 2.0);
    let (pn, dpn) = jacobi_with_derivative(n, a, mu, c64(1.0 + 2.0 * u, 0.0))?;
    let phi = pref * pn;
    let dphi = phi * (kappa + p.k * (1.0 + mu) * u / (1.0 + u)) + 4.0 * p.k * u * pref * dpn;
    let theta = (c64(0.0, 1.0) * dphi + (e - potential(p, x)) * phi) / p.m;
    Ok(SpinorSample { x, phi, theta })
}

/// Approximate wavefunction of the linear-potential limit (unnormalized):
/// phi(x) = x^(-n+iE) exp(-ik Lambda x) L_n^(2iE-2n-1)(2ik Lambda x).
pub fn linear_wavefunction(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    x: f64,
) -> Result<Complex64, KinkError> {
    if !(x > 0.0) {
        return Err(KinkError::Domain { x });
    }
    let lam = p.k * p.lambda;
    let nf = f64::from(n);
    let power = c64(x, 0.0).powc(c64(-nf, 0.0) + c64(0.0, 1.0) * e);
    let order = c64(0.0, 2.0) * e - (2.0 * nf + 1.0);
    let lag = laguerre_l(n, order, c64(0.0, 2.0 * lam * x));
    Ok(power * (c64(0.0, -lam * x)).exp() * lag)
}

/// Scale factor N such that integral of |N phi|^2 over the sampled grid is
/// one (composite Simpson). Errors if the grid is too short or the tail of
/// the integrand carries more than 1% of the total.
pub fn normalize_numerically(samples: &[SpinorSample]) -> Result<Complex64, KinkError> {
    const MIN_SAMPLES: usize = 201;
    if samples.len() < MIN_SAMPLES {
        return Err(KinkError::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    let dens: Vec<f64> = samples.iter().map(|s| s.phi.norm_sqr()).collect();
    let xs: Vec<f64> = samples.iter().map(|s| s.x).collect();
    let total = simpson(&xs, &dens);
    if !(total > 0.0) || !total.is_finite() {
        return Err(KinkError::InvalidParams(
            "norm integral is zero or non-finite".into(),
        ));
    }
    // Tail estimate: contribution of the last tenth of the grid.
    let tail_start = samples.len() - samples.len() / 10;
    let tail = simpson(&xs[tail_start..], &dens[tail_start..]);
    let tail_fraction = tail / total;
    if tail_fraction > 0.01 {
        return Err(KinkError::Divergence { tail_fraction });
    }
    Ok(c64(1.0 / total.sqrt(), 0.0))
}

/// Sup-norm residual of the closed-form upper component in the
/// second-order half-line equation, relative to the largest |phi''| on the
/// grid. The second derivative is taken by five-point central differences
/// (h = 1e-4) of the analytic phi.
pub fn ode_residual_sup(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    x_lo: f64,
    x_hi: f64,
    n_pts: usize,
) -> Result<f64, KinkError> {
    if !(x_lo > 0.0 && x_hi > x_lo) || n_pts < 2 {
        return Err(KinkError::InvalidParams(format!(
            "need 0 < x_lo < x_hi and >= 2 points, got [{x_lo}, {x_hi}] x {n_pts}"
        )));
    }
    let h = 1e-4;
    let mut sup = 0.0f64;
    let mut max_d2 = 0.0f64;
    let mut resids = Vec::with_capacity(n_pts);
    for i in 0..n_pts {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (n_pts - 1) as f64;
        let f = |t: f64| spinor_pos(p, e, n, t).map(|s| s.phi);
        let d2 = (-f(x + 2.0 * h)? + 16.0 * f(x + h)? - 30.0 * f(x)? + 16.0 * f(x - h)?
            - f(x - 2.0 * h)?)
            / (12.0 * h * h);
        let r = d2 + ode_coefficient(p, e, x) * f(x)?;
        max_d2 = max_d2.max(d2.norm());
        resids.push(r.norm());
    }
    for r in resids {
        sup = sup.max(r / max_d2.max(f64::MIN_POSITIVE));
    }
    Ok(sup)
}

/// Composite Simpson on a uniform monotone grid; the final interval falls
/// back to the trapezoid rule when the point count is even.
fn simpson(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    let pairs = (n - 1) / 2;
    let mut acc = 0.0;
    for j in 0..pairs {
        let i = 2 * j;
        acc += h / 3.0 * (ys[i] + 4.0 * ys[i + 1] + ys[i + 2]);
    }
    if (n - 1) % 2 == 1 {
        acc += h / 2.0 * (ys[n - 2] + ys[n - 1]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: f64, lambda: f64, k: f64) -> PhysicalParams {
        PhysicalParams::new(m, lambda, k, 0.0).unwrap()
    }

    // Reference root of the x > 0 spectral equation at (m, Lambda, k) =
    // (1, 0.2, 0.1), n = 0, frozen from an extended-precision solve.
    pub(crate) const ROOT_N0: Complex64 =
        Complex64::new(-0.999_058_749_171_628_1, -0.451_012_751_419_998_01);

    #[test]
    fn parameter_validation() {
        assert!(PhysicalParams::new(0.0, 0.1, 0.1, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 0.1, 0.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, f64::NAN, 0.1, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 0.1, -0.5, 0.3).is_ok());
    }

    #[test]
    fn potential_values() {
        let p = params(1.0, 1.0, 1.0);
        assert_eq!(potential(&p, 0.0), 0.0);
        assert!((potential(&p, 7.0) - 1.0).abs() < 2e-6);
        assert!((potential(&p, 8.0) - 1.0).abs() < 1e-6);
        assert!((potential(&p, 1.0) - 0.761_594_155_9).abs() < 1e-9);
    }

    #[test]
    fn canonical_ode_field_free_symmetry() {
        let p = params(1.3, 0.0, 0.4);
        let e = c64(0.6, -0.2);
        let ode = canonical_ode(&p, e, HalfLine::Positive);
        assert!((ode.a - ode.c).norm() < 1e-15);
        assert!((ode.b - (ode.a + ode.c)).norm() < 1e-15);
    }

    #[test]
    fn canonical_ode_reference_values() {
        let p = params(1.0, 0.1, 0.2);
        let ode = canonical_ode(&p, c64(0.5, 0.0), HalfLine::Positive);
        assert!((ode.a - c64(4.0, 0.0)).norm() < 1e-13);
        assert!((ode.c - c64(5.25, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn negative_side_swaps_and_matches_flipped_lambda() {
        let p = params(1.0, 0.3, 0.2);
        let pf = params(1.0, -0.3, 0.2);
        let e = c64(0.4, -0.7);
        let neg = canonical_ode(&p, e, HalfLine::Negative);
        let pos = canonical_ode(&p, e, HalfLine::Positive);
        assert_eq!(neg.a, pos.c);
        assert_eq!(neg.c, pos.a);
        assert_eq!(neg.b, pos.b);
        // A and C of the mirrored side equal those of the flipped field.
        let posf = canonical_ode(&pf, e, HalfLine::Positive);
        assert_eq!(neg.a, posf.a);
        assert_eq!(neg.c, posf.c);
    }

    #[test]
    fn field_free_residual_is_constant() {
        let p = params(1.0, 0.0, 0.3);
        for n in 0..3u32 {
            for method in [Method::ExactPos, Method::ExactNeg] {
                let r = energy_equation_residual(&p, c64(0.2, -0.1), n, method);
                let expect = match method {
                    // identical roots cancel (POS) or double (NEG)
                    Method::ExactPos => -c64(2.0 * f64::from(n) + 2.0, 0.0),
                    _ => 2.0 * spectral_root(&p, c64(0.2, -0.1), 1.0)
                        - (2.0 * f64::from(n) + 2.0),
                };
                assert!((r - expect).norm() < 1e-13, "n={n} {method:?}");
            }
        }
    }

    #[test]
    fn pos_neg_residuals_coincide_where_root_vanishes() {
        let p = params(1.0, 0.25, 0.2);
        for n in 0..3u32 {
            for e in [c64(p.lambda + p.m, 0.0), c64(p.lambda - p.m, 0.0)] {
                let rp = energy_equation_residual(&p, e, n, Method::ExactPos);
                let rn = energy_equation_residual(&p, e, n, Method::ExactNeg);
                assert!((rp - rn).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn reference_root_satisfies_exact_pos() {
        let p = params(1.0, 0.2, 0.1);
        let r = energy_equation_residual(&p, ROOT_N0, 0, Method::ExactPos);
        assert!(r.norm() < 1e-12, "residual = {}", r.norm());
        assert!(decay_ok(&p, ROOT_N0, Method::ExactPos));
    }

    #[test]
    fn linear_closed_form_verified_on_a_branch() {
        let p = params(1.0, 0.2, 0.1);
        for n in 0..3u32 {
            let e = linear_closed_form(&p, n);
            let branch = linear_branch_check(&p, e, n, 1e-12);
            assert!(branch.is_some(), "n = {n}: no branch satisfied");
        }
        // Spot value for n = 0: E = i[5 - 0.08i - 1]/4 = 0.02 + i.
        let e0 = linear_closed_form(&p, 0);
        assert!((e0 - c64(0.02, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn spinor_pos_rejects_nonpositive_x() {
        let p = params(1.0, 0.2, 0.1);
        assert!(matches!(
            spinor_pos(&p, ROOT_N0, 0, 0.0),
            Err(KinkError::Domain { .. })
        ));
        assert!(matches!(
            spinor_neg(&p, ROOT_N0, 0, 0.1),
            Err(KinkError::Domain { .. })
        ));
    }

    #[test]
    fn spinor_pos_decays() {
        let p = params(1.0, 0.2, 0.1);
        let near = spinor_pos(&p, ROOT_N0, 0, 1.0).unwrap().phi.norm();
        let far = spinor_pos(&p, ROOT_N0, 0, 30.0).unwrap().phi.norm();
        assert!(far < 1e-3 * near, "near = {near}, far = {far}");
    }

    #[test]
    fn spinor_pos_ground_state_shape() {
        // n = 0: phi = exp(-kappa x)(1 + u)^((1+mu)/2) exactly.
        let p = params(1.0, 0.2, 0.1);
        let x = 2.3;
        let s = spinor_pos(&p, ROOT_N0, 0, x).unwrap();
        let (kappa, _) = kappa_plus(&p, ROOT_N0);
        let mu = mu_exponent(&p);
        let u = (-2.0 * p.k * x).exp();
        let expect = (-kappa * x).exp() * c64(1.0 + u, 0.0).powc((1.0 + mu) / 2.0);
        assert!((s.phi - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn theta_matches_finite_difference_first_order_system() {
        // theta = [i phi' + (E - V) phi] / m with phi' from five-point
        // central differences, checked at many points for n = 0..2.
        let p = params(1.0, 0.2, 0.1);
        let h = 1e-4;
        for n in 0..3u32 {
            for i in 0..50 {
                let x = 0.5 + 0.5 * f64::from(i);
                let f = |x: f64| spinor_pos(&p, ROOT_N0, n, x).unwrap().phi;
                let dphi = (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h)
                    + f(x - 2.0 * h))
                    / (12.0 * h);
                let s = spinor_pos(&p, ROOT_N0, n, x).unwrap();
                let theta_fd =
                    (c64(0.0, 1.0) * dphi + (ROOT_N0 - potential(&p, x)) * s.phi) / p.m;
                assert!(
                    (s.theta - theta_fd).norm() < 1e-8 * s.theta.norm().max(1e-10),
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn theta_neg_matches_finite_difference() {
        let p = params(1.0, 0.5, 0.3);
        let e = c64(-0.857_602_914_627_014_1, 0.171_190_795_863_896_8);
        let h = 1e-4;
        for i in 0..20 {
            let x = -0.5 - 0.4 * f64::from(i);
            let f = |x: f64| spinor_neg(&p, e, 1, x).unwrap().phi;
            let dphi =
                (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h))
                    / (12.0 * h);
            let s = spinor_neg(&p, e, 1, x).unwrap();
            let theta_fd = (c64(0.0, 1.0) * dphi + (e - potential(&p, x)) * s.phi) / p.m;
            assert!(
                (s.theta - theta_fd).norm() < 1e-8 * s.theta.norm().max(1e-10),
                "x = {x}"
            );
        }
    }

    #[test]
    fn mirror_symmetry_ground_state_modulus() {
        // For real E the x < 0 solution at field Lambda matches the x > 0
        // solution at field -Lambda in modulus after x -> -x (n = 0).
        let p = params(1.0, 0.2, 0.1);
        let pf = params(1.0, -0.2, 0.1);
        let e = c64(0.3, 0.0);
        let mut ratio0 = None;
        for i in 0..20 {
            let x = 0.4 + 0.45 * f64::from(i);
            let neg = spinor_neg(&p, e, 0, -x).unwrap().phi.norm();
            let pos = spinor_pos(&pf, e, 0, x).unwrap().phi.norm();
            let r = neg / pos;
            let r0 = *ratio0.get_or_insert(r);
            assert!((r - r0).abs() < 1e-10 * r0, "x = {x}");
        }
    }

    #[test]
    fn ode_residual_small_at_root_large_off_root() {
        let p = params(1.0, 0.2, 0.1);
        let at = ode_residual_sup(&p, ROOT_N0, 0, 1.0, 50.0, 50).unwrap();
        assert!(at < 1e-6, "on-root residual {at}");
        let off = ode_residual_sup(&p, ROOT_N0 + 0.05, 0, 1.0, 50.0, 50).unwrap();
        assert!(off > 1e-3, "off-root residual {off}");
    }

    #[test]
    fn linear_wavefunction_ground_state_form() {
        let p = params(1.0, 0.2, 0.1);
        let e = linear_closed_form(&p, 0);
        let x = 1.7;
        let v = linear_wavefunction(&p, e, 0, x).unwrap();
        let expect =
            c64(x, 0.0).powc(c64(0.0, 1.0) * e) * (c64(0.0, -p.k * p.lambda * x)).exp();
        assert!((v - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn linear_wavefunction_satisfies_second_order_ode() {
        // The closed form solves phi'' + [lam^2 - 2 lam E / x
        // - rho(rho-1)/x^2] phi = 0 with rho = -n + iE; check via
        // five-point second differences at the closed-form energy.
        let p = params(1.0, 0.2, 0.1);
        let lam = p.k * p.lambda;
        let h = 1e-4;
        for n in 0..2u32 {
            let e = linear_closed_form(&p, n);
            let rho = c64(-f64::from(n), 0.0) + c64(0.0, 1.0) * e;
            let f = |x: f64| linear_wavefunction(&p, e, n, x).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..30 {
                let x = 1.0 + 0.2 * f64::from(i);
                let d2 = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x)
                    + 16.0 * f(x - h)
                    - f(x - 2.0 * h))
                    / (12.0 * h * h);
                let coeff = c64(lam * lam, 0.0) - 2.0 * lam * e / x
                    - rho * (rho - 1.0) / (x * x);
                let resid = (d2 + coeff * f(x)).norm() / d2.norm().max(1.0);
                worst = worst.max(resid);
            }
            assert!(worst < 1e-6, "n = {n}: worst residual {worst}");
        }
    }

    #[test]
    fn linear_modulus_decays_at_closed_form_energy() {
        // x^(iE) has modulus x^(-Im E); the closed-form energies have
        // Im E > 0, so the approximate state is damped along x > 0.
        let p = params(1.0, 0.2, 0.1);
        let e = linear_closed_form(&p, 0);
        assert!(e.im > 0.0);
        let a = linear_wavefunction(&p, e, 0, 2.0).unwrap().norm();
        let b = linear_wavefunction(&p, e, 0, 5.0).unwrap().norm();
        assert!(b < a);
    }

    #[test]
    fn normalization_identity_and_linearity() {
        let p = params(1.0, 0.2, 0.1);
        let n_pts = 1201;
        let samples: Vec<SpinorSample> = (0..n_pts)
            .map(|i| {
                let x = 1e-3 + 60.0 * f64::from(i) / f64::from(n_pts - 1);
                spinor_pos(&p, ROOT_N0, 0, x).unwrap()
            })
            .collect();
        let scale = normalize_numerically(&samples).unwrap();
        let rescaled: Vec<SpinorSample> = samples
            .iter()
            .map(|s| SpinorSample {
                phi: scale * s.phi,
                theta: scale * s.theta,
                ..*s
            })
            .collect();
        let again = normalize_numerically(&rescaled).unwrap();
        assert!((again - c64(1.0, 0.0)).norm() < 1e-10);
        let doubled: Vec<SpinorSample> = rescaled
            .iter()
            .map(|s| SpinorSample {
                phi: 2.0 * s.phi,
                theta: 2.0 * s.theta,
                ..*s
            })
            .collect();
        let half = normalize_numerically(&doubled).unwrap();
        assert!((half - c64(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn normalization_matches_finer_grid() {
        let p = params(1.0, 0.2, 0.1);
        let grid = |n_pts: usize| -> Vec<SpinorSample> {
            (0..n_pts)
                .map(|i| {
                    let x = 1e-3 + 60.0 * (i as f64) / (n_pts - 1) as f64;
                    spinor_pos(&p, ROOT_N0, 0, x).unwrap()
                })
                .collect()
        };
        let coarse = normalize_numerically(&grid(2001)).unwrap();
        let fine = normalize_numerically(&grid(20001)).unwrap();
        assert!((coarse - fine).norm() < 1e-6 * fine.norm());
    }

    #[test]
    fn normalization_guards() {
        let p = params(1.0, 0.2, 0.1);
        let short: Vec<SpinorSample> = (0..50)
            .map(|i| spinor_pos(&p, ROOT_N0, 0, 0.1 + 0.1 * f64::from(i)).unwrap())
            .collect();
        assert!(matches!(
            normalize_numerically(&short),
            Err(KinkError::TooFewSamples { .. })
        ));
        // A non-decaying profile concentrates weight in the tail.
        let flat: Vec<SpinorSample> = (0..301)
            .map(|i| SpinorSample {
                x: f64::from(i) * 0.1,
                phi: c64((f64::from(i) * 0.05).exp(), 0.0),
                theta: c64(0.0, 0.0),
            })
            .collect();
        assert!(matches!(
            normalize_numerically(&flat),
            Err(KinkError::Divergence { .. })
        ));
    }
}
