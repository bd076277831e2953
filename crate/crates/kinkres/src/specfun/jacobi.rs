//! Jacobi polynomials P_n^(alpha, beta) with complex parameters, via the
//! terminating hypergeometric form and via two explicit finite-sum
//! expansions used as cross-checks.

use super::gamma::gamma;
use super::hyp2f1::{hyp2f1, SeriesControl};
use super::{as_nonpos_int, factorial, CompensatedSum, SpecFunError};
use num_complex::Complex64;

/// Rising factorial (x)_k as an exact finite product.
pub fn poch(x: Complex64, k: u32) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..k {
        p *= x + j as f64;
    }
    p
}

/// Generalized binomial coefficient C(x, k) = Gamma(x+1) / (k! Gamma(x-k+1)),
/// evaluated as the equivalent rising-factorial product (x-k+1)_k / k!.
pub fn binom_c(x: Complex64, k: u32) -> Complex64 {
    poch(x - k as f64 + 1.0, k) / factorial(k)
}

/// P_n^(alpha,beta)(x) via the terminating 2F1 form:
/// [(alpha+1)_n / n!] 2F1(-n, alpha+beta+n+1; alpha+1; (1-x)/2).
pub fn jacobi_p(
    n: u32,
    alpha: Complex64,
    beta: Complex64,
    x: Complex64,
) -> Result<Complex64, SpecFunError> {
    let a1 = alpha + 1.0;
    if as_nonpos_int(a1).is_some() {
        return Err(SpecFunError::GammaPole(a1));
    }
    let ctrl = SeriesControl::default();
    let pref = poch(a1, n) / factorial(n);
    let f = hyp2f1(
        Complex64::new(-(f64::from(n)), 0.0),
        alpha + beta + f64::from(n) + 1.0,
        a1,
        (Complex64::new(1.0, 0.0) - x) / 2.0,
        &ctrl,
    )?;
    Ok(pref * f)
}

/// Which explicit finite-sum representation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionForm {
    /// Binomial double-product form.
    BinomialDouble,
    /// Gamma-ratio single-sum form.
    GammaRatio,
}

/// Explicit finite-sum evaluation of the same polynomial.
pub fn jacobi_p_expansion(
    n: u32,
    alpha: Complex64,
    beta: Complex64,
    x: Complex64,
    form: ExpansionForm,
) -> Result<Complex64, SpecFunError> {
    match form {
        ExpansionForm::BinomialDouble => {
            let a1 = alpha + 1.0;
            if as_nonpos_int(a1).is_some() {
                return Err(SpecFunError::GammaPole(a1));
            }
            let mut sum = CompensatedSum::default();
            let xm = x - 1.0;
            let xp = x + 1.0;
            for p in 0..=n {
                let term = binom_c(alpha + f64::from(n), p)
                    * binom_c(beta + f64::from(n), n - p)
                    * xm.powu(n - p)
                    * xp.powu(p);
                sum.add(term);
            }
            Ok(sum.value() / 2f64.powi(n as i32))
        }
        ExpansionForm::GammaRatio => {
            let nab = alpha + beta + f64::from(n) + 1.0;
            if as_nonpos_int(nab).is_some() {
                return Err(SpecFunError::GammaPole(nab));
            }
            let pref = gamma(alpha + f64::from(n) + 1.0)? / (factorial(n) * gamma(nab)?);
            let h = (x - 1.0) / 2.0;
            let mut sum = CompensatedSum::default();
            for r in 0..=n {
                let term = binom_c(Complex64::new(f64::from(n), 0.0), r)
                    * gamma(nab + f64::from(r))?
                    / gamma(alpha + f64::from(r) + 1.0)?
                    * h.powu(r);
                sum.add(term);
            }
            Ok(pref * sum.value())
        }
    }
}
