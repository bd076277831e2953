//! Complex-valued special functions used by the closed-form solutions:
//! Gamma, Gauss hypergeometric 2F1, Jacobi polynomials with complex
//! parameters, and generalized Laguerre polynomials.

mod gamma;
mod hyp2f1;
mod jacobi;
mod laguerre;

pub use gamma::gamma;
pub use hyp2f1::{hyp2f1, SeriesControl};
pub use jacobi::{binom_c, jacobi_p, jacobi_p_expansion, poch, ExpansionForm};
pub use laguerre::laguerre_l;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(Complex64),
    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },
    #[error("argument {0} outside the supported domain")]
    Domain(Complex64),
}

/// If `z` is (numerically) a non-positive integer, return its magnitude `n`
/// so that `z = -n`. Tolerance 1e-12 on both components.
pub(crate) fn as_nonpos_int(z: Complex64) -> Option<u32> {
    if z.im.abs() > 1e-12 {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() > 1e-12 || r > 0.5 {
        return None;
    }
    Some((-r) as u32)
}

/// Kahan-compensated accumulator for complex sums with alternating signs.
#[derive(Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, term: Complex64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
