//! Generalized Laguerre polynomials with complex order parameter.

use super::jacobi::poch;
use super::{factorial, CompensatedSum};
use num_complex::Complex64;

/// L_n^(lambda)(z) via the terminating confluent series
/// sum_j (-1)^j (lambda+j+1)_(n-j) / ((n-j)! j!) z^j.
pub fn laguerre_l(n: u32, lambda: Complex64, z: Complex64) -> Complex64 {
    let mut sum = CompensatedSum::default();
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * poch(lambda + f64::from(j) + 1.0, n - j)
            / (factorial(n - j) * factorial(j))
            * z.powu(j);
        sum.add(term);
    }
    sum.value()
}
