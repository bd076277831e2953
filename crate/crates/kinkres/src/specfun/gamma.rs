//! Complex Gamma function via the Lanczos approximation (g = 7, nine
//! coefficients), with the reflection formula for Re z < 1/2.

use super::{as_nonpos_int, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;

// Coefficients from the GNU Scientific Library (g = 7).
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma(z) for complex z. Errors on the poles at z = 0, -1, -2, ...
pub fn gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if as_nonpos_int(z).is_some() {
        return Err(SpecFunError::GammaPole(z));
    }
    Ok(lanczos(z))
}

fn lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        PI / ((PI * z).sin() * lanczos(Complex64::new(1.0, 0.0) - z))
    } else {
        let z = z - 1.0;
        let mut t = Complex64::new(LANCZOS[0], 0.0);
        for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
            t += p / (z + i as f64);
        }
        let w = z + 7.5;
        (2.0 * PI).sqrt() * w.powc(z + 0.5) * (-w).exp() * t
    }
}
