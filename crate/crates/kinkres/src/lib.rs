//! Complex resonance energies and spinor wavefunctions of the
//! one-dimensional Dirac equation with a kink-like potential
//! Lambda tanh(kx) and an optional point interaction, solved in closed
//! form via the parametric Nikiforov-Uvarov method and cross-checked by
//! direct numerical integration.

pub mod cli;
pub mod kink;
pub mod nu;
pub mod oracle;
pub mod output;
pub mod resonance;
pub mod specfun;
