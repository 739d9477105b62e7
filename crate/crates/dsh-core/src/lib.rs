//! Integral-transform solutions of the Dirac and Klein-Gordon Cauchy problems
//! in de Sitter spacetime, with the special functions they need and
//! diagnostics for the tail of the solution at the spatial origin.
//!
//! Module map:
//! - [`specfun`]: complex Γ, ψ and the Gauss function ₂F₁ including the
//!   logarithmic connection formulas at unit argument.
//! - [`quad`]: adaptive Gauss–Kronrod quadrature for real and complex integrands.
//! - [`kernels`]: the kernels E, K₀, K₁, the Dirac derivative combinations and
//!   their large-time asymptotics per mass class.
//! - [`wave`]: flat-space spherical means and the radial Kirchhoff solutions.
//! - [`solver`]: Klein-Gordon and Dirac solution assembly and origin tails.
//! - [`huygens`]: mass classification, tail scans and verdicts.

pub mod error;
pub mod huygens;
pub mod kernels;
pub mod quad;
pub mod solver;
pub mod specfun;
pub mod wave;

pub use error::{DshError, Result};
pub use num_complex::Complex64;
