//! Exact Chern-Simons and volume calculus for closed anti-de Sitter
//! 3-manifolds.
//!
//! - [`lie`]: `sl(2, R)` with its bracket, Killing form, calibrated
//!   Lorentzian metric and the invariant 3-form.
//! - [`forms`]: endomorphism-valued invariant forms, the Maurer-Cartan
//!   equation, the affine path curvature and the Chern-Simons density.
//! - [`surface`]: surface-group representations into `PSL(2, R)` and their
//!   Euler classes via lifts to the real line.
//! - [`admissibility`]: translation-length lower bounds for equivariant
//!   Lipschitz constants.
//! - [`volume`]: volumes and Chern-Simons invariants as exact rationals.
//! - [`verify`]: the identity suite run by `adsvol verify`.

pub mod admissibility;
pub mod error;
pub mod forms;
pub mod lie;
pub mod rational;
pub mod surface;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
pub use rational::Rational;
