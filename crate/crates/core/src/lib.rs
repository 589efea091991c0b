//! Arbitrary-precision Mordell–Tornheim multiple zeta values, Arakawa–Kaneko
//! type ξ functions of Mordell–Tornheim type, their generalized
//! poly-Bernoulli coefficients, and numerical checks of the functional
//! relations between them.
//!
//! Layers, bottom up:
//! - [`series`]: exact rational truncated power series and the coefficient
//!   sequences built from them.
//! - [`numerics`]: arbitrary-precision complex scalars and special-function
//!   kernels (ζ, Hurwitz ζ, Li_k, Γ) with explicit error bounds.
//! - [`mt`]: evaluators for ζ_MT, ξ_MT, Λ and ξ_MT,g.
//! - [`identities`]: checks that evaluate both sides of an identity
//!   independently and report the residual.

pub mod error;
pub mod identities;
pub mod mt;
pub mod numerics;
pub mod series;

pub use error::{Error, Result};
