//! Numerics for the elliptic Painlevé Lax equation specialized to the
//! time-independent Schrödinger equation of van Diejen's 8-coupling operator.
//!
//! - [`theta`]: `R+`, `[z]`, elliptic gamma functions, `V_b` kernel
//! - [`vandiejen`]: shift coefficients, `V_b`, `A+`, gauge factors
//! - [`lax`]: `W+-`, `R(z)`, `P(z)` and the additive function `Z(x)`
//! - [`correspondence`]: the checks relating the two sides
//! - [`config`], [`report`]: run configuration and report emission

pub mod config;
pub mod contour;
pub mod correspondence;
pub mod error;
pub mod lax;
pub mod report;
pub mod theta;
pub mod vandiejen;

pub use correspondence::{verify, CorrespondenceConfig, VerificationReport};
pub use error::{Error, Result};
pub use lax::LaxSide;
pub use theta::{ModularParams, TruncationPolicy, C64};
pub use vandiejen::Couplings;
