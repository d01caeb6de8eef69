//! Numerical toolkit for Bernstein-Nikolskii inequalities.
//!
//! The crate builds the explicit objects that appear in two-sided estimates of
//! `sup ||T^(s)||_q / ||T||_p` over trigonometric polynomials of degree `n`
//! (and its analogue for entire functions of exponential type): kernels,
//! polynomials with concave coefficients, lower-bound witnesses, the
//! `L_1`-extremal polynomials for `p = 1, q = inf`, and the discrete Hardy space
//! machinery used for `p <= 1`.
//!
//! Every estimate is reported with the grid size used to compute it so that
//! sweeps are reproducible.

pub mod bump;
pub mod concave;
pub mod error;
pub mod exponent;
pub mod extremal;
pub mod hardy;
pub mod kernels;
pub mod lp;
pub mod quadrature;
pub mod report;
pub mod sharp;
pub mod sweep;
pub mod trigpoly;
pub mod verify;
pub mod witnesses;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use trigpoly::{GridSamples, NormEstimate, ParityKind, TrigPoly};
