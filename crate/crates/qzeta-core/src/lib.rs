//! Exact-arithmetic computation of q-analogues of zeta values.
//!
//! The crate has four layers:
//!
//! - [`qcore`]: arbitrary-precision rationals, q-integers, q-Pochhammer
//!   symbols, q-binomial coefficients and truncated power series in the
//!   generating parameter `a^2`.
//! - [`qzeta`]: the defining (slowly convergent) series for q-zeta values
//!   with rigorous tail bounds.
//! - [`accel`]: the accelerated series whose terms carry a `q^(c*n^2)`
//!   factor, together with a terms-to-tolerance benchmark hook.
//! - [`wz`]: q-Markov-WZ kernels and pairs, exact telescoping verification,
//!   a per-n coefficient solver, and the summation formulas that turn a
//!   verified pair into a convergence-acceleration identity.
//!
//! All verification paths run over exact rationals: a telescoping residual
//! is reported as identically zero or as a concrete nonzero rational, never
//! as "small".

pub mod accel;
pub mod error;
pub mod qcore;
pub mod qzeta;
pub mod wz;

pub use error::QzError;
pub use qcore::{ExactRational, QContext, Regime, SeriesInA};
pub use qzeta::SumResult;

pub type Result<T> = std::result::Result<T, QzError>;
