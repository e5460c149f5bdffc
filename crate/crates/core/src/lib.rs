//! Combinatorics of non-crossing partitions and exact-rational computations
//! with truncated non-commutative power series in `k` indeterminates.
//!
//! The crate has two layers:
//!
//! * [`partitions`] — set partitions of `{1..n}` in canonical block form,
//!   the non-crossing and interval families, the reversed-refinement and
//!   `≪` orders, Kreweras complementation (absolute and relative), outer
//!   blocks, and the parity-preserving machinery used to decide when a
//!   pair `(σ, τ)` is of the form `(σ ≪ π, τ ≪ K(π))`.
//! * [`ncseries`], [`transforms`], [`convolutions`] — truncated power
//!   series with `BigRational` coefficients, the moment/R-transform/η-series
//!   triangle, the `Reta` map and the Boolean Bercovici–Pata bijection, the
//!   free additive, Boolean and free multiplicative convolutions, and boxed
//!   convolution of series.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all identities checked by the test suite hold with zero tolerance.
//! [`oracle`] carries independent brute-force implementations used to
//! cross-check the production code; they are shipped in the library so the
//! CLI verification harness can run them.

pub mod convolutions;
mod error;
pub mod ncseries;
pub mod oracle;
pub mod partitions;
pub mod sampling;
pub mod transforms;

pub use error::{Error, Result};
