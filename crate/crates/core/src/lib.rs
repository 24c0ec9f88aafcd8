//! Entanglement dynamics of two uniformly accelerated two-level atoms
//! coupled to a massless scalar field in the Minkowski vacuum.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! - [`coefficients`]: closed-form correlation spectra and the rate
//!   constants `A1, A2, B1, B2, D`.
//! - [`xstate`]: X-state density matrices in the coupled basis and their
//!   exact propagation.
//! - [`gkls`]: an independent dense GKLS integrator in the product basis.
//! - [`entanglement`]: concurrence and its initial rates.
//! - [`sweep`]: parameter scans, maximum-concurrence search and curve
//!   classification.
//!
//! Units: the transition frequency is 1, so accelerations are `a/ω` and
//! separations `ωL`; rates scale with `gamma0` and times with `1/gamma0`.
#![no_std]
// Index loops mirror the matrix algebra; negated comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod coefficients;
pub mod entanglement;
mod error;
pub mod gkls;
pub mod linalg;
pub mod sweep;
pub mod xstate;

pub use coefficients::{coefficients, Coefficients, SimConfig};
pub use entanglement::{concurrence_x, ConcurrenceBreakdown};
pub use error::{Error, ErrorKind, Result};
pub use gkls::DenseState;
pub use num_complex::Complex64;
pub use xstate::XState;
