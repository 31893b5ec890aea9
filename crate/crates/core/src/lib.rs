//! Construction, verification and sizing of partial m-covering arrays and
//! ε-almost partial m-covering arrays.
//!
//! An N × k array over the symbols `0..v` is a *partial m-covering array* of
//! strength t when every choice of t columns shows at least `m` distinct
//! t-tuples among its rows. It is *ε-almost* when that holds for all but an
//! ε fraction of the column t-sets. With `m = v^t` these are ordinary
//! covering arrays.
//!
//! The crate is organized as:
//!
//! * [`params`], [`array`], [`tuple`], [`tsets`]: shared domain types.
//! * [`bounds`]: existence bounds evaluated in log space, plus sweeps.
//! * [`galois`]: small finite fields, cyclic and Frobenius symbol actions.
//! * [`coverage`]: exhaustive coverage verification.
//! * [`construct`]: randomized and derandomized builders.
//! * [`io`]: text formats for arrays, sweeps and defect reports.
//!
//! Real-valued quantities are generic over [`Real`]; the aliases at the crate
//! root fix the scalar to `f64`, which is what the CLI uses.

// `!(x > 0)` style tests are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array;
pub mod bounds;
pub mod construct;
pub mod coverage;
mod error;
pub mod galois;
pub mod io;
pub mod params;
mod rng;
mod scalar;
pub mod tsets;
pub mod tuple;

pub use array::{Array, Symbol};
pub use bounds::{BoundResult, BoundSweep, CyclicVariant, Formula};
pub use construct::BuildReport;
pub use coverage::CoverageProfile;
pub use error::{Error, Result};
pub use params::PcaParams;
pub use rng::SeededRng;
pub use scalar::Real;

/// Parameters with `f64` tolerance.
pub type Params = PcaParams<f64>;
/// Parameters with `f32` tolerance.
pub type Params32 = PcaParams<f32>;
/// A bound evaluated in `f64`.
pub type Bound = BoundResult<f64>;
/// A bound evaluated in `f32`.
pub type Bound32 = BoundResult<f32>;
/// A sweep evaluated in `f64`.
pub type Sweep = BoundSweep<f64>;
/// A build report carrying `f64` bounds.
pub type Report = BuildReport<f64>;
