//! Exact interval exchange transformations and their symbolic dynamics.
//!
//! Points, lengths and breakpoints are [`exact::ExactScalar`]s: rational
//! combinations of square roots with a certified total order. On top of that
//! the crate builds the left-closed map `T` and its right-closed dual, level
//! partitions, itineraries, Keane-condition scans and the asymptotic pairs of
//! the associated subshift.

pub mod cli;
pub mod error;
pub mod exact;
pub mod exec;
pub mod iet;
pub mod limits;
pub mod partition;
pub mod symbolic;

pub use error::{Error, Result};
pub use iet::{Iet, IetSpec, Permutation, PermutationClass, Variant};
pub use limits::{Budget, Limits};
