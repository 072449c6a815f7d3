//! Interval exchange transformations over exact scalars.

mod permutation;
mod transform;

pub use permutation::{Permutation, PermutationClass};
pub use transform::{BoundaryImages, BreakpointImage, Iet, IetSpec, Stepper, Variant};
