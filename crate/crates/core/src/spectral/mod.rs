//! Periodic grid, transforms, differential operators, and the Leray projection.

pub mod checkpoint;
pub(crate) mod fft;
pub(crate) mod lattice;
mod field;
mod grid;
mod ops;
pub mod random;

pub use field::{forward_transform, inverse_transform, linf_norm, PhysicalField, SpectralField, VOLUME};
pub use grid::{Grid, PERIOD};
pub use ops::{divergence, gradient_l2, leray_project, partial, vorticity, weighted_l2};
