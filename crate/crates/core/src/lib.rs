//! Littlewood–Paley diagnostics of the dissipation range for 3D
//! incompressible Navier–Stokes on the periodic torus, together with a
//! pseudo-spectral solver to drive them.

pub mod dissrange;
mod error;
pub mod harness;
pub mod lp;
pub mod norms;
pub mod solver;
pub mod spectral;

pub use dissrange::{DiagnosticsParams, DissipationState};
pub use error::{Error, Result};
pub use harness::{MonitorReport, RunConfig};
pub use lp::FilterBank;
pub use spectral::{Grid, PhysicalField, SpectralField};
