//! One-dimensional flux reconstruction (nodal DG equivalent) for linear
//! advection, with two troubled-cell treatments:
//!
//! * a TVB minmod indicator that swaps flagged cells for a WENO-type
//!   reconstruction, and
//! * boundary variation diminishing (BVD) selection, which picks per cell
//!   between the original polynomial and the WENO-type candidate so that
//!   interface jumps are minimised.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which the command line harness uses.

pub mod basis;
pub mod cases;
pub mod error;
pub mod harness;
pub mod limiting;
pub mod reconstruction;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CellBasis = basis::CellBasis<f64>;
pub type Field = solver::Field<f64>;
pub type CandidatePair = reconstruction::CandidatePair<f64>;
pub type SelectionTrace = limiting::SelectionTrace<f64>;
pub type Scheme = solver::Scheme<f64>;
pub type Limiter = solver::Limiter<f64>;
pub type TvbParams = limiting::TvbParams<f64>;

pub type CellBasisF32 = basis::CellBasis<f32>;
pub type FieldF32 = solver::Field<f32>;
