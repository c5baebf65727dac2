//! Recurrence rank, moment rank and unitary rank of complex-rational
//! sequences, with certificates and recovery of the finite-atomic measure
//! behind a moment sequence.
//!
//! All rank decisions are made in exact arithmetic over `ℚ(i)`. Floating
//! point only appears at the boundary in [`analytic`], where characteristic
//! roots that are not Gaussian rationals are located numerically.

pub mod analytic;
pub mod exactnum;
pub mod linalg;
pub mod ranks;
pub mod recurrence;

mod error;

pub use analytic::{AtomicMeasure, Convention, RationalGenFun, WaringForm};
pub use error::Error;
pub use exactnum::{ExactPoly, GaussianRational, Scalar};
pub use linalg::{ExactMatrix, SequenceWindow};
pub use ranks::{mrank, rrank, urank, RankCertificate, RankKind, RankStatus};
pub use recurrence::{NewtonPoly, Recurrence};

pub type Result<T, E = Error> = std::result::Result<T, E>;
