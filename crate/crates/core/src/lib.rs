//! Levine-Tristram signatures, Casson-Gordon and Cheeger-Gromov invariants
//! of surgeries on knots, and the triangulation complexity bounds built on
//! them.
//!
//! All signature computations are exact by default: Hermitian forms live
//! over cyclotomic fields, and the sign of every pivot is certified by
//! interval evaluation after a symbolic zero test.

pub mod bounds;
pub mod cyclotomic;
pub mod error;
pub mod knot;
pub mod poly;
pub mod rho;
pub mod signature;
pub mod verify;

pub use cyclotomic::CyclotomicElement;
pub use error::{Error, Result};
pub use knot::{SeifertMatrix, SurfaceKind, SurgeryPresentation};
pub use signature::{InertiaTriple, Mode, UnitRoot};
