//! Exact numerology for tame rigid local systems on the punctured line.
//!
//! The crate models local monodromy as Jordan data over tame characters,
//! transforms it by middle convolution and middle tensor products, and builds
//! the rank-seven rigid systems with `G₂` monodromy together with their
//! classification, rationality test, hypersurface equations and a finite-field
//! point-counting kernel.

pub mod character;
pub mod convolution;
pub mod error;
pub mod g2;
pub mod local;
pub mod motivic;
pub mod partition;
pub mod pointcount;
pub mod reprring;

pub use character::Character;
pub use error::{Error, Result, Violation};
pub use local::{FormalLocalSystem, LocalMonodromy, Point, Provenance, RankOneSystem};
pub use partition::Partition;
