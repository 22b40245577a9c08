//! Inflators, totalizers, equalizers, interval sets, nuclei and dimensions on
//! finite modular lattices.

pub mod cache;
pub mod config;
pub mod dimensions;
pub mod error;
pub mod family;
pub mod inflator;
pub mod intervals;
pub mod io;
pub mod lattice;
pub mod nuclei;
pub mod suite;

pub use error::{Error, Result};
pub use family::{FamilyKind, OperatorLattice};
pub use inflator::{Flags, Inflator, Named};
pub use intervals::{Interval, IntervalSet, Intervals, Level};
pub use lattice::{generate, Digest, Elem, Family, FiniteLattice, Verdict};
