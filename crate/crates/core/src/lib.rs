//! Branched covers of elliptic curves, their Prym lattices, and the integer,
//! complex and bundle-theoretic arithmetic around them.

pub mod atiyah;
pub mod braid;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod homology;
pub mod hurwitz;
pub mod intmat;
pub mod period;
pub mod perm;
pub mod prym;
pub mod surface;
pub mod symplectic;

pub use error::{Error, Result};
pub use hurwitz::{HurwitzTuple, TupleClass};
pub use intmat::IntMatrix;
pub use perm::Permutation;
