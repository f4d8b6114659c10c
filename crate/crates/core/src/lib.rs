//! Exact arithmetic and combinatorics of hyperbolic toral automorphisms
//! with nonnegative matrices: eigendata in `Q(√D)`, cutting sequences and
//! fans, tiling words of the bi-partition, window substitutions and the
//! geometry of the associated Markov partitions.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod berg;
pub mod exactnum;
pub mod fan;
mod orbit;
pub mod render;
pub mod spectral;
pub mod subst;
pub mod tiling;

pub use berg::{berg_substitutions, SubstitutionRule};
pub use exactnum::QuadraticNumber;
pub use spectral::{AutomorphismMatrix, BiPartition, EigenData, MatrixError};
pub use tiling::{Letter, Word};
