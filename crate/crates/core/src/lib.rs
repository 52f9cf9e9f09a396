//! Tableau-based compiler for Pauli-product circuits.
//!
//! The pipeline parses Clifford+T programs, lowers them to Pauli-product
//! rotations, eliminates Cliffords with a column-major tableau, layers and
//! fuses commuting rotations, reorders them to save patch rotations, and
//! costs the result in QEC rounds on a single-exposed-edge architecture.

pub mod angle;
pub mod bench;
pub mod circuit;
pub mod eliminate;
pub mod error;
pub mod htab;
pub mod lower;
pub mod optimizer;
pub mod oracle;
pub mod parse;
pub mod pauli;
pub mod pipeline;
pub mod random;
pub mod report;
pub mod rotation;
pub mod selfcheck;
pub mod sim;
pub mod vtab;

pub use angle::Angle;
pub use error::{Error, Result};
pub use pauli::{PauliLetter, PauliString};
pub use rotation::{OpTag, RotationOp};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/pauli.md")]
    mod pauli {}
    #[doc = include_str!("../../../book/src/elimination.md")]
    mod elimination {}
    #[doc = include_str!("../../../book/src/layers.md")]
    mod layers {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
