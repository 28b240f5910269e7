//! Exact workbench for Z/2-graded cyclic A-infinity categories over a
//! truncated Novikov field, with Hochschild invariants, the Mukai pairing,
//! split-generation checks, and critical-point analysis of Laurent
//! potentials.

pub mod novikov;
pub mod graded;
pub mod linalg;
pub mod error;
pub mod ainfinity;
pub mod hochschild;
pub mod models_qcoh;
pub mod mukai_splitgen;
pub mod potential;
