//! Model algebras: Clifford algebras, torus fibers at critical points,
//! spheres with their idempotent calculus, and the quantum cohomology ledger.

mod clifford;
mod ledger;
mod sphere;
mod torus;

pub use clifford::{clifford_labels, clifford_model, clifford_product};
pub use ledger::{assemble_ledger, BetaStatus, Factor, LedgerInput, LedgerVerdict, Provenance, QCohLedger, SphereBlock, SphereInput, TorusFactor};
pub use sphere::{sphere_idempotents, sphere_model, SphereClass, SphereData, SphereIdempotents, SphereRing};
pub use torus::{cross_floer_model, torus_fiber_model};
