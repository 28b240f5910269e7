//! Laurent potentials over `Λ`: parsing, critical points with exact
//! leading coefficients, Hessians, and toric superpotentials.

mod critical;
mod homotopy;
mod parse;
mod polynomial;
mod recognize;
mod toric;
mod tropical;

pub use critical::{
    critical_points, hessian, residual_valuation, CritOptions, CriticalPoint, CriticalSet, DegenerateLead,
    FieldPolicy, HessianReport,
};
pub use parse::{parse_potential, parse_potential_file, parse_potential_in};
pub use polynomial::LaurentPolynomial;
pub use toric::{
    build_toric_potential, fiber_potential, morse_count_check, parse_polytope, root_of_unity, u_of_c,
    zeta_symmetry_check, MomentPoint, MomentPolytope, MorseVerdict, ToricPotential, ZetaVerdict,
};
pub use tropical::{affine_dimension, lower_facets};
