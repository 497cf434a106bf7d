//! Exact arithmetic: rationals, rational and integer matrices, Smith normal
//! form, lattices, quadratic-form signatures and linear feasibility.

pub mod feasibility;
pub mod forms;
pub mod intmatrix;
pub mod lattice;
pub mod rational;
pub mod ratmatrix;
pub mod snf;
pub mod subspace;
pub mod zint;

pub use feasibility::feasible;
pub use intmatrix::IntMatrix;
pub use lattice::Lattice;
pub use rational::{parse_rational, q, qf, qvec, Rational};
pub use ratmatrix::RatMatrix;
pub use snf::{smith_normal_form, smith_normal_form_with_certificates, SnfResult};
pub use subspace::LinearSubspace;
