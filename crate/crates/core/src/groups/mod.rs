//! Polytope and tuple groups, apartment classes and the maps between them.

pub mod apartments;
pub mod checks;
pub mod presentation;
pub mod ptls;

pub use presentation::{GroupHom, GroupPresentation, HomCertificate};
