//! Chain-level models and their homology.

pub mod chain;
pub mod spherical;
pub mod tits;

pub use chain::{homology, wedge_verdict, ChainComplex, DegreeHomology, HomologySummary};
