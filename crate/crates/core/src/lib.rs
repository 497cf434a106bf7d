pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod arrangement;
pub mod collections;
pub mod corpus;
pub mod complexes;
pub mod geometry;
pub mod groups;
pub mod report;
pub mod resolution;
pub mod scene;
