//! Exact equations for point configurations lying on rational normal curves.

pub mod bracket;
pub mod config;
pub mod conic;
pub mod error;
pub mod field;
pub mod gale;
pub mod higher;
pub mod index_set;
pub mod linalg;
pub mod transversal;
pub mod verify;

pub use config::{PointConfiguration, SampleRecipe, Sampler};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use index_set::IndexSet;
pub use linalg::Matrix;
