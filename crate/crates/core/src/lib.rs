//! Cellular minimal free resolutions of Borel fixed ideals generated in one
//! degree, built as labeled polyhedral cell complexes and verified exactly.

pub mod borel;
pub mod builders;
pub mod cli;
pub mod complex;
pub mod error;
pub mod io;
pub mod koszul;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod resolution;

pub use complex::LabeledComplex;
pub use error::{Error, Result};
pub use linalg::Field;
pub use monomial::{Monomial, VarRange};
