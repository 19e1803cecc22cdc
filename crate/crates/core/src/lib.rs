pub mod error;
pub mod formulas;
pub mod models;
pub mod montecarlo;
pub mod quadrature;
pub mod special;
pub mod stable;

pub use error::{Error, Result};
