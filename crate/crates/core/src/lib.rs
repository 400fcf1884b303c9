pub mod determinantal;
pub mod dim;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linkage;
pub mod matrix;
pub mod module;
pub mod multipoint;
pub mod poly;

pub use error::{Error, Result};
