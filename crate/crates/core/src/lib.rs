pub mod complex;
pub mod error;
pub mod json;
pub mod lab;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod tstruct;

pub use error::{Error, Result};
