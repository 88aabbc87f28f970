pub mod error;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod ring;
pub mod ser;
pub mod torus;

pub use error::{Error, Result};
