pub mod descriptive;
pub mod distributions;
pub mod error;
pub mod inference;
pub mod neutro_num;
pub mod randgen;
pub mod regression;
pub mod setval;

pub use error::{Error, ParseError, Result};
pub use neutro_num::{NeutroComplex, NeutroNumber, NeutroQuadratic};
pub use setval::{Ordering3, SetValue};
