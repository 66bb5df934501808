pub mod arith;
pub mod display;
pub mod error;
pub mod fields;
pub mod value;

pub use error::{Error, Result};
pub use fields::{FieldElement, FieldKind, ValuedField};
pub use value::{Value, ValueGroup, Q};
pub mod poly;
pub mod graded;
pub mod indval;
pub mod engine;
pub mod par;
pub mod parse;
pub mod analyzer;
pub mod report;
