//! Verification workbench for tangent categories over pseudolimits.

pub mod catcore;
pub mod demos;
pub mod error;
pub mod field;
pub mod io;
pub mod pc;
pub mod pseudo;
pub mod report;
pub mod tangent;
pub mod zariski;

pub use error::{CatError, Result};
pub use field::{Field, Rational};
pub use report::{Check, Status, VerificationReport};
