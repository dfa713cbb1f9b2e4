//! Scalar fields for the polynomial layer.

use num_traits::{FromPrimitive, Num};
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

/// Exact rationals, the default scalar field.
pub type Rational = num::BigRational;

/// A field with decidable equality and a textual form.
///
/// Division is assumed exact; every implementor of the bounds is taken to be
/// a field, so integer types must not be used.
pub trait Field:
    Num + Clone + Debug + Display + Hash + Eq + FromStr + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Field for T where
    T: Num + Clone + Debug + Display + Hash + Eq + FromStr + FromPrimitive + Send + Sync + 'static
{
}
