//! Scalar traits shared by the lattice and link code.
//!
//! Lattice algebra is written once against [`IntegerScalar`] and instantiated
//! with arbitrary-precision integers in production ([`crate::Int`]). Machine
//! integers also satisfy the bound, which the tests use for small cases.
//! Link geometry is written against [`FieldScalar`]; exact rationals
//! ([`crate::Rational`]) are the production choice.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact, signed Euclidean ring element.
pub trait IntegerScalar:
    num_integer::Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> IntegerScalar for T where
    T: num_integer::Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An ordered field used for vertex coordinates.
///
/// Predicates are only exact when the field is (rationals); `f64` satisfies
/// the bound but gives no such guarantee.
pub trait FieldScalar:
    Num + Signed + Clone + PartialOrd + Debug + FromPrimitive + Send + Sync + 'static
{
}

impl<T> FieldScalar for T where
    T: Num + Signed + Clone + PartialOrd + Debug + FromPrimitive + Send + Sync + 'static
{
}

/// Converts a small machine integer into any integer scalar.
pub(crate) fn int<T: IntegerScalar>(v: i64) -> T {
    T::from_i64(v).expect("every integer scalar represents small i64 values")
}
