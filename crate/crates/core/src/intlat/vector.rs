use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::Zero;

use crate::scalar::IntegerScalar;

/// Coordinates of a class in a declared basis of a tracked lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector<T>(Vec<T>);

impl<T: IntegerScalar> IntVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        IntVector(coords)
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![T::zero(); len])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = T::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        IntVector(self.0.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// `self / k` when every coordinate is divisible by `k`.
    pub fn exact_div(&self, k: &T) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        self.0
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(k);
                r.is_zero().then_some(q)
            })
            .collect::<Option<Vec<_>>>()
            .map(IntVector)
    }

    /// Euclidean inner product of coordinates (not an intersection pairing).
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn content(&self) -> T {
        gcd_content(self)
    }
}

/// Gcd of the absolute values of the coordinates; zero for the zero vector.
pub fn gcd_content<T: IntegerScalar>(v: &IntVector<T>) -> T {
    v.0.iter().fold(T::zero(), |g, c| g.gcd(c)).abs()
}

impl<T> Index<usize> for IntVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: IntegerScalar> Add for &IntVector<T> {
    type Output = IntVector<T>;
    fn add(self, rhs: &IntVector<T>) -> IntVector<T> {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: IntegerScalar> Sub for &IntVector<T> {
    type Output = IntVector<T>;
    fn sub(self, rhs: &IntVector<T>) -> IntVector<T> {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: IntegerScalar> Neg for &IntVector<T> {
    type Output = IntVector<T>;
    fn neg(self) -> IntVector<T> {
        IntVector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: IntegerScalar> fmt::Display for IntVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T> FromIterator<T> for IntVector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> IntVector<Int> {
        IntVector::from_i64s(c)
    }

    #[test]
    fn content_examples() {
        assert_eq!(gcd_content(&v(&[-3, -3, -3])), Int::from(3));
        assert_eq!(gcd_content(&v(&[0, 0, 0])), Int::from(0));
        assert_eq!(gcd_content(&v(&[-3, -3, -1])), Int::from(1));
    }

    #[test]
    fn content_does_not_overflow() {
        let big: Int = Int::from(i64::MAX) * Int::from(i64::MAX);
        let w = IntVector::new(vec![big.clone() * Int::from(6), big.clone() * Int::from(-9)]);
        assert_eq!(gcd_content(&w), big * Int::from(3));
    }

    #[test]
    fn exact_div_rejects_non_multiples() {
        assert_eq!(v(&[4, 6]).exact_div(&Int::from(2)), Some(v(&[2, 3])));
        assert_eq!(v(&[4, 6]).exact_div(&Int::from(4)), None);
        assert_eq!(v(&[4, 6]).exact_div(&Int::from(0)), None);
    }

    proptest! {
        #[test]
        fn content_is_homogeneous(coords in prop::collection::vec(-1000i64..1000, 1..8), k in -50i64..50) {
            let w = v(&coords);
            let k = Int::from(k);
            prop_assert_eq!(gcd_content(&w.scale(&k)), k.abs() * gcd_content(&w));
        }

        #[test]
        fn machine_and_big_integers_agree(coords in prop::collection::vec(-10_000i64..10_000, 0..8)) {
            let small = IntVector::<i64>::from_i64s(&coords);
            prop_assert_eq!(Int::from(gcd_content(&small)), gcd_content(&v(&coords)));
        }
    }
}
