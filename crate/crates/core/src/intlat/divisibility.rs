use super::{gcd_content, IntVector, LatticeError, Pairing};
use crate::scalar::IntegerScalar;

/// Two-sided bounds on the divisibility of a lattice class.
///
/// `lower` is witnessed by an explicit integral quotient. `upper` is the gcd of
/// every declared pairing of the class, zero when no pairing constrains it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisibilityReport<T> {
    pub lower: T,
    pub upper: T,
    pub exact: bool,
}

impl<T: IntegerScalar> DivisibilityReport<T> {
    /// The zero class has no meaningful divisibility.
    pub fn is_undefined(&self) -> bool {
        self.lower.is_zero()
    }

    /// The divisibility, when both bounds agree.
    pub fn exact_value(&self) -> Option<&T> {
        self.exact.then_some(&self.lower)
    }
}

/// Divisibility bounds of `c` using the basis and the extra `duals` as test
/// classes for the pairing.
pub fn divisibility_bounds<T, P>(
    c: &IntVector<T>,
    pairing: &P,
    duals: &[IntVector<T>],
) -> Result<DivisibilityReport<T>, LatticeError>
where
    T: IntegerScalar,
    P: Pairing<T> + ?Sized,
{
    let dim = pairing.dim();
    for v in std::iter::once(c).chain(duals) {
        if v.len() != dim {
            return Err(LatticeError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    if c.is_zero() {
        return Ok(DivisibilityReport {
            lower: T::zero(),
            upper: T::zero(),
            exact: false,
        });
    }
    let lower = gcd_content(c);
    let upper = (0..dim)
        .map(|i| IntVector::unit(dim, i))
        .chain(duals.iter().cloned())
        .filter_map(|u| pairing.pair(c, &u))
        .fold(T::zero(), |g, x| g.gcd(&x))
        .abs();
    let exact = !upper.is_zero() && lower == upper;
    Ok(DivisibilityReport {
        lower,
        upper,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{PairingEntry, PairingMatrix, PartialPairing};
    use crate::Int;
    use num_integer::Integer;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> IntVector<Int> {
        IntVector::from_i64s(c)
    }

    #[test]
    fn chern_class_with_dual_pairings() {
        // Coordinates (T_x, T_y, T_z, U_x, U_y, U_z); <c, U_i> = -3 for each i.
        let h = PairingMatrix::<Int>::hyperbolic(3);
        let c = v(&[-3, -3, -3, 0, 0, 0]);
        let duals: Vec<_> = (3..6).map(|i| IntVector::unit(6, i)).collect();
        for u in &duals {
            assert_eq!(h.pair(&c, u), Some(Int::from(-3)));
        }
        let r = divisibility_bounds(&c, &h, &duals).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone(), r.exact), (Int::from(3), Int::from(3), true));
    }

    #[test]
    fn zero_class_is_flagged() {
        let h = PairingMatrix::<Int>::hyperbolic(2);
        let r = divisibility_bounds(&v(&[0, 0, 0, 0]), &h, &[]).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone(), r.exact), (Int::from(0), Int::from(0), false));
        assert!(r.is_undefined());
        assert_eq!(r.exact_value(), None);
    }

    #[test]
    fn zero_pairing_gives_no_upper_bound() {
        let z = PairingMatrix::<Int>::zero(2);
        let r = divisibility_bounds(&v(&[2, 4]), &z, &[]).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone(), r.exact), (Int::from(2), Int::from(0), false));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let h = PairingMatrix::<Int>::hyperbolic(1);
        assert!(matches!(
            divisibility_bounds(&v(&[1, 2, 3]), &h, &[]),
            Err(LatticeError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn undeclared_pairings_are_skipped() {
        let mut p: PartialPairing<Int> = PairingMatrix::hyperbolic(1).into();
        p.set(1, 1, PairingEntry::Unknown);
        // <c, e_1> needs the unknown (1,1) entry; <c, e_0> = 6.
        let r = divisibility_bounds(&v(&[2, 6]), &p, &[]).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone(), r.exact), (Int::from(2), Int::from(6), false));
    }

    fn symmetric(n: usize) -> impl Strategy<Value = PairingMatrix<Int>> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |raw| {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Int::from(raw[i.min(j) * n + i.max(j)]))
                        .collect()
                })
                .collect();
            PairingMatrix::new(rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lower_divides_upper(
            pairing in symmetric(4),
            c in prop::collection::vec(-30i64..30, 4),
            duals in prop::collection::vec(prop::collection::vec(-5i64..5, 4), 0..3),
        ) {
            let duals: Vec<_> = duals.iter().map(|d| v(d)).collect();
            let r = divisibility_bounds(&v(&c), &pairing, &duals).unwrap();
            if !r.upper.is_zero() {
                prop_assert!(r.upper.is_multiple_of(&r.lower));
            }
            if r.exact {
                prop_assert_eq!(&r.lower, &r.upper);
            }
        }
    }
}
