

use super::{IntVector, LatticeError};
use crate::scalar::IntegerScalar;

/// A symmetric bilinear pairing on a tracked lattice, possibly only partly known.
pub trait Pairing<T: IntegerScalar> {
    fn dim(&self) -> usize;

    /// The pairing of basis vectors `i` and `j`, when declared.
    fn entry(&self, i: usize, j: usize) -> Option<T>;

    /// `<a, b>` computed from the entries. `None` when some entry that
    /// multiplies two nonzero coordinates is undeclared.
    fn pair(&self, a: &IntVector<T>, b: &IntVector<T>) -> Option<T> {
        assert_eq!(a.len(), self.dim(), "vector length mismatch");
        assert_eq!(b.len(), self.dim(), "vector length mismatch");
        let mut total = T::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                total = total + ai.clone() * self.entry(i, j)? * bj.clone();
            }
        }
        Some(total)
    }
}

/// Fully declared symmetric integer pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: IntegerScalar> PairingMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self, LatticeError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LatticeError::Empty);
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(PairingMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0);
        PairingMatrix {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    /// Orthogonal sum of `half` hyperbolic planes, ordered as
    /// `(a_1..a_half, b_1..b_half)` with `<a_i, b_j> = delta_ij`.
    pub fn hyperbolic(half: usize) -> Self {
        let mut m = Self::zero(2 * half);
        for i in 0..half {
            m.entries[i * 2 * half + half + i] = T::one();
            m.entries[(half + i) * 2 * half + i] = T::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl<T: IntegerScalar> Pairing<T> for PairingMatrix<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn entry(&self, i: usize, j: usize) -> Option<T> {
        Some(self.get(i, j).clone())
    }
}

/// One entry of a partially known pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingEntry<T> {
    Known(T),
    /// Value unknown, parity known (`true` for odd). Only used on the diagonal.
    Parity(bool),
    Unknown,
}

/// Symmetric pairing in which some entries are undeclared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPairing<T> {
    dim: usize,
    entries: Vec<PairingEntry<T>>,
}

impl<T: IntegerScalar> PartialPairing<T> {
    pub fn new(rows: Vec<Vec<PairingEntry<T>>>) -> Result<Self, LatticeError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LatticeError::Empty);
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if rows[i][j] != rows[j][i] || matches!(rows[i][j], PairingEntry::Parity(_)) {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(PartialPairing {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &PairingEntry<T> {
        &self.entries[i * self.dim + j]
    }

    /// Replaces entry `(i, j)` and its mirror.
    pub fn set(&mut self, i: usize, j: usize, e: PairingEntry<T>) {
        assert!(
            i == j || !matches!(e, PairingEntry::Parity(_)),
            "parity-only entries live on the diagonal"
        );
        self.entries[i * self.dim + j] = e.clone();
        self.entries[j * self.dim + i] = e;
    }

    /// Parity of `<e_i, e_i>` (`true` for odd) when at least that is declared.
    pub fn self_parity(&self, i: usize) -> Option<bool> {
        match self.get(i, i) {
            PairingEntry::Known(v) => Some(v.is_odd()),
            PairingEntry::Parity(odd) => Some(*odd),
            PairingEntry::Unknown => None,
        }
    }

    pub fn rows(&self) -> Vec<Vec<PairingEntry<T>>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// The full matrix when every entry is declared.
    pub fn to_complete(&self) -> Option<PairingMatrix<T>> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                PairingEntry::Known(v) => Some(v.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PairingMatrix {
            dim: self.dim,
            entries,
        })
    }
}

impl<T: IntegerScalar> From<PairingMatrix<T>> for PartialPairing<T> {
    fn from(m: PairingMatrix<T>) -> Self {
        PartialPairing {
            dim: m.dim,
            entries: m.entries.into_iter().map(PairingEntry::Known).collect(),
        }
    }
}

impl<T: IntegerScalar> Pairing<T> for PartialPairing<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn entry(&self, i: usize, j: usize) -> Option<T> {
        match self.get(i, j) {
            PairingEntry::Known(v) => Some(v.clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    #[test]
    fn rejects_asymmetric() {
        let err = PairingMatrix::<Int>::from_i64s(&[&[0, 1], &[2, 0]]).unwrap_err();
        assert_eq!(err, LatticeError::NotSymmetric(0, 1));
        assert_eq!(
            PairingMatrix::<Int>::from_i64s(&[&[0, 1]]).unwrap_err(),
            LatticeError::NotSquare
        );
        assert_eq!(
            PairingMatrix::<Int>::new(vec![]).unwrap_err(),
            LatticeError::Empty
        );
    }

    #[test]
    fn hyperbolic_block_layout() {
        let h = PairingMatrix::<Int>::hyperbolic(3);
        let expect = PairingMatrix::from_i64s(&[
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn unknown_entries_only_matter_on_support() {
        let mut p: PartialPairing<Int> = PairingMatrix::hyperbolic(1).into();
        p.set(1, 1, PairingEntry::Parity(true));
        let a = IntVector::from_i64s(&[3, 0]);
        let b = IntVector::from_i64s(&[0, 1]);
        assert_eq!(p.pair(&a, &b), Some(Int::from(3)));
        assert_eq!(p.pair(&a, &a), Some(Int::from(0)));
        assert_eq!(p.pair(&b, &b), None);
        assert_eq!(p.self_parity(1), Some(true));
        assert!(p.to_complete().is_none());
    }
}
