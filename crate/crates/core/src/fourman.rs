//! Invariant records of closed oriented four-manifolds and their embedded
//! square-zero tori, with builders for the 4-torus and the rational elliptic
//! surface E(1).
//!
//! Only a sublattice of second homology is tracked. Classes are identified
//! with their Poincare duals, so the first Chern class lives in the same
//! coordinates as the tori.

use std::collections::BTreeSet;
use std::fmt;

use crate::intlat::{IntVector, Pairing, PairingMatrix, PartialPairing};
use crate::scalar::{int, IntegerScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourManifold<T> {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
    /// Stored, not derived; `None` when not determined by the record.
    pub b1: Option<u64>,
    pub b2: Option<u64>,
    pub basis: Vec<String>,
    pub pairing: PartialPairing<T>,
    /// First Chern class of the distinguished symplectic structure.
    pub c1: IntVector<T>,
    pub pi1_normally_generated_by_tori: bool,
    pub simply_connected: bool,
}

impl<T: IntegerScalar> FourManifold<T> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// The same smooth record with the symplectic form negated, which
    /// negates the first Chern class.
    pub fn conjugate(&self) -> Self {
        FourManifold {
            name: format!("{} (conjugate form)", self.name),
            c1: -&self.c1,
            ..self.clone()
        }
    }

    pub fn pair(&self, a: &IntVector<T>, b: &IntVector<T>) -> Option<T> {
        self.pairing.pair(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusKind {
    Symplectic,
    Lagrangian,
}

impl fmt::Display for TorusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorusKind::Symplectic => "symplectic",
            TorusKind::Lagrangian => "lagrangian",
        })
    }
}

/// An oriented embedded torus of square zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedTorus<T> {
    pub label: String,
    pub klass: IntVector<T>,
    pub kind: TorusKind,
    /// A tracked class pairing to one with `klass`.
    pub dual: Option<IntVector<T>>,
    pub parallel_copies_available: bool,
    /// Part of the family of tori whose fundamental groups normally generate
    /// the fundamental group of the ambient manifold.
    pub pi1_generator: bool,
    /// The complement of the torus is simply connected.
    pub complement_simply_connected: bool,
}

/// Coordinates `(T_x, T_y, T_z, U_x, U_y, U_z)` on the tracked part of
/// `H_2(T^4)`, where `T_a = a ^ t` and the `U_a` are the dual 2-tori
/// `y ^ z`, `z ^ x`, `x ^ y`.
pub const T4_BASIS: [&str; 6] = ["T_x", "T_y", "T_z", "U_x", "U_y", "U_z"];

/// The 4-torus `R^4 / Z^4` with coordinates `x, y, z, t` and the standard form
/// `dx ^ dt + dy ^ dz`, together with the tori `T_x, T_y, T_z` and the
/// diagonal torus `T_w = <x = y = z, t>`.
pub fn build_t4<T: IntegerScalar>() -> (FourManifold<T>, Vec<EmbeddedTorus<T>>) {
    let e = |i| IntVector::unit(6, i);
    let manifold = FourManifold {
        name: "T4".into(),
        euler: 0,
        signature: 0,
        b1: Some(4),
        b2: Some(6),
        basis: T4_BASIS.iter().map(|s| s.to_string()).collect(),
        pairing: PairingMatrix::hyperbolic(3).into(),
        c1: IntVector::zeros(6),
        pi1_normally_generated_by_tori: true,
        simply_connected: false,
    };
    let torus = |label: &str, klass, kind, dual, generator| EmbeddedTorus {
        label: label.into(),
        klass,
        kind,
        dual: Some(dual),
        parallel_copies_available: true,
        pi1_generator: generator,
        complement_simply_connected: false,
    };
    let tori = vec![
        torus("T_x", e(0), TorusKind::Symplectic, e(3), true),
        torus("T_y", e(1), TorusKind::Lagrangian, e(4), true),
        torus("T_z", e(2), TorusKind::Lagrangian, e(5), true),
        torus(
            "T_w",
            IntVector::from_i64s(&[1, 1, 1, 0, 0, 0]),
            TorusKind::Symplectic,
            e(3),
            false,
        ),
    ];
    (manifold, tori)
}

/// E(1) = CP^2 # 9 (-CP^2) with its Kahler form, tracked on the fibre `F`
/// and a section `S` (`F^2 = 0`, `F.S = 1`, `S^2 = -1`). Its first Chern
/// class is `[F]`.
pub fn build_e1<T: IntegerScalar>() -> (FourManifold<T>, EmbeddedTorus<T>) {
    let manifold = FourManifold {
        name: "E1".into(),
        euler: 12,
        signature: -8,
        b1: Some(0),
        b2: Some(10),
        basis: vec!["F".into(), "S".into()],
        pairing: PairingMatrix::from_i64s(&[&[0, 1], &[1, -1]])
            .expect("symmetric")
            .into(),
        c1: IntVector::from_i64s(&[1, 0]),
        pi1_normally_generated_by_tori: true,
        simply_connected: true,
    };
    let fibre = EmbeddedTorus {
        label: "F".into(),
        klass: IntVector::from_i64s(&[1, 0]),
        kind: TorusKind::Symplectic,
        dual: Some(IntVector::from_i64s(&[0, 1])),
        parallel_copies_available: true,
        pi1_generator: false,
        complement_simply_connected: true,
    };
    (manifold, fibre)
}

/// A broken structural invariant of a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PairingDimension { expected: usize, found: usize },
    C1Length { expected: usize, found: usize },
    SimplyConnectedB1(u64),
    SimplyConnectedEuler { euler: i64, b2: Option<u64> },
    SignatureExceedsB2 { signature: i64, b2: u64 },
    DuplicateTorus(String),
    TorusClassLength(String),
    DualLength(String),
    NotSquareZero { torus: String, square: String },
    DualPairing { torus: String, value: String },
    Adjunction { torus: String, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PairingDimension { expected, found } => {
                write!(f, "pairing has dimension {found}, lattice rank is {expected}")
            }
            Violation::C1Length { expected, found } => {
                write!(f, "c1 has {found} coordinates, lattice rank is {expected}")
            }
            Violation::SimplyConnectedB1(b1) => write!(f, "simply connected but b1 = {b1}"),
            Violation::SimplyConnectedEuler { euler, b2 } => match b2 {
                Some(b2) => write!(f, "simply connected but e = {euler} != 2 + b2 = {}", 2 + b2),
                None => write!(f, "simply connected but b2 is not recorded"),
            },
            Violation::SignatureExceedsB2 { signature, b2 } => {
                write!(f, "|signature| = {} exceeds b2 = {b2}", signature.abs())
            }
            Violation::DuplicateTorus(l) => write!(f, "torus {l} declared twice"),
            Violation::TorusClassLength(l) => write!(f, "torus {l}: class has wrong length"),
            Violation::DualLength(l) => write!(f, "torus {l}: dual has wrong length"),
            Violation::NotSquareZero { torus, square } => {
                write!(f, "torus {torus}: not square-zero (self-pairing {square})")
            }
            Violation::DualPairing { torus, value } => {
                write!(f, "torus {torus}: dual pairs to {value}, expected 1")
            }
            Violation::Adjunction { torus, value } => {
                write!(f, "torus {torus}: <c1, T> = {value}, adjunction requires 0")
            }
        }
    }
}

/// Checks the record and torus invariants, including `<c1, T> = 0` for every
/// square-zero torus. Pairings that are not declared are not checked.
pub fn validate<T: IntegerScalar>(m: &FourManifold<T>, tori: &[EmbeddedTorus<T>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let rank = m.rank();
    if m.pairing.dim() != rank {
        out.push(Violation::PairingDimension {
            expected: rank,
            found: m.pairing.dim(),
        });
        return out;
    }
    if m.c1.len() != rank {
        out.push(Violation::C1Length {
            expected: rank,
            found: m.c1.len(),
        });
    }
    if m.simply_connected {
        if let Some(b1) = m.b1.filter(|&b| b != 0) {
            out.push(Violation::SimplyConnectedB1(b1));
        }
        if m.b2.map(|b2| m.euler != 2 + b2 as i64).unwrap_or(true) {
            out.push(Violation::SimplyConnectedEuler {
                euler: m.euler,
                b2: m.b2,
            });
        }
    }
    if let Some(b2) = m.b2 {
        if m.signature.unsigned_abs() > b2 {
            out.push(Violation::SignatureExceedsB2 {
                signature: m.signature,
                b2,
            });
        }
    }
    let mut seen = BTreeSet::new();
    for t in tori {
        if !seen.insert(t.label.as_str()) {
            out.push(Violation::DuplicateTorus(t.label.clone()));
        }
        if t.klass.len() != rank {
            out.push(Violation::TorusClassLength(t.label.clone()));
            continue;
        }
        if let Some(sq) = m.pair(&t.klass, &t.klass) {
            if !sq.is_zero() {
                out.push(Violation::NotSquareZero {
                    torus: t.label.clone(),
                    square: sq.to_string(),
                });
            }
        }
        if let Some(dual) = &t.dual {
            if dual.len() != rank {
                out.push(Violation::DualLength(t.label.clone()));
            } else if let Some(v) = m.pair(&t.klass, dual) {
                if v != int(1) {
                    out.push(Violation::DualPairing {
                        torus: t.label.clone(),
                        value: v.to_string(),
                    });
                }
            }
        }
        if m.c1.len() == rank {
            if let Some(v) = m.pair(&m.c1, &t.klass) {
                if !v.is_zero() {
                    out.push(Violation::Adjunction {
                        torus: t.label.clone(),
                        value: v.to_string(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    #[test]
    fn t4_record() {
        let (m, tori) = build_t4::<Int>();
        assert_eq!((m.euler, m.signature, m.b1, m.b2), (0, 0, Some(4), Some(6)));
        assert!(m.c1.is_zero());
        let w = tori.iter().find(|t| t.label == "T_w").unwrap();
        assert_eq!(w.klass, IntVector::from_i64s(&[1, 1, 1, 0, 0, 0]));
        assert!(w.parallel_copies_available);
        assert!(validate(&m, &tori).is_empty());
        for a in &tori {
            for b in &tori {
                assert_eq!(m.pair(&a.klass, &b.klass), Some(Int::from(0)));
            }
        }
    }

    #[test]
    fn e1_record() {
        let (m, f) = build_e1::<Int>();
        assert_eq!((m.euler, m.signature, m.b2), (12, -8, Some(10)));
        assert_eq!(m.c1, f.klass);
        assert_eq!(m.conjugate().c1, -&f.klass);
        assert_eq!(m.pair(&m.c1, &f.klass), Some(Int::from(0)));
        assert!(f.complement_simply_connected);
        assert!(validate(&m, &[f]).is_empty());
    }

    #[test]
    fn builders_are_deterministic() {
        assert_eq!(build_t4::<Int>(), build_t4::<Int>());
        assert_eq!(build_e1::<Int>(), build_e1::<Int>());
    }

    #[test]
    fn violations_are_reported() {
        let (mut m, mut tori) = build_t4::<Int>();
        tori.push(EmbeddedTorus {
            label: "bad".into(),
            klass: IntVector::from_i64s(&[1, 0, 0, 1, 0, 0]),
            ..tori[0].clone()
        });
        let v = validate(&m, &tori);
        assert!(v.iter().any(|x| x.to_string().contains("not square-zero")), "{v:?}");

        m.simply_connected = true;
        m.c1 = IntVector::from_i64s(&[0, 0, 0, 1, 0, 0]);
        m.signature = 9;
        let v = validate(&m, &tori[..4]);
        assert!(v.contains(&Violation::SimplyConnectedB1(4)));
        assert!(v.contains(&Violation::SimplyConnectedEuler { euler: 0, b2: Some(6) }));
        assert!(v.contains(&Violation::SignatureExceedsB2 { signature: 9, b2: 6 }));
        assert!(v.contains(&Violation::Adjunction {
            torus: "T_x".into(),
            value: "1".into()
        }));
    }

    #[test]
    fn dual_must_pair_to_one() {
        let (m, mut tori) = build_t4::<Int>();
        tori[1].dual = Some(IntVector::unit(6, 3));
        assert_eq!(
            validate(&m, &tori),
            vec![Violation::DualPairing {
                torus: "T_y".into(),
                value: "0".into()
            }]
        );
    }
}
