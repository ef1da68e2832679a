//! Invariant-level fibre sums of symplectic four-manifolds with the rational
//! elliptic surface E(1).
//!
//! The crate builds invariant records for closed four-manifolds, glues copies
//! of E(1) along square-zero tori with a chosen symplectic orientation per copy,
//! tracks the first Chern class exactly, and certifies lower bounds on the
//! number of inequivalent symplectic structures by comparing the
//! divisibilities of the resulting Chern classes.
//!
//! All lattice arithmetic is generic over [`scalar::IntegerScalar`]; link
//! geometry is generic over [`scalar::FieldScalar`]. The aliases below fix
//! the production choices (arbitrary-precision integers and rationals).

pub mod construct;
pub mod fourman;
pub mod gompfsum;
pub mod intlat;
pub mod linkgeom;
pub mod scalar;

pub use construct::{
    check_hypotheses, enumerate_forms, pi0_lower_bound, solve_signs, EnumerationOptions,
    HypothesisReport,
};
pub use fourman::{build_e1, build_t4, validate, TorusKind, Violation};
pub use gompfsum::{check_c1_identities, perform_recipe, sum_c1, sum_invariants, Gluing, Sign};
pub use intlat::{divisibility_bounds, gcd_content, rank, smith_normal_form};

/// Arbitrary-precision integer used for every homology computation.
pub type Int = num_bigint::BigInt;
/// Exact rational used for link vertex coordinates.
pub type Rational = num_rational::BigRational;

pub type Vector = intlat::IntVector<Int>;
pub type Pairing = intlat::PairingMatrix<Int>;
pub type TrackedPairing = intlat::PartialPairing<Int>;
pub type Report = intlat::DivisibilityReport<Int>;
pub type Matrix = intlat::Matrix<Int>;

pub type Manifold = fourman::FourManifold<Int>;
pub type Torus = fourman::EmbeddedTorus<Int>;
pub type Recipe = gompfsum::SumRecipe<Int>;
pub type Form = gompfsum::FormClass<Int>;
pub type Enumeration = construct::EnumerationResult<Int>;

pub type Curve = linkgeom::PolygonalCurve<Rational>;
pub type Link = linkgeom::PolygonalLink<Rational>;
