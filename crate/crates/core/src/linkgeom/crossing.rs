
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::geometry::{det3, Point};
use super::{LinkError, PolygonalCurve};
use crate::scalar::FieldScalar;

/// Bound on projection directions tried before giving up.
pub const MAX_PROJECTION_ATTEMPTS: usize = 64;

const RANDOM_DIRECTION_RANGE: i64 = 1000;

enum PairCrossing {
    None,
    Signed(i64),
    Degenerate,
}

/// Crossing between segment `a0 -> a1` and `b0 -> b1` seen along `d`.
///
/// Solves `a0 + s u - (b0 + t v) = lambda d`. The crossing sign is the sign of
/// `lambda * det(u, v, d)`, which reduces to `-sign det(u, v, b0 - a0)`.
fn pair_crossing<S: FieldScalar>(
    a0: &Point<S>,
    a1: &Point<S>,
    b0: &Point<S>,
    b1: &Point<S>,
    d: &Point<S>,
) -> PairCrossing {
    let u = a1.sub(a0);
    let v = b1.sub(b0);
    let w = b0.sub(a0);
    let den = det3(&u, &v, d);
    if den.is_zero() {
        if u.cross(d).is_zero() || v.cross(d).is_zero() {
            return PairCrossing::Degenerate;
        }
        // Parallel shadows; they can overlap only if both lie in one plane
        // containing d. Collinear segments of disjoint curves never overlap.
        let collinear = u.cross(&v).is_zero() && u.cross(&w).is_zero();
        return if det3(&u, d, &w).is_zero() && !collinear {
            PairCrossing::Degenerate
        } else {
            PairCrossing::None
        };
    }
    let (s, t) = (det3(&w, &v, d), -det3(&u, &w, d));
    let (s, t, den) = if den.is_negative() {
        (-s, -t, -den)
    } else {
        (s, t, den)
    };
    let zero = S::zero();
    if s < zero || s > den || t < zero || t > den {
        return PairCrossing::None;
    }
    if s.is_zero() || s == den || t.is_zero() || t == den {
        return PairCrossing::Degenerate;
    }
    let orient = det3(&u, &v, &w);
    PairCrossing::Signed(if orient.is_negative() { 1 } else { -1 })
}

fn signed_crossings<S: FieldScalar>(
    a: &PolygonalCurve<S>,
    b: &PolygonalCurve<S>,
    d: &Point<S>,
) -> Option<i64> {
    let mut total = 0i64;
    for (a0, a1) in a.segments() {
        for (b0, b1) in b.segments() {
            match pair_crossing(a0, a1, b0, b1, d) {
                PairCrossing::None => {}
                PairCrossing::Signed(s) => total += s,
                PairCrossing::Degenerate => return None,
            }
        }
    }
    (total % 2 == 0).then_some(total / 2)
}

/// Linking number as half the signed crossing count in the projection along
/// `direction`, retrying with seeded random directions when it is not generic.
pub fn linking_number_crossings<S: FieldScalar>(
    a: &PolygonalCurve<S>,
    b: &PolygonalCurve<S>,
    direction: &Point<S>,
) -> Result<i64, LinkError> {
    linking_number_crossings_seeded(a, b, direction, 0)
}

pub fn linking_number_crossings_seeded<S: FieldScalar>(
    a: &PolygonalCurve<S>,
    b: &PolygonalCurve<S>,
    direction: &Point<S>,
    seed: u64,
) -> Result<i64, LinkError> {
    if direction.is_zero() {
        return Err(LinkError::ZeroDirection);
    }
    if !a.is_disjoint_from(b) {
        return Err(LinkError::NotEmbedded(0, 1));
    }
    if let Some(lk) = signed_crossings(a, b, direction) {
        return Ok(lk);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 1..MAX_PROJECTION_ATTEMPTS {
        let d = loop {
            let mut c = || rng.gen_range(-RANDOM_DIRECTION_RANGE..=RANDOM_DIRECTION_RANGE);
            let d = Point::<S>::from_i64s(c(), c(), c());
            if !d.is_zero() {
                break d;
            }
        };
        if let Some(lk) = signed_crossings(a, b, &d) {
            return Ok(lk);
        }
    }
    Err(LinkError::NoGenericDirection(MAX_PROJECTION_ATTEMPTS))
}
