//! Built-in link data.
//!
//! The Borromean rings are three mutually perpendicular 4x2 rectangles
//! centred at the origin, lying in the planes z = 0, x = 0 and y = 0. Each
//! pierces the spanning disk of the next exactly twice with opposite signs,
//! so every pair is unlinked while the triple is not split. An axis is the
//! triangle through the origin along (1, 1, 1), closed far from the rings.

use num_bigint::BigInt;

use super::{ComponentRole, Point, PolygonalCurve, PolygonalLink};
use crate::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn pt(x: i64, y: i64, z: i64) -> Point<Rational> {
    Point::from_i64s(x, y, z)
}

fn curve(vertices: Vec<Point<Rational>>) -> PolygonalCurve<Rational> {
    PolygonalCurve::new(vertices).expect("built-in curve is embedded")
}

/// Two interlocked unit squares (linking number of magnitude one).
pub fn hopf_link() -> [PolygonalCurve<Rational>; 2] {
    [
        curve(vec![pt(0, 0, 0), pt(2, 0, 0), pt(2, 2, 0), pt(0, 2, 0)]),
        curve(vec![pt(1, 1, -1), pt(3, 1, -1), pt(3, 1, 1), pt(1, 1, 1)]),
    ]
}

/// Two far-apart squares.
pub fn split_link() -> [PolygonalCurve<Rational>; 2] {
    let a = curve(vec![pt(0, 0, 0), pt(2, 0, 0), pt(2, 2, 0), pt(0, 2, 0)]);
    let b = a.translated(&pt(10, 0, 0));
    [a, b]
}

/// The three Borromean rectangles, all tagged as zero-framed surgery components.
///
/// Orientations are fixed so that [`borromean_axis`] links each component +1.
pub fn borromean_rings() -> PolygonalLink<Rational> {
    let a = curve(vec![pt(-2, -1, 0), pt(2, -1, 0), pt(2, 1, 0), pt(-2, 1, 0)]);
    let b = curve(vec![pt(0, -2, -1), pt(0, 2, -1), pt(0, 2, 1), pt(0, -2, 1)]);
    let c = curve(vec![pt(-1, 0, -2), pt(-1, 0, 2), pt(1, 0, 2), pt(1, 0, -2)]);
    PolygonalLink::new(
        [a, b, c]
            .into_iter()
            .map(|k| (k, ComponentRole::Surgery))
            .collect(),
    )
    .expect("built-in Borromean rings are disjoint")
}

/// The `copy`-th of a family of parallel, pairwise unlinked axes.
///
/// Copies are translates by `(a, -a, 0)` with `a = k / (2k + 2)`, which stays
/// below 1/2 so each copy still passes through the interior of every ring.
pub fn borromean_axis(copy: u32) -> PolygonalCurve<Rational> {
    let base = curve(vec![pt(-10, -10, -10), pt(10, 10, 10), pt(10, 10, -10)]);
    let k = i64::from(copy);
    let a = q(k, 2 * k + 2);
    base.translated(&Point::new(a.clone(), -a, q(0, 1)))
}

/// A small square linking component `i` of [`borromean_rings`] once,
/// positively, and no other component.
pub fn borromean_meridian(i: usize) -> PolygonalCurve<Rational> {
    let e = q(1, 4);
    let (lo, hi) = (q(7, 4), q(9, 4));
    let z = q(0, 1);
    let m = |a: &Rational, b: &Rational| -> Vec<Point<Rational>> {
        match i {
            // Around the edge x = 2 of A, in the plane y = 0.
            0 => vec![
                Point::new(lo.clone(), z.clone(), -e.clone()),
                Point::new(hi.clone(), z.clone(), -e.clone()),
                Point::new(hi.clone(), z.clone(), e.clone()),
                Point::new(lo.clone(), z.clone(), e.clone()),
            ],
            // Around the edge y = 2 of B, in the plane z = 0.
            1 => vec![
                Point::new(-e.clone(), a.clone(), z.clone()),
                Point::new(-e.clone(), b.clone(), z.clone()),
                Point::new(e.clone(), b.clone(), z.clone()),
                Point::new(e.clone(), a.clone(), z.clone()),
            ],
            // Around the edge z = 2 of C, in the plane x = 0.
            2 => vec![
                Point::new(z.clone(), -e.clone(), a.clone()),
                Point::new(z.clone(), -e.clone(), b.clone()),
                Point::new(z.clone(), e.clone(), b.clone()),
                Point::new(z.clone(), e.clone(), a.clone()),
            ],
            _ => panic!("the Borromean rings have three components"),
        }
    };
    let mut vertices = m(&lo, &hi);
    vertices.reverse();
    curve(vertices)
}
