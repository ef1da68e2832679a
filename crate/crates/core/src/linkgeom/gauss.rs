use std::f64::consts::PI;

use num_traits::ToPrimitive;

use super::{LinkError, Point, PolygonalCurve};
use crate::scalar::FieldScalar;

/// Maximum distance of the Gauss sum from the integer it certifies.
pub const GAUSS_INTEGER_TOLERANCE: f64 = 1e-6;
/// Curves closer than this are rejected as ill-conditioned.
pub const GAUSS_MIN_SEPARATION: f64 = 1e-9;

type V = [f64; 3];

fn to_f64<S: FieldScalar + ToPrimitive>(p: &Point<S>) -> V {
    std::array::from_fn(|i| p.0[i].to_f64().expect("coordinate representable as f64"))
}

fn sub(a: V, b: V) -> V {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: V, b: V) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V, b: V) -> V {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: V) -> V {
    let n = dot(a, a).sqrt();
    if n == 0.0 {
        [0.0; 3]
    } else {
        [a[0] / n, a[1] / n, a[2] / n]
    }
}

fn clamped_asin(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).asin()
}

/// Signed solid angle subtended by the quadrilateral of segment pair
/// `p1 -> p2`, `p3 -> p4`, divided by `4 pi`.
fn segment_pair(p1: V, p2: V, p3: V, p4: V) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let n1 = unit(cross(r13, r14));
    let n2 = unit(cross(r14, r24));
    let n3 = unit(cross(r24, r23));
    let n4 = unit(cross(r23, r13));
    let omega = clamped_asin(dot(n1, n2))
        + clamped_asin(dot(n2, n3))
        + clamped_asin(dot(n3, n4))
        + clamped_asin(dot(n4, n1));
    let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    omega * orient.signum() / (4.0 * PI)
}

/// Distance between segments `[p0, p1]` and `[q0, q1]`.
fn segment_distance(p0: V, p1: V, q0: V, q1: V) -> f64 {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    let f = dot(d2, r);
    let c = dot(d1, r);
    let b = dot(d1, d2);
    let denom = a * e - b * b;
    let mut s = if denom > 1e-300 {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let cp = [p0[0] + d1[0] * s, p0[1] + d1[1] * s, p0[2] + d1[2] * s];
    let cq = [q0[0] + d2[0] * t, q0[1] + d2[1] * t, q0[2] + d2[2] * t];
    let g = sub(cp, cq);
    dot(g, g).sqrt()
}

/// Gauss linking integral of two closed polygons, summed exactly per segment
/// pair as signed solid angles, in a fixed summation order.
pub fn linking_number_gauss<S: FieldScalar + ToPrimitive>(
    a: &PolygonalCurve<S>,
    b: &PolygonalCurve<S>,
) -> Result<f64, LinkError> {
    let sa: Vec<(V, V)> = a.segments().map(|(x, y)| (to_f64(x), to_f64(y))).collect();
    let sb: Vec<(V, V)> = b.segments().map(|(x, y)| (to_f64(x), to_f64(y))).collect();
    let mut min_dist = f64::INFINITY;
    let mut total = 0.0;
    for &(p1, p2) in &sa {
        for &(p3, p4) in &sb {
            min_dist = min_dist.min(segment_distance(p1, p2, p3, p4));
            total += segment_pair(p1, p2, p3, p4);
        }
    }
    if min_dist < GAUSS_MIN_SEPARATION {
        return Err(LinkError::IllConditioned(min_dist));
    }
    Ok(total)
}

/// The integer within `GAUSS_INTEGER_TOLERANCE` of `value`.
pub fn nearest_integer(value: f64) -> Result<i64, LinkError> {
    let r = value.round();
    if (value - r).abs() <= GAUSS_INTEGER_TOLERANCE {
        Ok(r as i64)
    } else {
        Err(LinkError::NotNearInteger(value))
    }
}
