//! Closed polygonal links in 3-space with exact rational vertices.
//!
//! Linking numbers are computed two independent ways: by counting signed
//! crossings in a generic projection (exact), and by summing the Gauss
//! linking integral over segment pairs in floating point. The surgery
//! presentation of the 3-torus on the Borromean rings is built in, and
//! the homology coordinates of a loop are its linking numbers with the
//! surgery components.

mod builtin;
mod crossing;
mod gauss;
mod geometry;
mod parse;

pub use builtin::{borromean_axis, borromean_meridian, borromean_rings, hopf_link, split_link};
pub use crossing::{
    linking_number_crossings, linking_number_crossings_seeded, MAX_PROJECTION_ATTEMPTS,
};
pub use gauss::{linking_number_gauss, nearest_integer, GAUSS_INTEGER_TOLERANCE, GAUSS_MIN_SEPARATION};
pub use geometry::Point;
pub use parse::{parse_link_text, parse_rational};

use thiserror::Error;

use crate::intlat::IntVector;
use crate::scalar::FieldScalar;
use crate::Int;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkError {
    #[error("polygonal curve needs at least 3 vertices, found {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("curve is not embedded: segments {0} and {1} meet")]
    SelfIntersection(usize, usize),
    #[error("link not embedded: components {0} and {1} meet")]
    NotEmbedded(usize, usize),
    #[error("loop meets surgery component {0}")]
    LoopMeetsComponent(usize),
    #[error("no generic projection direction found after {0} attempts")]
    NoGenericDirection(usize),
    #[error("projection direction must be nonzero")]
    ZeroDirection,
    #[error("ill-conditioned: curves approach within {0:e}")]
    IllConditioned(f64),
    #[error("Gauss sum {0} is not within tolerance of an integer")]
    NotNearInteger(f64),
    #[error("expected {expected} surgery components, found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A closed polygonal curve; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalCurve<S> {
    vertices: Vec<Point<S>>,
}

impl<S: FieldScalar> PolygonalCurve<S> {
    /// Validates vertex count, distinct consecutive vertices and embeddedness.
    pub fn new(vertices: Vec<Point<S>>) -> Result<Self, LinkError> {
        let n = vertices.len();
        if n < 3 {
            return Err(LinkError::TooFewVertices(n));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(LinkError::RepeatedVertex(i, (i + 1) % n));
            }
        }
        let curve = PolygonalCurve { vertices };
        curve.check_embedded()?;
        Ok(curve)
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len()
    }

    /// Segment `i` as `(start, end)`.
    pub fn segment(&self, i: usize) -> (&Point<S>, &Point<S>) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point<S>, &Point<S>)> + '_ {
        (0..self.segment_count()).map(|i| self.segment(i))
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolygonalCurve { vertices }
    }

    pub fn translated(&self, offset: &Point<S>) -> Self {
        PolygonalCurve {
            vertices: self.vertices.iter().map(|v| v.add(offset)).collect(),
        }
    }

    /// True when no segment of `self` meets a segment of `other`.
    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.segments().all(|(a0, a1)| {
            other
                .segments()
                .all(|(b0, b1)| !geometry::segments_intersect(a0, a1, b0, b1))
        })
    }

    fn check_embedded(&self) -> Result<(), LinkError> {
        let n = self.segment_count();
        for i in 0..n {
            for j in i + 1..n {
                let (a0, a1) = self.segment(i);
                let (b0, b1) = self.segment(j);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let meets = if adjacent {
                    // Adjacent segments share exactly one endpoint unless they fold back.
                    let (shared, p, q) = if j == i + 1 { (a1, a0, b1) } else { (a0, a1, b0) };
                    geometry::folds_back(p, shared, q)
                } else {
                    geometry::segments_intersect(a0, a1, b0, b1)
                };
                if meets {
                    return Err(LinkError::SelfIntersection(i, j));
                }
            }
        }
        Ok(())
    }
}

/// How a component enters the surgery picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentRole {
    /// Zero-framed surgery component; its meridian is a homology generator.
    Surgery,
    Auxiliary,
}

/// Pairwise disjoint closed curves with roles.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalLink<S> {
    components: Vec<PolygonalCurve<S>>,
    roles: Vec<ComponentRole>,
}

impl<S: FieldScalar> PolygonalLink<S> {
    pub fn new(components: Vec<(PolygonalCurve<S>, ComponentRole)>) -> Result<Self, LinkError> {
        let (components, roles): (Vec<_>, Vec<_>) = components.into_iter().unzip();
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if !components[i].is_disjoint_from(&components[j]) {
                    return Err(LinkError::NotEmbedded(i, j));
                }
            }
        }
        Ok(PolygonalLink { components, roles })
    }

    /// A link whose components are all surgery components.
    pub fn surgery(components: Vec<PolygonalCurve<S>>) -> Result<Self, LinkError> {
        Self::new(
            components
                .into_iter()
                .map(|c| (c, ComponentRole::Surgery))
                .collect(),
        )
    }

    pub fn components(&self) -> &[PolygonalCurve<S>] {
        &self.components
    }

    pub fn roles(&self) -> &[ComponentRole] {
        &self.roles
    }

    pub fn surgery_components(&self) -> impl Iterator<Item = &PolygonalCurve<S>> + '_ {
        self.components
            .iter()
            .zip(&self.roles)
            .filter(|(_, r)| **r == ComponentRole::Surgery)
            .map(|(c, _)| c)
    }
}

/// Coordinates of a loop in the first homology of the surgered manifold,
/// in the basis of meridians of the surgery components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Coordinates(pub IntVector<Int>);

/// Linking numbers of `lp` with each surgery component, in component order.
pub fn h1_coordinates<S: FieldScalar>(
    lp: &PolygonalCurve<S>,
    link: &PolygonalLink<S>,
    seed: u64,
) -> Result<H1Coordinates, LinkError> {
    let dir = Point::new(S::from_i64(3).unwrap(), S::from_i64(7).unwrap(), S::from_i64(-11).unwrap());
    link.surgery_components()
        .enumerate()
        .map(|(i, c)| {
            if !lp.is_disjoint_from(c) {
                return Err(LinkError::LoopMeetsComponent(i));
            }
            linking_number_crossings_seeded(lp, c, &dir, seed).map(Int::from)
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|v| H1Coordinates(IntVector::new(v)))
}

/// Coefficients of the torus `axis x S^1` in the basis of the tori
/// `meridian_i x S^1`, read off from a three-component surgery presentation.
pub fn derive_torus_relation<S: FieldScalar>(
    link: &PolygonalLink<S>,
    axis: &PolygonalCurve<S>,
    seed: u64,
) -> Result<IntVector<Int>, LinkError> {
    let found = link.surgery_components().count();
    if found != 3 {
        return Err(LinkError::WrongComponentCount { expected: 3, found });
    }
    Ok(h1_coordinates(axis, link, seed)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(x: i64, y: i64, z: i64) -> Point<Rational> {
        Point::from_i64s(x, y, z)
    }

    #[test]
    fn curve_validation() {
        assert_eq!(
            PolygonalCurve::new(vec![p(0, 0, 0), p(1, 0, 0)]).unwrap_err(),
            LinkError::TooFewVertices(2)
        );
        assert_eq!(
            PolygonalCurve::new(vec![p(0, 0, 0), p(1, 0, 0), p(1, 0, 0)]).unwrap_err(),
            LinkError::RepeatedVertex(1, 2)
        );
        // Closing vertex coincides with the first.
        assert_eq!(
            PolygonalCurve::new(vec![p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 0)]).unwrap_err(),
            LinkError::RepeatedVertex(3, 0)
        );
        // Bow tie: segments 0 and 2 cross.
        assert!(matches!(
            PolygonalCurve::new(vec![p(0, 0, 0), p(2, 2, 0), p(2, 0, 0), p(0, 2, 0)]),
            Err(LinkError::SelfIntersection(_, _))
        ));
        // Degenerate triangle folding back on itself.
        assert!(matches!(
            PolygonalCurve::new(vec![p(0, 0, 0), p(2, 0, 0), p(1, 0, 0)]),
            Err(LinkError::SelfIntersection(_, _))
        ));
        assert!(PolygonalCurve::new(vec![p(0, 0, 0), p(1, 0, 0), p(0, 1, 0)]).is_ok());
    }

    #[test]
    fn link_rejects_touching_components() {
        let a = PolygonalCurve::new(vec![p(0, 0, 0), p(2, 0, 0), p(2, 2, 0), p(0, 2, 0)]).unwrap();
        let b = PolygonalCurve::new(vec![p(1, 1, -1), p(1, 1, 1), p(3, 1, 1)]).unwrap();
        assert_eq!(
            PolygonalLink::surgery(vec![a.clone(), a.translated(&p(0, 0, 5)), b]).unwrap_err(),
            LinkError::NotEmbedded(0, 2)
        );
        // Touching at a single vertex also counts.
        let c = PolygonalCurve::new(vec![p(2, 2, 0), p(3, 3, 0), p(3, 2, 1)]).unwrap();
        assert_eq!(
            PolygonalLink::surgery(vec![a, c]).unwrap_err(),
            LinkError::NotEmbedded(0, 1)
        );
    }
}
