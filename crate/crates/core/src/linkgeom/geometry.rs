use num_traits::Zero;

use crate::scalar::FieldScalar;

/// A point or vector in 3-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<S>(pub [S; 3]);

impl<S: FieldScalar> Point<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Point([x, y, z])
    }

    pub fn from_i64s(x: i64, y: i64, z: i64) -> Self {
        let c = |v| S::from_i64(v).expect("small integers are representable");
        Point([c(x), c(y), c(z)])
    }

    pub fn add(&self, o: &Self) -> Self {
        Point(std::array::from_fn(|i| self.0[i].clone() + o.0[i].clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point(std::array::from_fn(|i| self.0[i].clone() - o.0[i].clone()))
    }

    pub fn dot(&self, o: &Self) -> S {
        (0..3).fold(S::zero(), |acc, i| acc + self.0[i].clone() * o.0[i].clone())
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        Point([
            a1.clone() * b2.clone() - a2.clone() * b1.clone(),
            a2.clone() * b0.clone() - a0.clone() * b2.clone(),
            a0.clone() * b1.clone() - a1.clone() * b0.clone(),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// `det[a; b; c]`, the scalar triple product.
pub(crate) fn det3<S: FieldScalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>) -> S {
    a.dot(&b.cross(c))
}

/// `0 <= num/den <= 1` for `den != 0`, without dividing.
fn in_unit_interval<S: FieldScalar>(num: &S, den: &S) -> bool {
    if den > &S::zero() {
        num >= &S::zero() && num <= den
    } else {
        num <= &S::zero() && num >= den
    }
}

/// Whether closed segments `[a0, a1]` and `[b0, b1]` share a point.
pub(crate) fn segments_intersect<S: FieldScalar>(
    a0: &Point<S>,
    a1: &Point<S>,
    b0: &Point<S>,
    b1: &Point<S>,
) -> bool {
    let u = a1.sub(a0);
    let v = b1.sub(b0);
    let w = b0.sub(a0);
    if !det3(&u, &v, &w).is_zero() {
        return false;
    }
    let n = u.cross(&v);
    if !n.is_zero() {
        // a0 + s u = b0 + t v inside the common plane.
        let nn = n.dot(&n);
        let s = w.cross(&v).dot(&n);
        let t = w.cross(&u).dot(&n);
        return in_unit_interval(&s, &nn) && in_unit_interval(&t, &nn);
    }
    if !w.cross(&u).is_zero() {
        return false;
    }
    // Collinear: compare the intervals of projections onto u.
    let uu = u.dot(&u);
    let (p, q) = (w.dot(&u), b1.sub(a0).dot(&u));
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    hi >= S::zero() && lo <= uu
}

/// Whether segments `p -> shared` and `shared -> q` overlap beyond `shared`.
pub(crate) fn folds_back<S: FieldScalar>(p: &Point<S>, shared: &Point<S>, q: &Point<S>) -> bool {
    let u = shared.sub(p);
    let v = q.sub(shared);
    u.cross(&v).is_zero() && u.dot(&v) < S::zero()
}
