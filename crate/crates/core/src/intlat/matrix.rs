use std::ops::Mul;



use super::{IntVector, LatticeError};
use crate::scalar::IntegerScalar;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntegerScalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LatticeError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(T::one());
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Some(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * a.get(k, k).clone()
                        - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Some(if sign_flip { -d } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replaces rows `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [&T; 4]) {
        for j in 0..self.cols {
            let x = self.get(a, j).clone();
            let y = self.get(b, j).clone();
            self.set(a, j, p.clone() * x.clone() + q.clone() * y.clone());
            self.set(b, j, r.clone() * x + s.clone() * y);
        }
    }

    /// Replaces columns `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [&T; 4]) {
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, p.clone() * x.clone() + q.clone() * y.clone());
            self.set(i, b, r.clone() * x + s.clone() * y);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: IntegerScalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// `diagonal = left * m * right` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    /// Invariant factors `d_1 | d_2 | ...`, nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: IntegerScalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> Matrix<T> {
        Matrix::diagonal(self.left.nrows(), self.right.ncols(), &self.diagonal)
    }
}

/// Bezout coefficients `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
fn bezout<T: IntegerScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        let s2 = s0 - q.clone() * s1.clone();
        let t2 = t0 - q * t1.clone();
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Unimodular 2x2 step `[p, q, r, s]` sending `(a, b)` to `(g, 0)`.
///
/// When `a | b` this is plain elimination, which leaves the pivot untouched;
/// otherwise the new pivot is `gcd(a, b)`, strictly smaller than `|a|`.
fn reduction<T: IntegerScalar>(a: &T, b: &T) -> [T; 4] {
    if b.is_multiple_of(a) {
        return [T::one(), T::zero(), -(b.clone() / a.clone()), T::one()];
    }
    let (g, x, y) = bezout(a, b);
    let (ag, bg) = (a.clone() / g.clone(), b.clone() / g);
    [x, y, -bg, ag]
}

/// Smith normal form with the unimodular transforms that produce it.
pub fn smith_normal_form<T: IntegerScalar>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let op = reduction(d.get(t, t), d.get(i, t));
                let op = [&op[0], &op[1], &op[2], &op[3]];
                d.combine_rows(t, i, op);
                left.combine_rows(t, i, op);
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let op = reduction(d.get(t, t), d.get(t, j));
                let op = [&op[0], &op[1], &op[2], &op[3]];
                d.combine_cols(t, j, op);
                right.combine_cols(t, j, op);
            }
            let column_clear = (t + 1..rows).all(|i| d.get(i, t).is_zero());
            if !column_clear {
                continue;
            }
            // Enforce d_t | every remaining entry by folding an offending row in.
            let piv = d.get(t, t).clone();
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&piv))
            });
            match offending {
                Some(i) => {
                    let one = T::one();
                    let zero = T::zero();
                    let op = [&one, &one, &zero, &one];
                    d.combine_rows(t, i, op);
                    left.combine_rows(t, i, op);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// Rank over the rationals of the span of `vectors`, by fraction-free elimination.
pub fn rank<T: IntegerScalar>(vectors: &[IntVector<T>]) -> Result<usize, LatticeError> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let cols = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != cols) {
        return Err(LatticeError::DimensionMismatch {
            expected: cols,
            found: bad.len(),
        });
    }
    let mut rows: Vec<Vec<T>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            for j in c..cols {
                let v = rows[i][j].clone() * a.clone() - rows[r][j].clone() * b.clone();
                rows[i][j] = v;
            }
            let g = rows[i].iter().fold(T::zero(), |g, x| g.gcd(x));
            if !g.is_zero() {
                rows[i].iter_mut().for_each(|x| *x = x.clone() / g.clone());
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_i64s(rows).unwrap()
    }

    fn check(f: &SmithForm<Int>, input: &Matrix<Int>) {
        assert_eq!(&(&f.left * input) * &f.right, f.diagonal_matrix());
        assert_eq!(f.left.determinant().unwrap().abs(), Int::from(1));
        assert_eq!(f.right.determinant().unwrap().abs(), Int::from(1));
        for w in f.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        assert!(f.diagonal.iter().all(|d| !d.is_negative()));
    }

    #[test]
    fn snf_examples() {
        for (input, want) in [
            (m(&[&[0, 1], &[1, 0]]), vec![1, 1]),
            (m(&[&[2, 0], &[0, 3]]), vec![1, 6]),
            (m(&[&[2, 0], &[0, 2]]), vec![2, 2]),
        ] {
            let f = smith_normal_form(&input);
            check(&f, &input);
            assert_eq!(f.diagonal, want.into_iter().map(Int::from).collect::<Vec<_>>());
        }
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let input = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f = smith_normal_form(&input);
        check(&f, &input);
        assert_eq!(f.diagonal, vec![Int::from(2), Int::from(6), Int::from(12)]);

        let wide = m(&[&[0, 0, 0], &[0, 0, 0]]);
        let f = smith_normal_form(&wide);
        check(&f, &wide);
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), Some(Int::from(-2)));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), Some(Int::from(-1)));
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant(),
            Some(Int::from(6))
        );
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).determinant(),
            Some(Int::from(0))
        );
        assert_eq!(m(&[&[1, 2]]).determinant(), None);
    }

    #[test]
    fn rank_examples() {
        let e = |c: &[i64]| IntVector::<Int>::from_i64s(c);
        assert_eq!(
            rank(&[e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1]), e(&[1, 1, 1])]).unwrap(),
            3
        );
        assert_eq!(rank::<Int>(&[]).unwrap(), 0);
        assert_eq!(rank(&[e(&[2, 4]), e(&[1, 2])]).unwrap(), 1);
        assert!(rank(&[e(&[1, 2]), e(&[1])]).is_err());
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Int>> {
        prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |raw| {
            Matrix::from_rows(
                raw.chunks(cols)
                    .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn snf_invariants(input in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
            let f = smith_normal_form(&input);
            check(&f, &input);
            let rows: Vec<_> = (0..input.nrows())
                .map(|i| IntVector::new(input.row(i).to_vec()))
                .collect();
            prop_assert_eq!(rank(&rows).unwrap(), f.rank());
        }

        #[test]
        fn snf_generic_over_machine_integers(input in matrix(3, 3)) {
            let small = Matrix::<i64>::from_rows(
                (0..3).map(|i| input.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
            ).unwrap();
            let a = smith_normal_form(&small).diagonal.into_iter().map(Int::from).collect::<Vec<_>>();
            prop_assert_eq!(a, smith_normal_form(&input).diagonal);
        }
    }
}
