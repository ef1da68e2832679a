use fibresum_core::intlat::{
    divisibility_bounds, rank, smith_normal_form, IntVector, Matrix, PairingMatrix,
};
use fibresum_core::{Int, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors: `D_k` is the gcd of all k x k minors.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .map(|k| {
            let mut g = 0;
            for rows in subsets(r, k) {
                for cols in subsets(c, k) {
                    let minor: Vec<Vec<i64>> =
                        rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                    g = gcd(g, det(&minor));
                }
            }
            g
        })
        .collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn to_i64(v: &Int) -> i64 {
    i64::try_from(v).unwrap()
}

/// Rank over the rationals by ordinary Gaussian elimination.
fn rational_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Rational::from_integer(Int::from(x))).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / rows[r][c].clone();
                for k in 0..cols {
                    let t = rows[r][k].clone() * f.clone();
                    rows[i][k] = rows[i][k].clone() - t;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn smith_diagonal_matches_determinantal_divisors(m in small_matrix()) {
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        let snf = smith_normal_form(&Matrix::<Int>::from_i64s(&rows).unwrap());
        let dk = determinantal_divisors(&m);
        let mut product = 1i64;
        for (k, d) in dk.iter().enumerate() {
            let diag = snf.diagonal.get(k).map(to_i64).unwrap_or(0);
            if *d == 0 {
                prop_assert_eq!(diag, 0);
            } else {
                product *= diag;
                prop_assert_eq!(product, *d);
            }
        }
    }

    #[test]
    fn rank_matches_rational_elimination(m in small_matrix()) {
        let vectors: Vec<IntVector<Int>> = m.iter().map(|r| IntVector::from_i64s(r)).collect();
        prop_assert_eq!(rank(&vectors).unwrap(), rational_rank(&m));
    }

    #[test]
    fn divisibility_matches_search(coords in prop::collection::vec(-40i64..=40, 4)) {
        let v = IntVector::<Int>::from_i64s(&coords);
        let report = divisibility_bounds(&v, &PairingMatrix::<Int>::hyperbolic(2), &[]).unwrap();
        let search = (1..=40).rev().find(|m| coords.iter().all(|c| c % m == 0));
        match search {
            _ if coords.iter().all(|&c| c == 0) => prop_assert!(report.is_undefined()),
            Some(m) => {
                // The hyperbolic form is unimodular, so the bounds meet.
                prop_assert_eq!(report.exact_value().map(to_i64), Some(m));
                prop_assert!(report.lower.is_positive());
            }
            None => unreachable!(),
        }
    }
}

#[test]
fn smith_example_table() {
    let snf = smith_normal_form(
        &Matrix::<Int>::from_i64s(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).unwrap(),
    );
    let diag: Vec<i64> = snf.diagonal.iter().map(to_i64).collect();
    assert_eq!(diag, vec![2, 6, 12]);
    assert_eq!(determinantal_divisors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 12, 144]);
}
