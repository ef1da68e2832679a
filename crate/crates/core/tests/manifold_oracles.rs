//! The 4-torus and E(1) records against models built from scratch: the
//! exterior algebra of Z^4 for the torus, and CP^2 blown up nine times for E(1).

use fibresum_core::fourman::{build_e1, build_t4, validate, TorusKind};
use fibresum_core::intlat::IntVector;
use fibresum_core::Int;

/// Basis 2-vectors `e_i ^ e_j` with `i < j` over coordinates `x, y, z, t`.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

type Bivector = [i64; 6];

fn wedge(i: usize, j: usize) -> Bivector {
    let mut out = [0; 6];
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let k = PAIRS.iter().position(|&p| p == (a, b)).unwrap();
    out[k] = s;
    out
}

fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Coefficient of `alpha ^ beta` on `x ^ y ^ z ^ t`.
fn intersect(alpha: &Bivector, beta: &Bivector) -> i64 {
    let mut total = 0;
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        for (l, &(c, d)) in PAIRS.iter().enumerate() {
            total += alpha[k] * beta[l] * perm_sign([a, b, c, d]);
        }
    }
    total
}

/// `dx ^ dt + dy ^ dz` evaluated on a bivector.
fn omega(v: &Bivector) -> i64 {
    let mut f = [0; 6];
    f[2] = 1;
    f[3] = 1;
    v.iter().zip(f).map(|(a, b)| a * b).sum()
}

fn add(a: Bivector, b: Bivector) -> Bivector {
    std::array::from_fn(|k| a[k] + b[k])
}

/// The tracked basis `T_x, T_y, T_z, U_x, U_y, U_z` as bivectors.
fn t4_basis() -> Vec<Bivector> {
    let (x, y, z, t) = (0, 1, 2, 3);
    vec![wedge(x, t), wedge(y, t), wedge(z, t), wedge(y, z), wedge(z, x), wedge(x, y)]
}

fn coords(v: &IntVector<Int>) -> Vec<i64> {
    v.iter().map(|c| i64::try_from(c).unwrap()).collect()
}

fn from_coords(c: &[i64]) -> Bivector {
    t4_basis()
        .iter()
        .zip(c)
        .fold([0; 6], |acc, (b, &k)| add(acc, b.map(|e| e * k)))
}

#[test]
fn t4_pairing_matches_exterior_algebra() {
    let (t4, _) = build_t4::<Int>();
    let basis = t4_basis();
    for i in 0..6 {
        for j in 0..6 {
            let a = IntVector::unit(6, i);
            let b = IntVector::unit(6, j);
            assert_eq!(
                t4.pair(&a, &b),
                Some(Int::from(intersect(&basis[i], &basis[j]))),
                "{} . {}",
                t4.basis[i],
                t4.basis[j]
            );
        }
    }
    assert_eq!((t4.euler, t4.signature, t4.b1, t4.b2), (0, 0, Some(4), Some(6)));
    assert!(t4.c1.is_zero());
}

#[test]
fn t4_torus_kinds_match_the_form() {
    let (t4, tori) = build_t4::<Int>();
    assert!(validate(&t4, &tori).is_empty());
    let (x, y, z, t) = (0, 1, 2, 3);
    let diagonal = add(add(wedge(x, t), wedge(y, t)), wedge(z, t));
    let expected = [
        ("T_x", wedge(x, t)),
        ("T_y", wedge(y, t)),
        ("T_z", wedge(z, t)),
        ("T_w", diagonal),
    ];
    for (label, bv) in expected {
        let torus = tori.iter().find(|t| t.label == label).unwrap();
        assert_eq!(from_coords(&coords(&torus.klass)), bv, "{label}");
        assert_eq!(intersect(&bv, &bv), 0, "{label} square");
        let kind = if omega(&bv) != 0 { TorusKind::Symplectic } else { TorusKind::Lagrangian };
        assert_eq!(torus.kind, kind, "{label}");
        let dual = from_coords(&coords(torus.dual.as_ref().unwrap()));
        assert_eq!(intersect(&bv, &dual), 1, "{label} dual");
    }
}

/// `CP^2 # 9 (-CP^2)` with basis `H, E_1, ..., E_9`.
fn blowup_pairing(a: &[i64; 10], b: &[i64; 10]) -> i64 {
    a[0] * b[0] - (1..10).map(|i| a[i] * b[i]).sum::<i64>()
}

#[test]
fn e1_matches_nine_point_blowup() {
    let (e1, fibre) = build_e1::<Int>();
    // Euler characteristic and signature add over connected sums.
    let (e, s) = (1..=9).fold((3i64, 1i64), |(e, s), _| (e + 3 - 2, s - 1));
    assert_eq!((e1.euler, e1.signature, e1.b2), (e, s, Some(10)));

    let f: [i64; 10] = [3, -1, -1, -1, -1, -1, -1, -1, -1, -1];
    let mut sect = [0; 10];
    sect[9] = 1;
    let model = [f, sect];
    for i in 0..2 {
        for j in 0..2 {
            let got = e1.pair(&IntVector::unit(2, i), &IntVector::unit(2, j));
            assert_eq!(got, Some(Int::from(blowup_pairing(&model[i], &model[j]))));
        }
    }
    // c1 = 3H - sum E_i is the fibre class.
    assert_eq!(coords(&e1.c1), vec![1, 0]);
    assert_eq!(blowup_pairing(&f, &f), 2 * e + 3 * s);
    assert_eq!(coords(&e1.conjugate().c1), vec![-1, 0]);
    assert_eq!(coords(&fibre.klass), vec![1, 0]);
    assert!(validate(&e1, &[fibre]).is_empty());
}
