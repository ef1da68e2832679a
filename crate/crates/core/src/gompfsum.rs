//! Fibre sums with copies of (E(1), F) at the level of invariants.
//!
//! Gluing a copy of E(1) along a torus `T` adds 12 to the Euler
//! characteristic (the removed neighbourhoods have Euler characteristic 0)
//! and -8 to the signature (Novikov additivity across the 3-torus
//! boundary). For the Chern class, a copy glued with symplectic orientation
//! sign `e` contributes `c1(E(1); e w0) - 2 e [T = F] = e[F] - 2e[T]`, and
//! with `[F] = [T]` in the sum this is `-e[T]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::fourman::{EmbeddedTorus, FourManifold, TorusKind};
use crate::intlat::{divisibility_bounds, DivisibilityReport, IntVector, LatticeError, PairingEntry};
use crate::scalar::IntegerScalar;

/// Euler characteristic of E(1).
pub const E1_EULER: i64 = 12;
/// Signature of E(1).
pub const E1_SIGNATURE: i64 = -8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("gluing references undeclared torus {0}")]
    UnknownTorus(String),
    #[error("gluing along {torus}: {signs} signs for {copies} copies")]
    SignCount {
        torus: String,
        copies: usize,
        signs: usize,
    },
    #[error("gluing along {0} has zero copies")]
    ZeroCopies(String),
    #[error("orientation not flippable: torus {0} is symplectic")]
    OrientationNotFlippable(String),
    #[error("torus {torus} has no parallel copies, but {copies} copies are glued")]
    NoParallelCopies { torus: String, copies: usize },
    #[error("torus {0}: class length does not match the lattice")]
    ClassLength(String),
    #[error("expected {expected} signs, found {found}")]
    AssignmentLength { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Agreement (`Positive`) or disagreement of the symplectic orientation of a
/// glued torus with its fixed orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value<T: IntegerScalar>(self) -> T {
        match self {
            Sign::Positive => T::one(),
            Sign::Negative => -T::one(),
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `copies` parallel copies of one torus, each summed with a fresh (E(1), F).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub torus: String,
    pub copies: usize,
    pub signs: Vec<Sign>,
}

impl Gluing {
    pub fn positive(torus: impl Into<String>, copies: usize) -> Self {
        Gluing {
            torus: torus.into(),
            copies,
            signs: vec![Sign::Positive; copies],
        }
    }

    pub fn with_signs(torus: impl Into<String>, signs: Vec<Sign>) -> Self {
        Gluing {
            torus: torus.into(),
            copies: signs.len(),
            signs,
        }
    }
}

fn lookup<'a, T>(tori: &'a [EmbeddedTorus<T>], label: &str) -> Result<&'a EmbeddedTorus<T>, SumError> {
    tori.iter()
        .find(|t| t.label == label)
        .ok_or_else(|| SumError::UnknownTorus(label.to_string()))
}

/// Checks every gluing against the torus table.
pub fn validate_gluings<T: IntegerScalar>(
    rank: usize,
    gluings: &[Gluing],
    tori: &[EmbeddedTorus<T>],
) -> Result<(), SumError> {
    let mut per_torus: BTreeMap<&str, usize> = BTreeMap::new();
    for g in gluings {
        let t = lookup(tori, &g.torus)?;
        if t.klass.len() != rank {
            return Err(SumError::ClassLength(t.label.clone()));
        }
        if g.copies == 0 {
            return Err(SumError::ZeroCopies(g.torus.clone()));
        }
        if g.signs.len() != g.copies {
            return Err(SumError::SignCount {
                torus: g.torus.clone(),
                copies: g.copies,
                signs: g.signs.len(),
            });
        }
        if t.kind == TorusKind::Symplectic && g.signs.contains(&Sign::Negative) {
            return Err(SumError::OrientationNotFlippable(g.torus.clone()));
        }
        *per_torus.entry(g.torus.as_str()).or_default() += g.copies;
    }
    for (label, copies) in per_torus {
        if copies > 1 && !lookup(tori, label)?.parallel_copies_available {
            return Err(SumError::NoParallelCopies {
                torus: label.to_string(),
                copies,
            });
        }
    }
    Ok(())
}

/// A base manifold, its torus table, and the copies of E(1) to glue in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRecipe<T> {
    pub base: FourManifold<T>,
    pub tori: Vec<EmbeddedTorus<T>>,
    pub gluings: Vec<Gluing>,
}

impl<T: IntegerScalar> SumRecipe<T> {
    pub fn validate(&self) -> Result<(), SumError> {
        validate_gluings(self.base.rank(), &self.gluings, &self.tori)
    }

    pub fn torus(&self, label: &str) -> Option<&EmbeddedTorus<T>> {
        self.tori.iter().find(|t| t.label == label)
    }

    pub fn total_copies(&self) -> usize {
        self.gluings.iter().map(|g| g.copies).sum()
    }

    /// Signs of all copies in gluing order.
    pub fn signs_flat(&self) -> Vec<Sign> {
        self.gluings.iter().flat_map(|g| g.signs.iter().copied()).collect()
    }

    /// Positions in [`Self::signs_flat`] of copies glued along Lagrangian tori.
    pub fn flippable_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pos = 0;
        for g in &self.gluings {
            let lagrangian = self
                .torus(&g.torus)
                .is_some_and(|t| t.kind == TorusKind::Lagrangian);
            if lagrangian {
                out.extend(pos..pos + g.copies);
            }
            pos += g.copies;
        }
        out
    }

    /// The same recipe with every copy's sign replaced.
    pub fn with_signs_flat(&self, signs: &[Sign]) -> Result<Self, SumError> {
        let expected = self.total_copies();
        if signs.len() != expected {
            return Err(SumError::AssignmentLength {
                expected,
                found: signs.len(),
            });
        }
        let mut rest = signs;
        let gluings = self
            .gluings
            .iter()
            .map(|g| {
                let (mine, tail) = rest.split_at(g.copies);
                rest = tail;
                Gluing::with_signs(g.torus.clone(), mine.to_vec())
            })
            .collect();
        Ok(SumRecipe {
            gluings,
            ..self.clone()
        })
    }
}

/// Contribution of one glued copy to the first Chern class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyTerm<T> {
    pub torus: String,
    pub sign: Sign,
    /// `c1(E(1); sign * w0) = sign * [F]`, with `[F]` read as `[T]`.
    pub fibre: IntVector<T>,
    /// `-2 sign [T]`; the sign reverses when the torus is glued negatively.
    pub normal: IntVector<T>,
}

impl<T: IntegerScalar> CopyTerm<T> {
    pub fn net(&self) -> IntVector<T> {
        &self.fibre + &self.normal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Trace<T> {
    pub base: IntVector<T>,
    pub terms: Vec<CopyTerm<T>>,
    pub total: IntVector<T>,
}

/// Copy-by-copy evaluation of the Chern class of the sum.
pub fn c1_trace<T: IntegerScalar>(
    c1_base: &IntVector<T>,
    gluings: &[Gluing],
    tori: &[EmbeddedTorus<T>],
) -> Result<C1Trace<T>, SumError> {
    validate_gluings(c1_base.len(), gluings, tori)?;
    let two = T::one() + T::one();
    let mut terms = Vec::new();
    let mut total = c1_base.clone();
    for g in gluings {
        let klass = &lookup(tori, &g.torus)?.klass;
        for &sign in &g.signs {
            let eps: T = sign.value();
            let term = CopyTerm {
                torus: g.torus.clone(),
                sign,
                fibre: klass.scale(&eps),
                normal: klass.scale(&(-(two.clone() * eps))),
            };
            total = &total + &term.net();
            terms.push(term);
        }
    }
    Ok(C1Trace {
        base: c1_base.clone(),
        terms,
        total,
    })
}

/// First Chern class of the sum for the signs recorded in `gluings`.
pub fn sum_c1<T: IntegerScalar>(
    c1_base: &IntVector<T>,
    gluings: &[Gluing],
    tori: &[EmbeddedTorus<T>],
) -> Result<IntVector<T>, SumError> {
    Ok(c1_trace(c1_base, gluings, tori)?.total)
}

/// `c1_base - sum_copies sign * [T]`, grouped by torus.
pub fn closed_form_c1<T: IntegerScalar>(
    c1_base: &IntVector<T>,
    gluings: &[Gluing],
    tori: &[EmbeddedTorus<T>],
) -> Result<IntVector<T>, SumError> {
    let mut sign_sums: BTreeMap<&str, T> = BTreeMap::new();
    for g in gluings {
        let s = g
            .signs
            .iter()
            .fold(T::zero(), |acc, sg| acc + sg.value::<T>());
        let e = sign_sums.entry(g.torus.as_str()).or_insert_with(T::zero);
        *e = e.clone() + s;
    }
    sign_sums.into_iter().try_fold(c1_base.clone(), |acc, (label, s)| {
        let klass = &lookup(tori, label)?.klass;
        Ok(&acc - &klass.scale(&s))
    })
}

fn record_name<T>(base: &FourManifold<T>, gluings: &[Gluing]) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for g in gluings {
        *counts.entry(g.torus.as_str()).or_default() += g.copies;
    }
    let parts: Vec<String> = counts
        .into_iter()
        .map(|(l, c)| if c == 1 { l.to_string() } else { format!("{l}x{c}") })
        .collect();
    format!("{} # E(1)[{}]", base.name, parts.join(", "))
}

/// The smooth record of the sum. It does not depend on the signs; its `c1`
/// is the one for all copies glued positively.
///
/// Tracked classes survive. A class meeting a glued torus is capped off by
/// sections of E(1) in that copy, so its self-pairing is only known modulo 2
/// (each cap adds an odd square) and its pairing with another capped class
/// through the same copy becomes unknown.
pub fn sum_invariants<T: IntegerScalar>(
    base: &FourManifold<T>,
    gluings: &[Gluing],
    tori: &[EmbeddedTorus<T>],
) -> Result<FourManifold<T>, SumError> {
    validate_gluings(base.rank(), gluings, tori)?;
    let copies: usize = gluings.iter().map(|g| g.copies).sum();
    if copies == 0 {
        return Ok(base.clone());
    }
    let k = copies as i64;
    let euler = base.euler + E1_EULER * k;
    let signature = base.signature + E1_SIGNATURE * k;

    let glued: BTreeSet<&str> = gluings.iter().map(|g| g.torus.as_str()).collect();
    let generators_glued = tori
        .iter()
        .filter(|t| t.pi1_generator)
        .all(|t| glued.contains(t.label.as_str()));
    let simply_connected =
        base.simply_connected || (base.pi1_normally_generated_by_tori && generators_glued);
    let (b1, b2) = if simply_connected {
        (Some(0), Some((euler - 2) as u64))
    } else {
        (None, None)
    };

    let rank = base.rank();
    let mut pairing = base.pairing.clone();
    // For each basis class: total algebraic intersection with glued copies
    // (None if undeclared), and which gluings it meets.
    let mut meets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rank];
    let mut crossings: Vec<Option<T>> = vec![Some(T::zero()); rank];
    for (gi, g) in gluings.iter().enumerate() {
        let klass = &lookup(tori, &g.torus)?.klass;
        let copies = T::from_usize(g.copies).expect("copy count fits");
        for i in 0..rank {
            match base.pair(&IntVector::unit(rank, i), klass) {
                Some(v) if v.is_zero() => {}
                Some(v) => {
                    meets[i].insert(gi);
                    crossings[i] = crossings[i].take().map(|c| c + v * copies.clone());
                }
                None => {
                    meets[i].insert(gi);
                    crossings[i] = None;
                }
            }
        }
    }
    for i in 0..rank {
        if meets[i].is_empty() {
            continue;
        }
        let entry = match (base.pairing.self_parity(i), &crossings[i]) {
            (Some(odd), Some(c)) => PairingEntry::Parity(odd ^ c.is_odd()),
            _ => PairingEntry::Unknown,
        };
        pairing.set(i, i, entry);
        for j in i + 1..rank {
            if !meets[i].is_disjoint(&meets[j]) {
                pairing.set(i, j, PairingEntry::Unknown);
            }
        }
    }

    let all_positive: Vec<Gluing> = gluings
        .iter()
        .map(|g| Gluing::positive(g.torus.clone(), g.copies))
        .collect();
    Ok(FourManifold {
        name: record_name(base, gluings),
        euler,
        signature,
        b1,
        b2,
        basis: base.basis.clone(),
        pairing,
        c1: sum_c1(&base.c1, &all_positive, tori)?,
        pi1_normally_generated_by_tori: base.pi1_normally_generated_by_tori,
        simply_connected,
    })
}

/// One symplectic structure on the sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClass<T> {
    /// Name of the smooth record the form lives on.
    pub manifold: String,
    pub signs_flat: Vec<Sign>,
    pub c1: IntVector<T>,
    pub divisibility: DivisibilityReport<T>,
}

impl<T: IntegerScalar> FormClass<T> {
    /// Recomputes `c1` from the signs through the closed form.
    pub fn recompute_c1(&self, recipe: &SumRecipe<T>) -> Result<IntVector<T>, SumError> {
        let r = recipe.with_signs_flat(&self.signs_flat)?;
        closed_form_c1(&r.base.c1, &r.gluings, &r.tori)
    }
}

/// Divisibility of `c1` on `z`, using the torus duals as extra test classes.
pub fn form_divisibility<T: IntegerScalar>(
    z: &FourManifold<T>,
    tori: &[EmbeddedTorus<T>],
    c1: &IntVector<T>,
) -> Result<DivisibilityReport<T>, SumError> {
    let duals: Vec<IntVector<T>> = tori.iter().filter_map(|t| t.dual.clone()).collect();
    Ok(divisibility_bounds(c1, &z.pairing, &duals)?)
}

/// The summed manifold together with the form selected by the recipe's signs.
pub fn perform_recipe<T: IntegerScalar>(
    recipe: &SumRecipe<T>,
) -> Result<(FourManifold<T>, FormClass<T>), SumError> {
    recipe.validate()?;
    let z = sum_invariants(&recipe.base, &recipe.gluings, &recipe.tori)?;
    let c1 = sum_c1(&recipe.base.c1, &recipe.gluings, &recipe.tori)?;
    let divisibility = form_divisibility(&z, &recipe.tori, &c1)?;
    let form = FormClass {
        manifold: z.name.clone(),
        signs_flat: recipe.signs_flat(),
        c1,
        divisibility,
    };
    Ok((z, form))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Passed => "pass",
            CheckStatus::Failed => "FAIL",
            CheckStatus::Skipped => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn is_consistent(&self) -> bool {
        self.count(CheckStatus::Failed) == 0
    }
}

/// Almost-complex constraints on `c1`: `c1^2 = 2e + 3 sigma`, and `c1` is
/// characteristic on every tracked basis class whose self-pairing parity is
/// declared. Checks needing undeclared pairings are reported as skipped.
pub fn check_c1_identities<T: IntegerScalar>(
    z: &FourManifold<T>,
    form: &FormClass<T>,
) -> IdentityReport {
    let mut checks = Vec::new();
    let target = 2 * z.euler + 3 * z.signature;
    checks.push(match z.pair(&form.c1, &form.c1) {
        Some(sq) => {
            let ok = sq.to_i64() == Some(target);
            IdentityCheck {
                name: "c1^2 = 2e + 3sigma".into(),
                status: if ok { CheckStatus::Passed } else { CheckStatus::Failed },
                detail: format!("c1^2 = {sq}, 2e + 3sigma = {target}"),
            }
        }
        None => IdentityCheck {
            name: "c1^2 = 2e + 3sigma".into(),
            status: CheckStatus::Skipped,
            detail: "pairing undeclared on the support of c1".into(),
        },
    });
    let rank = z.rank();
    for i in 0..rank {
        let name = format!("<c1, {0}> = {0}^2 mod 2", z.basis[i]);
        let x = IntVector::unit(rank, i);
        let check = match (z.pair(&form.c1, &x), z.pairing.self_parity(i)) {
            (Some(v), Some(odd)) => {
                let ok = v.is_odd() == odd;
                IdentityCheck {
                    name,
                    status: if ok { CheckStatus::Passed } else { CheckStatus::Failed },
                    detail: format!(
                        "<c1, {0}> = {v}, {0}^2 is {1}",
                        z.basis[i],
                        if odd { "odd" } else { "even" }
                    ),
                }
            }
            (None, _) => IdentityCheck {
                name,
                status: CheckStatus::Skipped,
                detail: "pairing with c1 undeclared".into(),
            },
            (_, None) => IdentityCheck {
                name,
                status: CheckStatus::Skipped,
                detail: "self-pairing undeclared".into(),
            },
        };
        checks.push(check);
    }
    IdentityReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourman::build_t4;
    use crate::Int;

    fn five_copy_gluings() -> Vec<Gluing> {
        vec![
            Gluing::positive("T_x", 1),
            Gluing::positive("T_y", 1),
            Gluing::positive("T_z", 1),
            Gluing::positive("T_w", 2),
        ]
    }

    fn t_part(v: &IntVector<Int>) -> Vec<i64> {
        v.iter().take(3).map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn five_copy_chern_classes() {
        let (t4, tori) = build_t4::<Int>();
        let mut g = five_copy_gluings();
        let plus = sum_c1(&t4.c1, &g, &tori).unwrap();
        assert_eq!(plus, IntVector::from_i64s(&[-3, -3, -3, 0, 0, 0]));
        g[2].signs = vec![Sign::Negative];
        let minus = sum_c1(&t4.c1, &g, &tori).unwrap();
        assert_eq!(t_part(&minus), vec![-3, -3, -1]);
        assert_eq!(closed_form_c1(&t4.c1, &g, &tori).unwrap(), minus);
    }

    #[test]
    fn empty_gluing_is_identity() {
        let (t4, tori) = build_t4::<Int>();
        assert_eq!(sum_c1(&t4.c1, &[], &tori).unwrap(), t4.c1);
        assert_eq!(sum_invariants(&t4, &[], &tori).unwrap(), t4);
    }

    #[test]
    fn symplectic_torus_cannot_flip() {
        let (t4, tori) = build_t4::<Int>();
        let g = vec![Gluing::with_signs("T_x", vec![Sign::Negative])];
        assert_eq!(
            sum_c1(&t4.c1, &g, &tori).unwrap_err(),
            SumError::OrientationNotFlippable("T_x".into())
        );
    }

    #[test]
    fn recipe_errors() {
        let (t4, mut tori) = build_t4::<Int>();
        let bad = |g: Vec<Gluing>, tori: &[EmbeddedTorus<Int>]| validate_gluings(6, &g, tori).unwrap_err();
        assert_eq!(bad(vec![Gluing::positive("T_q", 1)], &tori), SumError::UnknownTorus("T_q".into()));
        assert_eq!(bad(vec![Gluing::positive("T_x", 0)], &tori), SumError::ZeroCopies("T_x".into()));
        assert!(matches!(
            bad(vec![Gluing { torus: "T_y".into(), copies: 2, signs: vec![Sign::Positive] }], &tori),
            SumError::SignCount { .. }
        ));
        tori[0].parallel_copies_available = false;
        assert!(matches!(
            bad(vec![Gluing::positive("T_x", 1), Gluing::positive("T_x", 1)], &tori),
            SumError::NoParallelCopies { copies: 2, .. }
        ));
        let _ = t4;
    }

    #[test]
    fn five_copies_of_e1() {
        let (t4, tori) = build_t4::<Int>();
        let z = sum_invariants(&t4, &five_copy_gluings(), &tori).unwrap();
        assert_eq!((z.euler, z.signature, z.b1, z.b2), (60, -40, Some(0), Some(58)));
        assert!(z.simply_connected);
        // U_x meets T_x once and each T_w copy once: capped three times.
        assert_eq!(z.pairing.get(3, 3), &PairingEntry::Parity(true));
        assert_eq!(z.pairing.get(3, 4), &PairingEntry::Unknown);
        assert_eq!(z.pairing.get(0, 3), &PairingEntry::Known(Int::from(1)));
    }

    #[test]
    fn identities_hold_and_catch_mutation() {
        let (t4, tori) = build_t4::<Int>();
        let recipe = SumRecipe {
            base: t4,
            tori,
            gluings: five_copy_gluings(),
        };
        let (z, form) = perform_recipe(&recipe).unwrap();
        let report = check_c1_identities(&z, &form);
        assert!(report.is_consistent(), "{report:?}");
        assert_eq!(report.count(CheckStatus::Passed), 7);

        let mut bad = form.clone();
        bad.c1 = &bad.c1 + &IntVector::unit(6, 0);
        let report = check_c1_identities(&z, &bad);
        assert!(!report.is_consistent());
        assert!(report
            .checks
            .iter()
            .any(|c| c.status == CheckStatus::Failed && c.name.contains("U_x")));
    }

    #[test]
    fn record_is_shared_across_signs() {
        let (t4, tori) = build_t4::<Int>();
        let recipe = SumRecipe { base: t4, tori, gluings: five_copy_gluings() };
        let mut signs = recipe.signs_flat();
        signs[2] = Sign::Negative;
        let flipped = recipe.with_signs_flat(&signs).unwrap();
        let (z1, f1) = perform_recipe(&recipe).unwrap();
        let (z2, f2) = perform_recipe(&flipped).unwrap();
        assert_eq!(z1, z2);
        assert_eq!(f1.divisibility.exact_value(), Some(&Int::from(3)));
        assert_eq!(f2.divisibility.exact_value(), Some(&Int::from(1)));
        assert_eq!(f2.recompute_c1(&recipe).unwrap(), f2.c1);
        assert_eq!(recipe.flippable_positions(), vec![1, 2]);
    }
}
