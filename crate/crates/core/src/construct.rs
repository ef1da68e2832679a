//! Construction pipelines on top of [`crate::gompfsum`]: the hypothesis gate
//! for summing along a Lagrangian torus, recipe synthesis, exhaustive sign
//! enumeration, the multi-prime sign solver, and the lower bound on the number
//! of deformation classes coming from divisibility of `c1`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::fourman::{build_t4, EmbeddedTorus, FourManifold, TorusKind};
use crate::gompfsum::{
    form_divisibility, perform_recipe, sum_c1, FormClass, Gluing, Sign, SumError, SumRecipe,
};
use crate::intlat::{divisibility_bounds, gcd_content, rank, IntVector, LatticeError};
use crate::scalar::IntegerScalar;

/// Default cap on the number of sign assignments evaluated exhaustively.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("n must exceed 2, got {0}")]
    InvalidN(u64),
    #[error("no tori given")]
    NoTori,
    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("enumeration too large: {flippable} flippable copies exceed the cap of {cap} assignments")]
    EnumerationTooLarge { flippable: usize, cap: u64 },
    #[error("no primes given")]
    NoPrimes,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} repeated")]
    RepeatedPrime(u64),
    #[error("product of primes overflows")]
    Overflow,
    #[error("no sign sum realises divisibility {0}")]
    NoSolution(u64),
    #[error("forms live on different manifolds: {0} and {1}")]
    MixedManifolds(String, String),
    #[error(transparent)]
    Sum(#[from] SumError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCondition {
    pub passed: bool,
    pub rank: usize,
    pub count: usize,
    /// The declared sum torus has class `sum_i [T_i]`.
    pub sum_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KindCondition {
    pub passed: bool,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCondition<T> {
    pub passed: bool,
    pub n: u64,
    /// Divisibility of `[T_1]`; `None` when the report is not exact.
    pub d: Option<T>,
    pub c1_divisible_by_n: bool,
    /// `None` when `d` is indeterminate.
    pub n_divides_2d: Option<bool>,
}

impl<T> DivisibilityCondition<T> {
    pub fn indeterminate(&self) -> bool {
        self.n_divides_2d.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport<T> {
    pub condition1: SpanCondition,
    pub condition2: KindCondition,
    pub condition3: DivisibilityCondition<T>,
    pub overall: bool,
}

/// Checks the three hypotheses for summing `x` along `tori = [T_1, ..., T_r]`
/// and `n - 1` parallel copies of `sum`, whose class must be `sum_i [T_i]`.
///
/// `T_1` must be Lagrangian. For `i > 1` a symplectic torus passes, and so
/// does a Lagrangian one with nonzero class, since a homologically essential
/// Lagrangian can be perturbed to be symplectic; the report records which
/// happened. Disjointness of the embeddings is taken as declared.
pub fn check_hypotheses<T: IntegerScalar>(
    x: &FourManifold<T>,
    tori: &[EmbeddedTorus<T>],
    sum: &EmbeddedTorus<T>,
    n: u64,
) -> Result<HypothesisReport<T>, ConstructError> {
    if n <= 2 {
        return Err(ConstructError::InvalidN(n));
    }
    let first = tori.first().ok_or(ConstructError::NoTori)?;
    for t in tori.iter().chain(std::iter::once(sum)) {
        if t.klass.len() != x.rank() {
            return Err(SumError::ClassLength(t.label.clone()).into());
        }
    }

    let classes: Vec<IntVector<T>> = tori.iter().map(|t| t.klass.clone()).collect();
    let r = rank(&classes)?;
    let total = classes
        .iter()
        .fold(IntVector::zeros(x.rank()), |acc, c| &acc + c);
    let sum_matches = total == sum.klass;
    let condition1 = SpanCondition {
        passed: r == tori.len() && r > 1 && sum_matches,
        rank: r,
        count: tori.len(),
        sum_matches,
    };

    let mut reasons = Vec::new();
    let mut kinds_ok = true;
    if first.kind != TorusKind::Lagrangian {
        kinds_ok = false;
        reasons.push(format!("{} (T_1) is not Lagrangian", first.label));
    }
    for t in &tori[1..] {
        match t.kind {
            TorusKind::Symplectic => {}
            TorusKind::Lagrangian if !t.klass.is_zero() => {
                reasons.push(format!("{} is Lagrangian; perturbed to be symplectic", t.label));
            }
            TorusKind::Lagrangian => {
                kinds_ok = false;
                reasons.push(format!("{} is Lagrangian and null-homologous", t.label));
            }
        }
    }
    if sum.kind != TorusKind::Symplectic {
        kinds_ok = false;
        reasons.push(format!("sum torus {} is not symplectic", sum.label));
    }
    let condition2 = KindCondition {
        passed: kinds_ok,
        reasons,
    };

    let n_t = T::from_u64(n).ok_or(ConstructError::Overflow)?;
    let c1_divisible_by_n = gcd_content(&x.c1).is_multiple_of(&n_t);
    let duals: Vec<IntVector<T>> = tori
        .iter()
        .chain(std::iter::once(sum))
        .filter_map(|t| t.dual.clone())
        .collect();
    let report = divisibility_bounds(&first.klass, &x.pairing, &duals)?;
    let d = report.exact_value().cloned();
    let two = T::one() + T::one();
    let n_divides_2d = d.as_ref().map(|d| (two * d.clone()).is_multiple_of(&n_t));
    let condition3 = DivisibilityCondition {
        passed: c1_divisible_by_n && n_divides_2d == Some(false),
        n,
        d,
        c1_divisible_by_n,
        n_divides_2d,
    };

    let overall = condition1.passed && condition2.passed && condition3.passed;
    Ok(HypothesisReport {
        condition1,
        condition2,
        condition3,
        overall,
    })
}

/// One copy along each `T_i` and `n - 1` parallel copies along `sum`, all
/// glued positively.
pub fn build_theorem_recipe<T: IntegerScalar>(
    x: &FourManifold<T>,
    tori: &[EmbeddedTorus<T>],
    sum: &EmbeddedTorus<T>,
    n: u64,
) -> Result<SumRecipe<T>, ConstructError> {
    let report = check_hypotheses(x, tori, sum, n)?;
    if !report.overall {
        return Err(ConstructError::HypothesesFail(describe_failures(&report)));
    }
    let mut gluings: Vec<Gluing> = tori.iter().map(|t| Gluing::positive(t.label.clone(), 1)).collect();
    gluings.push(Gluing::positive(sum.label.clone(), (n - 1) as usize));
    let mut all = tori.to_vec();
    all.push(sum.clone());
    let recipe = SumRecipe {
        base: x.clone(),
        tori: all,
        gluings,
    };
    recipe.validate()?;
    Ok(recipe)
}

fn describe_failures<T>(report: &HypothesisReport<T>) -> String {
    let mut out = Vec::new();
    if !report.condition1.passed {
        out.push(format!(
            "tori span rank {} of {} (need r > 1), sum class {}",
            report.condition1.rank,
            report.condition1.count,
            if report.condition1.sum_matches { "matches" } else { "does not match" }
        ));
    }
    if !report.condition2.passed {
        out.push(report.condition2.reasons.join("; "));
    }
    let c3 = &report.condition3;
    if !c3.passed {
        out.push(match c3.n_divides_2d {
            None => "divisibility of T_1 indeterminate".to_string(),
            Some(true) => format!("{} divides 2d", c3.n),
            Some(false) => format!("c1 not divisible by {}", c3.n),
        });
    }
    out.join("; ")
}

fn t4_torus<T: IntegerScalar>(tori: &[EmbeddedTorus<T>], label: &str) -> EmbeddedTorus<T> {
    tori.iter()
        .find(|t| t.label == label)
        .cloned()
        .expect("built-in torus present")
}

/// The 4-torus summed along `T_z` (as `T_1`), `T_x`, `T_y` and `n - 1`
/// parallel copies of `T_w`. For `n = 3` this is five copies of E(1).
pub fn t4_theorem_recipe<T: IntegerScalar>(n: u64) -> Result<SumRecipe<T>, ConstructError> {
    let (t4, tori) = build_t4::<T>();
    let ordered: Vec<EmbeddedTorus<T>> = ["T_z", "T_x", "T_y"]
        .iter()
        .map(|l| t4_torus(&tori, l))
        .collect();
    build_theorem_recipe(&t4, &ordered, &t4_torus(&tori, "T_w"), n)
}

/// The 4-torus summed once along each of `T_x`, `T_y`, `T_z`, `T_w`.
pub fn mcmullen_taubes_recipe<T: IntegerScalar>() -> SumRecipe<T> {
    let (t4, tori) = build_t4::<T>();
    SumRecipe {
        base: t4,
        tori,
        gluings: ["T_x", "T_y", "T_z", "T_w"]
            .iter()
            .map(|l| Gluing::positive(*l, 1))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest number of assignments evaluated exhaustively.
    pub cap: u64,
    /// Sample `cap` assignments when the space is larger instead of failing.
    pub sample: bool,
    pub seed: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            sample: false,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult<T> {
    pub manifold: FourManifold<T>,
    /// One form per distinct `c1`, in order of first appearance.
    pub forms: Vec<FormClass<T>>,
    pub distinct_divisibilities: BTreeSet<T>,
    pub pi0_lower_bound: usize,
    /// Indices into `forms` whose divisibility report is not exact.
    pub inexact: Vec<usize>,
    pub flippable: usize,
    pub evaluated: u64,
    pub exhaustive: bool,
}

impl<T> EnumerationResult<T> {
    /// Several Chern classes, but divisibility cannot tell them apart.
    pub fn inconclusive(&self) -> bool {
        self.forms.len() > 1 && self.pi0_lower_bound <= 1
    }
}

/// Evaluates the recipe under every orientation choice on copies glued along
/// Lagrangian tori and collects the distinct Chern classes.
pub fn enumerate_forms<T: IntegerScalar>(
    recipe: &SumRecipe<T>,
    options: &EnumerationOptions,
) -> Result<EnumerationResult<T>, ConstructError> {
    let (manifold, _) = perform_recipe(recipe)?;
    let flippable = recipe.flippable_positions();
    let k = flippable.len();
    let space = if k < 64 { Some(1u64 << k) } else { None };
    let exhaustive = space.is_some_and(|s| s <= options.cap);

    let assignments: Vec<Vec<bool>> = if exhaustive {
        (0..space.unwrap_or(1))
            .map(|mask| (0..k).map(|j| mask >> j & 1 == 1).collect())
            .collect()
    } else if options.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut out = vec![vec![false; k]];
        out.extend((1..options.cap).map(|_| (0..k).map(|_| rng.gen::<bool>()).collect()));
        out
    } else {
        return Err(ConstructError::EnumerationTooLarge {
            flippable: k,
            cap: options.cap,
        });
    };

    let base_signs = recipe.signs_flat();
    let evaluated: Vec<(Vec<Sign>, IntVector<T>)> = assignments
        .par_iter()
        .map(|flips| {
            let mut signs = base_signs.clone();
            for (j, &pos) in flippable.iter().enumerate() {
                signs[pos] = if flips[j] { Sign::Negative } else { Sign::Positive };
            }
            let r = recipe.with_signs_flat(&signs)?;
            let c1 = sum_c1(&r.base.c1, &r.gluings, &r.tori)?;
            Ok((signs, c1))
        })
        .collect::<Result<_, SumError>>()?;

    let mut seen = BTreeSet::new();
    let mut forms = Vec::new();
    for (signs, c1) in evaluated.iter() {
        if seen.insert(c1.clone()) {
            forms.push(FormClass {
                manifold: manifold.name.clone(),
                signs_flat: signs.clone(),
                c1: c1.clone(),
                divisibility: form_divisibility(&manifold, &recipe.tori, c1)?,
            });
        }
    }
    let inexact = forms
        .iter()
        .enumerate()
        .filter(|(_, f)| f.divisibility.exact_value().is_none())
        .map(|(i, _)| i)
        .collect();
    let distinct_divisibilities: BTreeSet<T> = forms
        .iter()
        .filter_map(|f| f.divisibility.exact_value().cloned())
        .collect();
    Ok(EnumerationResult {
        manifold,
        pi0_lower_bound: distinct_divisibilities.len(),
        distinct_divisibilities,
        forms,
        inexact,
        flippable: k,
        evaluated: evaluated.len() as u64,
        exhaustive,
    })
}

/// Number of distinct exact divisibilities of `c1` among forms on one
/// manifold. Divisibility of `c1` is preserved by diffeomorphism and by
/// deformation, so forms with different values are inequivalent.
pub fn pi0_lower_bound<T: IntegerScalar>(forms: &[FormClass<T>]) -> Result<usize, ConstructError> {
    if let Some(first) = forms.first() {
        if let Some(other) = forms.iter().find(|f| f.manifold != first.manifold) {
            return Err(ConstructError::MixedManifolds(
                first.manifold.clone(),
                other.manifold.clone(),
            ));
        }
    }
    let values: BTreeSet<&T> = forms
        .iter()
        .filter_map(|f| f.divisibility.exact_value())
        .collect();
    Ok(values.len())
}

/// Sign assignment realising divisibility exactly `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSolution<T> {
    pub prime: u64,
    /// Number of positive minus negative copies along `T_z`.
    pub sign_sum: i64,
    pub signs: Vec<Sign>,
    pub form: FormClass<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSolution<T> {
    pub n: u64,
    /// Parallel copies of `T_z` in the recipe.
    pub lagrangian_copies: usize,
    pub recipe: SumRecipe<T>,
    pub solutions: Vec<PrimeSolution<T>>,
}

fn is_odd_prime(p: u64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Sign sum `s` over copies of `T_z` for which `gcd(n, n - 1 + s) = p`,
/// preferring the smallest `|n - 1 + s|` and searching `|s| <= n - 2`.
fn search_sign_sum(n: u64, p: u64) -> Option<i64> {
    let n = n as i64;
    let bound = n - 2;
    (1..=2 * n)
        .flat_map(|g| [g, -g])
        .map(|g| g - (n - 1))
        .filter(|s| s.abs() <= bound.max(1))
        .find(|&s| (n - 1 + s).gcd(&n) == p as i64)
}

/// Realises each odd prime `p_i` of `n = p_1 ... p_N` as the exact divisibility
/// of `c1` for one sign assignment on a single summed manifold.
///
/// The manifold is the 4-torus summed once along `T_x` and `T_y`, along
/// `n - 1` parallel copies of `T_w`, and along `k` parallel copies of the
/// Lagrangian `T_z`. With `s` the sign sum over the `T_z` copies,
/// `c1 = (-n, -n, -(n - 1 + s))` on `(T_x, T_y, T_z)`, so its divisibility is
/// `gcd(n, n - 1 + s)`.
pub fn solve_signs<T: IntegerScalar>(primes: &[u64]) -> Result<SignSolution<T>, ConstructError> {
    if primes.is_empty() {
        return Err(ConstructError::NoPrimes);
    }
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !is_odd_prime(p) {
            return Err(ConstructError::NotOddPrime(p));
        }
        if !seen.insert(p) {
            return Err(ConstructError::RepeatedPrime(p));
        }
    }
    let n = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or(ConstructError::Overflow)?;
    let sums: Vec<i64> = primes
        .iter()
        .map(|&p| search_sign_sum(n, p).ok_or(ConstructError::NoSolution(p)))
        .collect::<Result<_, _>>()?;
    // All n - 1 + s are odd multiples of odd primes, so every s is odd and
    // k = max |s| has the right parity for each.
    let k = sums.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(1).max(1);

    let (t4, tori) = build_t4::<T>();
    let recipe = SumRecipe {
        base: t4,
        tori,
        gluings: vec![
            Gluing::positive("T_x", 1),
            Gluing::positive("T_y", 1),
            Gluing::positive("T_z", k),
            Gluing::positive("T_w", (n - 1) as usize),
        ],
    };
    recipe.validate()?;
    let (manifold, _) = perform_recipe(&recipe)?;

    let mut solutions = Vec::new();
    for (&p, &s) in primes.iter().zip(&sums) {
        let negative = (k as i64 - s) / 2;
        let mut signs = recipe.signs_flat();
        for sign in signs.iter_mut().skip(2).take(negative as usize) {
            *sign = Sign::Negative;
        }
        let (_, form) = perform_recipe(&recipe.with_signs_flat(&signs)?)?;
        let p_t = T::from_u64(p).ok_or(ConstructError::Overflow)?;
        let divisibility = form.divisibility.exact_value().cloned();
        let others_clear = primes.iter().filter(|&&q| q != p).all(|&q| {
            divisibility
                .as_ref()
                .is_some_and(|d| !d.is_multiple_of(&T::from_u64(q).expect("prime fits")))
        });
        if divisibility.as_ref() != Some(&p_t) || !others_clear {
            return Err(ConstructError::NoSolution(p));
        }
        debug_assert_eq!(form.manifold, manifold.name);
        solutions.push(PrimeSolution {
            prime: p,
            sign_sum: s,
            signs,
            form,
        });
    }
    Ok(SignSolution {
        n,
        lagrangian_copies: k,
        recipe,
        solutions,
    })
}

/// Divisibility of `c1` of the summed manifold for sign sum `s` over the
/// Lagrangian copies in [`solve_signs`], computed by direct search: the
/// largest `m` dividing every coordinate of `(-n, -n, -(n - 1 + s))`.
pub fn brute_force_divisibility(n: i64, s: i64) -> i64 {
    let coords = [n, n, n - 1 + s];
    let bound = coords.iter().map(|c| c.abs()).max().unwrap_or(0);
    (1..=bound)
        .rev()
        .find(|m| coords.iter().all(|c| c % m == 0))
        .unwrap_or(0)
}

/// Groups forms by divisibility: value to the indices of forms attaining it.
pub fn forms_by_divisibility<T: IntegerScalar>(forms: &[FormClass<T>]) -> BTreeMap<T, Vec<usize>> {
    let mut out: BTreeMap<T, Vec<usize>> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        if let Some(d) = f.divisibility.exact_value() {
            out.entry(d.clone()).or_default().push(i);
        }
    }
    out
}
