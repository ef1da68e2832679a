//! Executes the configured tasks in order and assembles the report.

use fibresum_core::construct::{
    check_hypotheses, enumerate_forms, pi0_lower_bound, solve_signs, ConstructError,
    EnumerationOptions,
};
use fibresum_core::fourman::validate;
use fibresum_core::gompfsum::{c1_trace, check_c1_identities, perform_recipe};
use fibresum_core::linkgeom::{
    derive_torus_relation, h1_coordinates, linking_number_crossings_seeded, linking_number_gauss,
    Point, GAUSS_INTEGER_TOLERANCE,
};
use fibresum_core::{Int, Rational};

use crate::config::{LinkingSpec, NamedRecipe, RunConfig, Task};
use crate::report::{
    float_string, int_strings, sign_string, CheckSection, EnumerationSection, FormSection,
    GluingSection, HypothesesSection, LinkingSection, ManifoldSection, PairSection, PrimeSection,
    RecipeSection, Report, SolveSection, TraceSection, TraceTerm,
};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Success = 0,
    /// Invalid input, or a construction whose hypotheses do not hold.
    ValidationFailure = 2,
    /// A consistency check on computed data failed.
    Inconsistency = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub report: Report,
    pub status: ExitStatus,
}

enum TaskError {
    Validation(String),
    Inconsistency(String),
}

impl From<ConstructError> for TaskError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::NoSolution(_) => TaskError::Inconsistency(e.to_string()),
            other => TaskError::Validation(other.to_string()),
        }
    }
}

impl From<fibresum_core::gompfsum::SumError> for TaskError {
    fn from(e: fibresum_core::gompfsum::SumError) -> Self {
        TaskError::Validation(e.to_string())
    }
}

impl From<fibresum_core::linkgeom::LinkError> for TaskError {
    fn from(e: fibresum_core::linkgeom::LinkError) -> Self {
        TaskError::Validation(e.to_string())
    }
}

/// Runs every task of `config` in order, stopping at the first task error.
/// The report always contains whatever was computed before the error.
pub fn run(config: &RunConfig) -> RunOutcome {
    let names: Vec<String> = config.tasks.iter().map(|t| t.name().to_string()).collect();
    let mut report = Report::new(config.seed, &names);
    let mut status = ExitStatus::Success;
    for &task in &config.tasks {
        let result = match task {
            Task::Verify => verify(config, &mut report),
            Task::Build => build(config, &mut report),
            Task::Enumerate => enumerate(config, &mut report),
            Task::Solve => solve(config, &mut report),
            Task::Linking => linking(config, &mut report),
        };
        if let Err(e) = result {
            let (s, msg) = match e {
                TaskError::Validation(m) => (ExitStatus::ValidationFailure, m),
                TaskError::Inconsistency(m) => (ExitStatus::Inconsistency, m),
            };
            report.errors.push(format!("{task}: {msg}"));
            status = status.max(s);
            break;
        }
    }
    if report.checks.iter().any(CheckSection::failed) {
        status = status.max(ExitStatus::Inconsistency);
    }
    RunOutcome { report, status }
}

fn selected(config: &RunConfig) -> Result<&NamedRecipe, TaskError> {
    config.selected_recipe().ok_or_else(|| {
        TaskError::Validation(if config.recipes.is_empty() {
            "no recipe defined".into()
        } else {
            "several recipes defined; choose one with --recipe or default_recipe".into()
        })
    })
}

fn record_recipe(report: &mut Report, named: &NamedRecipe) {
    if report.recipe.is_some() {
        return;
    }
    let r = &named.recipe;
    report.recipe = Some(RecipeSection {
        name: named.name.clone(),
        base: r.base.name.clone(),
        total_copies: r.total_copies().to_string(),
        gluings: r
            .gluings
            .iter()
            .map(|g| GluingSection {
                torus: g.torus.clone(),
                copies: g.copies.to_string(),
                signs: sign_string(&g.signs),
            })
            .collect(),
    });
}

fn verify(config: &RunConfig, report: &mut Report) -> Result<(), TaskError> {
    let recipe = config.selected_recipe();
    if config.hypotheses.is_none() && recipe.is_none() {
        return Err(TaskError::Validation("nothing to verify: no [hypotheses] and no recipe".into()));
    }
    if let Some(named) = recipe {
        record_recipe(report, named);
        let r = &named.recipe;
        let violations = validate(&r.base, &r.tori);
        report.checks.push(CheckSection::new(
            "verify",
            format!("{} record invariants", r.base.name),
            violations.is_empty(),
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
        let (z, form) = perform_recipe(r)?;
        let recomputed = form.recompute_c1(r)?;
        report.checks.push(CheckSection::new(
            "verify",
            "copy-by-copy c1 = closed form",
            recomputed == form.c1,
            format!("({})", int_strings(&form.c1).join(", ")),
        ));
        report
            .checks
            .extend(CheckSection::from_identities("verify", "", &check_c1_identities(&z, &form)));
        if report.manifold.is_none() {
            report.manifold = Some(ManifoldSection::from_manifold(&z));
        }
    }
    if let Some(h) = &config.hypotheses {
        let res = check_hypotheses(&h.manifold, &h.tori, &h.sum, h.n)?;
        let c3 = &res.condition3;
        report.hypotheses = Some(HypothesesSection {
            manifold: h.manifold.name.clone(),
            tori: h.tori.iter().map(|t| t.label.clone()).collect(),
            sum: h.sum.label.clone(),
            n: h.n.to_string(),
            span_passed: res.condition1.passed,
            span_rank: res.condition1.rank.to_string(),
            sum_class_matches: res.condition1.sum_matches,
            kinds_passed: res.condition2.passed,
            kind_notes: res.condition2.reasons.clone(),
            divisibility_passed: c3.passed,
            d: c3.d.as_ref().map(|d| d.to_string()),
            c1_divisible_by_n: c3.c1_divisible_by_n,
            n_divides_2d: c3.n_divides_2d,
            overall: res.overall,
        });
        if !res.overall {
            return Err(TaskError::Validation("hypotheses do not hold".into()));
        }
    }
    Ok(())
}

fn build(config: &RunConfig, report: &mut Report) -> Result<(), TaskError> {
    let named = selected(config)?;
    record_recipe(report, named);
    let r = &named.recipe;
    let (z, form) = perform_recipe(r)?;
    let trace = c1_trace(&r.base.c1, &r.gluings, &r.tori)?;
    report.trace = Some(TraceSection {
        base: int_strings(&trace.base),
        terms: trace
            .terms
            .iter()
            .map(|t| TraceTerm {
                torus: t.torus.clone(),
                sign: t.sign.symbol().to_string(),
                fibre: int_strings(&t.fibre),
                normal: int_strings(&t.normal),
            })
            .collect(),
        total: int_strings(&trace.total),
    });
    report.manifold = Some(ManifoldSection::from_manifold(&z));
    if report.forms.is_empty() {
        report.forms = vec![FormSection::from(&form)];
        report.divisibilities = form
            .divisibility
            .exact_value()
            .map(|d| vec![d.to_string()])
            .unwrap_or_default();
        report.pi0_lower_bound = Some(pi0_lower_bound(std::slice::from_ref(&form))?.to_string());
    }
    report
        .checks
        .extend(CheckSection::from_identities("build", "", &check_c1_identities(&z, &form)));
    Ok(())
}

fn options(config: &RunConfig) -> EnumerationOptions {
    EnumerationOptions {
        cap: config.enumeration_cap,
        sample: config.sample,
        seed: config.seed,
    }
}

fn enumerate(config: &RunConfig, report: &mut Report) -> Result<(), TaskError> {
    let named = selected(config)?;
    record_recipe(report, named);
    let e = enumerate_forms(&named.recipe, &options(config))?;
    report.manifold = Some(ManifoldSection::from_manifold(&e.manifold));
    report.forms = e.forms.iter().map(FormSection::from).collect();
    report.divisibilities = e.distinct_divisibilities.iter().map(|d| d.to_string()).collect();
    report.pi0_lower_bound = Some(e.pi0_lower_bound.to_string());
    report.enumeration = Some(EnumerationSection {
        flippable: e.flippable.to_string(),
        evaluated: e.evaluated.to_string(),
        exhaustive: e.exhaustive,
        inexact: e.inexact.iter().map(|i| i.to_string()).collect(),
        inconclusive: e.inconclusive(),
    });
    for (i, f) in e.forms.iter().enumerate() {
        let ids = check_c1_identities(&e.manifold, f);
        report
            .checks
            .extend(CheckSection::from_identities("enumerate", &format!("form {i}: "), &ids));
    }
    Ok(())
}

fn solve(config: &RunConfig, report: &mut Report) -> Result<(), TaskError> {
    let primes = config
        .primes
        .as_ref()
        .ok_or_else(|| TaskError::Validation("no primes given".into()))?;
    let s = solve_signs::<Int>(primes)?;
    let (z, _) = perform_recipe(&s.recipe)?;
    let mut section = SolveSection {
        primes: primes.iter().map(|p| p.to_string()).collect(),
        n: s.n.to_string(),
        lagrangian_copies: s.lagrangian_copies.to_string(),
        total_copies: s.recipe.total_copies().to_string(),
        manifold: z.name.clone(),
        solutions: Vec::new(),
        enumerated_divisibilities: Vec::new(),
        pi0_lower_bound: None,
        enumeration_note: None,
    };
    for p in &s.solutions {
        let d = p.form.divisibility.exact_value();
        report.checks.push(CheckSection::new(
            "solve",
            format!("divisibility exactly {}", p.prime),
            d == Some(&Int::from(p.prime)),
            format!("sign sum {}", p.sign_sum),
        ));
        report.checks.extend(CheckSection::from_identities(
            "solve",
            &format!("p = {}: ", p.prime),
            &check_c1_identities(&z, &p.form),
        ));
        section.solutions.push(PrimeSection {
            prime: p.prime.to_string(),
            sign_sum: p.sign_sum.to_string(),
            signs: sign_string(&p.signs),
            c1: int_strings(&p.form.c1),
            divisibility: (&p.form.divisibility).into(),
        });
    }
    match enumerate_forms(&s.recipe, &options(config)) {
        Ok(e) => {
            section.enumerated_divisibilities =
                e.distinct_divisibilities.iter().map(|d| d.to_string()).collect();
            section.pi0_lower_bound = Some(e.pi0_lower_bound.to_string());
            if !e.exhaustive {
                section.enumeration_note = Some(format!("sampled {} assignments", e.evaluated));
            }
            if report.manifold.is_none() {
                report.manifold = Some(ManifoldSection::from_manifold(&e.manifold));
                report.forms = e.forms.iter().map(FormSection::from).collect();
                report.divisibilities = section.enumerated_divisibilities.clone();
                report.pi0_lower_bound = section.pi0_lower_bound.clone();
                report.enumeration = Some(EnumerationSection {
                    flippable: e.flippable.to_string(),
                    evaluated: e.evaluated.to_string(),
                    exhaustive: e.exhaustive,
                    inexact: e.inexact.iter().map(|i| i.to_string()).collect(),
                    inconclusive: e.inconclusive(),
                });
            }
        }
        Err(ConstructError::EnumerationTooLarge { flippable, cap }) => {
            section.enumeration_note = Some(format!(
                "enumeration skipped: {flippable} flippable copies exceed the cap of {cap}; pass --sample to sample"
            ));
        }
        Err(e) => return Err(e.into()),
    }
    report.solve = Some(section);
    Ok(())
}

fn linking(config: &RunConfig, report: &mut Report) -> Result<(), TaskError> {
    let spec = config.linking.clone().unwrap_or_else(LinkingSpec::builtin_borromean);
    let direction = Point::<Rational>::from_i64s(3, 7, -11);
    let comps = spec.link.components();
    let agree = |a: &str, b: &str, crossing: i64, gauss: f64, report: &mut Report| {
        let ok = (gauss - crossing as f64).abs() <= GAUSS_INTEGER_TOLERANCE;
        report.checks.push(CheckSection::new(
            "linking",
            format!("lk({a}, {b}) crossing = gauss"),
            ok,
            format!("{crossing} vs {}", float_string(gauss)),
        ));
        PairSection {
            a: a.into(),
            b: b.into(),
            crossing: crossing.to_string(),
            gauss: float_string(gauss),
        }
    };
    let mut pairwise = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let c = linking_number_crossings_seeded(&comps[i], &comps[j], &direction, config.seed)?;
            let g = linking_number_gauss(&comps[i], &comps[j])?;
            pairwise.push(agree(&format!("K{i}"), &format!("K{j}"), c, g, report));
        }
    }
    let mut axis_pairs = Vec::new();
    let mut relation = None;
    if let Some(axis) = &spec.axis {
        for (i, k) in comps.iter().enumerate() {
            let c = linking_number_crossings_seeded(axis, k, &direction, config.seed)?;
            let g = linking_number_gauss(axis, k)?;
            axis_pairs.push(agree("axis", &format!("K{i}"), c, g, report));
        }
        let coords = if spec.link.surgery_components().count() == 3 {
            derive_torus_relation(&spec.link, axis, config.seed)?
        } else {
            h1_coordinates(axis, &spec.link, config.seed)?.0
        };
        relation = Some(int_strings(&coords));
    }
    report.linking = Some(LinkingSection {
        source: spec.source.clone(),
        components: comps.len().to_string(),
        pairwise,
        axis: axis_pairs,
        relation,
    });
    Ok(())
}
