//! The run report. Both output formats render this one structure, so they
//! carry the same numbers. Integers are exact decimal strings.

use std::fmt::Write as _;

use fibresum_core::gompfsum::{CheckStatus, IdentityReport, Sign};
use fibresum_core::intlat::{DivisibilityReport, IntVector};
use fibresum_core::{Form, Int, Manifold};
use serde::Serialize;

pub fn int_strings(v: &IntVector<Int>) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

pub fn sign_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

/// Fixed nine-decimal rendering with no negative zero.
pub fn float_string(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

#[derive(Serialize, Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub tool: String,
    pub seed: String,
    pub tasks: Vec<String>,
    pub recipe: Option<RecipeSection>,
    pub manifold: Option<ManifoldSection>,
    pub hypotheses: Option<HypothesesSection>,
    pub trace: Option<TraceSection>,
    pub forms: Vec<FormSection>,
    pub divisibilities: Vec<String>,
    pub pi0_lower_bound: Option<String>,
    pub enumeration: Option<EnumerationSection>,
    pub solve: Option<SolveSection>,
    pub linking: Option<LinkingSection>,
    pub checks: Vec<CheckSection>,
    pub errors: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GluingSection {
    pub torus: String,
    pub copies: String,
    pub signs: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct RecipeSection {
    pub name: String,
    pub base: String,
    pub total_copies: String,
    pub gluings: Vec<GluingSection>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct ManifoldSection {
    pub name: String,
    pub euler: String,
    pub signature: String,
    pub b1: Option<String>,
    pub b2: Option<String>,
    pub simply_connected: bool,
    pub basis: Vec<String>,
}

impl ManifoldSection {
    pub fn from_manifold(m: &Manifold) -> Self {
        ManifoldSection {
            name: m.name.clone(),
            euler: m.euler.to_string(),
            signature: m.signature.to_string(),
            b1: m.b1.map(|b| b.to_string()),
            b2: m.b2.map(|b| b.to_string()),
            simply_connected: m.simply_connected,
            basis: m.basis.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct HypothesesSection {
    pub manifold: String,
    pub tori: Vec<String>,
    pub sum: String,
    pub n: String,
    pub span_passed: bool,
    pub span_rank: String,
    pub sum_class_matches: bool,
    pub kinds_passed: bool,
    pub kind_notes: Vec<String>,
    pub divisibility_passed: bool,
    pub d: Option<String>,
    pub c1_divisible_by_n: bool,
    pub n_divides_2d: Option<bool>,
    pub overall: bool,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub torus: String,
    pub sign: String,
    pub fibre: Vec<String>,
    pub normal: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct TraceSection {
    pub base: Vec<String>,
    pub terms: Vec<TraceTerm>,
    pub total: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct DivisibilitySection {
    pub lower: String,
    pub upper: String,
    pub exact: bool,
}

impl From<&DivisibilityReport<Int>> for DivisibilitySection {
    fn from(d: &DivisibilityReport<Int>) -> Self {
        DivisibilitySection {
            lower: d.lower.to_string(),
            upper: d.upper.to_string(),
            exact: d.exact,
        }
    }
}

impl DivisibilitySection {
    fn describe(&self) -> String {
        if self.exact {
            format!("{} (exact)", self.lower)
        } else {
            format!("{}..{} (bounds)", self.lower, self.upper)
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FormSection {
    pub signs: String,
    pub c1: Vec<String>,
    pub divisibility: DivisibilitySection,
}

impl From<&Form> for FormSection {
    fn from(f: &Form) -> Self {
        FormSection {
            signs: sign_string(&f.signs_flat),
            c1: int_strings(&f.c1),
            divisibility: (&f.divisibility).into(),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSection {
    pub flippable: String,
    pub evaluated: String,
    pub exhaustive: bool,
    pub inexact: Vec<String>,
    pub inconclusive: bool,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct PrimeSection {
    pub prime: String,
    pub sign_sum: String,
    pub signs: String,
    pub c1: Vec<String>,
    pub divisibility: DivisibilitySection,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SolveSection {
    pub primes: Vec<String>,
    pub n: String,
    pub lagrangian_copies: String,
    pub total_copies: String,
    pub manifold: String,
    pub solutions: Vec<PrimeSection>,
    pub enumerated_divisibilities: Vec<String>,
    pub pi0_lower_bound: Option<String>,
    pub enumeration_note: Option<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct PairSection {
    pub a: String,
    pub b: String,
    pub crossing: String,
    pub gauss: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct LinkingSection {
    pub source: String,
    pub components: String,
    pub pairwise: Vec<PairSection>,
    pub axis: Vec<PairSection>,
    pub relation: Option<Vec<String>>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckSection {
    pub task: String,
    pub name: String,
    pub status: String,
    pub detail: String,
}

impl CheckSection {
    pub fn new(task: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckSection {
            task: task.into(),
            name: name.into(),
            status: if passed { CheckStatus::Passed } else { CheckStatus::Failed }.to_string(),
            detail: detail.into(),
        }
    }

    pub fn from_identities(task: &str, prefix: &str, report: &IdentityReport) -> Vec<Self> {
        report
            .checks
            .iter()
            .map(|c| CheckSection {
                task: task.into(),
                name: format!("{prefix}{}", c.name),
                status: c.status.to_string(),
                detail: c.detail.clone(),
            })
            .collect()
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Failed.to_string()
    }
}

impl Report {
    pub fn new(seed: u64, tasks: &[String]) -> Self {
        Report {
            tool: "fibresum".into(),
            seed: seed.to_string(),
            tasks: tasks.to_vec(),
            ..Report::default()
        }
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let o = &mut out;
        let _ = writeln!(o, "fibresum  seed {}  tasks {}", self.seed, self.tasks.join(", "));

        if let Some(r) = &self.recipe {
            heading(o, &format!("recipe {}", r.name));
            row(o, "base", &r.base);
            row(o, "copies of E(1)", &r.total_copies);
            for g in &r.gluings {
                let _ = writeln!(o, "  {:<8} x{:<4} {}", g.torus, g.copies, g.signs);
            }
        }
        if let Some(m) = &self.manifold {
            heading(o, "manifold");
            row(o, "name", &m.name);
            row(o, "e", &m.euler);
            row(o, "sigma", &m.signature);
            row(o, "b1", m.b1.as_deref().unwrap_or("-"));
            row(o, "b2", m.b2.as_deref().unwrap_or("-"));
            row(o, "simply connected", yes_no(m.simply_connected));
            row(o, "basis", &m.basis.join(" "));
        }
        if let Some(h) = &self.hypotheses {
            heading(o, "hypotheses");
            row(o, "manifold", &h.manifold);
            row(o, "tori", &format!("{} (sum {})", h.tori.join(" "), h.sum));
            row(o, "n", &h.n);
            row(
                o,
                "1: span",
                &format!(
                    "{}  rank {}, sum class {}",
                    pass(h.span_passed),
                    h.span_rank,
                    if h.sum_class_matches { "matches" } else { "differs" }
                ),
            );
            row(o, "2: kinds", pass(h.kinds_passed));
            for note in &h.kind_notes {
                let _ = writeln!(o, "  {:<20} {note}", "");
            }
            row(
                o,
                "3: divisibility",
                &format!(
                    "{}  d = {}, n | c1: {}, n | 2d: {}",
                    pass(h.divisibility_passed),
                    h.d.as_deref().unwrap_or("indeterminate"),
                    yes_no(h.c1_divisible_by_n),
                    h.n_divides_2d.map_or("indeterminate", yes_no)
                ),
            );
            row(o, "overall", pass(h.overall));
        }
        if let Some(t) = &self.trace {
            heading(o, "c1 trace");
            row(o, "base", &vector(&t.base));
            for term in &t.terms {
                let _ = writeln!(
                    o,
                    "  {:<6} {}  fibre {}  normal {}",
                    term.torus,
                    term.sign,
                    vector(&term.fibre),
                    vector(&term.normal)
                );
            }
            row(o, "total", &vector(&t.total));
        }
        if !self.forms.is_empty() {
            heading(o, "forms");
            let width = self.forms.iter().map(|f| f.signs.len()).max().unwrap_or(0).max(5);
            let _ = writeln!(o, "  {:>3}  {:<width$}  {:<28}  divisibility", "#", "signs", "c1");
            for (i, f) in self.forms.iter().enumerate() {
                let _ = writeln!(
                    o,
                    "  {:>3}  {:<width$}  {:<28}  {}",
                    i,
                    f.signs,
                    vector(&f.c1),
                    f.divisibility.describe()
                );
            }
        }
        if !self.divisibilities.is_empty() || self.pi0_lower_bound.is_some() {
            heading(o, "divisibilities");
            row(o, "distinct exact", &self.divisibilities.join(", "));
            row(o, "pi0 lower bound", self.pi0_lower_bound.as_deref().unwrap_or("-"));
        }
        if let Some(e) = &self.enumeration {
            heading(o, "enumeration");
            row(o, "flippable copies", &e.flippable);
            row(o, "assignments", &e.evaluated);
            row(o, "exhaustive", yes_no(e.exhaustive));
            if !e.inexact.is_empty() {
                row(o, "inexact forms", &e.inexact.join(", "));
            }
            if e.inconclusive {
                row(o, "note", "divisibility inconclusive: distinct c1 share one divisibility");
            }
        }
        if let Some(s) = &self.solve {
            heading(o, "solve");
            row(o, "primes", &s.primes.join(", "));
            row(o, "n", &s.n);
            row(o, "copies along T_z", &s.lagrangian_copies);
            row(o, "copies of E(1)", &s.total_copies);
            row(o, "manifold", &s.manifold);
            for p in &s.solutions {
                let _ = writeln!(
                    o,
                    "  p = {:<4} s = {:<5} c1 {}  divisibility {}  signs {}",
                    p.prime,
                    p.sign_sum,
                    vector(&p.c1),
                    p.divisibility.describe(),
                    p.signs
                );
            }
            row(o, "enumerated", &s.enumerated_divisibilities.join(", "));
            row(o, "pi0 lower bound", s.pi0_lower_bound.as_deref().unwrap_or("-"));
            if let Some(note) = &s.enumeration_note {
                row(o, "note", note);
            }
        }
        if let Some(l) = &self.linking {
            heading(o, "linking");
            row(o, "source", &l.source);
            row(o, "components", &l.components);
            for p in l.pairwise.iter().chain(&l.axis) {
                let _ = writeln!(o, "  lk({}, {}) = {:>3}   gauss {}", p.a, p.b, p.crossing, p.gauss);
            }
            if let Some(r) = &l.relation {
                row(o, "axis relation", &vector(r));
            }
        }
        if !self.checks.is_empty() {
            heading(o, "checks");
            for c in &self.checks {
                let _ = writeln!(o, "  {}  {:<10} {:<32} {}", c.status, c.task, c.name, c.detail);
            }
        }
        for e in &self.errors {
            let _ = writeln!(o, "error: {e}");
        }
        out
    }
}

fn heading(o: &mut String, title: &str) {
    let _ = writeln!(o, "\n== {title} ==");
}

fn row(o: &mut String, key: &str, value: &str) {
    let _ = writeln!(o, "  {key:<20} {value}");
}

fn vector(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}
