//! Run configuration: a TOML file with a task list, optional custom manifolds
//! and tori, named recipes, and per-task sections. Everything is resolved and
//! validated at load time.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fibresum_core::construct::{build_theorem_recipe, DEFAULT_ENUMERATION_CAP};
use fibresum_core::fourman::{build_e1, build_t4, validate, FourManifold, TorusKind};
use fibresum_core::gompfsum::{validate_gluings, Gluing, Sign, SumRecipe};
use fibresum_core::intlat::{IntVector, Pairing, PairingEntry, PartialPairing};
use fibresum_core::linkgeom::{borromean_axis, borromean_rings, parse_link_text};
use fibresum_core::{Curve, Int, Link, Manifold, Recipe, Torus};
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(String),
    #[error("line {line}, field `{field}`: {message}")]
    Invalid {
        line: usize,
        field: String,
        message: String,
    },
    #[error("{path}: {message}")]
    LinkFile { path: PathBuf, message: String },
    #[error("no tasks")]
    NoTasks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Verify,
    Build,
    Enumerate,
    Solve,
    Linking,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Verify => "verify",
            Task::Build => "build",
            Task::Enumerate => "enumerate",
            Task::Solve => "solve",
            Task::Linking => "linking",
        }
    }

    pub fn needs_recipe(self) -> bool {
        matches!(self, Task::Build | Task::Enumerate)
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verify" => Ok(Task::Verify),
            "build" => Ok(Task::Build),
            "enumerate" => Ok(Task::Enumerate),
            "solve" => Ok(Task::Solve),
            "linking" => Ok(Task::Linking),
            other => Err(format!("unknown task `{other}`")),
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    Machine,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "machine" => Ok(OutputFormat::Machine),
            other => Err(format!("unknown output format `{other}` (expected table or machine)")),
        }
    }
}

/// A manifold together with the tori declared on it.
#[derive(Clone, Debug)]
pub struct ManifoldEntry {
    pub manifold: Manifold,
    pub tori: Vec<Torus>,
}

#[derive(Clone, Debug)]
pub struct NamedRecipe {
    pub name: String,
    pub recipe: Recipe,
}

#[derive(Clone, Debug)]
pub struct HypothesesSpec {
    pub manifold: Manifold,
    pub tori: Vec<Torus>,
    pub sum: Torus,
    pub n: u64,
}

#[derive(Clone, Debug)]
pub struct LinkingSpec {
    pub source: String,
    pub link: Link,
    pub axis: Option<Curve>,
}

impl LinkingSpec {
    pub fn builtin_borromean() -> Self {
        LinkingSpec {
            source: "builtin borromean".into(),
            link: borromean_rings(),
            axis: Some(borromean_axis(0)),
        }
    }

    pub fn from_files(link: &Path, axis: Option<&Path>) -> Result<Self, ConfigError> {
        let curves = read_curves(link)?;
        let link_value = Link::surgery(curves).map_err(|e| ConfigError::LinkFile {
            path: link.to_path_buf(),
            message: e.to_string(),
        })?;
        let axis = axis.map(read_axis).transpose()?;
        Ok(LinkingSpec {
            source: link.display().to_string(),
            link: link_value,
            axis,
        })
    }
}

fn read_curves(path: &Path) -> Result<Vec<Curve>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_link_text(&text).map_err(|e| ConfigError::LinkFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn read_axis(path: &Path) -> Result<Curve, ConfigError> {
    let mut curves = read_curves(path)?;
    if curves.len() != 1 {
        return Err(ConfigError::LinkFile {
            path: path.to_path_buf(),
            message: format!("expected one curve, found {}", curves.len()),
        });
    }
    Ok(curves.remove(0))
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tasks: Vec<Task>,
    pub output: OutputFormat,
    pub seed: u64,
    pub enumeration_cap: u64,
    pub sample: bool,
    pub manifolds: BTreeMap<String, ManifoldEntry>,
    pub recipes: Vec<NamedRecipe>,
    pub default_recipe: Option<String>,
    pub hypotheses: Option<HypothesesSpec>,
    pub primes: Option<Vec<u64>>,
    pub linking: Option<LinkingSpec>,
}

impl RunConfig {
    /// A configuration with only the built-in manifolds and no tasks, for
    /// subcommands that need no file.
    pub fn builtin() -> Self {
        RunConfig {
            tasks: Vec::new(),
            output: OutputFormat::Table,
            seed: 0,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            sample: false,
            manifolds: builtin_manifolds(),
            recipes: Vec::new(),
            default_recipe: None,
            hypotheses: None,
            primes: None,
            linking: None,
        }
    }

    /// The recipe that recipe-based tasks act on.
    pub fn selected_recipe(&self) -> Option<&NamedRecipe> {
        match &self.default_recipe {
            Some(name) => self.recipes.iter().find(|r| &r.name == name),
            None if self.recipes.len() == 1 => self.recipes.first(),
            None => None,
        }
    }
}

fn builtin_manifolds() -> BTreeMap<String, ManifoldEntry> {
    let (t4, t4_tori) = build_t4::<Int>();
    let (e1, fibre) = build_e1::<Int>();
    [
        ManifoldEntry { manifold: t4, tori: t4_tori },
        ManifoldEntry { manifold: e1, tori: vec![fibre] },
    ]
    .into_iter()
    .map(|e| (e.manifold.name.clone(), e))
    .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInt {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    name: String,
    euler: i64,
    signature: i64,
    b1: Option<u64>,
    b2: Option<u64>,
    basis: Vec<String>,
    pairing: Vec<Vec<RawInt>>,
    c1: Vec<RawInt>,
    #[serde(default)]
    pi1_normally_generated_by_tori: bool,
    #[serde(default)]
    simply_connected: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    manifold: String,
    label: String,
    class: Vec<RawInt>,
    kind: String,
    dual: Option<Vec<RawInt>>,
    #[serde(default)]
    parallel: bool,
    #[serde(default)]
    pi1_generator: bool,
    #[serde(default)]
    complement_simply_connected: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGluing {
    torus: String,
    copies: Option<usize>,
    signs: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecipe {
    name: String,
    base: Option<String>,
    gluings: Option<Vec<Spanned<RawGluing>>>,
    #[serde(default)]
    theorem: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypotheses {
    manifold: String,
    tori: Vec<String>,
    sum: String,
    n: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolve {
    primes: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinking {
    link: Option<String>,
    axis: Option<String>,
    builtin: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    tasks: Option<Spanned<Vec<Spanned<String>>>>,
    #[serde(alias = "output")]
    output_format: Option<Spanned<String>>,
    seed: Option<u64>,
    enumeration_cap: Option<Spanned<u64>>,
    #[serde(default)]
    sample: bool,
    default_recipe: Option<Spanned<String>>,
    #[serde(default, alias = "manifolds")]
    manifold: Vec<Spanned<RawManifold>>,
    #[serde(default, alias = "tori")]
    torus: Vec<Spanned<RawTorus>>,
    #[serde(default, alias = "recipes")]
    recipe: Vec<Spanned<RawRecipe>>,
    hypotheses: Option<Spanned<RawHypotheses>>,
    solve: Option<Spanned<RawSolve>>,
    linking: Option<Spanned<RawLinking>>,
}

/// Turns byte offsets into line-numbered errors.
struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn err<T>(&self, span: &Spanned<T>, field: impl Into<String>, message: impl fmt::Display) -> ConfigError {
        ConfigError::Invalid {
            line: self.line(span.span().start),
            field: field.into(),
            message: message.to_string(),
        }
    }
}

fn to_int(raw: &RawInt) -> Result<Int, String> {
    match raw {
        RawInt::Int(v) => Ok(Int::from(*v)),
        RawInt::Text(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
    }
}

fn to_vector(raw: &[RawInt]) -> Result<IntVector<Int>, String> {
    raw.iter().map(to_int).collect::<Result<Vec<_>, _>>().map(IntVector::new)
}

fn to_entry(raw: &RawInt) -> Result<PairingEntry<Int>, String> {
    match raw {
        RawInt::Text(s) if s == "odd" => Ok(PairingEntry::Parity(true)),
        RawInt::Text(s) if s == "even" => Ok(PairingEntry::Parity(false)),
        RawInt::Text(s) if s == "?" => Ok(PairingEntry::Unknown),
        other => to_int(other).map(PairingEntry::Known),
    }
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, String> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(Sign::Positive),
            '-' => Ok(Sign::Negative),
            other => Err(format!("sign must be + or -, found {other:?}")),
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<TorusKind, String> {
    match s {
        "symplectic" => Ok(TorusKind::Symplectic),
        "lagrangian" => Ok(TorusKind::Lagrangian),
        other => Err(format!("kind must be symplectic or lagrangian, found {other:?}")),
    }
}

/// Reads and validates a configuration file. Relative link paths resolve
/// against the file's directory.
pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_config_str(&text, dir)
}

pub fn parse_config_str(text: &str, base_dir: &Path) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    let src = Source { text };

    let tasks_raw = raw.tasks.ok_or(ConfigError::NoTasks)?;
    if tasks_raw.get_ref().is_empty() {
        return Err(ConfigError::NoTasks);
    }
    let tasks = tasks_raw
        .get_ref()
        .iter()
        .map(|t| t.get_ref().parse::<Task>().map_err(|m| src.err(t, "tasks", m)))
        .collect::<Result<Vec<_>, _>>()?;

    let output = match &raw.output_format {
        Some(o) => o.get_ref().parse().map_err(|m| src.err(o, "output_format", m))?,
        None => OutputFormat::Table,
    };
    let enumeration_cap = match &raw.enumeration_cap {
        Some(c) if *c.get_ref() == 0 => return Err(src.err(c, "enumeration_cap", "must be positive")),
        Some(c) => *c.get_ref(),
        None => DEFAULT_ENUMERATION_CAP,
    };

    let mut manifolds = builtin_manifolds();
    for (i, m) in raw.manifold.iter().enumerate() {
        let field = format!("manifold[{i}]");
        let r = m.get_ref();
        if manifolds.contains_key(&r.name) {
            return Err(src.err(m, format!("{field}.name"), format!("manifold `{}` already defined", r.name)));
        }
        let rows = r
            .pairing
            .iter()
            .map(|row| row.iter().map(to_entry).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| src.err(m, format!("{field}.pairing"), e))?;
        let pairing = PartialPairing::new(rows).map_err(|e| src.err(m, format!("{field}.pairing"), e))?;
        let c1 = to_vector(&r.c1).map_err(|e| src.err(m, format!("{field}.c1"), e))?;
        if r.basis.len() != pairing.dim() || c1.len() != pairing.dim() {
            return Err(src.err(
                m,
                field,
                format!(
                    "basis has {} labels, pairing is {}x{0}, c1 has {} entries",
                    r.basis.len(),
                    pairing.dim(),
                    c1.len()
                ),
            ));
        }
        let manifold = FourManifold {
            name: r.name.clone(),
            euler: r.euler,
            signature: r.signature,
            b1: r.b1,
            b2: r.b2,
            basis: r.basis.clone(),
            pairing,
            c1,
            pi1_normally_generated_by_tori: r.pi1_normally_generated_by_tori,
            simply_connected: r.simply_connected,
        };
        manifolds.insert(r.name.clone(), ManifoldEntry { manifold, tori: Vec::new() });
    }

    for (i, t) in raw.torus.iter().enumerate() {
        let field = format!("torus[{i}]");
        let r = t.get_ref();
        let entry = manifolds.get_mut(&r.manifold).ok_or_else(|| {
            src.err(t, format!("{field}.manifold"), format!("unresolved reference `{}`", r.manifold))
        })?;
        if entry.tori.iter().any(|x| x.label == r.label) {
            return Err(src.err(t, format!("{field}.label"), format!("torus `{}` already declared", r.label)));
        }
        let klass = to_vector(&r.class).map_err(|e| src.err(t, format!("{field}.class"), e))?;
        let dual = r
            .dual
            .as_deref()
            .map(to_vector)
            .transpose()
            .map_err(|e| src.err(t, format!("{field}.dual"), e))?;
        let kind = parse_kind(&r.kind).map_err(|e| src.err(t, format!("{field}.kind"), e))?;
        let torus = Torus {
            label: r.label.clone(),
            klass,
            kind,
            dual,
            parallel_copies_available: r.parallel,
            pi1_generator: r.pi1_generator,
            complement_simply_connected: r.complement_simply_connected,
        };
        if let Some(v) = validate(&entry.manifold, std::slice::from_ref(&torus)).first() {
            return Err(src.err(t, field, v));
        }
        entry.tori.push(torus);
    }
    for m in &raw.manifold {
        let entry = &manifolds[&m.get_ref().name];
        if let Some(v) = validate(&entry.manifold, &[]).first() {
            return Err(src.err(m, format!("manifold `{}`", entry.manifold.name), v));
        }
    }

    let hypotheses = match &raw.hypotheses {
        None => None,
        Some(h) => {
            let r = h.get_ref();
            let entry = manifolds.get(&r.manifold).ok_or_else(|| {
                src.err(h, "hypotheses.manifold", format!("unresolved reference `{}`", r.manifold))
            })?;
            let find = |label: &str, field: &str| {
                entry
                    .tori
                    .iter()
                    .find(|t| t.label == label)
                    .cloned()
                    .ok_or_else(|| src.err(h, field, format!("unresolved reference `{label}`")))
            };
            let tori = r
                .tori
                .iter()
                .map(|l| find(l, "hypotheses.tori"))
                .collect::<Result<Vec<_>, _>>()?;
            if tori.is_empty() {
                return Err(src.err(h, "hypotheses.tori", "no tori given"));
            }
            if r.n <= 2 {
                return Err(src.err(h, "hypotheses.n", format!("n must exceed 2, got {}", r.n)));
            }
            Some(HypothesesSpec {
                manifold: entry.manifold.clone(),
                tori,
                sum: find(&r.sum, "hypotheses.sum")?,
                n: r.n,
            })
        }
    };

    let mut recipes: Vec<NamedRecipe> = Vec::new();
    for (i, rs) in raw.recipe.iter().enumerate() {
        let field = format!("recipe[{i}]");
        let r = rs.get_ref();
        if recipes.iter().any(|x| x.name == r.name) {
            return Err(src.err(rs, format!("{field}.name"), format!("recipe `{}` already defined", r.name)));
        }
        let recipe = if r.theorem {
            if r.gluings.is_some() || r.base.is_some() {
                return Err(src.err(rs, field, "a theorem recipe takes no base or gluings"));
            }
            let h = hypotheses
                .as_ref()
                .ok_or_else(|| src.err(rs, format!("{field}.theorem"), "needs a [hypotheses] section"))?;
            build_theorem_recipe(&h.manifold, &h.tori, &h.sum, h.n)
                .map_err(|e| src.err(rs, format!("{field}.theorem"), e))?
        } else {
            let base_name = r
                .base
                .as_ref()
                .ok_or_else(|| src.err(rs, format!("{field}.base"), "missing"))?;
            let entry = manifolds.get(base_name).ok_or_else(|| {
                src.err(rs, format!("{field}.base"), format!("unresolved reference `{base_name}`"))
            })?;
            let raw_gluings = r
                .gluings
                .as_ref()
                .ok_or_else(|| src.err(rs, format!("{field}.gluings"), "missing"))?;
            let mut gluings = Vec::new();
            for (j, g) in raw_gluings.iter().enumerate() {
                let gfield = format!("{field}.gluings[{j}]");
                let gr = g.get_ref();
                let signs = match &gr.signs {
                    Some(s) => parse_signs(s).map_err(|e| src.err(g, format!("{gfield}.signs"), e))?,
                    None => vec![Sign::Positive; gr.copies.unwrap_or(1)],
                };
                let gluing = Gluing {
                    torus: gr.torus.clone(),
                    copies: gr.copies.unwrap_or(signs.len()),
                    signs,
                };
                validate_gluings(entry.manifold.rank(), std::slice::from_ref(&gluing), &entry.tori)
                    .map_err(|e| src.err(g, gfield, e))?;
                gluings.push(gluing);
            }
            let recipe = SumRecipe {
                base: entry.manifold.clone(),
                tori: entry.tori.clone(),
                gluings,
            };
            recipe.validate().map_err(|e| src.err(rs, field, e))?;
            recipe
        };
        recipes.push(NamedRecipe {
            name: r.name.clone(),
            recipe,
        });
    }

    let default_recipe = match &raw.default_recipe {
        Some(d) if recipes.iter().all(|r| &r.name != d.get_ref()) => {
            return Err(src.err(d, "default_recipe", format!("unresolved reference `{}`", d.get_ref())));
        }
        Some(d) => Some(d.get_ref().clone()),
        None => None,
    };
    if default_recipe.is_none() && recipes.len() > 1 {
        if let Some(t) = tasks.iter().find(|t| t.needs_recipe()) {
            return Err(src.err(&tasks_raw, "default_recipe", format!("task `{t}` needs one recipe; several are defined")));
        }
    }
    if recipes.is_empty() {
        if let Some(t) = tasks.iter().find(|t| t.needs_recipe()) {
            return Err(src.err(&tasks_raw, "tasks", format!("task `{t}` needs a [[recipe]]")));
        }
    }

    let primes = raw.solve.as_ref().map(|s| s.get_ref().primes.clone());
    if tasks.contains(&Task::Solve) && primes.is_none() {
        return Err(src.err(&tasks_raw, "tasks", "task `solve` needs a [solve] section"));
    }

    let linking = match &raw.linking {
        None => None,
        Some(l) => {
            let r = l.get_ref();
            match (&r.builtin, &r.link) {
                (Some(b), None) if b == "borromean" && r.axis.is_none() => Some(LinkingSpec::builtin_borromean()),
                (Some(b), None) => {
                    return Err(src.err(l, "linking.builtin", format!("unknown built-in link {b:?} (or axis given)")))
                }
                (None, Some(link)) => {
                    let axis = r.axis.as_ref().map(|a| base_dir.join(a));
                    Some(LinkingSpec::from_files(&base_dir.join(link), axis.as_deref())?)
                }
                _ => return Err(src.err(l, "linking", "give exactly one of `link` or `builtin`")),
            }
        }
    };

    Ok(RunConfig {
        tasks,
        output,
        seed: raw.seed.unwrap_or(0),
        enumeration_cap,
        sample: raw.sample,
        manifolds,
        recipes,
        default_recipe,
        hypotheses,
        primes,
        linking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        parse_config_str(text, Path::new("."))
    }

    #[test]
    fn empty_file_has_no_tasks() {
        assert!(matches!(parse(""), Err(ConfigError::NoTasks)));
        assert!(matches!(parse("tasks = []"), Err(ConfigError::NoTasks)));
    }

    #[test]
    fn gluing_defaults() {
        let cfg = parse(
            r#"
tasks = ["build"]
[[recipe]]
name = "r"
base = "T4"
gluings = [{ torus = "T_z", signs = "+-" }, { torus = "T_w", copies = 3 }]
"#,
        )
        .unwrap();
        let r = &cfg.selected_recipe().unwrap().recipe;
        assert_eq!(r.gluings[0].copies, 2);
        assert_eq!(r.gluings[0].signs, vec![Sign::Positive, Sign::Negative]);
        assert_eq!(r.gluings[1].signs, vec![Sign::Positive; 3]);
    }

    #[test]
    fn negative_sign_on_symplectic_torus_rejected_with_line() {
        let err = parse(
            r#"
tasks = ["build"]
[[recipe]]
name = "r"
base = "T4"
gluings = [
    { torus = "T_y" },
    { torus = "T_x", signs = "-" },
]
"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("line 8"), "{msg}");
        assert!(msg.contains("gluings[1]") && msg.contains("not flippable"), "{msg}");
    }

    #[test]
    fn unresolved_references_are_named() {
        let err = parse("tasks = [\"build\"]\n[[recipe]]\nname = \"r\"\nbase = \"K3\"\ngluings = []\n").unwrap_err();
        assert!(err.to_string().contains("unresolved reference `K3`"), "{err}");
        let err = parse("tasks = [\"build\"]\n[[recipe]]\nname = \"r\"\nbase = \"T4\"\ngluings = [{ torus = \"T_q\" }]\n")
            .unwrap_err();
        assert!(err.to_string().contains("T_q"), "{err}");
    }

    #[test]
    fn schema_errors_report_position() {
        let err = parse("tasks = [\"build\"]\nseed = \"zero\"\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse("tasks = [\"build\"]\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = parse("tasks = [\"fly\"]\n").unwrap_err();
        assert!(err.to_string().contains("unknown task"), "{err}");
    }

    #[test]
    fn custom_manifold_and_torus() {
        let cfg = parse(
            r#"
tasks = ["build"]
[[manifold]]
name = "H"
euler = 4
signature = 0
b2 = 2
basis = ["a", "b"]
pairing = [[0, 1], [1, 0]]
c1 = [0, 0]
[[torus]]
manifold = "H"
label = "A"
class = [1, 0]
kind = "lagrangian"
dual = [0, 1]
[[recipe]]
name = "r"
base = "H"
gluings = [{ torus = "A", signs = "-" }]
"#,
        )
        .unwrap();
        assert_eq!(cfg.manifolds["H"].tori.len(), 1);
        assert_eq!(cfg.recipes[0].recipe.total_copies(), 1);
    }

    #[test]
    fn torus_violation_rejected() {
        let err = parse(
            r#"
tasks = ["verify"]
[[torus]]
manifold = "T4"
label = "bad"
class = [1, 0, 0, 1, 0, 0]
kind = "lagrangian"
"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("square-zero"), "{err}");
    }

    #[test]
    fn plural_table_names_and_output_format() {
        let cfg = parse(
            r#"
tasks = ["build"]
output_format = "machine"
[[recipes]]
name = "r"
base = "T4"
gluings = [{ torus = "T_z" }]
"#,
        )
        .unwrap();
        assert_eq!(cfg.output, OutputFormat::Machine);
        assert_eq!(cfg.selected_recipe().unwrap().name, "r");
    }
}
