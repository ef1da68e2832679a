use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fibresum_cli::{parse_config, render, run, ExitStatus, LinkingSpec, OutputFormat, RunConfig, Task};

/// Fibre sums with E(1) and divisibility bounds on symplectic forms.
#[derive(Parser)]
#[command(name = "fibresum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    output: Option<Output>,

    /// Seed for projection retries and sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Largest number of sign assignments enumerated exhaustively.
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Sample assignments instead of failing when the cap is exceeded.
    #[arg(long, global = true)]
    sample: bool,

    /// Recipe to act on when the configuration defines several.
    #[arg(long, global = true)]
    recipe: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check record invariants, Chern class identities and the hypotheses.
    Verify,
    /// Perform the recipe with its recorded signs.
    Build,
    /// Evaluate every orientation choice on Lagrangian copies.
    Enumerate,
    /// Find sign assignments realising each prime as a divisibility.
    Solve {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Linking numbers and the torus relation from a surgery link.
    Linking {
        #[arg(long)]
        link: Option<PathBuf>,
        #[arg(long, requires = "link")]
        axis: Option<PathBuf>,
    },
    /// Run the task list of the configuration.
    Run,
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => parse_config(path).with_context(|| format!("loading {}", path.display()))?,
        None => RunConfig::builtin(),
    };
    let task = match &cli.command {
        Command::Verify => Some(Task::Verify),
        Command::Build => Some(Task::Build),
        Command::Enumerate => Some(Task::Enumerate),
        Command::Solve { .. } => Some(Task::Solve),
        Command::Linking { .. } => Some(Task::Linking),
        Command::Run => None,
    };
    match task {
        Some(t) => config.tasks = vec![t],
        None if cli.config.is_none() => bail!("`run` needs --config"),
        None => {}
    }
    if config.tasks.iter().any(|t| matches!(t, Task::Verify | Task::Build | Task::Enumerate))
        && cli.config.is_none()
    {
        bail!("this subcommand needs --config");
    }
    if let Command::Solve { primes } = &cli.command {
        if !primes.is_empty() {
            config.primes = Some(primes.clone());
        }
        if config.primes.is_none() {
            bail!("solve needs --primes or a [solve] section");
        }
    }
    if let Command::Linking { link: Some(link), axis } = &cli.command {
        config.linking = Some(LinkingSpec::from_files(link, axis.as_deref())?);
    }
    if let Some(o) = cli.output {
        config.output = match o {
            Output::Table => OutputFormat::Table,
            Output::Machine => OutputFormat::Machine,
        };
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(cap) = cli.cap {
        if cap == 0 {
            bail!("--cap must be positive");
        }
        config.enumeration_cap = cap;
    }
    config.sample |= cli.sample;
    if let Some(name) = &cli.recipe {
        if config.recipes.iter().all(|r| &r.name != name) {
            bail!("unresolved reference `{name}`: no such recipe");
        }
        config.default_recipe = Some(name.clone());
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(ExitStatus::ValidationFailure.code());
        }
    };
    let outcome = run(&config);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(render(&outcome.report, config.output).as_bytes());
    let _ = stdout.flush();
    for e in &outcome.report.errors {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.status.code())
}
