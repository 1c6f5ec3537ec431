use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use carnot_cli::commands::{self, Options};
use carnot_cli::files::{self, InputError};
use carnot_cli::report::Report;

#[derive(Parser)]
#[command(name = "carnot", version, about = "Exact computations on Carnot groups")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Treat non-stratified algebras and extensions as failures.
    #[arg(long, global = true)]
    strict_stratified: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a group, check the multicomplex identities and tabulate the Hodge splitting.
    Check {
        group: PathBuf,
        #[arg(long, default_value_t = 2)]
        coeff_degree: u32,
    },
    /// Rumin complex of a group with symbolic `d_c(f ξ)`.
    Rumin {
        group: PathBuf,
        /// `a..b`, or a single degree.
        #[arg(long, value_parser = parse_degrees)]
        degrees: Option<RangeInclusive<usize>>,
        /// Degree of the monomials `f` used to cross-check the symbolic formulas.
        #[arg(long, default_value_t = 3)]
        coeff_degree: u32,
    },
    /// Contact check, Pansu derivative and pullback table of a scenario map.
    Pansu { scenario: PathBuf },
    /// Commutation of the Pansu pullback with the page differentials.
    Commute {
        scenario: PathBuf,
        #[arg(long)]
        page: Option<usize>,
        #[arg(long)]
        coeff_degree: Option<u32>,
    },
    /// Central extension by the scenario cocycle.
    Extend { scenario: PathBuf },
    /// Lift of the Pansu derivative to central extensions.
    Lift {
        scenario: PathBuf,
        #[arg(long)]
        coeff_degree: Option<u32>,
    },
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected `a..b` or a degree, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => s.trim().parse().map(|k| k..=k).map_err(|_| bad()),
    }
}

fn load_group(path: &Path) -> Result<files::Group, InputError> {
    match path.to_str().and_then(files::builtin) {
        Some(g) if !path.exists() => Ok(g),
        _ => files::load_group(path),
    }
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    let opts = Options { strict_stratified: cli.strict_stratified };
    let name = |p: &Path| p.display().to_string();
    match &cli.command {
        Command::Check { group, coeff_degree } => Ok(commands::check(&load_group(group)?, &name(group), *coeff_degree, &opts)),
        Command::Rumin { group, degrees, coeff_degree } => {
            let g = load_group(group)?;
            let degrees = degrees.clone().unwrap_or(0..=g.algebra.dim());
            commands::rumin(&g, &name(group), degrees, *coeff_degree)
        }
        Command::Pansu { scenario } => commands::pansu(&files::load_scenario(scenario)?, &name(scenario), &opts),
        Command::Commute { scenario, page, coeff_degree } => {
            commands::commute(&files::load_scenario(scenario)?, &name(scenario), *page, *coeff_degree, &opts)
        }
        Command::Extend { scenario } => commands::extend(&files::load_scenario(scenario)?, &name(scenario), &opts),
        Command::Lift { scenario, coeff_degree } => {
            commands::lift(&files::load_scenario(scenario)?, &name(scenario), *coeff_degree, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.render());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
