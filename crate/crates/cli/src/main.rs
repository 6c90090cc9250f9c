//! `mass` command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 infeasible assignment,
//! 3 instance too large for the exhaustive oracle.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mass_core::craft::{brute_force_optimum, CraftConfig, CraftError};
use mass_core::hungarian::solve_assignment;
use mass_core::layout::{ColumnOrder, FloorConfig, FloorPlan};
use mass_core::pipeline::{
    benchmark_seeds, matching_costs, run_mass, MassConfig, MassError, MatchingObjective,
};
use mass_core::{DistanceModel, LoadMatrix};

#[derive(Debug, Parser)]
#[command(
    name = "mass",
    version,
    about = "Hungarian-seeded CRAFT plant layout solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Load matrix CSV (`name,<facilities>` header, `-` for vacant cells).
    #[arg(long, global = true, value_name = "CSV")]
    loads: Option<PathBuf>,

    /// Floor config JSON: {"width_m", "height_m", "aisle_m", optional "rows"/"cols"}.
    #[arg(long, global = true, value_name = "JSON")]
    floor: Option<PathBuf>,

    /// Distance model (defaults to rectilinear, or paper with --reproduce-paper).
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,

    #[arg(long, global = true, value_enum, default_value_t = ObjectiveArg::Minimize)]
    objective: ObjectiveArg,

    /// Also try 3-cycles of facility positions.
    #[arg(long, global = true)]
    three_way: bool,

    /// Disable whole-column and whole-row exchanges.
    #[arg(long, global = true)]
    no_line_exchange: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Random starting layouts for `benchmark`.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Order matched pairs by lowest facility index and default to the paper
    /// distance model, reproducing the worked six-facility example.
    #[arg(long, global = true)]
    reproduce_paper: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full pipeline: assignment, initial layout, CRAFT improvement.
    Solve,
    /// Assignment stage only.
    Assign,
    /// CRAFT from the MASS seed versus random starting layouts.
    Benchmark,
    /// Exhaustive global optimum for small instances.
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Paper,
    Rectilinear,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Minimize,
    MaxComposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Infeasible(String),
    TooLarge(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::TooLarge(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Infeasible(m) | CliError::TooLarge(m) => m,
        }
    }
}

impl From<MassError> for CliError {
    fn from(e: MassError) -> Self {
        match e {
            MassError::Infeasible(e) => CliError::Infeasible(e.to_string()),
            MassError::Layout(e) => CliError::Input(e.to_string()),
        }
    }
}

impl Cli {
    fn model(&self) -> DistanceModel {
        match (self.model, self.reproduce_paper) {
            (Some(ModelArg::Paper), _) | (None, true) => DistanceModel::Paper,
            (Some(ModelArg::Rectilinear), _) | (None, false) => DistanceModel::RectilinearCentroid,
        }
    }

    fn mass_config(&self) -> MassConfig {
        MassConfig {
            craft: CraftConfig {
                model: self.model(),
                enable_three_way: self.three_way,
                enable_line_exchange: !self.no_line_exchange,
                ..CraftConfig::default()
            },
            objective: match self.objective {
                ObjectiveArg::Minimize => MatchingObjective::Minimize,
                ObjectiveArg::MaxComposite => MatchingObjective::MaximizeComposite,
            },
            column_order: if self.reproduce_paper {
                ColumnOrder::FacilityIndex
            } else {
                ColumnOrder::CompositeDescending
            },
        }
    }

    fn load_matrix(&self) -> Result<LoadMatrix, CliError> {
        let path = self
            .loads
            .as_deref()
            .ok_or_else(|| CliError::Input("--loads <csv> is required".into()))?;
        let text = read(path)?;
        LoadMatrix::parse_csv(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn floor_plan(&self, n: usize) -> Result<FloorPlan, CliError> {
        let path = self
            .floor
            .as_deref()
            .ok_or_else(|| CliError::Input("--floor <json> is required".into()))?;
        let text = read(path)?;
        let cfg: FloorConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        cfg.plan_for(n)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_solve(cli: &Cli) -> Result<String, CliError> {
    let m = cli.load_matrix()?;
    let plan = cli.floor_plan(m.n())?;
    let result = run_mass(&m, &plan, &cli.mass_config())?;
    Ok(match cli.format {
        Format::Json => json(&result.report(&m)),
        Format::Text => render::solve(&m, &result),
    })
}

fn cmd_assign(cli: &Cli) -> Result<String, CliError> {
    let m = cli.load_matrix()?;
    let costs = matching_costs(&m, cli.mass_config().objective);
    let a = solve_assignment(&costs).map_err(|e| CliError::Infeasible(e.to_string()))?;
    Ok(match cli.format {
        Format::Json => json(&render::AssignReport::new(&m, &a)),
        Format::Text => render::assign(&m, &a),
    })
}

fn cmd_benchmark(cli: &Cli) -> Result<String, CliError> {
    if cli.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let m = cli.load_matrix()?;
    let plan = cli.floor_plan(m.n())?;
    let report = benchmark_seeds(&m, &plan, &cli.mass_config(), cli.trials, cli.seed)?;
    Ok(match cli.format {
        Format::Json => json(&report),
        Format::Text => render::benchmark(&report),
    })
}

fn cmd_oracle(cli: &Cli) -> Result<String, CliError> {
    let m = cli.load_matrix()?;
    let plan = cli.floor_plan(m.n())?;
    let result = brute_force_optimum(&m, &plan, cli.model()).map_err(|e| match e {
        CraftError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        CraftError::Layout(e) => CliError::Input(e.to_string()),
    })?;
    Ok(match cli.format {
        Format::Json => json(&render::OracleReport::new(&m, &result)),
        Format::Text => render::oracle(&m, &result),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = match cli.command {
        Command::Solve => cmd_solve(&cli),
        Command::Assign => cmd_assign(&cli),
        Command::Benchmark => cmd_benchmark(&cli),
        Command::Oracle => cmd_oracle(&cli),
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
