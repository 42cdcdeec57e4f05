use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kahler_core::{
    builtin, builtin_names, CellStatus, Error, Exact, Float, LieModel, Placement, Report, Scalar,
    Suite, Tables, Zoo, DEFAULT_TOLERANCE,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "kahler",
    version,
    about = "Verify Kähler-type operator identities on nilpotent and solvable model spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry, Jacobi and unimodularity of a model.
    Validate {
        #[arg(long)]
        model: String,
    },
    /// Verify the identity catalog on a model.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Recompute the commutator and bidegree tables on a model.
    Table {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Built-in models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    /// List built-in models with their key attributes.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Built-in model name or path to a model JSON file.
    #[arg(long)]
    model: String,
    /// Exact Gaussian-rational arithmetic (default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point arithmetic.
    #[arg(long)]
    float: bool,
    /// Residual tolerance; only used with --float.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Clifford,
    Exterior,
    Tables,
    Elementary,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Clifford => Suite::Clifford,
            SuiteArg::Exterior => Suite::Exterior,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Elementary => Suite::Elementary,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) => EXIT_INVALID,
            Error::ModelFormat(_) => EXIT_IO,
            _ => EXIT_FAIL,
        };
        Failure::new(code, e.to_string())
    }
}

fn load_model(source: &str) -> Result<LieModel, Failure> {
    if let Some(m) = builtin(source) {
        return Ok(m);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Failure::new(
            EXIT_IO,
            format!(
                "`{source}` is neither a built-in model ({}) nor a readable file",
                builtin_names().join(", ")
            ),
        ));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    LieModel::from_json(&text).map_err(Failure::from)
}

fn validated(source: &str) -> Result<LieModel, Failure> {
    let model = load_model(source)?;
    let report = model.validate();
    if !report.passed() {
        return Err(Failure::new(
            EXIT_INVALID,
            format!("validation failed: {report}"),
        ));
    }
    Ok(model)
}

fn build_zoo<S: Scalar>(model: &LieModel) -> Result<Zoo<S>, Failure> {
    let geometry = model.geometry::<S>()?;
    Ok(Zoo::build(Arc::new(geometry))?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn verify<S: Scalar>(model: &LieModel, run: &RunArgs, suite: Suite) -> Result<Report, Failure> {
    let zoo = build_zoo::<S>(model)?;
    Ok(kahler_core::run_suite(&zoo, suite, run.tolerance)?)
}

fn cmd_verify(run: &RunArgs, suite: Suite) -> Result<(), Failure> {
    let model = validated(&run.model)?;
    let report = if run.float {
        verify::<Float>(&model, run, suite)?
    } else {
        verify::<Exact>(&model, run, suite)?
    };
    let text = match run.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    emit(&text, run.out.as_deref())?;
    let failing = report.failing_ids();
    if failing.is_empty() {
        let s = &report.summary;
        eprintln!(
            "{}: {} entries pass ({} exercised, {} vacuous, {} not applicable)",
            report.model, s.passed, s.exercised, s.vacuous, s.not_applicable
        );
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_FAIL,
            format!("{}: failing entries: {}", report.model, failing.join(", ")),
        ))
    }
}

fn tables<S: Scalar>(model: &LieModel, tolerance: f64) -> Result<Tables, Failure> {
    let zoo = build_zoo::<S>(model)?;
    Ok(Tables::build(&zoo, tolerance)?)
}

fn cmd_table(run: &RunArgs) -> Result<(), Failure> {
    let model = validated(&run.model)?;
    let t = if run.float {
        tables::<Float>(&model, run.tolerance)?
    } else {
        tables::<Exact>(&model, run.tolerance)?
    };
    let text = match run.format {
        Format::Json => serde_json::to_string_pretty(&t).expect("tables serialize"),
        Format::Md => format!("# Tables: {}\n\n{}", model.name(), t.to_markdown()),
    };
    emit(&text, run.out.as_deref())?;
    let bad_cells = t
        .commutators
        .cells()
        .filter(|c| c.status != CellStatus::Match)
        .count();
    let misplaced = t.bidegrees.count(Placement::Misplaced);
    if bad_cells + misplaced > 0 {
        return Err(Failure::new(
            EXIT_FAIL,
            format!(
                "{}: {bad_cells} commutator cells differ, {misplaced} operators misplaced",
                model.name()
            ),
        ));
    }
    Ok(())
}

fn cmd_validate(source: &str) -> Result<(), Failure> {
    let model = load_model(source)?;
    let report = model.validate();
    if report.passed() {
        println!("{report}");
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_INVALID,
            format!("validation failed: {report}"),
        ))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_models_list() -> Result<(), Failure> {
    println!(
        "{:<6} {:>2} {:>7} {:>6} {:>6}",
        "name", "n", "dω = 0", "N = 0", "θ = 0"
    );
    for name in builtin_names() {
        let model = builtin(name).expect("built-in");
        let g = model.geometry::<Exact>()?;
        println!(
            "{:<6} {:>2} {:>7} {:>6} {:>6}",
            name,
            g.half_dim(),
            yes_no(g.is_almost_kahler()),
            yes_no(g.is_integrable()),
            yes_no(g.lee_vanishes())
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { model } => cmd_validate(model),
        Command::Verify { run, suite } => cmd_verify(run, (*suite).into()),
        Command::Table { run } => cmd_table(run),
        Command::Models {
            action: ModelsAction::List,
        } => cmd_models_list(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
