use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use birep::catalog;
use birep_probe::problem::{catalog_problem, Problem, ProblemSpec, Suite};
use birep_probe::{emit_report, run_suite, Format, EXIT_INPUT_ERROR};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "birep", version, about = "Verify representative functions of monotone bifunctions on grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a problem document.
    Verify {
        problem: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fraction of each axis kept in the verification window.
        #[arg(long)]
        window: Option<f64>,
        /// Replace the document's suite list (repeatable).
        #[arg(long = "suite", value_name = "NAME", num_args = 1..)]
        suites: Vec<String>,
        /// Override a tolerance, e.g. `--tol duality=1e-5` (repeatable).
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tols: Vec<String>,
    },
    /// Built-in bifunctions.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Print the catalog.
    List,
    /// Print a ready-to-run problem document.
    Emit {
        name: String,
        #[arg(long, default_value_t = 201)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn input_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_INPUT_ERROR
}

fn verify(
    path: PathBuf,
    format: Option<FormatArg>,
    out: Option<PathBuf>,
    window: Option<f64>,
    suites: Vec<String>,
    tols: Vec<String>,
) -> i32 {
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return input_error(format!("cannot read {}: {e}", path.display())),
    };
    let mut doc = match Problem::from_json(&text) {
        Ok(d) => d,
        Err(e) => return input_error(format!("{}: {e}", path.display())),
    };
    if window.is_some() {
        doc.window = window;
    }
    if !suites.is_empty() {
        let mut parsed = Vec::new();
        for s in &suites {
            match Suite::from_name(s) {
                Some(suite) => parsed.push(suite),
                None => {
                    let known: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                    return input_error(format!("unknown suite '{s}' (known: {})", known.join(", ")));
                }
            }
        }
        doc.suites = parsed;
    }
    for t in &tols {
        let parsed = t.split_once('=').and_then(|(k, v)| Some((k.trim(), v.trim().parse::<f64>().ok()?)));
        let mut overrides = doc.tolerances.unwrap_or_default();
        match parsed {
            Some((name, value)) if overrides.set(name, value) => doc.tolerances = Some(overrides),
            _ => {
                return input_error(format!(
                    "--tol expects NAME=VALUE with NAME in {}, got '{t}'",
                    birep::Tolerances::NAMES.join(", ")
                ))
            }
        }
    }
    let spec = match ProblemSpec::resolve(doc) {
        Ok(s) => s,
        Err(e) => return input_error(format!("{}: {e}", path.display())),
    };
    let bundle = match run_suite(&spec) {
        Ok(b) => b,
        Err(e) => return input_error(e),
    };
    let format = format.map(Format::from).unwrap_or(spec.format);
    let out = out.or_else(|| spec.output_path.as_ref().map(PathBuf::from));
    emit_report(&bundle, format, out.as_deref())
}

fn catalog_command(command: CatalogCommand) -> i32 {
    match command {
        CatalogCommand::List => {
            for item in catalog::ITEMS {
                println!(
                    "{:<18} C=[{}, {}]  {:<16} {}",
                    item.name, item.domain.0, item.domain.1, item.expression, item.summary
                );
            }
            0
        }
        CatalogCommand::Emit { name, n } => match catalog::find(&name) {
            Some(item) => {
                println!("{}", catalog_problem(item, n).to_json());
                0
            }
            None => input_error(format!("no catalog item named '{name}'")),
        },
    }
}

fn main() -> ExitCode {
    // usage errors are input errors; clap's own code 2 means verification failure here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Verify { problem, format, out, window, suites, tols } => {
            verify(problem, format, out, window, suites, tols)
        }
        Command::Catalog { command } => catalog_command(command),
    };
    ExitCode::from(code as u8)
}
