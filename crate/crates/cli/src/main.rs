use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lagdef::linfty::DEFAULT_ARITY_CAP;
use lagdef::scenario::{corpus, corpus_entry, parse_scenario, run_scenario, Check, RunOptions, Scenario};

const EXIT_FAIL: u8 = 2;
const EXIT_USAGE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "lagdef",
    version,
    about = "Check Lagrangian deformation scenarios exactly"
)]
struct Cli {
    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest arity for which L-infinity relations are evaluated.
    #[arg(long, env = "LAGDEF_ARITY_CAP", default_value_t = DEFAULT_ARITY_CAP, global = true)]
    arity_cap: usize,

    /// Include per-check wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    /// Print a summary of the parsed scenario to standard error.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Source {
    /// Scenario file, or `corpus:<name>` for a bundled scenario.
    scenario: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check declared in the scenario.
    Check(Source),
    /// Check the master equation {theta,theta} = 0.
    Master(Source),
    /// Emit l^1..l^K on coordinate generators and check the L-infinity relations.
    Brackets {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        arity: usize,
    },
    /// Maurer-Cartan residual of an element.
    Mc {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
    },
    /// Formal Maurer-Cartan residual through a given order.
    Formal {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
        #[arg(long)]
        order: usize,
    },
    /// Compare the gauge vector with the one read off the flowed Hamiltonian.
    Gauge {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        f: String,
        #[arg(long)]
        lambda: String,
    },
    /// First obstruction l^2(f,f) of an infinitesimal deformation.
    Kuranishi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
    },
    /// Both equations of a simultaneous deformation of the zero section and theta.
    Extended {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        f: String,
        #[arg(long = "theta-t")]
        theta_t: String,
    },
    /// Bundled end-to-end demonstrations.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// List the bundled scenarios, or print one.
    Corpus { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    /// Casimir obstruction on the Weil algebra of so(3).
    Casimir,
}

struct Loaded {
    name: String,
    scenario: Scenario,
}

fn load(source: &str) -> Result<Loaded, String> {
    if let Some(name) = source.strip_prefix("corpus:") {
        let entry = corpus_entry(name).ok_or_else(|| format!("no bundled scenario named `{name}`"))?;
        return Ok(Loaded {
            name: entry.name.to_string(),
            scenario: entry.scenario(),
        });
    }
    let path = PathBuf::from(source);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let scenario = parse_scenario(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded {
        name: stem(&path),
        scenario,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn run(cli: &Cli) -> Result<bool, String> {
    let (source, checks): (&str, Option<Vec<Check>>) = match &cli.command {
        Command::Check(s) => (&s.scenario, None),
        Command::Master(s) => (&s.scenario, Some(vec![Check::Master])),
        Command::Brackets { source, arity } => (&source.scenario, Some(vec![Check::Brackets(*arity)])),
        Command::Mc { source, element } => (&source.scenario, Some(vec![Check::Mc(element.clone())])),
        Command::Formal {
            source,
            element,
            order,
        } => (
            &source.scenario,
            Some(vec![Check::McFormal(element.clone(), *order)]),
        ),
        Command::Gauge { source, f, lambda } => (
            &source.scenario,
            Some(vec![Check::Gauge(f.clone(), lambda.clone())]),
        ),
        Command::Kuranishi { source, element } => {
            (&source.scenario, Some(vec![Check::Kuranishi(element.clone())]))
        }
        Command::Extended { source, f, theta_t } => (
            &source.scenario,
            Some(vec![Check::Extended(f.clone(), theta_t.clone())]),
        ),
        Command::Demo { which: Demo::Casimir } => ("corpus:weil-casimir", None),
        Command::Corpus { name: None } => {
            for e in corpus() {
                println!("{}", e.name);
            }
            return Ok(true);
        }
        Command::Corpus { name: Some(name) } => {
            let entry = corpus_entry(name).ok_or_else(|| format!("no bundled scenario named `{name}`"))?;
            print!("{}", entry.text);
            return Ok(true);
        }
    };
    let loaded = load(source)?;
    let scenario = match checks {
        Some(c) => loaded.scenario.with_checks(c).map_err(|e| e.to_string())?,
        None => loaded.scenario,
    };
    if cli.verbose {
        eprintln!(
            "{}: {} coordinates, shift {}, {} elements, {} checks",
            loaded.name,
            scenario.base().dim(),
            scenario.shift(),
            scenario.elements().len(),
            scenario.checks().len()
        );
    }
    let opts = RunOptions {
        arity_cap: cli.arity_cap,
        timing: cli.timing,
    };
    let report = run_scenario(&loaded.name, &scenario, &opts);
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
