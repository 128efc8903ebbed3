use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use torsion_cli::fixtures::{self, SuiteDocument};
use torsion_cli::render::render_document;
use torsion_cli::spec::{CheckDoc, CheckParams, PolyIdealDoc, TermDoc};
use torsion_cli::{exit_code, read_runspec, run, InputError, ReportDocument, RunSpec, EXIT_INPUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "torsion", version, about = "Exact torsion-functor and local (co)homology checks over finite rings")]
struct Cli {
    /// Seed for sampled families; overrides the spec.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest module whose submodules are enumerated.
    #[arg(long, global = true)]
    bound_card: Option<u64>,
    #[arg(long, global = true)]
    resolution_length: Option<usize>,
    #[arg(long, global = true)]
    offset_bound: Option<usize>,
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ApolarityOp {
    /// Basis of (0 : J^power) in k[X]_{<=D}.
    Annihilator,
    /// Dimensions of (0 : J^k) for k = 1..kmax.
    Profile,
    /// dim (0 :_{M/(0:J)} J) = dim(0:J^2) - dim(0:J).
    Identity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe the ring of a run spec.
    Ring { spec: PathBuf },
    /// Describe the ideals of a run spec.
    Ideal {
        spec: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Describe the modules of a run spec relative to an ideal.
    Module {
        spec: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Run the checks of a run spec.
    Check {
        spec: PathBuf,
        /// Only run checks with these names.
        #[arg(long)]
        only: Vec<String>,
    },
    /// Run the bundled worked examples.
    Suite {
        #[arg(long)]
        list: bool,
        names: Vec<String>,
    },
    /// Contraction computations in a truncated inverse system.
    Apolarity {
        #[arg(value_enum)]
        op: ApolarityOp,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        degree: usize,
        /// A generator as JSON sparse terms, e.g. '[[[2], 1]]'. Repeatable.
        #[arg(long = "generator", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        power: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
    },
}

fn apply_overrides(cli: &Cli, mut spec: RunSpec) -> Result<RunSpec, InputError> {
    if let Some(s) = cli.seed {
        spec.seed = s;
    }
    if let Some(b) = cli.bound_card {
        spec.bounds.submodule_bound = b;
    }
    if let Some(b) = cli.resolution_length {
        spec.bounds.resolution_length = b;
    }
    if let Some(b) = cli.offset_bound {
        spec.bounds.offset_bound = b;
    }
    if let Some(b) = cli.degree_bound {
        spec.bounds.degree_bound = b;
    }
    spec.normalize()
}

fn named(name: &str) -> CheckParams {
    CheckParams { name: name.into(), ..CheckParams::default() }
}

fn build_spec(cli: &Cli) -> Result<RunSpec, InputError> {
    let mut spec = match &cli.command {
        Command::Ring { spec }
        | Command::Ideal { spec, .. }
        | Command::Module { spec, .. }
        | Command::Check { spec, .. } => read_runspec(spec)?,
        Command::Apolarity { op, vars, degree, generators, power, kmax } => {
            let generators = generators
                .iter()
                .map(|g| serde_json::from_str::<Vec<TermDoc>>(g).map_err(|e| InputError::invalid("--generator", e)))
                .collect::<Result<Vec<_>, _>>()?;
            let name = match op {
                ApolarityOp::Annihilator => "apolarity_annihilator",
                ApolarityOp::Profile => "reducedness_profile",
                ApolarityOp::Identity => "quotient_annihilator",
            };
            let check = CheckParams { degree: Some(*degree), power: *power, kmax: *kmax, ..named(name) };
            RunSpec {
                poly_ideal: Some(PolyIdealDoc { name: None, vars: *vars, generators }),
                checks: vec![CheckDoc(check)],
                ..RunSpec::default()
            }
        }
        Command::Suite { .. } => unreachable!("suites are run separately"),
    };
    match &cli.command {
        Command::Ring { .. } => spec.checks = vec![CheckDoc(named("ring_info"))],
        Command::Ideal { name, .. } => {
            let names: Vec<String> = spec.ideals.iter().filter_map(|d| d.name.clone()).collect();
            spec.checks = select(&names, name, "ideal")?
                .into_iter()
                .map(|n| CheckDoc(CheckParams { ideal: Some(n), ..named("ideal_info") }))
                .collect();
        }
        Command::Module { name, ideal, .. } => {
            let names: Vec<String> = spec.modules.iter().filter_map(|d| d.name.clone()).collect();
            spec.checks = select(&names, name, "module")?
                .into_iter()
                .map(|n| CheckDoc(CheckParams { module: Some(n), ideal: ideal.clone(), ..named("module_info") }))
                .collect();
        }
        Command::Check { only, .. } if !only.is_empty() => spec.checks.retain(|c| only.contains(&c.0.name)),
        _ => {}
    }
    apply_overrides(cli, spec)
}

fn select(names: &[String], wanted: &Option<String>, kind: &'static str) -> Result<Vec<String>, InputError> {
    match wanted {
        None => Ok(names.to_vec()),
        Some(w) if names.contains(w) => Ok(vec![w.clone()]),
        Some(w) => Err(InputError::Unresolved { kind, name: w.clone(), context: "the command line".into() }),
    }
}

fn emit(cli: &Cli, spec_output: Option<&str>, text: String) -> Result<(), InputError> {
    let target = cli.out.clone().or_else(|| spec_output.map(PathBuf::from));
    match target {
        Some(path) => write_file(&path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| InputError::Io { path: "stdout".into(), message: e.to_string() })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn render_suite(doc: &SuiteDocument) -> String {
    let mut out = String::new();
    for e in &doc.fixtures {
        out.push_str(&format!("== {} ==\n", e.name));
        out.push_str(&render_document(&e.document));
    }
    out
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<i32, InputError> {
    if let Command::Suite { list, names } = &cli.command {
        if *list {
            let listing: String = fixtures::names().map(|n| format!("{n}\n")).collect();
            emit(cli, None, listing)?;
            return Ok(0);
        }
        let doc = fixtures::run_suite(names, |s| apply_overrides(cli, s))?;
        let text = match cli.format {
            OutputFormat::Json => json(&doc),
            OutputFormat::Text => render_suite(&doc),
        };
        emit(cli, None, text)?;
        return Ok(exit_code(doc.verdict));
    }
    let spec = build_spec(cli)?;
    let doc: ReportDocument = run(&spec)?;
    let text = match cli.format {
        OutputFormat::Json => json(&doc),
        OutputFormat::Text => render_document(&doc),
    };
    emit(cli, spec.output.as_deref(), text)?;
    Ok(doc.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
