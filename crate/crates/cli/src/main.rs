use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use latfox_core::verify::{self, Fault, TrialConfig};
use latfox_core::{document, parse_cxt, trace, AttributeColumn, DiagramDocument, DiagramState, Vec2};

/// Build, edit and check attribute-additive concept diagrams.
#[derive(Parser)]
#[command(name = "latfox", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the diagram of a CXT context from scratch.
    Build {
        context: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Insert an attribute column into a diagram; prints the change set.
    Insert {
        diagram: PathBuf,
        name: String,
        /// Comma-separated object names, or `@file` with one name per line.
        extent: String,
        /// Seed `x,y` for the new attribute if it is irreducible.
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        seed_vector: Option<Vec2>,
        /// Where to write the updated diagram (defaults to DIAGRAM itself).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove an attribute column from a diagram; prints the change set.
    Remove {
        diagram: PathBuf,
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare incremental updates with from-scratch computation on random trials.
    Verify {
        /// Edit this context instead of random ones.
        context: Option<PathBuf>,
        #[arg(long, visible_alias = "random", default_value_t = 200)]
        trials: usize,
        /// Largest random context, as OBJECTSxATTRIBUTES.
        #[arg(long, default_value = "12x10", value_parser = parse_size)]
        max_size: (usize, usize),
        #[arg(long, env = "LATFOX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Time incremental updates against full recomputation on a random edit trace.
    Bench {
        #[arg(long, default_value = "60x40", value_parser = parse_size)]
        size: (usize, usize),
        #[arg(long, default_value_t = 40)]
        ops: usize,
        #[arg(long, env = "LATFOX_SEED", default_value_t = 0)]
        seed: u64,
        /// Make every third edit a removal.
        #[arg(long)]
        removals: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export a diagram as JSON or Graphviz.
    Export {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Serve the HTTP session API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Write every session's diagram here on shutdown.
        #[arg(long)]
        snapshot_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A failure together with the process exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(error: E) -> Self {
        let error = error.into();
        let code = match error.downcast_ref::<latfox_core::Error>() {
            Some(latfox_core::Error::NameCollision(_)) => 3,
            _ => 2,
        };
        Failure { code, error }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure { code, error }) => {
            eprintln!("latfox: {error:#}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Build { context, output } => {
            let text = read(&context)?;
            let context = parse_cxt(&text).with_context(|| format!("parsing {}", context.display()))?;
            let state = DiagramState::build(context);
            emit(output.as_deref(), &DiagramDocument::from_state(&state).to_json())?;
        }
        Command::Insert {
            diagram,
            name,
            extent,
            seed_vector,
            output,
        } => {
            let state = load(&diagram)?;
            let names = extent_names(&extent)?;
            let extent = state.context().object_set(&names)?;
            let (next, changeset) = state.insert_column_seeded(AttributeColumn::new(name, extent), seed_vector)?;
            write(
                output.as_deref().unwrap_or(&diagram),
                &DiagramDocument::from_state(&next).to_json(),
            )?;
            emit(None, &changeset.to_json())?;
        }
        Command::Remove { diagram, name, output } => {
            let state = load(&diagram)?;
            let (next, changeset) = state.remove_column(&name)?;
            write(
                output.as_deref().unwrap_or(&diagram),
                &DiagramDocument::from_state(&next).to_json(),
            )?;
            emit(None, &changeset.to_json())?;
        }
        Command::Verify {
            context,
            trials,
            max_size,
            seed,
            inject_fault,
        } => {
            let base = match context {
                Some(path) => Some(parse_cxt(&read(&path)?).with_context(|| format!("parsing {}", path.display()))?),
                None => None,
            };
            let fault = match inject_fault {
                Some(name) => Some(Fault::parse(&name).ok_or_else(|| anyhow!("unknown fault `{name}`"))?),
                None => None,
            };
            let config = TrialConfig {
                trials,
                max_objects: max_size.0,
                max_attributes: max_size.1,
                seed,
                base,
                fault,
            };
            let report = verify::run_trials(&config);
            let mut out = std::io::stdout().lock();
            for trial in &report.trials {
                writeln!(out, "{trial}")?;
            }
            writeln!(
                out,
                "{} trials, {} failed, {:.2?}",
                report.trials.len(),
                report.failures(),
                report.elapsed
            )?;
            if let Some(counterexample) = &report.counterexample {
                write!(out, "{counterexample}")?;
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            size,
            ops,
            seed,
            removals,
            json,
        } => {
            let trace = trace::random_trace(seed, size.0, size.1, ops, removals);
            let report = trace::compare(&trace)?;
            if json {
                emit(None, &serde_json::to_string_pretty(&report)?)?;
            } else {
                print_bench(&report);
            }
        }
        Command::Export {
            diagram,
            format,
            output,
        } => {
            let state = load(&diagram)?;
            let text = match format {
                Format::Json => document::export_json(&state),
                Format::Dot => document::export_dot(&state),
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Serve { addr, snapshot_dir } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let listener = tokio::net::TcpListener::bind(addr).await?;
                eprintln!("latfox: listening on http://{}", listener.local_addr()?);
                let shutdown = async {
                    let _ = tokio::signal::ctrl_c().await;
                };
                let options = latfox_service::ServeOptions { snapshot_dir };
                latfox_service::serve(listener, options, shutdown).await
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_bench(report: &trace::TraceReport) {
    let ms = |micros: u128| micros as f64 / 1000.0;
    let (inc, reb) = (&report.incremental, &report.rebuild);
    println!("{}x{} context, {} edits", report.objects, report.attributes, report.ops);
    println!("{:<24}{:>14}{:>14}", "", "incremental", "rebuild");
    println!(
        "{:<24}{:>14.1}{:>14.1}",
        "total ms",
        ms(inc.total_micros),
        ms(reb.total_micros)
    );
    let mean = |p: &trace::PathReport| ms(p.total_micros) / p.op_micros.len().max(1) as f64;
    println!("{:<24}{:>14.2}{:>14.2}", "mean ms per edit", mean(inc), mean(reb));
    println!(
        "{:<24}{:>14}{:>14}",
        "full enumerations", inc.counters.full_enumerations, reb.counters.full_enumerations
    );
    println!(
        "{:<24}{:>14}{:>14}",
        "concepts enumerated", inc.counters.concepts_enumerated, reb.counters.concepts_enumerated
    );
    println!(
        "{:<24}{:>14}{:>14}",
        "derivations", inc.counters.derivations, reb.counters.derivations
    );
    println!(
        "{:<24}{:>14}{:>14}",
        "subset tests", inc.counters.subset_tests, reb.counters.subset_tests
    );
    println!(
        "{:<24}{:>14}{:>14}",
        "final concepts", inc.final_concepts, reb.final_concepts
    );
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `path`, or to stdout when there is none.
fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(path) => write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn load(path: &Path) -> anyhow::Result<DiagramState> {
    let text = read(path)?;
    let document = DiagramDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(document.to_state()?)
}

fn extent_names(arg: &str) -> anyhow::Result<Vec<String>> {
    let text = match arg.strip_prefix('@') {
        Some(file) => read(Path::new(file))?,
        None => arg.to_owned(),
    };
    Ok(text
        .split([',', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect())
}

fn parse_size(text: &str) -> anyhow::Result<(usize, usize)> {
    let (g, m) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("expected OBJECTSxATTRIBUTES"))?;
    let size = (g.trim().parse()?, m.trim().parse()?);
    if size.0 == 0 {
        bail!("at least one object is needed");
    }
    Ok(size)
}

fn parse_vec2(text: &str) -> anyhow::Result<Vec2> {
    let (x, y) = text.split_once(',').ok_or_else(|| anyhow!("expected x,y"))?;
    let v = Vec2::new(x.trim().parse()?, y.trim().parse()?);
    if !v.is_finite() {
        bail!("seed must be finite");
    }
    Ok(v)
}
