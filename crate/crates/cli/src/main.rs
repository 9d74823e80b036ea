//! isokit: graph isomorphism engineering toolkit.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict, 2 usage
//! or input error, 3 resource guard tripped.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use isokit::bench::{self, BenchConfig};
use isokit::formats;
use isokit::report::{Report, TraceJson};
use isokit_core::refine::{color_refine_default, distinguishes, wl_k};
use isokit_core::si::luks_string_iso;
use isokit_core::tcr::{aut, closure, is_graph_isomorphism, iso, k_improvement};
use isokit_core::{gen, ColoredGraph, Error as CoreError};

#[derive(Parser)]
#[command(name = "isokit", version, about = "graph isomorphism engineering toolkit")]
struct Cli {
    /// Optional key=value configuration file; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Args)]
struct GraphInput {
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Color Refinement trace of a graph.
    Refine {
        #[command(flatten)]
        input: GraphInput,
        file: PathBuf,
    },
    /// k-dimensional Weisfeiler-Leman trace of a graph.
    Wl {
        #[arg(long, short)]
        k: usize,
        #[command(flatten)]
        input: GraphInput,
        file: PathBuf,
    },
    /// Tests whether k-WL distinguishes two graphs (exit 1 when it does not).
    Distinguish {
        #[arg(long, short)]
        k: usize,
        #[command(flatten)]
        input: GraphInput,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Isomorphism test with witness (exit 1 when non-isomorphic).
    Iso {
        #[command(flatten)]
        input: GraphInput,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Automorphism group of a graph.
    Aut {
        #[command(flatten)]
        input: GraphInput,
        file: PathBuf,
    },
    /// Permutation group utilities.
    Group {
        #[command(subcommand)]
        sub: GroupCommand,
    },
    /// String isomorphism utilities.
    Si {
        #[command(subcommand)]
        sub: SiCommand,
    },
    /// t-closure of a vertex set.
    Closure {
        #[arg(long, short)]
        t: usize,
        /// Comma-separated vertices to individualize.
        #[arg(long, value_delimiter = ',')]
        individualize: Vec<u32>,
        #[command(flatten)]
        input: GraphInput,
        file: PathBuf,
    },
    /// k-improvement of a graph.
    Improve {
        #[arg(long, short)]
        k: usize,
        #[command(flatten)]
        input: GraphInput,
        file: PathBuf,
    },
    /// Emits a named generator or fixture graph.
    Gen {
        /// path:<len> cycle:<n> johnson:<m>:<t> shrikhande rook44 petersen
        /// prism:<k> dodecahedron icosahedron complete:<n>
        /// random-regular:<n>:<d> random-connected:<n>:<d>
        name: String,
        /// Seed, mandatory for the random generators.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Runs a benchmark suite.
    Bench {
        #[arg(long)]
        suite: Vec<String>,
        /// Seed, mandatory: all randomness flows from it.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, orbits, transitivity and minimal block system of a group
    /// given as a JSON generator list.
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum SiCommand {
    /// Solves a string isomorphism instance (exit 1 when the coset is
    /// empty).
    Solve { file: PathBuf },
}

/// Process-level outcome; negative verdicts are not failures but still exit
/// with code 1 per the contract.
enum Outcome {
    Positive,
    Negative,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Argument(m) => CliError::Usage(m),
            CoreError::Resource(m) => CliError::Resource(m),
        }
    }
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(input: &GraphInput, path: &Path) -> Result<ColoredGraph, CliError> {
    let text = read_file(path)?;
    let format = match input.format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Format::Graph6,
            Some("json") => Format::Json,
            _ => {
                return Err(CliError::Usage(format!(
                    "cannot infer the format of {}; pass --format",
                    path.display()
                )))
            }
        },
    };
    Ok(match format {
        Format::Graph6 => formats::parse_graph6(text.lines().next().unwrap_or(""))?,
        Format::Json => formats::parse_json_graph(&text)?,
    })
}

fn emit_graph(g: &ColoredGraph, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Graph6 => formats::emit_graph6(g)?,
        Format::Json => formats::emit_json_graph(g),
    })
}

fn parse_gen_spec(name: &str, seed: Option<u64>) -> Result<ColoredGraph, CliError> {
    let parts: Vec<&str> = name.split(':').collect();
    let arg = |i: usize| -> Result<usize, CliError> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("generator {name:?} needs numeric arguments")))
    };
    let need_seed = || seed.ok_or_else(|| CliError::Usage("random generators need --seed".into()));
    Ok(match parts[0] {
        "path" => gen::gen_path(arg(1)?)?,
        "cycle" => gen::gen_cycle(arg(1)?)?,
        "complete" => gen::gen_complete(arg(1)?)?,
        "johnson" => gen::gen_johnson(arg(1)?, arg(2)?)?,
        "shrikhande" => gen::gen_shrikhande(),
        "rook44" => gen::gen_rook44(),
        "petersen" => gen::gen_petersen(),
        "prism" => gen::gen_prism(arg(1)?)?,
        "dodecahedron" => gen::gen_dodecahedron(),
        "icosahedron" => gen::gen_icosahedron(),
        "random-regular" => gen::random_regular(arg(1)?, arg(2)?, need_seed()?)?,
        "random-connected" => gen::random_connected_bounded_degree(arg(1)?, arg(2)?, need_seed()?)?,
        other => return Err(CliError::Usage(format!("unknown generator {other:?}"))),
    })
}

/// Applies `key=value` lines from the config file to unset options.
fn apply_config(cli: &mut Cli) -> Result<(), CliError> {
    let Some(path) = &cli.config else { return Ok(()) };
    let text = read_file(path)?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {line:?} is not key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        match (&mut cli.command, key) {
            (Command::Bench { seed, .. }, "seed") if seed.is_none() => {
                *seed = Some(value.parse().map_err(|_| {
                    CliError::Usage(format!("config seed {value:?} is not an integer"))
                })?);
            }
            (Command::Bench { repeats, .. }, "repeats") => {
                *repeats = value.parse().map_err(|_| {
                    CliError::Usage(format!("config repeats {value:?} is not an integer"))
                })?;
            }
            (Command::Gen { seed, .. }, "seed") if seed.is_none() => {
                *seed = Some(value.parse().map_err(|_| {
                    CliError::Usage(format!("config seed {value:?} is not an integer"))
                })?);
            }
            _ => {} // unknown keys are ignored so configs can be shared
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Refine { input, file } => {
            let g = load_graph(&input, &file)?;
            let trace = color_refine_default(&g);
            let mut report = Report::new("refine", None);
            report.push(json!({
                "file": file.display().to_string(),
                "n": g.n(),
                "m": g.m(),
                "stabilized_at": trace.stabilized_at,
                "stable_classes": trace.stable().num_colors(),
                "trace": TraceJson::from_trace(&trace),
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Wl { k, input, file } => {
            let g = load_graph(&input, &file)?;
            let trace = wl_k(&g, k)?;
            let mut report = Report::new(format!("wl --k {k}"), None);
            report.push(json!({
                "file": file.display().to_string(),
                "k": k,
                "stabilized_at": trace.stabilized_at,
                "stable_classes": trace.stable().num_colors(),
                "trace": TraceJson::from_trace(&trace),
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Distinguish { k, input, file1, file2 } => {
            let g = load_graph(&input, &file1)?;
            let h = load_graph(&input, &file2)?;
            let (distinguished, witness) = distinguishes(&g, &h, k)?;
            let mut report = Report::new(format!("distinguish --k {k}"), None);
            report.push(json!({
                "k": k,
                "verdict": if distinguished { "distinguished" } else { "indistinguishable" },
                "witness_color": witness,
            }));
            report.print();
            if distinguished {
                Ok(Outcome::Positive)
            } else {
                eprintln!("indistinguishable at k={k}");
                Ok(Outcome::Negative)
            }
        }
        Command::Iso { input, file1, file2 } => {
            let g = load_graph(&input, &file1)?;
            let h = load_graph(&input, &file2)?;
            let result = iso(&g, &h);
            if let Some(w) = result.witness() {
                assert!(is_graph_isomorphism(&g, &h, w), "engine returned a bad witness");
            }
            let mut report = Report::new("iso", None);
            report.push(json!({
                "verdict": if result.isomorphic { "isomorphic" } else { "non-isomorphic" },
                "aut_order": result.coset.group().map(|g| g.order().to_string()),
                "witness": result.witness().map(|w| w.images().to_vec()),
                "stats": { "nodes": result.stats.nodes, "refinements": result.stats.refinements },
            }));
            report.print();
            Ok(if result.isomorphic { Outcome::Positive } else { Outcome::Negative })
        }
        Command::Aut { input, file } => {
            let g = load_graph(&input, &file)?;
            let result = aut(&g);
            let group = result.coset.group().expect("aut is never empty");
            let mut report = Report::new("aut", None);
            report.push(json!({
                "aut_order": group.order().to_string(),
                "generators": group.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                "orbits": group.orbits(),
                "stats": { "nodes": result.stats.nodes, "refinements": result.stats.refinements },
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Group { sub: GroupCommand::Info { file } } => {
            let group = formats::parse_group(&read_file(&file)?)?;
            let orbits = group.orbits();
            let degree = group.degree();
            let transitive = orbits.len() == 1 && degree > 0;
            let (primitive, blocks) = if transitive && degree >= 2 {
                let all: Vec<u32> = (0..degree as u32).collect();
                let system = isokit_core::perm::minimal_block_system(&group, &all)?;
                (system.is_singletons(), Some(system.blocks().to_vec()))
            } else {
                (false, None)
            };
            let mut report = Report::new("group info", None);
            report.push(json!({
                "degree": degree,
                "order": group.order().to_string(),
                "orbits": orbits,
                "transitive": transitive,
                "primitive": primitive,
                "minimal_block_system": blocks,
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Si { sub: SiCommand::Solve { file } } => {
            let inst = formats::parse_si_instance(&read_file(&file)?)?;
            let coset = luks_string_iso(&inst)?;
            let mut report = Report::new("si solve", None);
            match (coset.group(), coset.rep()) {
                (Some(group), Some(rep)) => {
                    report.push(json!({
                        "verdict": "isomorphic",
                        "coset_order": coset.order().to_string(),
                        "aut_generators": group.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                        "representative": rep.images().to_vec(),
                    }));
                    report.print();
                    Ok(Outcome::Positive)
                }
                _ => {
                    report.push(json!({ "verdict": "EMPTY" }));
                    report.print();
                    println!("EMPTY");
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Closure { t, individualize, input, file } => {
            let g = load_graph(&input, &file)?;
            let closed = closure(&g, &individualize, t)?;
            let full = closed.len() == g.n();
            let mut report = Report::new(format!("closure --t {t}"), None);
            report.push(json!({
                "t": t,
                "individualized": individualize,
                "closure_size": closed.len(),
                "closure": closed,
                "is_full_vertex_set": full,
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Improve { k, input, file } => {
            let g = load_graph(&input, &file)?;
            let improved = k_improvement(&g, k)?;
            let mut report = Report::new(format!("improve --k {k}"), None);
            report.push(json!({
                "k": k,
                "edges_before": g.m(),
                "edges_after": improved.m(),
                "graph": formats::emit_json_graph(&improved),
            }));
            report.print();
            Ok(Outcome::Positive)
        }
        Command::Gen { name, seed, format } => {
            let g = parse_gen_spec(&name, seed)?;
            println!("{}", emit_graph(&g, format)?);
            Ok(Outcome::Positive)
        }
        Command::Bench { suite, seed, repeats } => {
            if suite.is_empty() {
                return Err(CliError::Usage("bench needs at least one --suite".into()));
            }
            let seed = seed.ok_or_else(|| CliError::Usage("bench needs --seed".into()))?;
            let threads = bench::worker_cap();
            let mut report = Report::new(format!("bench --suite {}", suite.join(",")), Some(seed));
            for name in &suite {
                let cfg = BenchConfig { suite: name.clone(), seed, repeats, threads };
                let results = bench::run_suite(&cfg).map_err(CliError::Usage)?;
                for r in results {
                    report.push(r);
                }
            }
            report.print();
            Ok(Outcome::Positive)
        }
    }
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    if let Err(e) = apply_config(&mut cli) {
        eprintln!("error: {e:?}");
        return ExitCode::from(e.exit_code());
    }
    match run(cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Resource(m) => eprintln!("resource guard: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
