//! Command-line front end: document parsing, command dispatch and report output.

pub mod document;
pub mod error;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadmap::boundary::{boundary_permutations, ext_int_alternative};
use quadmap::random::DEFAULT_CAP;
use quadmap::verify::{self, CountingConfig};
use quadmap::{boundary, boundary_face_count_oracle, build_map, genus_distribution, sample_genus, SignedGraph};

pub use document::{parse_document, parse_graph, serialize, Document, GraphDocument};
pub use error::CliError;
use report::{BoundaryReport, DistributionReport, FacesReport, SuiteOutcome, VerifyReport};

pub const CAP_ENV: &str = "QUADMAP_CAP";

#[derive(Debug, Parser)]
#[command(name = "quadmap", version, about = "Signed graph embeddings via quadricell maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Faces, Euler genus and orientability of an embedded graph.
    Faces {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Euler genus distribution over all rotation systems, exact or sampled.
    Distribution {
        file: PathBuf,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "samples")]
        seed: u64,
        #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Exterior and interior permutations of a vertex set and the faces they count.
    BoundaryCount {
        file: PathBuf,
        /// Vertex labels of U, separated by commas or spaces.
        #[arg(long)]
        set: String,
        /// Anchor passages on the left side instead of the right.
        #[arg(long)]
        variant: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded theorem sweeps; exit status 1 when any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        instances: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Graph or parts document. Counting sweeps its graphs, amalgamation
        /// checks its spec, monte-carlo samples its single graph.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, env = CAP_ENV, default_value_t = 100_000)]
        cap: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Counting,
    Switching,
    Stahl,
    Amalgamation,
    MonteCarlo,
    All,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphDocument, CliError> {
    parse_graph(&read(path)?).map_err(|e| match e {
        CliError::Parse { line, message } => {
            CliError::Parse { line, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    })
}

/// Runs one parsed command, writing the report to `out`. Returns the exit status.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Faces { file, output } => {
            let doc = load_graph(&file)?;
            let srs = doc.rotation_system()?;
            let surface = build_map(&srs, &doc.graph)?.trace_faces()?;
            FacesReport::new(&doc.graph, &surface).write(output.format, out)?;
            Ok(0)
        }
        Command::Distribution { file, exhaustive: _, samples, seed, cap, output } => {
            let doc = load_graph(&file)?;
            let dist = match samples {
                Some(n) => sample_genus(&doc.graph, n, seed)?,
                None => genus_distribution(&doc.graph, cap)?,
            };
            DistributionReport::new(&dist).write(output.format, out)?;
            Ok(0)
        }
        Command::BoundaryCount { file, set, variant, output } => {
            let doc = load_graph(&file)?;
            let srs = doc.rotation_system()?;
            let map = build_map(&srs, &doc.graph)?;
            let u = set
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| doc.graph.vertex_index(s))
                .collect::<Result<Vec<_>, _>>()?;
            if u.is_empty() {
                return Err(CliError::Usage("--set names no vertices".into()));
            }
            let b = boundary(&doc.graph, &u)?;
            let direct = boundary_face_count_oracle(&map, &b)?;
            let report = if b.is_empty() {
                BoundaryReport::vacuous(&doc.graph, &b, direct)
            } else if variant {
                let (ext, int, _) = ext_int_alternative(&map, &b)?;
                BoundaryReport::new(&doc.graph, &b, ext, int, direct)
            } else {
                let bp = boundary_permutations(&map, &b)?;
                BoundaryReport::new(&doc.graph, &b, bp.ext, bp.int, direct)
            };
            let status = if report.count == report.direct_count { 0 } else { 1 };
            report.write(output.format, out)?;
            Ok(status)
        }
        Command::Verify { suite, instances, seed, threads, corpus, cap, output } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let corpus = corpus.map(|p| read(&p).and_then(|t| parse_document(&t))).transpose()?;
            let report = pool.install(|| run_suites(suite, instances, seed, corpus.as_ref(), cap))?;
            let status = if report.passed { 0 } else { 1 };
            report.write(output.format, out)?;
            Ok(status)
        }
    }
}

fn run_suites(
    suite: Suite,
    instances: Option<u64>,
    seed: u64,
    corpus: Option<&Document>,
    cap: u64,
) -> Result<VerifyReport, CliError> {
    let suites = match suite {
        Suite::All => vec![Suite::Counting, Suite::Switching, Suite::Stahl, Suite::Amalgamation, Suite::MonteCarlo],
        s => vec![s],
    };
    let mut outcomes = Vec::new();
    for s in suites {
        outcomes.push(run_suite(s, instances, seed, corpus, cap)?);
    }
    Ok(VerifyReport::new(outcomes))
}

fn run_suite(
    suite: Suite,
    instances: Option<u64>,
    seed: u64,
    corpus: Option<&Document>,
    cap: u64,
) -> Result<SuiteOutcome, CliError> {
    Ok(match suite {
        Suite::Counting => {
            let cfg = CountingConfig { seed, rotation_cap: cap, ..CountingConfig::default() };
            let r = match corpus {
                Some(doc) => verify::verify_counting_on(&document::corpus_graphs(doc), &cfg),
                None => verify::verify_counting(&cfg),
            };
            SuiteOutcome::from_report("counting", r.passed(), r.instances, failure_list(&r), &r)?
        }
        Suite::Switching => {
            let r = verify::verify_switching(instances.unwrap_or(1000), seed);
            SuiteOutcome::from_report("switching", r.violations.is_empty(), r.instances, r.violations.clone(), &r)?
        }
        Suite::Stahl => {
            let r = verify::verify_stahl(instances.unwrap_or(100), seed)?;
            SuiteOutcome::from_report("stahl", r.violations.is_empty(), r.instances, r.violations.clone(), &r)?
        }
        Suite::Amalgamation => {
            let omega_cap = cap.min(50_000);
            let r = match corpus {
                Some(Document::Parts { .. }) => {
                    let spec = document::amalgamation_spec(corpus.expect("matched"))?;
                    verify::verify_amalgamation_spec(&spec, cap, "corpus")?
                }
                _ => verify::verify_amalgamation(instances.unwrap_or(20), seed, omega_cap)?,
            };
            let failures = r.bound_violations.iter().chain(&r.decomposition_violations).cloned().collect();
            SuiteOutcome::from_report("amalgamation", r.passed(), r.instances, failures, &r)?
        }
        Suite::MonteCarlo => {
            let g: SignedGraph = match corpus {
                Some(Document::Graph(doc)) => doc.graph.clone(),
                _ => SignedGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?,
            };
            let exact = genus_distribution(&g, cap)?.average();
            let runs = instances.unwrap_or(100);
            let r = verify::verify_monte_carlo(&g, &exact, runs, 10_000, seed)?;
            let passed = r.within_three_se * 100 >= 99 * r.runs;
            let failures = if passed {
                Vec::new()
            } else {
                vec![format!("{} of {} runs within 3 standard errors", r.within_three_se, r.runs)]
            };
            SuiteOutcome::from_report("monte-carlo", passed, r.runs, failures, &r)?
        }
        Suite::All => unreachable!("expanded by run_suites"),
    })
}

fn failure_list(r: &verify::CountingReport) -> Vec<String> {
    r.count_mismatches
        .iter()
        .chain(&r.euler_violations)
        .chain(&r.variant_mismatches)
        .chain(&r.non_minimal_walks)
        .chain(&r.factorization_failures)
        .chain(&r.errors)
        .cloned()
        .collect()
}

/// Parses `args` (program name first) and runs the command. Usage and parse
/// errors are written to `err` and give status 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(cli, out) {
        Ok(status) => status,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
