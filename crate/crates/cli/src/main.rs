//! `scs`: command-line workbench for the stable cutset solvers.

mod dimacs;
mod record;

use clap::{Parser, Subcommand, ValueEnum};
use record::{AnalysisRecord, RunRecord};
use stable_cutset::analysis;
use stable_cutset::branching::{
    early_exit, solve_general, solve_scs, LeafSolver, ScsVerdict, SolveStats,
};
use stable_cutset::generators::{self, Family, RandomProfile};
use stable_cutset::mindeg::solve_half_degree;
use stable_cutset::mnc::{solve_3colouring, solve_mnc};
use stable_cutset::{oracle, Error as CoreError, Graph};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "scs",
    version,
    about = "Exact stable cutset workbench: solvers, generators, analysis, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a connected graph has a stable cutset
    Solve {
        /// DIMACS graph file (`p edge n m`, 1-indexed `e u v` lines)
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Re-check the certificate before reporting
        #[arg(long)]
        verify: bool,
    },
    /// Decide 3-colourability with the same branching machinery
    Color3 {
        file: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Generate instances in DIMACS format
    Gen {
        #[command(subcommand)]
        family: GenCommand,
        /// Output file (stdout when omitted)
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print the branching root lambda and comparison value mu per degree
    Analyze {
        /// Minimum degrees to report (defaults to the tabulated list)
        #[arg(long, value_delimiter = ',')]
        delta: Vec<usize>,
    },
    /// Run a solver matrix over a directory of DIMACS files
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algo::Mnc, Algo::General])]
        algos: Vec<Algo>,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Early exits, then the polynomial algorithm when it applies, else mnc
    Auto,
    /// Triangle-decomposition branching
    General,
    /// Branch on three-labelled vertices
    Mnc,
    /// Pinning wrapper straight into the (3,2)-CSP solver
    Csp,
    /// Polynomial algorithm (requires minimum degree >= n/2)
    Poly,
    /// Brute-force subset enumeration
    Oracle,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::General => "general",
            Algo::Mnc => "mnc",
            Algo::Csp => "csp",
            Algo::Poly => "poly",
            Algo::Oracle => "oracle",
        }
    }
}

#[derive(Subcommand)]
enum GenCommand {
    Path { n: usize },
    Cycle { n: usize },
    Clique { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Bowtie,
    Petersen,
    /// Two cliques of sizes a and b joined through a stable set of size s
    Extremal { a: usize, b: usize, s: usize },
    /// Seeded random connected graph with an edge budget or a degree target
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "min_degree")]
        m: Option<usize>,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Attach a (c-1)-clique to every edge of a base graph
    Gadget {
        base: PathBuf,
        #[arg(long)]
        c: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<dimacs::ParseError> for Failure {
    fn from(e: dimacs::ParseError) -> Self {
        Failure::new(2, format!("parse error: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::Disconnected
            | CoreError::TooFewVertices(_)
            | CoreError::DegreeTooSmall { .. }
            | CoreError::GuardExceeded(_) => 3,
            CoreError::InvalidParameter(_) | CoreError::InfeasibleProfile(_) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(f) = run(cli) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { file, algo, verify } => cmd_solve(&file, algo, verify),
        Command::Color3 { file, verify } => cmd_color3(&file, verify),
        Command::Gen { family, output } => cmd_gen(family, output.as_deref()),
        Command::Analyze { delta } => cmd_analyze(&delta),
        Command::Bench { dir, algos, verify } => cmd_bench(&dir, &algos, verify),
    }
}

fn load_graph(file: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(file)?;
    Ok(dimacs::parse_graph(&text)?)
}

fn check_solve_preconditions(g: &Graph) -> Result<(), CoreError> {
    if g.n() < 3 {
        return Err(CoreError::TooFewVertices(3));
    }
    if !g.is_connected() {
        return Err(CoreError::Disconnected);
    }
    Ok(())
}

fn poly_applies(g: &Graph) -> bool {
    g.min_degree().is_ok_and(|d| 2 * d >= g.n())
}

fn dispatch(algo: Algo, g: &Graph) -> Result<ScsVerdict, CoreError> {
    match algo {
        Algo::Auto => {
            check_solve_preconditions(g)?;
            if let Some(verdict) = early_exit(g) {
                return Ok(verdict);
            }
            if poly_applies(g) {
                solve_half_degree(g)
            } else {
                solve_mnc(g)
            }
        }
        Algo::General => solve_general(g),
        Algo::Mnc => solve_mnc(g),
        Algo::Csp => solve_scs(g, LeafSolver::Csp),
        Algo::Poly => {
            if !poly_applies(g) {
                return Err(CoreError::DegreeTooSmall {
                    delta: g.min_degree().unwrap_or(0),
                    requirement: format!(
                        "the polynomial algorithm needs minimum degree at least n/2 = {}/2",
                        g.n()
                    ),
                });
            }
            solve_half_degree(g)
        }
        Algo::Oracle => {
            check_solve_preconditions(g)?;
            let partition = oracle::brute_scs(g)?;
            Ok(ScsVerdict {
                has_cutset: partition.is_some(),
                certificate: partition,
                stats: SolveStats::default(),
            })
        }
    }
}

fn input_name(file: &Path) -> String {
    file.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string())
}

fn emit(record: &RunRecord) {
    println!(
        "{}",
        serde_json::to_string(record).expect("records serialize")
    );
}

fn cmd_solve(file: &Path, algo: Algo, verify: bool) -> Result<(), Failure> {
    let g = load_graph(file)?;
    let started = Instant::now();
    let verdict = dispatch(algo, &g)?;
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut record = RunRecord::new(&input_name(file), algo.name(), g.n(), g.m());
    record.fill_verdict(&verdict);
    record.wall_ms = wall_ms;
    if verify {
        record.verified = verdict
            .certificate
            .as_ref()
            .map(|cert| g.verify_partition(cert).unwrap_or(false));
    }
    emit(&record);
    match &verdict.certificate {
        Some(cert) => eprintln!(
            "{}: yes, stable cutset of size {} ({:.2} ms, {})",
            record.input,
            cert.s.len(),
            wall_ms,
            record.algorithm
        ),
        None => eprintln!(
            "{}: {} ({:.2} ms, {})",
            record.input, record.verdict, wall_ms, record.algorithm
        ),
    }
    Ok(())
}

fn cmd_color3(file: &Path, verify: bool) -> Result<(), Failure> {
    let g = load_graph(file)?;
    let started = Instant::now();
    let colouring = solve_3colouring(&g);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut record = RunRecord::new(&input_name(file), "color3", g.n(), g.m());
    record.wall_ms = wall_ms;
    match colouring {
        Some(colours) => {
            record.verdict = "yes".to_string();
            if verify {
                record.verified =
                    Some(g.edges().iter().all(|&(u, v)| colours[u] != colours[v]));
            }
            record.colours = Some(colours.iter().map(|c| c + 1).collect());
        }
        None => record.verdict = "no".to_string(),
    }
    emit(&record);
    eprintln!(
        "{}: {} ({:.2} ms, color3)",
        record.input, record.verdict, wall_ms
    );
    Ok(())
}

fn cmd_gen(family: GenCommand, output: Option<&Path>) -> Result<(), Failure> {
    let graph = match family {
        GenCommand::Path { n } => Family::Path(n).build(),
        GenCommand::Cycle { n } => Family::Cycle(n).build(),
        GenCommand::Clique { n } => Family::Clique(n).build(),
        GenCommand::CompleteBipartite { a, b } => Family::CompleteBipartite(a, b).build(),
        GenCommand::Bowtie => Family::Bowtie.build(),
        GenCommand::Petersen => Family::Petersen.build(),
        GenCommand::Extremal { a, b, s } => {
            if a == 0 || b == 0 || s == 0 {
                return Err(Failure::new(2, "extremal needs all three sizes positive"));
            }
            Ok(generators::extremal(a, b, s))
        }
        GenCommand::Random {
            n,
            m,
            min_degree,
            seed,
        } => {
            let profile = match (m, min_degree) {
                (Some(m), None) => RandomProfile::EdgeBudget(m),
                (None, Some(d)) => RandomProfile::MinDegree(d),
                _ => {
                    return Err(Failure::new(
                        2,
                        "random needs exactly one of --m or --min-degree",
                    ))
                }
            };
            generators::random_connected(n, profile, seed)
        }
        GenCommand::Gadget { base, c } => {
            let g = load_graph(&base)?;
            generators::gadget(&g, c).map(|(lifted, _)| lifted)
        }
    }?;
    let text = dimacs::render_graph(&graph);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    eprintln!("generated graph: n = {}, m = {}", graph.n(), graph.m());
    Ok(())
}

fn cmd_analyze(deltas: &[usize]) -> Result<(), Failure> {
    let deltas: Vec<usize> = if deltas.is_empty() {
        analysis::TABLE_DELTAS.to_vec()
    } else {
        deltas.to_vec()
    };
    if deltas.contains(&0) {
        return Err(Failure::new(2, "minimum degree must be positive"));
    }
    eprintln!("{:>8} {:>10} {:>10} {:>10}", "delta", "lambda", "mu", "w2");
    for &delta in &deltas {
        let report = analysis::lambda_mu(delta);
        let record = AnalysisRecord {
            delta,
            lambda: report.lambda,
            mu: report.mu,
            w2: report.w2,
            version: record::TOOL_VERSION.to_string(),
        };
        println!(
            "{}",
            serde_json::to_string(&record).expect("records serialize")
        );
        eprintln!(
            "{:>8} {:>10.4} {:>10.4} {:>10.4}",
            delta, report.lambda, report.mu, report.w2
        );
    }
    Ok(())
}

fn cmd_bench(dir: &Path, algos: &[Algo], verify: bool) -> Result<(), Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::new(
            2,
            format!("no corpus files in {}", dir.display()),
        ));
    }
    let mut graphs = Vec::with_capacity(files.len());
    for file in &files {
        let text = std::fs::read_to_string(file)?;
        let g = dimacs::parse_graph(&text)
            .map_err(|e| Failure::new(2, format!("parse error in {}: {e}", file.display())))?;
        graphs.push(g);
    }

    let tasks: Vec<(usize, Algo)> = (0..files.len())
        .flat_map(|i| algos.iter().map(move |&a| (i, a)))
        .collect();
    let records = stable_cutset::exec::map_collect(tasks, |(i, algo)| {
        let g = &graphs[i];
        let mut record = RunRecord::new(&input_name(&files[i]), algo.name(), g.n(), g.m());
        let started = Instant::now();
        match dispatch(algo, g) {
            Ok(verdict) => {
                record.fill_verdict(&verdict);
                if verify {
                    record.verified = verdict
                        .certificate
                        .as_ref()
                        .map(|cert| g.verify_partition(cert).unwrap_or(false));
                }
            }
            Err(e) => {
                record.verdict = "refused".to_string();
                record.refusal = Some(e.to_string());
            }
        }
        record.wall_ms = started.elapsed().as_secs_f64() * 1e3;
        record
    });
    let (mut yes, mut no, mut refused) = (0usize, 0usize, 0usize);
    for record in &records {
        emit(record);
        match record.verdict.as_str() {
            "yes" => yes += 1,
            "no" => no += 1,
            _ => refused += 1,
        }
    }
    eprintln!(
        "benchmarked {} instances x {} algorithms: {yes} yes, {no} no, {refused} refused",
        files.len(),
        algos.len()
    );
    Ok(())
}
