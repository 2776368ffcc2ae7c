//! `strongcol` command-line interface.
//!
//! Exit codes: 0 success, 1 coloring rejected by `verify`, 2 unreadable or
//! malformed input, 3 precondition or regime violation, 4 unsatisfiable or
//! refuted, 5 resource budget exceeded, 70 internal contradiction, 74 output
//! could not be written.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use strongcol::constructions::{
    adversarial_partition, lower_bound_graph, random_bounded_degree_graph, random_equal_partition,
};
use strongcol::engine::strong_coloring;
use strongcol::format::{parse_coloring, parse_graph, parse_partition, write_coloring, write_graph, write_partition};
use strongcol::fuzz::{engine_solver, run_fuzz_with, FuzzConfig};
use strongcol::graph::padded_size;
use strongcol::oracle::{
    color_partition_exact_unpinned, exact_strong_chromatic_number, strongly_colorable_all_partitions, OracleBudget,
    PartitionAnswer, UniversalAnswer,
};
use strongcol::triangle::{k3_factor, parse_tripartite, random_dense_tripartite, required_degree, write_factor, write_tripartite};
use strongcol::{
    verify_strong_coloring, BlockPartition, FactorError, Graph, OracleError, SolveError, StrongColoring, Verdict,
    Violation,
};

use report::RunReport;

const OK: u8 = 0;
const REJECTED: u8 = 1;
const PARSE: u8 = 2;
const PRECONDITION: u8 = 3;
const UNSAT: u8 = 4;
const RESOURCE: u8 = 5;
const INTERNAL: u8 = 70;
const OUTPUT: u8 = 74;

#[derive(Parser)]
#[command(name = "strongcol", version, about = "Strong colorings of graphs under equal-size vertex partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strongly color a graph for a partition into at most three blocks of size k ≥ 2Δ.
    Solve(SolveArgs),
    /// Check a coloring against a graph and partition.
    Verify {
        graph: PathBuf,
        partition: PathBuf,
        coloring: PathBuf,
    },
    /// Exact strong colorability of a tiny graph by exhaustive search.
    Exact(ExactArgs),
    /// Write generated instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Find a triangle factor of a dense tripartite graph.
    Factor {
        tripartite: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, solve and verify random instances.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("blocks").required(true).args(["partition", "k"])))]
struct SolveArgs {
    graph: PathBuf,
    /// Partition file.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Block size for a seeded random partition.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coloring destination; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the exact oracle when the instance is outside the supported regime.
    #[arg(long)]
    oracle_fallback: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("question").required(true).args(["chi", "r"])))]
struct ExactArgs {
    graph: PathBuf,
    /// Compute the strong chromatic number.
    #[arg(long)]
    chi: bool,
    /// Decide strong r-colorability, printing a refuting partition if any.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = OracleBudget::default().max_vertices)]
    max_vertices: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_partitions)]
    max_partitions: u64,
    #[arg(long, default_value_t = OracleBudget::default().node_limit)]
    node_limit: u64,
}

#[derive(Subcommand)]
enum GenCommand {
    /// K_{Δ,Δ} plus isolated vertices up to n.
    Lowerbound {
        delta: usize,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The partition separating the two sides of the lower-bound graph.
    Adversarial {
        delta: usize,
        n: usize,
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random graph with maximum degree exactly Δ.
    Random {
        n: usize,
        delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random partition of 0..vertex_count into blocks of size k.
    Partition {
        vertex_count: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tripartite graph with parts of size N and high minimum degree.
    Tripartite {
        part_size: usize,
        /// Defaults to ⌈3N/2⌉.
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving minimized reproducers.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Corrupt every solver output; exercises the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

struct Failure {
    exit: u8,
    status: &'static str,
    message: String,
}

impl Failure {
    fn new(exit: u8, status: &'static str, message: impl ToString) -> Self {
        Failure {
            exit,
            status,
            message: message.to_string(),
        }
    }
}

/// The report goes to standard output unless the payload already does.
struct Run {
    report: RunReport,
    payload_on_stdout: bool,
}

impl Run {
    fn emit(&mut self, payload: &str, out: Option<&Path>) -> Result<(), Failure> {
        match out {
            Some(path) => fs::write(path, payload)
                .map_err(|e| Failure::new(OUTPUT, "io_error", format!("{}: {e}", path.display()))),
            None => {
                print!("{payload}");
                self.payload_on_stdout = true;
                Ok(())
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(PARSE, "parse_error", format!("{}: {e}", path.display())))
}

fn parse_with<T, E: std::fmt::Display>(path: &Path, f: impl FnOnce(&str) -> Result<T, E>) -> Result<T, Failure> {
    f(&read(path)?).map_err(|e| Failure::new(PARSE, "parse_error", format!("{}: {e}", path.display())))
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::UnsupportedRegime(_) => Failure::new(PRECONDITION, "unsupported_regime", e),
        SolveError::PartitionMismatch(_) => Failure::new(PRECONDITION, "partition_mismatch", e),
        SolveError::InternalContradiction(ref d) => {
            Failure::new(INTERNAL, "internal_contradiction", format!("{e}\n{}", d.to_json()))
        }
    }
}

fn oracle_error(e: OracleError) -> Failure {
    match e {
        OracleError::ResourceExceeded(_) => Failure::new(RESOURCE, "resource_exceeded", e),
        OracleError::Partition(_) => Failure::new(PRECONDITION, "partition_mismatch", e),
    }
}

fn partition_field(p: &BlockPartition) -> String {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("/")
}

fn cmd_solve(run: &mut Run, a: &SolveArgs) -> Result<(), Failure> {
    let g = parse_with(&a.graph, parse_graph)?;
    run.report.set("n", g.vertex_count()).set("m", g.edge_count());
    let p = match (&a.partition, a.k) {
        (Some(path), _) => parse_with(path, parse_partition)?,
        (None, Some(k)) => random_equal_partition(padded_size(g.vertex_count(), k.max(1)), k, a.seed)
            .map_err(|e| Failure::new(PRECONDITION, "bad_parameters", e))?,
        (None, None) => unreachable!("clap requires --partition or --k"),
    };
    run.report.set("k", p.block_size()).set("blocks", p.num_blocks());

    let coloring = match strong_coloring(&g, &p) {
        Ok(sol) => {
            run.report.solve(&sol.report);
            sol.coloring
        }
        Err(SolveError::UnsupportedRegime(why)) if a.oracle_fallback => {
            run.report.set("regime", "oracle").set("fallback_reason", &why);
            match color_partition_exact_unpinned(&g, &p, &OracleBudget::default()).map_err(oracle_error)? {
                PartitionAnswer::Satisfiable(c) => c,
                PartitionAnswer::Unsatisfiable => {
                    return Err(Failure::new(UNSAT, "unsat", "no strong coloring exists for this partition"))
                }
            }
        }
        Err(e) => return Err(solve_error(e)),
    };
    check(&g, &p, &coloring)?;
    run.report.set("verified", true);
    run.emit(&write_coloring(&coloring), a.out.as_deref())
}

fn check(g: &Graph, p: &BlockPartition, c: &StrongColoring) -> Result<(), Failure> {
    match verify_strong_coloring(g, p, c) {
        Ok(Verdict::Valid) => Ok(()),
        Ok(Verdict::Invalid(v)) => Err(Failure::new(INTERNAL, "internal_contradiction", format!("unverified output: {v}"))),
        Err(e) => Err(Failure::new(INTERNAL, "internal_contradiction", format!("unverified output: {e}"))),
    }
}

fn cmd_verify(run: &mut Run, graph: &Path, partition: &Path, coloring: &Path) -> Result<(), Failure> {
    let g = parse_with(graph, parse_graph)?;
    let p = parse_with(partition, parse_partition)?;
    let c = parse_with(coloring, parse_coloring)?;
    run.report.set("n", g.vertex_count()).set("k", p.block_size()).set("blocks", p.num_blocks());
    match verify_strong_coloring(&g, &p, &c) {
        Ok(Verdict::Valid) => Ok(()),
        Ok(Verdict::Invalid(v)) => {
            match v {
                Violation::MonochromaticEdge { u, v, color } => {
                    run.report.set("violation", "monochromatic_edge").set("u", u).set("v", v).set("color", color)
                }
                Violation::RepeatedColor { block, color } => {
                    run.report.set("violation", "repeated_color").set("block", block).set("color", color)
                }
                Violation::ColorOutOfRange { vertex, color } => {
                    run.report.set("violation", "color_out_of_range").set("vertex", vertex).set("color", color)
                }
            };
            Err(Failure::new(REJECTED, "invalid", v))
        }
        Err(e) => Err(Failure::new(PRECONDITION, "domain_mismatch", e)),
    }
}

fn cmd_exact(run: &mut Run, a: &ExactArgs) -> Result<(), Failure> {
    let g = parse_with(&a.graph, parse_graph)?;
    let budget = OracleBudget {
        max_vertices: a.max_vertices,
        max_partitions: a.max_partitions,
        node_limit: a.node_limit,
    };
    run.report.set("n", g.vertex_count()).set("m", g.edge_count()).set("max_degree", g.max_degree());
    if a.chi {
        let chi = exact_strong_chromatic_number(&g, &budget).map_err(oracle_error)?;
        run.report.set("chi", chi);
        return Ok(());
    }
    let r = a.r.expect("clap requires --chi or --r");
    run.report.set("r", r);
    match strongly_colorable_all_partitions(&g, r, &budget).map_err(oracle_error)? {
        UniversalAnswer::Colorable => {
            run.report.set("colorable", true);
            Ok(())
        }
        UniversalAnswer::Refuted(p) => {
            run.report.set("colorable", false).set("witness", partition_field(&p));
            Err(Failure::new(UNSAT, "refuted", format!("no strong {r}-coloring for partition {}", partition_field(&p))))
        }
    }
}

fn cmd_gen(run: &mut Run, what: &GenCommand) -> Result<(), Failure> {
    let bad = |e: &dyn std::fmt::Display| Failure::new(PRECONDITION, "bad_parameters", e);
    let (payload, out) = match what {
        GenCommand::Lowerbound { delta, n, out } => {
            let g = lower_bound_graph(*delta, *n).map_err(|e| bad(&e))?;
            run.report.set("kind", "lowerbound").set("n", n).set("m", g.edge_count());
            (write_graph(&g), out)
        }
        GenCommand::Adversarial { delta, n, r, out } => {
            let p = adversarial_partition(*delta, *n, *r).map_err(|e| bad(&e))?;
            run.report.set("kind", "adversarial").set("k", r).set("blocks", p.num_blocks());
            (write_partition(&p), out)
        }
        GenCommand::Random { n, delta, seed, out } => {
            let g = random_bounded_degree_graph(*n, *delta, *seed).map_err(|e| bad(&e))?;
            run.report.set("kind", "random").set("n", n).set("m", g.edge_count()).set("max_degree", g.max_degree());
            (write_graph(&g), out)
        }
        GenCommand::Partition { vertex_count, k, seed, out } => {
            let p = random_equal_partition(*vertex_count, *k, *seed).map_err(|e| bad(&e))?;
            run.report.set("kind", "partition").set("k", k).set("blocks", p.num_blocks());
            (write_partition(&p), out)
        }
        GenCommand::Tripartite { part_size, min_degree, seed, out } => {
            let d = min_degree.unwrap_or_else(|| required_degree(*part_size));
            if d > 2 * part_size {
                return Err(bad(&format!("minimum degree {d} exceeds 2N = {}", 2 * part_size)));
            }
            let t = random_dense_tripartite(*part_size, d, *seed);
            run.report.set("kind", "tripartite").set("part_size", part_size).set("m", t.graph().edge_count());
            (write_tripartite(&t), out)
        }
    };
    run.emit(&payload, out.as_deref())
}

fn cmd_factor(run: &mut Run, input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let t = parse_with(input, parse_tripartite)?;
    run.report.set("part_size", t.part_size()).set("min_degree", t.graph().min_degree());
    let f = k3_factor(&t).map_err(|e| match e {
        FactorError::DegreeTooLow { .. } => Failure::new(PRECONDITION, "degree_too_low", e),
        FactorError::Solve(s) => solve_error(s),
        FactorError::Invalid(_) => Failure::new(INTERNAL, "internal_contradiction", e),
    })?;
    run.report.set("triangles", f.triangles.len()).set("verified", true);
    run.emit(&write_factor(&f), out)
}

fn cmd_fuzz(run: &mut Run, a: &FuzzArgs) -> Result<(), Failure> {
    let cfg = FuzzConfig {
        n: a.n,
        delta: a.delta,
        iters: a.iters,
        seed: a.seed,
    };
    run.report.set("n", a.n).set("delta", a.delta).set("seed", a.seed);
    let faulty = |g: &Graph, p: &BlockPartition| {
        let (mut c, r) = engine_solver(g, p)?;
        if let Some((u, v)) = g.edges().next() {
            c.0[v] = c.0[u];
        }
        Ok((c, r))
    };
    let summary = if a.inject_fault {
        run_fuzz_with(&cfg, &faulty)
    } else {
        run_fuzz_with(&cfg, &engine_solver)
    }
    .map_err(|e| Failure::new(PRECONDITION, "bad_parameters", e))?;

    run.report
        .set("iterations", summary.iterations)
        .set("failures", summary.failures.len())
        .solve(&summary.totals);
    if let Some(dir) = &a.dump {
        fs::create_dir_all(dir).map_err(|e| Failure::new(OUTPUT, "io_error", format!("{}: {e}", dir.display())))?;
    }
    for f in &summary.failures {
        eprintln!("# failure at iteration {}: {}", f.iteration, f.reason.lines().next().unwrap_or(""));
        eprintln!("# minimized graph");
        eprint!("{}", write_graph(&f.minimized_graph));
        eprintln!("# minimized partition");
        eprint!("{}", write_partition(&f.minimized_partition));
        if let Some(dir) = &a.dump {
            let write = |name: String, text: String| {
                let path = dir.join(name);
                fs::write(&path, text).map_err(|e| Failure::new(OUTPUT, "io_error", format!("{}: {e}", path.display())))
            };
            write(format!("failure-{}.graph", f.iteration), write_graph(&f.minimized_graph))?;
            write(format!("failure-{}.partition", f.iteration), write_partition(&f.minimized_partition))?;
        }
    }
    if summary.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(
            INTERNAL,
            "failures",
            format!("{} of {} instances failed", summary.failures.len(), summary.iterations),
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Solve(_) => "solve",
        Command::Verify { .. } => "verify",
        Command::Exact(_) => "exact",
        Command::Gen { .. } => "gen",
        Command::Factor { .. } => "factor",
        Command::Fuzz(_) => "fuzz",
    };
    let mut run = Run {
        report: RunReport::new(name),
        payload_on_stdout: false,
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(&mut run, a),
        Command::Verify { graph, partition, coloring } => cmd_verify(&mut run, graph, partition, coloring),
        Command::Exact(a) => cmd_exact(&mut run, a),
        Command::Gen { what } => cmd_gen(&mut run, what),
        Command::Factor { tripartite, out } => cmd_factor(&mut run, tripartite, out.as_deref()),
        Command::Fuzz(a) => cmd_fuzz(&mut run, a),
    };
    let (status, exit) = match &result {
        Ok(()) => ("ok", OK),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.status, f.exit)
        }
    };
    let line = run.report.finish(status, exit);
    if run.payload_on_stdout {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
    ExitCode::from(exit)
}
