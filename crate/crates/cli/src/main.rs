use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dynmaint::baselines::{DsExactOracle, DsShrink, StarAnalyticOracle, VcExactOracle};
use dynmaint::divergence::{render_table, star_experiment};
use dynmaint::graph::{build_script_edge_by_edge, churn_script, random_graph, EditScript, VertexId};
use dynmaint::io::{parse_graph, parse_script, write_graph, write_script};
use dynmaint::maintenance::{run, to_csv, to_jsonl, Maintainer, Oracle, RunError, RunOptions};
use dynmaint::reduction::{
    equivalence_check, gen_srmc, reduce, verify_deletion_with_budget, write_provenance,
    ApproxBudget, DEFAULT_DELETION_BUDGET,
};
use dynmaint::vc_maintainer::VcMatching;

#[derive(Parser)]
#[command(name = "dynmaint", version, about = "Solution maintenance experiments on dynamic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay an edit script through a maintainer and report every step.
    Maintain(MaintainArgs),
    /// Build a star edge by edge under the shrink maintainer.
    Divergence {
        #[arg(long)]
        n: usize,
        /// Write the divergence report as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a multicoloured clique instance and reduce it.
    Reduce(ReduceArgs),
    /// Generate graphs and scripts.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Search for a smallest deletion set leaving an r-regular graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_deletions: usize,
        /// Node-expansion cap for the search.
        #[arg(long, default_value_t = DEFAULT_DELETION_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MaintainerKind {
    VcMatching,
    DsShrink,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Exact,
    None,
    AnalyticStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Churn,
}

#[derive(clap::Args)]
struct MaintainArgs {
    #[arg(long, value_enum)]
    maintainer: MaintainerKind,
    /// Script file to replay.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    script: Option<PathBuf>,
    /// Generate the script instead of reading it.
    #[arg(long, value_enum, requires = "seed")]
    gen: Option<Generator>,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = 0.5)]
    p_add: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "none")]
    oracle: OracleKind,
    /// Report file; without it the report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    /// Skip the per-step validity check.
    #[arg(long)]
    no_validate: bool,
}

#[derive(clap::Args)]
struct ReduceArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Plant a multicoloured clique.
    #[arg(long)]
    planted: bool,
    /// Approximation budget `a,b` for g(k) = a·k + b.
    #[arg(long, value_parser = parse_budget, default_value = "1,0")]
    g: ApproxBudget,
    /// Run both exact oracles and write the equivalence report.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with edge probability p.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random add/delete churn over a fixed vertex set.
    Churn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0.5)]
        p_add: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Script adding the edges of a graph file one at a time.
    EdgeByEdge {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_budget(s: &str) -> Result<ApproxBudget, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|_| format!("bad a in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad b in {s:?}"))?;
    ApproxBudget::new(a, b).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            msg: msg.to_string(),
        }
    }
}

fn other(e: impl std::fmt::Display) -> Failure {
    Failure::new(3, e)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| other(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| other(format!("{}: {e}", path.display())))
}

fn maintain(a: MaintainArgs) -> Result<(), Failure> {
    let script: EditScript = match (&a.script, a.gen) {
        (Some(path), _) => {
            parse_script(&read(path)?).map_err(|e| other(format!("{}: {e}", path.display())))?
        }
        (None, Some(Generator::Churn)) => {
            churn_script(a.n, a.steps, a.p_add, a.seed.expect("clap enforces --seed")).map_err(other)?
        }
        (None, None) => unreachable!("clap enforces --script or --gen"),
    };
    let mut maintainer: Box<dyn Maintainer> = match a.maintainer {
        MaintainerKind::VcMatching => Box::new(VcMatching::new()),
        MaintainerKind::DsShrink => Box::new(DsShrink::new()),
    };
    let oracle: Option<Box<dyn Oracle>> = match (a.oracle, a.maintainer) {
        (OracleKind::None, _) => None,
        (OracleKind::Exact, MaintainerKind::VcMatching) => Some(Box::new(VcExactOracle::default())),
        (OracleKind::Exact, MaintainerKind::DsShrink) => Some(Box::new(DsExactOracle::default())),
        (OracleKind::AnalyticStar, MaintainerKind::DsShrink) => Some(Box::new(StarAnalyticOracle)),
        (OracleKind::AnalyticStar, MaintainerKind::VcMatching) => {
            return Err(other("the analytic star oracle only answers dominating set"))
        }
    };
    let opts = RunOptions {
        validate: !a.no_validate,
        record_history: false,
    };
    let report = run(
        &script.initial_graph(),
        &script,
        maintainer.as_mut(),
        oracle.as_deref(),
        opts,
    )
    .map_err(|e| match e {
        RunError::InvalidSolution { .. } => Failure::new(2, e),
        e => other(e),
    })?;
    let text = match a.format {
        Format::Jsonl => to_jsonl(&report),
        Format::Csv => to_csv(&report),
    };
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            let ratio = report
                .max_ratio
                .map_or("n/a".to_string(), |r| r.to_string());
            println!(
                "{}: {} steps, final size {}, max ratio {ratio}, max work {}, wrote {}",
                report.maintainer,
                report.steps.len(),
                report.final_solution.size(),
                report.max_work,
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn divergence(n: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let (_, report) = star_experiment(n).map_err(other)?;
    print!("{}", render_table(&report));
    println!(
        "final ratio {} with {} divergent steps; bound 1 + d/opt = {} holds: {}",
        report.final_ratio, report.divergent_steps, report.bound_rhs, report.bound_holds
    );
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report).map_err(other)?;
        write(&path, &(json + "\n"))?;
    }
    Ok(())
}

fn reduce_cmd(a: ReduceArgs) -> Result<(), Failure> {
    let inst = gen_srmc(a.k, a.s, a.d, a.seed, a.planted).map_err(other)?;
    let red = reduce(&inst, a.g).map_err(other)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| other(format!("{}: {e}", a.out_dir.display())))?;
    write(&a.out_dir.join("instance.graph"), &write_graph(&red.graph).map_err(other)?)?;
    write(&a.out_dir.join("instance.provenance"), &write_provenance(&red))?;
    println!(
        "reduced k={} s={} d={}: {} vertices, {} edges, r = {}, k' = {}",
        a.k,
        a.s,
        a.d,
        red.graph.vertex_count(),
        red.graph.edge_count(),
        red.regular_degree,
        red.k_prime
    );
    if a.verify {
        let report = equivalence_check(&inst, a.g).map_err(other)?;
        let json = serde_json::to_string_pretty(&report).map_err(other)?;
        write(&a.out_dir.join("equivalence.json"), &(json + "\n"))?;
        println!(
            "clique found: {}, deletion found: {}, consistent: {}",
            report.clique_found, report.deletion_found, report.consistent
        );
        if !report.consistent {
            return Err(Failure::new(1, "clique and deletion oracles disagree"));
        }
    }
    Ok(())
}

fn gen(cmd: GenCommand) -> Result<(), Failure> {
    match cmd {
        GenCommand::Graph { n, p, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(other(format!("p = {p} outside [0, 1]")));
            }
            write(&out, &write_graph(&random_graph(n, p, seed)).map_err(other)?)
        }
        GenCommand::Churn {
            n,
            steps,
            p_add,
            seed,
            out,
        } => write(&out, &write_script(&churn_script(n, steps, p_add, seed).map_err(other)?)),
        GenCommand::EdgeByEdge { graph, seed, out } => {
            let g = parse_graph(&read(&graph)?).map_err(|e| other(format!("{}: {e}", graph.display())))?;
            write(&out, &write_script(&build_script_edge_by_edge(&g, seed)))
        }
    }
}

fn verify(graph: PathBuf, r: usize, max_deletions: usize, budget: u64) -> Result<(), Failure> {
    let g = parse_graph(&read(&graph)?).map_err(|e| other(format!("{}: {e}", graph.display())))?;
    let found = verify_deletion_with_budget(&g, r, max_deletions, budget).map_err(other)?;
    let witness: Option<Vec<u32>> = found.map(|w| w.into_iter().map(|v: VertexId| v.0).collect());
    println!("{}", serde_json::json!({ "r": r, "max_deletions": max_deletions, "witness": witness }));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error: {line}");
            return ExitCode::from(3);
        }
    };
    let result = match cli.command {
        Command::Maintain(a) => maintain(a),
        Command::Divergence { n, out } => divergence(n, out),
        Command::Reduce(a) => reduce_cmd(a),
        Command::Gen(cmd) => gen(cmd),
        Command::Verify {
            graph,
            r,
            max_deletions,
            budget,
        } => verify(graph, r, max_deletions, budget),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
