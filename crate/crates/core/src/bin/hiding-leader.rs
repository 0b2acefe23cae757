use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hiding_leader::bench::{
    bench_captain_core, bench_degree, write_csv, DegreeAlgo, DegreeSweep, LeaderRule, Model,
};
use hiding_leader::degree::{hlda, lower_bound, random_baseline, solve_exact_bounded};
use hiding_leader::generators::{
    gen_ba, gen_captain, gen_ws, reduce_dks_to_hl, reduce_setcover_to_hl, CaptainParams,
    SetCoverInstance,
};
use hiding_leader::hide_core::{
    solve_core_exact, solve_core_greedy, solve_core_leq1, CoreExactConfig, GreedyConfig,
};
use hiding_leader::io::{read_edge_list, write_edge_list, EdgeListFile};
use hiding_leader::oracle::{oracle_min_edges, OracleBudget, OracleOutcome};
use hiding_leader::{
    core_numbers, Centrality, Decision, EdgeAdditionPlan, HidingInstance, VertexPartition,
};

#[derive(Parser)]
#[command(
    name = "hiding-leader",
    version,
    about = "Hide leaders in a network by adding follower edges"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the core number of every vertex and the degeneracy.
    Core { graph: PathBuf },
    /// Solve a degree-centrality instance.
    SolveDegree(SolveDegree),
    /// Solve a core-centrality instance.
    SolveCore(SolveCore),
    /// Generate a graph or a reduction instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Exhaustive minimum plan search for small instances.
    Oracle(OracleArgs),
    /// Run an experiment sweep and write CSV.
    #[command(subcommand)]
    Bench(Bench),
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Edge budget; omit to minimize the number of edges instead.
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    d: usize,
    /// Report wall-clock time in the stats line.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeAlgoArg {
    Exact,
    Hlda,
    Lb,
    Random,
}

#[derive(Args)]
struct SolveDegree {
    #[arg(long, value_enum)]
    algo: DegreeAlgoArg,
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreAlgoArg {
    Leq1,
    Exact,
    Greedy,
}

#[derive(Args)]
struct SolveCore {
    #[arg(long, value_enum)]
    algo: CoreAlgoArg,
    #[command(flatten)]
    inst: InstanceArgs,
    /// Candidate pool cap for the exact search; 0 removes it.
    #[arg(long, default_value_t = 24)]
    cap: usize,
}

#[derive(Subcommand)]
enum Gen {
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        avgdeg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        avgdeg: usize,
        #[arg(long, default_value_t = 0.1)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Captain network; `--h 1` gives the single-leader layout.
    Captain {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Core-centrality instance from a Set Cover file (`n m t`, then one
    /// line of 1-based element ids per set).
    SetcoverHl {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Degree-centrality instance from a graph and subgraph size `k`.
    DksHl {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value = "degree")]
    kind: Centrality,
    #[arg(long, default_value_t = 24)]
    max_candidates: usize,
    #[arg(long, default_value_t = 10_000_000)]
    max_subsets: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ba,
    Ws,
}

#[derive(Subcommand)]
enum Bench {
    Degree {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        avgdeg: usize,
        #[arg(long, default_value_t = 0.1)]
        beta: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        dlist: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "lb,hlda,random")]
        algos: Vec<DegreeAlgo>,
        #[arg(long, default_value_t = 100)]
        leader_pool: usize,
        #[arg(long, default_value_t = 20)]
        leaders: usize,
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Captain {
        #[arg(long, value_delimiter = ',', required = true)]
        plist: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        hlist: Vec<usize>,
        #[arg(long, default_value_t = 550)]
        total: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<EdgeListFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance(args: &InstanceArgs, kind: Centrality) -> Result<HidingInstance> {
    let file = load(&args.graph)?;
    Ok(HidingInstance::new(
        file.graph,
        file.partition,
        args.b,
        args.d,
        kind,
    )?)
}

fn emit(output: Option<&Path>, text: &[u8]) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().lock().write_all(text)?),
    }
}

struct Report {
    algorithm: String,
    decision: Option<bool>,
    plan: Option<EdgeAdditionPlan>,
    lb: Option<usize>,
    seed: Option<u64>,
    runtime_ms: Option<f64>,
}

impl Report {
    fn print(&self) -> Result<()> {
        let mut out = io::stdout().lock();
        if let Some(plan) = &self.plan {
            for e in &plan.edges {
                writeln!(out, "{} {}", e.u(), e.v())?;
            }
        }
        let stats = json!({
            "algorithm": self.algorithm,
            "decision": self.decision.map(|y| if y { "yes" } else { "no" }),
            "edges_added": self.plan.as_ref().map(|p| p.len()),
            "satisfied_after": self.plan.as_ref().map(|p| p.stats.satisfied_after),
            "lb": self.lb,
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
        });
        writeln!(out, "{stats}")?;
        Ok(())
    }
}

fn from_decision(algorithm: &str, d: Decision) -> Report {
    let yes = d.is_yes();
    Report {
        algorithm: algorithm.to_string(),
        decision: Some(yes),
        plan: match d {
            Decision::Yes(p) => Some(p),
            Decision::No => None,
        },
        lb: None,
        seed: None,
        runtime_ms: None,
    }
}

fn from_plan(plan: EdgeAdditionPlan) -> Report {
    Report {
        algorithm: plan.algorithm.to_string(),
        decision: None,
        seed: plan.stats.seed,
        plan: Some(plan),
        lb: None,
        runtime_ms: None,
    }
}

fn solve_degree(args: &SolveDegree) -> Result<()> {
    let inst = load_instance(&args.inst, Centrality::Degree)?;
    let start = Instant::now();
    let lb = lower_bound(&inst)?;
    let mut report = match args.algo {
        DegreeAlgoArg::Exact => {
            if inst.budget.is_none() {
                bail!("the exact solver needs --b");
            }
            from_decision("exact", solve_exact_bounded(&inst)?)
        }
        DegreeAlgoArg::Hlda => from_plan(hlda(&inst)?),
        DegreeAlgoArg::Random => from_plan(random_baseline(&inst, args.seed)?),
        DegreeAlgoArg::Lb => Report {
            algorithm: "lb".into(),
            decision: None,
            plan: None,
            lb: None,
            seed: None,
            runtime_ms: None,
        },
    };
    report.lb = Some(lb);
    if args.inst.timing {
        report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    report.print()
}

fn solve_core(args: &SolveCore) -> Result<()> {
    let inst = load_instance(&args.inst, Centrality::Core)?;
    let start = Instant::now();
    let mut report = match args.algo {
        CoreAlgoArg::Leq1 => from_decision("leq1", solve_core_leq1(&inst)?),
        CoreAlgoArg::Exact => {
            let config = CoreExactConfig {
                candidate_cap: (args.cap > 0).then_some(args.cap),
                ..CoreExactConfig::default()
            };
            from_decision("core-exact", solve_core_exact(&inst, &config)?)
        }
        CoreAlgoArg::Greedy => from_plan(solve_core_greedy(&inst, &GreedyConfig::default())?),
    };
    if args.inst.timing {
        report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    report.print()
}

fn run_gen(cmd: &Gen) -> Result<()> {
    let (text, output) = match cmd {
        Gen::Ba {
            n,
            avgdeg,
            seed,
            output,
        } => {
            let g = gen_ba(*n, *avgdeg, *seed)?;
            let file = EdgeListFile::new(g, VertexPartition::all_followers(*n));
            let notes = [format!("ba n={n} avgdeg={avgdeg} seed={seed}")];
            (write_edge_list(&file, &notes), output)
        }
        Gen::Ws {
            n,
            avgdeg,
            beta,
            seed,
            output,
        } => {
            let g = gen_ws(*n, *avgdeg, *beta, *seed)?;
            let file = EdgeListFile::new(g, VertexPartition::all_followers(*n));
            let notes = [format!("ws n={n} avgdeg={avgdeg} beta={beta} seed={seed}")];
            (write_edge_list(&file, &notes), output)
        }
        Gen::Captain { h, p, m, output } => {
            let net = gen_captain(CaptainParams {
                h: *h,
                p: *p,
                m: *m,
            })?;
            let layout = if *h == 1 {
                format!("leader 0, captains 1..={}, outer from {}", 2 * p, 2 * p + 1)
            } else {
                format!(
                    "leaders 0..{h}, captains {h}..{}, outer from {}",
                    h + h * p,
                    h + h * p
                )
            };
            let notes = [format!("captain h={h} p={p} m={m}"), layout];
            let file = EdgeListFile {
                graph: net.graph,
                partition: net.partition,
                captains: net.captains,
            };
            (write_edge_list(&file, &notes), output)
        }
        Gen::SetcoverHl { input, output } => {
            let text = fs::read_to_string(input)
                .with_context(|| format!("reading {}", input.display()))?;
            let sc = SetCoverInstance::parse(&text)?;
            let (inst, lay) = reduce_setcover_to_hl(&sc);
            let (n, m) = (lay.n, lay.m);
            let notes = [
                format!(
                    "setcover-hl n={n} m={m} budget={} target={}",
                    sc.t, inst.target
                ),
                format!("path slot (set i, element j) = i*{n} + j"),
                format!("set gadget i slot l = {} + 5*i + l", m * n),
                format!("element gadget j slot l = {} + 5*j + l", m * n + 5 * m),
            ];
            let file = EdgeListFile::new(inst.graph, inst.partition);
            (write_edge_list(&file, &notes), output)
        }
        Gen::DksHl { graph, k, output } => {
            let src = load(graph)?;
            let (inst, lay) = reduce_dks_to_hl(&src.graph, *k)?;
            let n = lay.n;
            let notes = [
                format!("dks-hl n={n} k={k} target={}", inst.target),
                format!(
                    "copies 0..{n}, pendant (v, l) = {n} + v*{n} + l, leaders from {}",
                    lay.leader(0)
                ),
            ];
            let file = EdgeListFile::new(inst.graph, inst.partition);
            (write_edge_list(&file, &notes), output)
        }
    };
    emit(output.as_deref(), text.as_bytes())
}

fn run_oracle(args: &OracleArgs) -> Result<()> {
    let file = load(&args.graph)?;
    let inst = HidingInstance::new(file.graph, file.partition, args.b, args.d, args.kind)?;
    let budget = OracleBudget {
        max_candidate_edges: args.max_candidates,
        max_subsets: args.max_subsets,
    };
    let mut out = io::stdout().lock();
    match oracle_min_edges(&inst, &budget)? {
        OracleOutcome::Optimal { size, witness } => {
            writeln!(out, "optimal {size}")?;
            for e in witness {
                writeln!(out, "{} {}", e.u(), e.v())?;
            }
        }
        OracleOutcome::NoneWithinBudget => writeln!(out, "none within budget")?,
    }
    Ok(())
}

fn run_bench(cmd: &Bench) -> Result<()> {
    let mut buf = Vec::new();
    let output = match cmd {
        Bench::Degree {
            model,
            n,
            avgdeg,
            beta,
            dlist,
            seeds,
            algos,
            leader_pool,
            leaders,
            timing,
            output,
        } => {
            let sweep = DegreeSweep {
                model: match model {
                    ModelArg::Ba => Model::Ba,
                    ModelArg::Ws => Model::Ws { beta: *beta },
                },
                n: *n,
                avg_degree: *avgdeg,
                d_list: dlist.clone(),
                algos: algos.clone(),
                seeds: seeds.clone(),
                leaders: LeaderRule {
                    top: *leader_pool,
                    count: *leaders,
                },
                timing: *timing,
            };
            write_csv(&bench_degree(&sweep), &mut buf)?;
            output
        }
        Bench::Captain {
            plist,
            hlist,
            total,
            output,
        } => {
            write_csv(&bench_captain_core(plist, hlist, *total), &mut buf)?;
            output
        }
    };
    emit(output.as_deref(), &buf)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Core { graph } => {
            let file = load(graph)?;
            let dec = core_numbers(&file.graph);
            let mut out = io::stdout().lock();
            for (v, c) in dec.core.iter().enumerate() {
                writeln!(out, "{v} {c}")?;
            }
            writeln!(out, "degeneracy {}", dec.degeneracy)?;
            Ok(())
        }
        Command::SolveDegree(args) => solve_degree(args),
        Command::SolveCore(args) => solve_core(args),
        Command::Gen(cmd) => run_gen(cmd),
        Command::Oracle(args) => run_oracle(args),
        Command::Bench(cmd) => run_bench(cmd),
    }
}
