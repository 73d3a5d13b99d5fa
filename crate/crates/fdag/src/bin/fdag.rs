//! Command-line front end: solve, verify, classify, generate, reduce a
//! coloring instance, or benchmark a fixture directory.
//!
//! Exit codes: 0 success, 1 infeasible decision, 2 input error, 3 budget
//! exhausted.

use clap::{Args, Parser, Subcommand};
use fdag::dispatch::dispatch_solve_with;
use fdag::files;
use fdag::gen;
use fdag::model::Instance;
use fdag::modular;
use fdag::{Budgets, Error};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fdag", version, about = "Min-max dissatisfaction allocation on preference DAGs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of the key-value text format.
    #[arg(long, global = true)]
    json: bool,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Branch-node limit for the exhaustive oracle (env: FDAG_ORACLE_BUDGET).
    #[arg(long, global = true)]
    oracle_budget: Option<u64>,
    /// Guess limit for the modular enumeration (env: FDAG_GUESS_BUDGET).
    #[arg(long, global = true)]
    guess_budget: Option<u64>,
    /// Largest k routed to the out-forest DP (env: FDAG_DP_K_CAP).
    #[arg(long, global = true)]
    dp_k_cap: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budgets, Error> {
        let mut b = Budgets::default();
        b.oracle_nodes = pick(self.oracle_budget, "FDAG_ORACLE_BUDGET", b.oracle_nodes)?;
        b.guess_budget = pick(self.guess_budget, "FDAG_GUESS_BUDGET", b.guess_budget)?;
        b.dp_k_cap = pick(self.dp_k_cap, "FDAG_DP_K_CAP", b.dp_k_cap)?;
        Ok(b)
    }
}

fn pick<T: std::str::FromStr>(flag: Option<T>, env: &str, default: T) -> Result<T, Error> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env) {
        Ok(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad value `{s}` in ${env}"))),
        Err(_) => Ok(default),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file with the best applicable solver.
    Solve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check an allocation file against an instance (and its threshold).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        allocation: PathBuf,
    },
    /// Report shape tags, width, and the modular partition.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a generated instance file.
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Build the coloring-hardness instance for an undirected graph.
    ReduceColoring {
        /// Number of vertices of the undirected graph.
        #[arg(long)]
        vertices: usize,
        /// Comma-separated edge list, e.g. `0-1,1-2,0-2`.
        #[arg(long)]
        edges: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Time the dispatcher over every `.fdag` file in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    RandomDag {
        #[arg(long)]
        n: usize,
        /// Arc probability in [0, 1].
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    OutStars {
        /// Comma-separated leaf counts, e.g. `10,1,1,1`; empty for none.
        #[arg(long, default_value = "")]
        leaves: String,
        #[arg(long, default_value_t = 0)]
        singletons: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    DirectedMatching {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Three disjoint k-vertex paths for k agents.
    ThreePaths {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    WidthTwo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. }
                | Error::StateSpaceExceeded
                | Error::UnsolvableWithinBudget(_) => 3u8,
                _ => 2u8,
            };
            let tag = if code == 3 { "budget" } else { "input" };
            eprintln!("error[{tag}]: {e}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let budgets = cli.budgets.resolve()?;
    match &cli.cmd {
        Cmd::Solve { input } => {
            let inst = read_instance(input)?;
            let (result, _report) = dispatch_solve_with(&inst, &budgets)?;
            print!("{}", files::render_result(&inst, &result, cli.json));
            match inst.threshold {
                Some(d) if result.optimum > d => Ok(ExitCode::from(1)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Cmd::Verify { input, allocation } => {
            let inst = read_instance(input)?;
            let text = std::fs::read_to_string(allocation)?;
            let alloc = files::parse_allocation(&text, &inst)?;
            let (rendered, ok) = files::render_verdict(&inst, &alloc, cli.json)?;
            print!("{rendered}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Classify { input } => {
            let inst = read_instance(input)?;
            print!("{}", classify_text(&inst, cli.json));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { family } => {
            let (inst, comment, output) = generate(family)?;
            std::fs::write(output, files::serialize_instance(&inst, Some(&comment)))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ReduceColoring {
            vertices,
            edges,
            k,
            output,
        } => {
            let edge_list = parse_edge_list(edges)?;
            let red = gen::reduce_coloring(*vertices, &edge_list, *k)?;
            let comment = format!(
                "coloring reduction: H has {} vertices, {} edges, k = {}\n\
                 vertex layout per copy c of size {}: originals 0..{}, then one vertex per edge\n\
                 threshold is met exactly when H is {}-colorable",
                vertices,
                edge_list.len(),
                k,
                vertices + edge_list.len(),
                vertices,
                k
            );
            std::fs::write(output, files::serialize_instance(&red.instance, Some(&comment)))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { dir } => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "fdag"))
                .collect();
            paths.sort();
            let mut rows = Vec::new();
            for path in &paths {
                let inst = read_instance(path)?;
                let start = Instant::now();
                let outcome = dispatch_solve_with(&inst, &budgets);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match outcome {
                    Ok((result, _)) => rows.push((name, inst.n(), inst.k, result.solver.to_string(), result.optimum.to_string(), ms)),
                    Err(e) => rows.push((name, inst.n(), inst.k, format!("error: {e}"), "-".into(), ms)),
                }
            }
            if cli.json {
                let doc: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(f, n, k, solver, optimum, ms)| {
                        serde_json::json!({
                            "file": f, "n": n, "k": k,
                            "solver": solver, "optimum": optimum, "ms": ms,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc).expect("plain data"));
            } else {
                println!("{:<28} {:>4} {:>3} {:<16} {:>8} {:>9}", "file", "n", "k", "solver", "optimum", "ms");
                for (f, n, k, solver, optimum, ms) in &rows {
                    println!("{f:<28} {n:>4} {k:>3} {solver:<16} {optimum:>8} {ms:>9.2}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Error> {
    files::parse_instance(&std::fs::read_to_string(path)?)
}

fn classify_text(inst: &Instance, json: bool) -> String {
    let g = &inst.graph;
    let tags: Vec<String> = g.classify_shape().iter().map(|t| t.to_string()).collect();
    let cert = g.width_and_chain_partition();
    let mp = modular::modular_partition(g);
    if json {
        let modules: Vec<serde_json::Value> = mp
            .modules
            .iter()
            .map(|m| {
                serde_json::json!({
                    "kind": match m.kind {
                        modular::ModuleKind::Path(_) => "path",
                        modular::ModuleKind::IndependentSet => "independent_set",
                    },
                    "vertices": m.vertices,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "n": inst.n(),
            "k": inst.k,
            "tags": tags,
            "width": cert.width,
            "modules": modules,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", inst.n());
        let _ = writeln!(out, "k: {}", inst.k);
        let _ = writeln!(out, "tags: {}", tags.join(" "));
        let _ = writeln!(out, "width: {}", cert.width);
        let _ = writeln!(out, "modules: {}", mp.d());
        for (i, m) in mp.modules.iter().enumerate() {
            let kind = match m.kind {
                modular::ModuleKind::Path(_) => "path",
                modular::ModuleKind::IndependentSet => "independent_set",
            };
            let verts: Vec<String> = m.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "module {i}: {kind} {}", verts.join(" "));
        }
        out
    }
}

fn generate(family: &GenCmd) -> Result<(Instance, String, &PathBuf), Error> {
    Ok(match family {
        GenCmd::RandomDag { n, p, seed, k, output } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Parse(format!("probability {p} out of [0, 1]")));
            }
            let g = gen::gen_random_dag(*n, *p, *seed);
            (
                Instance::new(g, *k),
                format!("random dag: n {n} p {p} seed {seed}"),
                output,
            )
        }
        GenCmd::OutStars { leaves, singletons, k, output } => {
            let counts = parse_count_list(leaves)?;
            let g = gen::gen_out_stars(&counts, *singletons)?;
            (
                Instance::new(g, *k),
                format!("out-stars: leaves {leaves:?} singletons {singletons}"),
                output,
            )
        }
        GenCmd::DirectedMatching { edges, k, output } => (
            Instance::new(gen::gen_directed_matching(*edges), *k),
            format!("directed matching: {edges} edges"),
            output,
        ),
        GenCmd::ThreePaths { k, output } => {
            let (inst, expected) = gen::gen_three_paths(*k);
            (
                inst,
                format!("three {k}-vertex paths; known optimum {expected}"),
                output,
            )
        }
        GenCmd::WidthTwo { n, seed, k, output } => (
            Instance::new(gen::gen_width_two(*n, *seed)?, *k),
            format!("width-two dag: n {n} seed {seed}"),
            output,
        ),
    })
}

fn parse_count_list(text: &str) -> Result<Vec<usize>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad count `{t}`")))
        })
        .collect()
}

fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|pair| {
            let (u, v) = pair
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge `{pair}`, expected `u-v`")))?;
            let u = u.trim().parse().map_err(|_| Error::Parse(format!("bad edge `{pair}`")))?;
            let v = v.trim().parse().map_err(|_| Error::Parse(format!("bad edge `{pair}`")))?;
            Ok((u, v))
        })
        .collect()
}
