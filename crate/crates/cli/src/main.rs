use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use permrun::bench::{run_bench, to_csv, BenchConfig};
use permrun::matching::{dp_trace, find_embedding_with, MatchOptions};
use permrun::oracle::{brute_force_match_with_budget, has_clique_with_budget, lis_length, DEFAULT_BUDGET};
use permrun::{
    build_pattern_graph, lemma_decomposition, reduce_clique, validate_decomposition, Embedding, Error, Graph,
    Permutation, RunDecomposition,
};

/// Exact permutation pattern matching by alternating runs.
#[derive(Parser)]
#[command(name = "permrun", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether PATTERN occurs in TEXT and print a witness.
    Match {
        pattern: String,
        text: String,
        /// Print the table X_0..X_k of the matching function that succeeded.
        #[arg(long)]
        trace: bool,
        /// Use brute force instead of the run-based matcher.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
        /// Evaluate matching functions on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// List runs, valleys, peaks and vales of a permutation.
    Runs { perm: String },
    /// Print the run-bounded path decomposition of the pattern graph.
    Pathwidth { perm: String },
    /// Turn a Clique instance into a pattern matching instance.
    ReduceClique {
        graph: PathBuf,
        k: usize,
        /// Write the instance here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Random benchmark; prints CSV.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    Match { pattern: String, text: String },
    Lis { perm: String },
    Clique { graph: PathBuf, k: usize },
}

#[derive(Args)]
struct BenchArgs {
    /// Text lengths.
    #[arg(long = "n", value_delimiter = ',', num_args = 0.., default_values_t = [12])]
    ns: Vec<usize>,
    /// Pattern lengths.
    #[arg(long = "k", value_delimiter = ',', num_args = 0.., default_values_t = [4])]
    ks: Vec<usize>,
    /// Random instances per (n, k) cell.
    #[arg(long, default_value_t = 100)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check every outcome against brute force.
    #[arg(long)]
    verify: bool,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. }
            | Error::BoundViolated(_)
            | Error::OracleDisagreement(_)
            | Error::Structure(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("PERMRUN_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("PERMRUN_BUDGET: `{s}` is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn perm(s: &str, what: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("{what}: {e}")))
}

fn graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", path.display())))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Match {
            pattern,
            text,
            trace,
            oracle,
            json,
            sequential,
        } => cmd_match(&pattern, &text, trace, oracle, json, sequential),
        Command::Runs { perm: p } => cmd_runs(&p),
        Command::Pathwidth { perm: p } => cmd_pathwidth(&p),
        Command::ReduceClique { graph: g, k, output } => cmd_reduce(&g, k, output),
        Command::Oracle(o) => cmd_oracle(o),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn report(embedding: &Option<Embedding>) {
    match embedding {
        Some(e) => {
            println!("match");
            println!("positions: {}", join(&e.positions));
            println!("values: {}", join(&e.values));
        }
        None => println!("no matching"),
    }
}

fn cmd_match(pattern: &str, text: &str, trace: bool, oracle: bool, json: bool, sequential: bool) -> Outcome {
    let pattern = perm(pattern, "pattern")?;
    let text = perm(text, "text")?;
    if oracle {
        let embedding = brute_force_match_with_budget(&pattern, &text, budget()?)?;
        if json {
            let doc = json!({
                "matched": embedding.is_some(),
                "positions": embedding.as_ref().map(|e| e.positions.clone()),
                "values": embedding.as_ref().map(|e| e.values.clone()),
                "stats": null,
            });
            println!("{doc}");
        } else {
            report(&embedding);
        }
        return Ok(embedding.is_some());
    }

    let opts = MatchOptions {
        parallel: !sequential,
        prune: true,
    };
    let outcome = find_embedding_with(&pattern, &text, opts);
    let table = match (&outcome.stats.winner, trace) {
        (Some(f), true) => Some(dp_trace(&pattern, &text, f)?),
        _ => None,
    };
    if json {
        let mut doc = json!({
            "matched": outcome.embedding.is_some(),
            "positions": outcome.embedding.as_ref().map(|e| e.positions.clone()),
            "values": outcome.embedding.as_ref().map(|e| e.values.clone()),
            "stats": outcome.stats,
        });
        if let Some(t) = &table {
            doc["trace"] = json!({
                "function": t.function.starts().iter().map(|s| s + 1).collect::<Vec<_>>(),
                "levels": t.levels.iter().map(|l| l.coords()).collect::<Vec<_>>(),
            });
        }
        println!("{doc}");
    } else {
        report(&outcome.embedding);
        if trace {
            match &table {
                Some(t) => {
                    println!("matching function (first text run of each block): {}", t.function);
                    for level in &t.levels {
                        let tuples: Vec<String> = level
                            .tuples
                            .iter()
                            .map(|x| {
                                let c: Vec<String> = x.coords.iter().map(usize::to_string).collect();
                                format!("({})", c.join(","))
                            })
                            .collect();
                        println!("X_{} = {{{}}}", level.kappa, tuples.join(", "));
                    }
                }
                None if pattern.len() <= 1 => println!("trace: no table is built for patterns of length at most 1"),
                None => println!("trace: no matching function produced a nonempty X_k"),
            }
        }
    }
    Ok(outcome.embedding.is_some())
}

fn cmd_runs(p: &str) -> Outcome {
    let p = perm(p, "permutation")?;
    let d = RunDecomposition::new(&p);
    println!("runs: {}", d.count());
    for (i, (run, values)) in d.runs().iter().zip(d.run_values()).enumerate() {
        println!("  {}: {:<4} {}", i + 1, run.direction.symbol(), join(values));
    }
    let set = |s: std::collections::BTreeSet<usize>| join(&s.into_iter().collect::<Vec<_>>());
    println!("valleys: {}", set(d.valleys()));
    println!("peaks: {}", set(d.peaks()));
    let vales: Vec<String> = d.vales().iter().map(|v| format!("[{}]", join(v))).collect();
    println!("vales: {}", vales.join(" "));
    Ok(true)
}

fn cmd_pathwidth(p: &str) -> Outcome {
    let p = perm(p, "permutation")?;
    if p.is_empty() {
        return Err(Failure::Usage("permutation: empty".into()));
    }
    let g = build_pattern_graph(&p);
    let d = lemma_decomposition(&p);
    let (valid, width) = validate_decomposition(&g, &d);
    print!("{d}");
    println!("width: {width}");
    println!("runs: {}", RunDecomposition::new(&p).count());
    println!("valid: {valid}");
    Ok(valid)
}

fn cmd_reduce(path: &PathBuf, k: usize, output: Option<PathBuf>) -> Outcome {
    let g = graph(path)?;
    let inst = reduce_clique(&g, k)?;
    inst.check_structure()?;
    match output {
        Some(out) => {
            fs::write(&out, inst.format()).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            print!("{}", inst.metadata());
        }
        None => print!("{}", inst.format()),
    }
    Ok(true)
}

fn cmd_oracle(command: OracleCommand) -> Outcome {
    match command {
        OracleCommand::Match { pattern, text } => {
            let pattern = perm(&pattern, "pattern")?;
            let text = perm(&text, "text")?;
            let e = brute_force_match_with_budget(&pattern, &text, budget()?)?;
            report(&e);
            Ok(e.is_some())
        }
        OracleCommand::Lis { perm: p } => {
            println!("{}", lis_length(&perm(&p, "permutation")?));
            Ok(true)
        }
        OracleCommand::Clique { graph: path, k } => {
            let g = graph(&path)?;
            match has_clique_with_budget(&g, k, budget()?)? {
                Some(c) => {
                    println!("clique: {}", join(&c));
                    Ok(true)
                }
                None => {
                    println!("no clique");
                    Ok(false)
                }
            }
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Outcome {
    let config = BenchConfig {
        ns: args.ns,
        ks: args.ks,
        instances: args.seeds,
        seed: args.seed,
        verify: args.verify,
        budget: budget()?,
        parallel: false,
    };
    let records = run_bench(&config)?;
    print!("{}", to_csv(&records, config.seed));
    Ok(true)
}
