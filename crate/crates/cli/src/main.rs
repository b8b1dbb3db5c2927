//! `pmi` — solve, generate, reduce, export and cross-check partition matroid
//! interdiction instances.
//!
//! Exit codes: 0 success, 1 user error (bad files, flags or instance sizes),
//! 2 internal disagreement detected by `check`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pmi_core::{
    dual_inner_value, export_ilp, follower_best_response, gen_random, parse_graph,
    parse_instance, psi, reduce_mis, serialize_instance, solve_dp, solve_dual_detailed,
    solve_greedy, solve_oracle_full, solve_oracle_leader, BlockingDecision, DualConfig,
    GenParams, PartitionMatroid, SolveResult, SortedInstance,
};

#[derive(Parser)]
#[command(name = "pmi", version, about = "Partition matroid interdiction solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Duality-based when the follower has at most twice as many groups as
    /// the leader, otherwise dynamic programming.
    Auto,
    Dual,
    Dp,
    Greedy,
    OracleFull,
    OracleLeader,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the optimum.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Emit a single JSON object instead of text.
        #[arg(long)]
        json: bool,
        /// Worker threads for the dual solver's enumeration.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kl: usize,
        #[arg(long)]
        kf: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        distinct_weights: bool,
        #[arg(long, default_value_t = 0)]
        weight_min: u64,
        #[arg(long, default_value_t = 20)]
        weight_max: u64,
        #[arg(long, default_value_t = 0)]
        leader_budget_min: u64,
        #[arg(long, default_value_t = 3)]
        leader_budget_max: u64,
        #[arg(long, default_value_t = 0)]
        follower_budget_min: u64,
        #[arg(long, default_value_t = 3)]
        follower_budget_max: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the interdiction instance equivalent to an independent-set
    /// threshold question on a graph.
    ReduceMis {
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Export the single-level big-M reformulation in LP format.
    ExportIlp {
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run every applicable solver and verify they agree.
    Check {
        instance: PathBuf,
        /// Additionally verify the dual bound against the follower response
        /// on every binary blocking vector (small instances only).
        #[arg(long)]
        all_x: bool,
    },
}

enum CliError {
    /// Bad input: exits 1.
    User(String),
    /// Solvers disagree or an invariant broke: exits 2.
    Disagreement(String),
}

impl From<pmi_core::Error> for CliError {
    fn from(err: pmi_core::Error) -> Self {
        CliError::User(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::User(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Disagreement(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_sorted(path: &Path) -> Result<SortedInstance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::User(format!("{}: {e}", path.display())))?;
    let instance = parse_instance(&text)?;
    Ok(pmi_core::sort_weights(instance)?)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact objective as `value/scale` in lowest terms.
fn rational_string(scaled: i64, scale: u64) -> String {
    let magnitude = scaled.unsigned_abs();
    let g = gcd(magnitude, scale).max(1);
    let (num, den) = (magnitude / g, scale / g);
    let sign = if scaled < 0 { "-" } else { "" };
    if den == 1 {
        format!("{sign}{num}")
    } else {
        format!("{sign}{num}/{den}")
    }
}

fn pick_auto(sorted: &SortedInstance) -> Algo {
    let k_l = sorted.base().num_leader_groups();
    let k_f = sorted.base().num_follower_groups();
    if k_f <= 2 * k_l {
        Algo::Dual
    } else {
        Algo::Dp
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            instance,
            algo,
            json,
            threads,
        } => {
            let sorted = load_sorted(&instance)?;
            let algo = match algo {
                Algo::Auto => pick_auto(&sorted),
                other => other,
            };
            let matroid = PartitionMatroid::from_instance(sorted.base());
            let mut exact_flag: Option<bool> = None;
            let result: SolveResult = match algo {
                Algo::Auto => unreachable!("auto resolved above"),
                Algo::Dual => {
                    let config = DualConfig {
                        threads,
                        ..DualConfig::default()
                    };
                    solve_dual_detailed(&sorted, &matroid, &config)?.result
                }
                Algo::Dp => solve_dp(&sorted)?,
                Algo::Greedy => {
                    let solution = solve_greedy(&sorted, &matroid);
                    exact_flag = Some(solution.exact);
                    solution.result
                }
                Algo::OracleFull => solve_oracle_full(&sorted)?,
                Algo::OracleLeader => solve_oracle_leader(&sorted)?,
            };
            print_solution(&sorted, &result, exact_flag, json);
            Ok(())
        }
        Command::Gen {
            n,
            kl,
            kf,
            seed,
            distinct_weights,
            weight_min,
            weight_max,
            leader_budget_min,
            leader_budget_max,
            follower_budget_min,
            follower_budget_max,
            output,
        } => {
            let params = GenParams {
                n,
                k_l: kl,
                k_f: kf,
                leader_budget_range: (leader_budget_min, leader_budget_max),
                follower_budget_range: (follower_budget_min, follower_budget_max),
                weight_range: (weight_min, weight_max),
                distinct_weights,
            };
            let instance = gen_random(&params, seed)?;
            std::fs::write(&output, serialize_instance(&instance))?;
            println!("wrote {} (n = {n}, seed = {seed})", output.display());
            Ok(())
        }
        Command::ReduceMis { graph, q, output } => {
            let text = std::fs::read_to_string(&graph)
                .map_err(|e| CliError::User(format!("{}: {e}", graph.display())))?;
            let graph = parse_graph(&text)?;
            let reduced = reduce_mis(&graph, q)?;
            std::fs::write(&output, serialize_instance(&reduced.instance))?;
            println!(
                "wrote {} (n = {}, leader groups = {}, follower groups = {})",
                output.display(),
                reduced.instance.n(),
                reduced.instance.num_leader_groups(),
                reduced.instance.num_follower_groups(),
            );
            println!("threshold: {}", reduced.threshold);
            Ok(())
        }
        Command::ExportIlp { instance, output } => {
            let sorted = load_sorted(&instance)?;
            std::fs::write(&output, export_ilp(&sorted))?;
            println!("wrote {}", output.display());
            Ok(())
        }
        Command::Check { instance, all_x } => check(&instance, all_x),
    }
}

fn print_solution(
    sorted: &SortedInstance,
    result: &SolveResult,
    exact_flag: Option<bool>,
    json: bool,
) {
    let scale = sorted.scale();
    if json {
        let object = serde_json::json!({
            "solver": result.solver.as_str(),
            "objective": {
                "scaled": result.objective,
                "scale": scale,
                "exact": rational_string(result.objective, scale),
            },
            "x": result.x_opt.bits().iter().map(|&b| b as u8).collect::<Vec<_>>(),
            "blocked": result.x_opt.blocked_indices(),
            "y": result.response.y.iter().map(|&b| b as u8).collect::<Vec<_>>(),
            "picked": result.response.picked_indices(),
            "exact_algorithm": exact_flag,
        });
        println!("{}", serde_json::to_string_pretty(&object).expect("json output is total"));
    } else {
        println!("solver: {}", result.solver);
        println!("objective (scaled): {}", result.objective);
        println!(
            "objective (exact): {}",
            rational_string(result.objective, scale)
        );
        let bit_line = |bits: &[bool]| {
            bits.iter()
                .map(|&b| if b { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("x: {}", bit_line(result.x_opt.bits()));
        println!("blocked: {:?}", result.x_opt.blocked_indices());
        println!("y: {}", bit_line(&result.response.y));
    }
    if exact_flag == Some(false) {
        eprintln!(
            "warning: greedy result is a heuristic here (follower groups = {}, distinct weights = {}); it carries no optimality guarantee",
            sorted.base().num_follower_groups(),
            sorted.base().weights_distinct(),
        );
    }
}

fn check(path: &Path, all_x: bool) -> Result<(), CliError> {
    let sorted = load_sorted(path)?;
    let instance = sorted.base();
    let matroid = PartitionMatroid::from_instance(instance);

    let mut exact_results: Vec<SolveResult> = Vec::new();
    let mut skipped: Vec<(&str, String)> = Vec::new();

    match solve_oracle_full(&sorted) {
        Ok(result) => exact_results.push(result),
        Err(err) => skipped.push(("oracle-full", err.to_string())),
    }
    match solve_oracle_leader(&sorted) {
        Ok(result) => exact_results.push(result),
        Err(err) => skipped.push(("oracle-leader", err.to_string())),
    }
    match pmi_core::solve_dual(&sorted, &matroid) {
        Ok(result) => exact_results.push(result),
        Err(err) => skipped.push(("dual", err.to_string())),
    }
    match solve_dp(&sorted) {
        Ok(result) => exact_results.push(result),
        Err(err) => skipped.push(("dp", err.to_string())),
    }
    let greedy = solve_greedy(&sorted, &matroid);

    for (name, why) in &skipped {
        println!("{name}: skipped ({why})");
    }
    if exact_results.is_empty() {
        return Err(CliError::User(
            "instance is too large for every exact solver".into(),
        ));
    }

    for result in &exact_results {
        println!("{}: {}", result.solver, result.objective);
        verify_result(&sorted, result)?;
    }
    if greedy.exact {
        println!("greedy: {} (exactness guarantee holds)", greedy.result.objective);
        verify_result(&sorted, &greedy.result)?;
    } else {
        println!(
            "greedy: {} (heuristic, excluded from agreement)",
            greedy.result.objective
        );
    }

    let reference = exact_results[0].objective;
    for result in &exact_results {
        if result.objective != reference {
            return Err(CliError::Disagreement(format!(
                "{} found {} but {} found {}",
                exact_results[0].solver, reference, result.solver, result.objective
            )));
        }
    }
    if greedy.exact && greedy.result.objective != reference {
        return Err(CliError::Disagreement(format!(
            "greedy claims exactness but found {} against {}",
            greedy.result.objective, reference
        )));
    }

    if all_x {
        let n = sorted.n();
        if n > 16 {
            return Err(CliError::User(format!(
                "--all-x enumerates 2^n blocking vectors; n = {n} is too large (max 16)"
            )));
        }
        for mask in 0..1u32 << n {
            let x = BlockingDecision::from_bits((0..n).map(|i| mask >> i & 1 == 1).collect());
            let dual_bound = dual_inner_value(&sorted, &x)?;
            let follower = psi(&sorted, &x)?;
            if dual_bound != follower {
                return Err(CliError::Disagreement(format!(
                    "dual bound {dual_bound} != follower value {follower} at x mask {mask:#x}"
                )));
            }
        }
        println!("duality verified on all {} blocking vectors", 1u64 << n);
    }

    println!(
        "check ok: objective {} (exact {})",
        reference,
        rational_string(reference, sorted.scale())
    );
    Ok(())
}

/// Solver-output invariants: feasible decision, response recomputes, value
/// matches.
fn verify_result(sorted: &SortedInstance, result: &SolveResult) -> Result<(), CliError> {
    if !result.x_opt.is_feasible(sorted.base()) {
        return Err(CliError::Disagreement(format!(
            "{} returned an infeasible blocking decision",
            result.solver
        )));
    }
    let response = follower_best_response(sorted, &result.x_opt)?;
    if response != result.response || result.objective != response.value {
        return Err(CliError::Disagreement(format!(
            "{} returned a stale follower response",
            result.solver
        )));
    }
    Ok(())
}
