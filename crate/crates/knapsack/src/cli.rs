//! Command-line front end: solve, bench, gen, oracle.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    builtin_problems, emit_stats_csv, emit_trace_csv, random_suite, run_experiment_jobs,
    Algorithm, RunStats, LITERATURE_RANDOM_SUITE,
};
use crate::cultural::run_ca;
use crate::error::{Error, Result};
use crate::evolution::{run_ga, EvolutionConfig};
use crate::format::{parse_instance, serialize_instance};
use crate::oracle::{auto_solve, brute_force_solve, dp_solve, greedy_solve, OracleResult};
use crate::problem::{generate_random_instance, FitnessMode, Instance};

#[derive(Debug, Parser)]
#[command(name = "knapsack-ca", version, about = "Cultural algorithm and GA solvers for 0-1 knapsack problems")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance file with GA or CA.
    Solve(SolveArgs),
    /// Run the multi-run benchmark over a suite and emit statistics.
    Bench(BenchArgs),
    /// Generate a random instance file.
    Gen(GenArgs),
    /// Compute the exact optimum (or greedy bound) of an instance file.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoChoice {
    Ga,
    Ca,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BenchAlgoChoice {
    Ga,
    Ca,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitnessChoice {
    /// Value minus the adaptive capacity-overshoot penalty.
    Penalty,
    /// Zero fitness for any infeasible solution.
    Zero,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodChoice {
    Auto,
    Dp,
    Brute,
    Greedy,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Path to the instance file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "ca")]
    algo: AlgoChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    pop: usize,
    #[arg(long, default_value_t = 50)]
    iters: usize,
    #[arg(long, default_value_t = 0.9)]
    pc: f64,
    #[arg(long, value_enum, default_value = "penalty")]
    fitness: FitnessChoice,
    #[arg(long, default_value_t = 1)]
    elitism: usize,
    /// Write the convergence trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "paper")]
    suite: SuiteChoice,
    #[arg(long, value_enum, default_value = "both")]
    algo: BenchAlgoChoice,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the stats CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteChoice {
    /// The ten builtin benchmark problems P1-P10.
    Paper,
    /// The eight seeded random large problems P11-P18.
    Random,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    capacity: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodChoice,
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version on stdout with status 0.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let mut inst = parse_instance(&text)?;
    if inst.name().is_none() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            inst = inst.with_name(stem);
        }
    }
    Ok(inst)
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let cfg = EvolutionConfig {
        population_size: args.pop,
        max_iterations: args.iters,
        base_crossover_rate: args.pc,
        fitness_mode: match args.fitness {
            FitnessChoice::Penalty => FitnessMode::Penalized,
            FitnessChoice::Zero => FitnessMode::ZeroIfInvalid,
        },
        seed: args.seed,
        elitism_count: args.elitism,
        ..Default::default()
    };
    cfg.validate()?;

    let start = Instant::now();
    let (best, trace) = match args.algo {
        AlgoChoice::Ga => run_ga(&inst, &cfg)?,
        AlgoChoice::Ca => run_ca(&inst, &cfg)?,
    };
    let elapsed = start.elapsed();

    println!("instance: {}", inst.name().unwrap_or("unnamed"));
    println!("algorithm: {}", match args.algo { AlgoChoice::Ga => "GA", AlgoChoice::Ca => "CA" });
    println!("best value: {}", best.total_value);
    println!("best fitness: {}", best.fitness);
    println!("total weight: {} / capacity {}", best.total_weight, inst.capacity());
    println!("feasible: {}", best.is_feasible());
    println!(
        "selected items: {:?}",
        best.solution.selected_indices()
    );
    if let Some(opt) = inst.known_optimum() {
        println!("known optimum: {opt}");
    }
    println!("elapsed: {:.3}s", elapsed.as_secs_f64());

    if let Some(path) = args.trace {
        let mut file = fs::File::create(&path)
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
        emit_trace_csv(&trace, &mut file)?;
    }
    Ok(())
}

fn print_stats_table(stats: &[RunStats]) {
    println!(
        "{:<8} {:<7} {:>5} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>12}",
        "problem", "method", "runs", "best", "worst", "average", "median", "std.dev", "time(s)", "optimum"
    );
    for s in stats {
        println!(
            "{:<8} {:<7} {:>5} {:>12} {:>12} {:>12.4} {:>12} {:>10.4} {:>10.4} {:>12}",
            s.instance_name,
            s.algorithm.to_string(),
            s.runs,
            s.best,
            s.worst,
            s.average,
            s.median,
            s.std_dev,
            s.avg_time_seconds,
            s.optimum.map(|o| o.to_string()).unwrap_or_default()
        );
    }
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.runs < 1 {
        return Err(Error::Config("--runs must be at least 1".into()));
    }
    let mut instances = match args.suite {
        SuiteChoice::Paper => builtin_problems(),
        SuiteChoice::Random => {
            // Attach the DP optimum so the stats rows carry ground truth.
            random_suite(args.seed)
                .into_iter()
                .map(|inst| {
                    let opt = dp_solve_quiet(&inst);
                    match opt {
                        Some(o) => inst.with_known_optimum(o),
                        None => inst,
                    }
                })
                .collect()
        }
    };
    instances.sort_by_key(|i| {
        i.name()
            .and_then(|n| n.trim_start_matches('P').parse::<usize>().ok())
            .unwrap_or(usize::MAX)
    });

    let algos: Vec<Algorithm> = match args.algo {
        BenchAlgoChoice::Ga => vec![Algorithm::Ga],
        BenchAlgoChoice::Ca => vec![Algorithm::Ca],
        BenchAlgoChoice::Both => vec![Algorithm::Ga, Algorithm::Ca],
    };

    let cfg = EvolutionConfig { seed: args.seed, ..Default::default() };
    let mut stats = Vec::new();
    for inst in &instances {
        for &algo in &algos {
            stats.push(run_experiment_jobs(inst, algo, &cfg, args.runs, args.jobs)?);
        }
    }

    print_stats_table(&stats);

    if matches!(args.suite, SuiteChoice::Random) {
        println!();
        println!("literature values for DGSA/CDGSA on random suites (not reproduced here;");
        println!("the published instances and seeds are unavailable):");
        println!(
            "{:<8} {:<7} {:>12} {:>12} {:>12} {:>12}",
            "problem", "method", "best", "worst", "average", "median"
        );
        for (name, method, best, worst, avg, median) in LITERATURE_RANDOM_SUITE {
            println!(
                "{:<8} {:<7} {:>12} {:>12} {:>12} {:>12}",
                name, method, best, worst, avg, median
            );
        }
    }

    if let Some(path) = args.out {
        let mut file = fs::File::create(&path)
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
        emit_stats_csv(&stats, &mut file)?;
        file.flush()?;
    }
    Ok(())
}

fn dp_solve_quiet(inst: &Instance) -> Option<f64> {
    dp_solve(inst).ok().map(|r| r.optimum_value)
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let inst = generate_random_instance(args.n, args.capacity, args.seed)?;
    let text = serialize_instance(&inst);
    fs::write(&args.out, text)
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", args.out.display())))?;
    println!("wrote {} (n={}, W={})", args.out.display(), args.n, args.capacity);
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let result: OracleResult = match args.method {
        MethodChoice::Auto => auto_solve(&inst)?,
        MethodChoice::Dp => dp_solve(&inst)?,
        MethodChoice::Brute => brute_force_solve(&inst)?,
        MethodChoice::Greedy => greedy_solve(&inst)?,
    };
    println!("instance: {}", inst.name().unwrap_or("unnamed"));
    println!("method: {}", result.method);
    println!("optimum: {}", result.optimum_value);
    println!(
        "witness: {}",
        result
            .witness
            .bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect::<String>()
    );
    println!("selected items: {:?}", result.witness.selected_indices());
    Ok(())
}
