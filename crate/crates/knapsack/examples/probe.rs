//! Quick probe: one random-suite instance at a chosen iteration budget.
//! Usage: probe <suite_index_0_to_7> <iters> [seed] [runs] [algo]

use knapsack_ca::bench::{random_suite, run_experiment_jobs, Algorithm};
use knapsack_ca::evolution::EvolutionConfig;
use knapsack_ca::oracle::{dp_solve, greedy_solve};

fn main() {
    let mut args = std::env::args().skip(1);
    let idx: usize = args.next().unwrap().parse().unwrap();
    let iters: usize = args.next().unwrap().parse().unwrap();
    let seed: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(0);
    let runs: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(10);
    let algo = match args.next().as_deref() {
        Some("ga") => Algorithm::Ga,
        _ => Algorithm::Ca,
    };

    let inst = random_suite(seed).swap_remove(idx);
    let opt = dp_solve(&inst).unwrap().optimum_value;
    let greedy = greedy_solve(&inst).unwrap().optimum_value;
    let cfg = EvolutionConfig { seed, max_iterations: iters, ..Default::default() };
    let s = run_experiment_jobs(&inst, algo, &cfg, runs, 8).unwrap();
    println!(
        "{} iters={} {:?} best={} worst={} opt={} greedy={} best/opt={:.4} beats_greedy={}",
        inst.name().unwrap(),
        iters,
        algo,
        s.best,
        s.worst,
        opt,
        greedy,
        s.best / opt,
        s.best >= greedy
    );
}
