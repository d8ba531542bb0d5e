//! Pilot runs over the random large suite: CA and GA best-of-10 against the
//! DP optimum and the greedy baseline. Used to calibrate the quality floors
//! asserted by the acceptance suite.
//!
//! Usage: cargo run --release --example pilot_random_suite -- [seed] [iters]

use knapsack_ca::bench::{random_suite, run_experiment_jobs, Algorithm};
use knapsack_ca::evolution::EvolutionConfig;
use knapsack_ca::oracle::{dp_solve, greedy_solve};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(0);
    let iters: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(2000);

    let cfg = EvolutionConfig {
        seed,
        max_iterations: iters,
        ..Default::default()
    };

    println!("seed={seed} iters={iters} pop={} pc={}", cfg.population_size, cfg.base_crossover_rate);
    println!(
        "{:<6} {:>8} {:>8} {:>10} {:>10} {:>8} {:>8}",
        "name", "optimum", "greedy", "ca_best", "ga_best", "ca/opt", "ga/opt"
    );
    for inst in random_suite(seed) {
        let opt = dp_solve(&inst).unwrap().optimum_value;
        let greedy = greedy_solve(&inst).unwrap().optimum_value;
        let ca = run_experiment_jobs(&inst, Algorithm::Ca, &cfg, 10, 8).unwrap();
        let ga = run_experiment_jobs(&inst, Algorithm::Ga, &cfg, 10, 8).unwrap();
        println!(
            "{:<6} {:>8} {:>8} {:>10} {:>10} {:>8.4} {:>8.4}",
            inst.name().unwrap(),
            opt,
            greedy,
            ca.best,
            ga.best,
            ca.best / opt,
            ga.best / opt
        );
    }
}
