//! Multi-run experiment harness: builtin benchmark instances, random large
//! suites, statistics aggregation, and CSV export.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::cultural::run_ca;
use crate::error::{Error, Result};
use crate::evolution::{run_ga, ConvergenceTrace, EvolutionConfig};
use crate::oracle::{auto_solve, greedy_solve};
use crate::problem::{generate_random_instance, Instance};

/// Which solver a stats row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ga,
    Ca,
    Greedy,
    Oracle,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Ga => write!(f, "GA"),
            Algorithm::Ca => write!(f, "CA"),
            Algorithm::Greedy => write!(f, "greedy"),
            Algorithm::Oracle => write!(f, "oracle"),
        }
    }
}

/// Aggregate of per-run best values over independent runs.
///
/// `std_dev` is the population standard deviation (divisor = runs).
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub algorithm: Algorithm,
    pub instance_name: String,
    pub runs: usize,
    pub best: f64,
    pub worst: f64,
    pub average: f64,
    pub median: f64,
    pub std_dev: f64,
    pub avg_time_seconds: f64,
    pub optimum: Option<f64>,
}

/// The ten benchmark instances, named P1 through P10, with their known
/// optima. P6 carries 52, the oracle-confirmed optimum.
pub fn builtin_problems() -> Vec<Instance> {
    let mk = |name: &str, w: Vec<f64>, cap: f64, v: Vec<f64>, opt: f64| {
        Instance::new(w, v, cap)
            .expect("builtin instance data is valid")
            .with_name(name)
            .with_known_optimum(opt)
    };
    vec![
        mk(
            "P1",
            vec![95.0, 4.0, 60.0, 32.0, 23.0, 72.0, 80.0, 62.0, 65.0, 46.0],
            269.0,
            vec![55.0, 10.0, 47.0, 5.0, 4.0, 50.0, 8.0, 61.0, 85.0, 87.0],
            295.0,
        ),
        mk(
            "P2",
            vec![
                92.0, 4.0, 43.0, 83.0, 84.0, 68.0, 92.0, 82.0, 6.0, 44.0, 32.0, 18.0, 56.0, 83.0,
                25.0, 96.0, 70.0, 48.0, 14.0, 58.0,
            ],
            878.0,
            vec![
                44.0, 46.0, 90.0, 72.0, 91.0, 40.0, 75.0, 35.0, 8.0, 54.0, 78.0, 40.0, 77.0, 15.0,
                61.0, 17.0, 75.0, 29.0, 75.0, 63.0,
            ],
            1024.0,
        ),
        mk(
            "P3",
            vec![6.0, 5.0, 9.0, 7.0],
            20.0,
            vec![9.0, 11.0, 13.0, 15.0],
            35.0,
        ),
        mk(
            "P4",
            vec![2.0, 4.0, 6.0, 7.0],
            11.0,
            vec![6.0, 10.0, 12.0, 13.0],
            23.0,
        ),
        mk(
            "P5",
            vec![
                56.358531, 80.874050, 47.987304, 89.596240, 74.660482, 85.894345, 51.353496,
                1.498459, 36.445204, 16.589862, 44.569231, 0.466933, 37.788018, 57.118442,
                60.716575,
            ],
            375.0,
            vec![
                0.125126, 19.330424, 58.500931, 35.029145, 82.284005, 17.410810, 71.050142,
                30.399487, 9.140294, 14.731285, 98.852504, 11.908322, 0.891140, 53.166295,
                60.176397,
            ],
            481.0694,
        ),
        mk(
            "P6",
            vec![30.0, 25.0, 20.0, 18.0, 17.0, 11.0, 5.0, 2.0, 1.0, 1.0],
            60.0,
            vec![20.0, 18.0, 17.0, 15.0, 15.0, 10.0, 5.0, 3.0, 1.0, 1.0],
            52.0,
        ),
        mk(
            "P7",
            vec![31.0, 10.0, 20.0, 19.0, 4.0, 3.0, 6.0],
            50.0,
            vec![70.0, 20.0, 39.0, 37.0, 7.0, 5.0, 10.0],
            107.0,
        ),
        mk(
            "P8",
            vec![
                983.0, 982.0, 981.0, 980.0, 979.0, 978.0, 488.0, 976.0, 972.0, 486.0, 486.0,
                972.0, 972.0, 485.0, 485.0, 969.0, 966.0, 483.0, 964.0, 963.0, 961.0, 958.0,
                959.0,
            ],
            10000.0,
            vec![
                981.0, 980.0, 979.0, 978.0, 977.0, 976.0, 487.0, 974.0, 970.0, 485.0, 485.0,
                970.0, 970.0, 484.0, 484.0, 976.0, 974.0, 482.0, 962.0, 961.0, 959.0, 958.0,
                857.0,
            ],
            9767.0,
        ),
        mk(
            "P9",
            vec![15.0, 20.0, 17.0, 8.0, 31.0],
            80.0,
            vec![33.0, 24.0, 36.0, 37.0, 12.0],
            130.0,
        ),
        mk(
            "P10",
            vec![
                84.0, 83.0, 43.0, 4.0, 44.0, 6.0, 82.0, 92.0, 25.0, 83.0, 56.0, 18.0, 58.0, 14.0,
                48.0, 70.0, 96.0, 32.0, 68.0, 92.0,
            ],
            879.0,
            vec![
                91.0, 72.0, 90.0, 46.0, 55.0, 8.0, 35.0, 75.0, 61.0, 15.0, 77.0, 40.0, 63.0,
                75.0, 29.0, 75.0, 17.0, 78.0, 40.0, 44.0,
            ],
            1025.0,
        ),
    ]
}

/// (item count, capacity) recipes for the eight random large instances.
pub const RANDOM_SUITE_RECIPES: [(usize, f64); 8] = [
    (100, 1100.0),
    (200, 1500.0),
    (300, 1700.0),
    (500, 2000.0),
    (800, 5000.0),
    (1000, 10000.0),
    (1200, 14000.0),
    (1500, 16000.0),
];

/// Eight random large instances named P11 through P18, deterministic in the
/// base seed.
pub fn random_suite(seed: u64) -> Vec<Instance> {
    RANDOM_SUITE_RECIPES
        .iter()
        .enumerate()
        .map(|(i, &(n, cap))| {
            let inst_seed = seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            generate_random_instance(n, cap, inst_seed)
                .expect("recipe parameters are valid")
                .with_name(format!("P{}", 11 + i))
        })
        .collect()
}

fn run_once(inst: &Instance, algorithm: Algorithm, cfg: &EvolutionConfig) -> Result<f64> {
    match algorithm {
        Algorithm::Ga => Ok(run_ga(inst, cfg)?.0.fitness),
        Algorithm::Ca => Ok(run_ca(inst, cfg)?.0.fitness),
        Algorithm::Greedy => Ok(greedy_solve(inst)?.optimum_value),
        Algorithm::Oracle => Ok(auto_solve(inst)?.optimum_value),
    }
}

fn aggregate(
    inst: &Instance,
    algorithm: Algorithm,
    runs: usize,
    mut values: Vec<f64>,
    times: Vec<Duration>,
) -> RunStats {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let best = *values.last().unwrap();
    let worst = values[0];
    let average = values.iter().sum::<f64>() / runs as f64;
    let median = if runs % 2 == 1 {
        values[runs / 2]
    } else {
        (values[runs / 2 - 1] + values[runs / 2]) / 2.0
    };
    let variance = values.iter().map(|v| (v - average).powi(2)).sum::<f64>() / runs as f64;
    let avg_time_seconds = times.iter().map(Duration::as_secs_f64).sum::<f64>() / runs as f64;
    RunStats {
        algorithm,
        instance_name: inst.name().unwrap_or("unnamed").to_string(),
        runs,
        best,
        worst,
        average,
        median,
        std_dev: variance.sqrt(),
        avg_time_seconds,
        optimum: inst.known_optimum(),
    }
}

/// `runs` independent runs with derived seeds `seed + 0 .. seed + runs - 1`,
/// aggregated into a [`RunStats`].
pub fn run_experiment(
    inst: &Instance,
    algorithm: Algorithm,
    cfg: &EvolutionConfig,
    runs: usize,
) -> Result<RunStats> {
    run_experiment_jobs(inst, algorithm, cfg, runs, 1)
}

/// As [`run_experiment`], dispatching runs to `jobs` worker threads.
/// Results are identical for any job count since every run is seeded
/// independently.
pub fn run_experiment_jobs(
    inst: &Instance,
    algorithm: Algorithm,
    cfg: &EvolutionConfig,
    runs: usize,
    jobs: usize,
) -> Result<RunStats> {
    if runs < 1 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    let jobs = jobs.max(1).min(runs);

    let run_indexed = |i: usize| -> Result<(f64, Duration)> {
        let mut run_cfg = cfg.clone();
        run_cfg.seed = cfg.seed.wrapping_add(i as u64);
        let start = Instant::now();
        let value = run_once(inst, algorithm, &run_cfg)?;
        Ok((value, start.elapsed()))
    };

    let mut values = vec![0.0; runs];
    let mut times = vec![Duration::ZERO; runs];

    if jobs == 1 {
        for i in 0..runs {
            let (v, t) = run_indexed(i)?;
            values[i] = v;
            times[i] = t;
        }
    } else {
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<Option<Result<(f64, Duration)>>>> =
            Mutex::new((0..runs).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= runs {
                        break;
                    }
                    let r = run_indexed(i);
                    results.lock().unwrap()[i] = Some(r);
                });
            }
        });
        for (i, slot) in results.into_inner().unwrap().into_iter().enumerate() {
            let (v, t) = slot.expect("every run index was dispatched")?;
            values[i] = v;
            times[i] = t;
        }
    }

    Ok(aggregate(inst, algorithm, runs, values, times))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Stats CSV: `instance,algorithm,runs,best,worst,average,median,std_dev,avg_time_s,optimum`.
pub fn emit_stats_csv(stats: &[RunStats], sink: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        sink,
        "instance,algorithm,runs,best,worst,average,median,std_dev,avg_time_s,optimum"
    )?;
    for s in stats {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{},{},{}",
            s.instance_name,
            s.algorithm,
            s.runs,
            s.best,
            s.worst,
            s.average,
            s.median,
            s.std_dev,
            s.avg_time_seconds,
            fmt_opt(s.optimum)
        )?;
    }
    Ok(())
}

/// Trace CSV: `iteration,best_so_far,p_c,p_m,belief_min,belief_max`.
/// Belief columns are empty for GA traces.
pub fn emit_trace_csv(trace: &ConvergenceTrace, sink: &mut dyn Write) -> std::io::Result<()> {
    writeln!(sink, "iteration,best_so_far,p_c,p_m,belief_min,belief_max")?;
    for pt in &trace.points {
        writeln!(
            sink,
            "{},{},{},{},{},{}",
            pt.iteration,
            pt.best_so_far,
            pt.p_c,
            pt.p_m,
            fmt_opt(pt.belief_min),
            fmt_opt(pt.belief_max)
        )?;
    }
    Ok(())
}

/// Published DGSA/CDGSA results on the eight random large problems.
/// Literature context only: the underlying instances and seeds were never
/// published, so these numbers are not reproducible here.
pub const LITERATURE_RANDOM_SUITE: [(&str, &str, f64, f64, f64, f64); 16] = [
    ("P11", "DGSA", 7029.0, 6034.0, 6602.01, 6715.0),
    ("P11", "CDGSA", 7245.0, 5172.0, 6449.20, 6581.0),
    ("P12", "DGSA", 11024.0, 9821.0, 10429.58, 10598.0),
    ("P12", "CDGSA", 11168.0, 8267.0, 11006.5, 11063.0),
    ("P13", "DGSA", 13892.0, 12957.0, 13379.2, 13420.0),
    ("P13", "CDGSA", 14025.0, 12730.0, 13602.09, 13732.0),
    ("P14", "DGSA", 21891.0, 20063.0, 20957.14, 21164.0),
    ("P14", "CDGSA", 27451.0, 22173.0, 25903.55, 26508.0),
    ("P15", "DGSA", 47213.0, 45810.0, 46431.0, 46605.0),
    ("P15", "CDGSA", 55048.0, 47204.0, 52761.37, 53892.0),
    ("P16", "DGSA", 70825.0, 68941.0, 69730.12, 69940.0),
    ("P16", "CDGSA", 73698.0, 69752.0, 70454.38, 71653.0),
    ("P17", "DGSA", 89617.0, 86752.0, 88013.75, 88351.0),
    ("P17", "CDGSA", 90139.0, 86984.0, 89452.64, 89953.0),
    ("P18", "DGSA", 109541.0, 107203.0, 108429.8, 108870.0),
    ("P18", "CDGSA", 111964.0, 108927.0, 110726.79, 111248.0),
];
