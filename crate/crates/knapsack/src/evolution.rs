//! GA engine: population lifecycle, binary tournament selection,
//! single-point crossover, per-gene bit-flip mutation, and the adaptive
//! crossover/mutation rate schedule shared with the cultural loop.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::{dim_damping, evaluate, EvaluatedSolution, FitnessMode, Instance, Solution};

/// Parameters shared by the GA and CA runs.
#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    /// Base crossover rate P_c before damping.
    pub base_crossover_rate: f64,
    /// Base mutation rate P_m. Only used when `fixed_rates` is set;
    /// the schedule otherwise couples p_m = 1 - p_c.
    pub base_mutation_rate: f64,
    /// Bypass the adaptive schedule and use the base rates directly
    /// (ablation switch).
    pub fixed_rates: bool,
    pub fitness_mode: FitnessMode,
    pub seed: u64,
    pub elitism_count: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_iterations: 50,
            base_crossover_rate: 0.9,
            base_mutation_rate: 0.1,
            fixed_rates: false,
            fitness_mode: FitnessMode::Penalized,
            seed: 0,
            elitism_count: 1,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config(format!(
                "population_size must be at least 2, got {}",
                self.population_size
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.base_crossover_rate > 0.0 && self.base_crossover_rate <= 1.0) {
            return Err(Error::Config(format!(
                "base_crossover_rate must be in (0, 1], got {}",
                self.base_crossover_rate
            )));
        }
        if !(0.0..1.0).contains(&self.base_mutation_rate) {
            return Err(Error::Config(format!(
                "base_mutation_rate must be in [0, 1), got {}",
                self.base_mutation_rate
            )));
        }
        Ok(())
    }
}

/// Crossover/mutation probabilities for one generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSchedule {
    pub p_c: f64,
    pub p_m: f64,
}

/// The per-iteration schedule:
/// `p_c = min(P_c / d + floor(iter / 1000) * 0.1, 1)` and `p_m = 1 - p_c`,
/// where `d` is the dimensionality damping of the instance and `P_c` is the
/// static base rate (the division is applied once, not iterated).
pub fn adaptive_rates(cfg: &EvolutionConfig, n: usize, iter: usize) -> RateSchedule {
    if cfg.fixed_rates {
        return RateSchedule {
            p_c: cfg.base_crossover_rate,
            p_m: cfg.base_mutation_rate,
        };
    }
    let d = dim_damping(n).unwrap_or(1.0);
    let step = (iter / 1000) as f64 * 0.1;
    let p_c = (cfg.base_crossover_rate / d + step).min(1.0);
    RateSchedule { p_c, p_m: 1.0 - p_c }
}

/// One generation of evaluated individuals.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<EvaluatedSolution>,
    pub generation: usize,
}

impl Population {
    /// Highest-fitness member; first such member on ties.
    pub fn best(&self) -> &EvaluatedSolution {
        let mut best = &self.members[0];
        for m in &self.members[1..] {
            if m.fitness > best.fitness {
                best = m;
            }
        }
        best
    }

    /// Member indices ordered by fitness descending, ties by lower index.
    pub fn ranked_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.members.len()).collect();
        idx.sort_by(|&a, &b| {
            self.members[b]
                .fitness
                .partial_cmp(&self.members[a].fitness)
                .unwrap()
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Uniform random population of `population_size` bit strings, evaluated.
pub fn init_population(
    inst: &Instance,
    cfg: &EvolutionConfig,
    rng: &mut impl Rng,
) -> Result<Population> {
    let mut members = Vec::with_capacity(cfg.population_size);
    for _ in 0..cfg.population_size {
        let bits: Vec<bool> = (0..inst.n()).map(|_| rng.random()).collect();
        members.push(evaluate(inst, &Solution::new(bits), cfg.fitness_mode)?);
    }
    Ok(Population { members, generation: 0 })
}

/// Binary tournament: two uniform draws with replacement, the fitter wins,
/// ties go to the first drawn. Works with negative (penalized) fitness.
pub fn select_parent<'a>(pop: &'a Population, rng: &mut impl Rng) -> &'a EvaluatedSolution {
    let a = &pop.members[rng.random_range(0..pop.members.len())];
    let b = &pop.members[rng.random_range(0..pop.members.len())];
    if b.fitness > a.fitness {
        b
    } else {
        a
    }
}

/// Single-point crossover with the cut drawn uniformly from `1..n`.
/// Degenerate inputs (n < 2) pass through as copies.
pub fn single_point_crossover(
    a: &Solution,
    b: &Solution,
    rng: &mut impl Rng,
) -> (Solution, Solution) {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n < 2 {
        return (a.clone(), b.clone());
    }
    let k = rng.random_range(1..n);
    let mut c1 = a.bits.clone();
    let mut c2 = b.bits.clone();
    c1[k..].copy_from_slice(&b.bits[k..]);
    c2[k..].copy_from_slice(&a.bits[k..]);
    (Solution::new(c1), Solution::new(c2))
}

/// Flip each bit independently with probability `p_m`.
pub fn bit_flip_mutation(s: &Solution, p_m: f64, rng: &mut impl Rng) -> Solution {
    let bits = s
        .bits
        .iter()
        .map(|&b| if rng.random_bool(p_m) { !b } else { b })
        .collect();
    Solution::new(bits)
}

/// Per-gene flip probability used by the generation steps: the schedule's
/// mutation rate spread over the genome, so a child sees `p_m` expected
/// flips per `n` genes. Applying the scheduled `p_m` (about 0.5 for the
/// default parameters) to every gene independently degenerates the search
/// into uniform random sampling and cannot reach the optima the benchmark
/// instances are known to have.
pub(crate) fn per_gene_rate(p_m: f64, n: usize) -> f64 {
    (p_m / n.max(1) as f64).clamp(0.0, 1.0)
}

pub(crate) fn elite_clones(pop: &Population, count: usize) -> Vec<EvaluatedSolution> {
    pop.ranked_indices()
        .into_iter()
        .take(count.min(pop.members.len()))
        .map(|i| pop.members[i].clone())
        .collect()
}

/// One GA generation: elitist carry-over, tournament parents, probabilistic
/// single-point crossover, per-gene mutation, re-evaluation.
pub fn ga_step(
    inst: &Instance,
    pop: &Population,
    cfg: &EvolutionConfig,
    rng: &mut impl Rng,
) -> Result<Population> {
    let next_gen = pop.generation + 1;
    let rates = adaptive_rates(cfg, inst.n(), next_gen);
    let mut members = elite_clones(pop, cfg.elitism_count);

    while members.len() < cfg.population_size {
        let p1 = select_parent(pop, rng).solution.clone();
        let p2 = select_parent(pop, rng).solution.clone();
        let (c1, c2) = if rng.random_bool(rates.p_c) {
            single_point_crossover(&p1, &p2, rng)
        } else {
            (p1, p2)
        };
        for child in [c1, c2] {
            if members.len() >= cfg.population_size {
                break;
            }
            let mutated = bit_flip_mutation(&child, per_gene_rate(rates.p_m, inst.n()), rng);
            members.push(evaluate(inst, &mutated, cfg.fitness_mode)?);
        }
    }

    Ok(Population { members, generation: next_gen })
}

/// One point of a convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TracePoint {
    pub iteration: usize,
    pub best_so_far: f64,
    pub p_c: f64,
    pub p_m: f64,
    pub belief_min: Option<f64>,
    pub belief_max: Option<f64>,
}

/// Per-iteration best-so-far fitness trace of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceTrace {
    pub points: Vec<TracePoint>,
}

impl ConvergenceTrace {
    pub fn final_best(&self) -> Option<f64> {
        self.points.last().map(|p| p.best_so_far)
    }

    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].best_so_far >= w[0].best_so_far)
    }
}

/// Tracks the incumbent over a run: the best-fitness individual overall,
/// and the best feasible one for the final report.
#[derive(Debug, Clone, Default)]
pub(crate) struct BestTracker {
    pub best_any: Option<EvaluatedSolution>,
    pub best_feasible: Option<EvaluatedSolution>,
}

impl BestTracker {
    pub fn observe_population(&mut self, pop: &Population) {
        for m in &pop.members {
            if self.best_any.as_ref().is_none_or(|b| m.fitness > b.fitness) {
                self.best_any = Some(m.clone());
            }
            if m.is_feasible()
                && self
                    .best_feasible
                    .as_ref()
                    .is_none_or(|b| m.total_value > b.total_value)
            {
                self.best_feasible = Some(m.clone());
            }
        }
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_any.as_ref().map(|b| b.fitness).unwrap_or(f64::NEG_INFINITY)
    }

    /// Best feasible solution seen, or the best penalized one if no
    /// feasible solution ever appeared.
    pub fn into_report(self) -> EvaluatedSolution {
        self.best_feasible.or(self.best_any).expect("at least one individual observed")
    }
}

/// Full GA run: random init, `max_iterations` generations, returns the best
/// feasible solution seen plus the best-so-far trace (generation 0 included).
pub fn run_ga(inst: &Instance, cfg: &EvolutionConfig) -> Result<(EvaluatedSolution, ConvergenceTrace)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pop = init_population(inst, cfg, &mut rng)?;
    let mut tracker = BestTracker::default();
    tracker.observe_population(&pop);

    let mut trace = ConvergenceTrace::default();
    let r0 = adaptive_rates(cfg, inst.n(), 1);
    trace.points.push(TracePoint {
        iteration: 0,
        best_so_far: tracker.best_fitness(),
        p_c: r0.p_c,
        p_m: r0.p_m,
        belief_min: None,
        belief_max: None,
    });

    for iter in 1..=cfg.max_iterations {
        pop = ga_step(inst, &pop, cfg, &mut rng)?;
        tracker.observe_population(&pop);
        let r = adaptive_rates(cfg, inst.n(), iter);
        trace.points.push(TracePoint {
            iteration: iter,
            best_so_far: tracker.best_fitness(),
            p_c: r.p_c,
            p_m: r.p_m,
            belief_min: None,
            belief_max: None,
        });
    }

    Ok((tracker.into_report(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin_problems;
    use proptest::prelude::*;

    fn p(idx: usize) -> Instance {
        builtin_problems()[idx - 1].clone()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn adaptive_rates_worked_example() {
        let cfg = EvolutionConfig::default();
        let r = adaptive_rates(&cfg, 10, 1);
        assert!((r.p_c - 0.4907).abs() < 1e-4);
        assert!((r.p_m - 0.5093).abs() < 1e-4);
    }

    #[test]
    fn adaptive_rates_step_term_inert_below_1000() {
        let cfg = EvolutionConfig::default();
        assert_eq!(adaptive_rates(&cfg, 10, 1), adaptive_rates(&cfg, 10, 999));
    }

    #[test]
    fn adaptive_rates_saturate() {
        let cfg = EvolutionConfig::default();
        let r = adaptive_rates(&cfg, 10, 10_000);
        assert_eq!(r.p_c, 1.0);
        assert_eq!(r.p_m, 0.0);
    }

    #[test]
    fn init_population_is_deterministic() {
        let cfg = EvolutionConfig::default();
        let a = init_population(&p(1), &cfg, &mut rng(5)).unwrap();
        let b = init_population(&p(1), &cfg, &mut rng(5)).unwrap();
        assert_eq!(a.members, b.members);
        assert_eq!(a.members.len(), 100);
        assert!(a.members.iter().all(|m| m.solution.len() == 10));
    }

    #[test]
    fn tournament_prefers_fitter_member_three_quarters_of_the_time() {
        let inst = p(3);
        let cfg = EvolutionConfig::default();
        let strong = evaluate(&inst, &Solution::new(vec![true, true, false, true]), cfg.fitness_mode).unwrap();
        let weak = evaluate(&inst, &Solution::zeros(4), cfg.fitness_mode).unwrap();
        let pop = Population { members: vec![strong.clone(), weak], generation: 0 };
        let mut r = rng(11);
        let wins = (0..40_000)
            .filter(|_| select_parent(&pop, &mut r).fitness == strong.fitness)
            .count();
        let freq = wins as f64 / 40_000.0;
        assert!((freq - 0.75).abs() < 0.01, "observed {freq}");
    }

    #[test]
    fn tournament_handles_negative_fitness() {
        let inst = p(3);
        let infeasible = evaluate(&inst, &Solution::new(vec![true; 4]), FitnessMode::Penalized).unwrap();
        assert!(infeasible.fitness < 0.0);
        let pop = Population { members: vec![infeasible.clone(), infeasible.clone()], generation: 0 };
        assert_eq!(select_parent(&pop, &mut rng(0)).fitness, infeasible.fitness);
    }

    #[test]
    fn crossover_known_cut() {
        let a = Solution::new(vec![false; 4]);
        let b = Solution::new(vec![true; 4]);
        // Find a seed whose first draw in 1..4 is 2.
        for seed in 0..64 {
            let mut r = rng(seed);
            let mut probe = rng(seed);
            if probe.random_range(1..4) == 2 {
                let (c1, c2) = single_point_crossover(&a, &b, &mut r);
                assert_eq!(c1.bits, vec![false, false, true, true]);
                assert_eq!(c2.bits, vec![true, true, false, false]);
                return;
            }
        }
        panic!("no suitable seed found");
    }

    #[test]
    fn crossover_of_equal_parents_is_identity() {
        let a = Solution::new(vec![true, false, true, false, true]);
        let (c1, c2) = single_point_crossover(&a, &a.clone(), &mut rng(3));
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn mutation_extremes() {
        let s = Solution::new(vec![true, false, true, false]);
        assert_eq!(bit_flip_mutation(&s, 0.0, &mut rng(1)), s);
        let flipped = bit_flip_mutation(&s, 1.0, &mut rng(1));
        assert_eq!(flipped.bits, vec![false, true, false, true]);
    }

    #[test]
    fn mutation_half_rate_hamming_within_3_sigma() {
        let s = Solution::zeros(1000);
        let m = bit_flip_mutation(&s, 0.5, &mut rng(9));
        let dist = s.hamming_distance(&m) as f64;
        // binomial(1000, 0.5): sigma ~ 15.8, 3 sigma ~ 47
        assert!((dist - 500.0).abs() < 47.5, "distance {dist}");
    }

    #[test]
    fn ga_step_preserves_size_and_elite() {
        let cfg = EvolutionConfig::default();
        let inst = p(1);
        let mut r = rng(2);
        let pop = init_population(&inst, &cfg, &mut r).unwrap();
        let best_before = pop.best().fitness;
        let next = ga_step(&inst, &pop, &cfg, &mut r).unwrap();
        assert_eq!(next.members.len(), cfg.population_size);
        assert_eq!(next.generation, 1);
        assert!(next.best().fitness >= best_before);
    }

    #[test]
    fn run_ga_trace_shape_and_determinism() {
        let cfg = EvolutionConfig { seed: 77, ..Default::default() };
        let inst = p(4);
        let (best_a, trace_a) = run_ga(&inst, &cfg).unwrap();
        let (best_b, trace_b) = run_ga(&inst, &cfg).unwrap();
        assert_eq!(best_a, best_b);
        assert_eq!(trace_a, trace_b);
        assert_eq!(trace_a.points.len(), cfg.max_iterations + 1);
        assert!(trace_a.is_monotone());
    }

    #[test]
    fn run_ga_reaches_p4_optimum() {
        let cfg = EvolutionConfig { seed: 1, ..Default::default() };
        let (best, _) = run_ga(&p(4), &cfg).unwrap();
        assert_eq!(best.total_value, 23.0);
        assert!(best.is_feasible());
    }

    #[test]
    fn rejects_degenerate_config() {
        let cfg = EvolutionConfig { population_size: 1, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = EvolutionConfig { base_crossover_rate: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    proptest! {
        #[test]
        fn rates_sum_to_one_and_clamp(n in 2usize..2000, iter in 1usize..50_000, pc in 0.01f64..=1.0) {
            let cfg = EvolutionConfig { base_crossover_rate: pc, ..Default::default() };
            let r = adaptive_rates(&cfg, n, iter);
            prop_assert!((r.p_c + r.p_m - 1.0).abs() == 0.0);
            prop_assert!((0.0..=1.0).contains(&r.p_c));
            if iter < 1000 {
                prop_assert_eq!(r, adaptive_rates(&cfg, n, 1));
            }
            let later = adaptive_rates(&cfg, n, iter + 1000);
            prop_assert!(later.p_c >= r.p_c);
        }

        #[test]
        fn crossover_preserves_per_position_multisets(
            a in proptest::collection::vec(any::<bool>(), 12),
            b in proptest::collection::vec(any::<bool>(), 12),
            seed in any::<u64>(),
        ) {
            let sa = Solution::new(a);
            let sb = Solution::new(b);
            let (c1, c2) = single_point_crossover(&sa, &sb, &mut rng(seed));
            for i in 0..12 {
                let parents = [sa.bits[i], sb.bits[i]];
                let children = [c1.bits[i], c2.bits[i]];
                prop_assert!(children == parents || children == [parents[1], parents[0]]);
            }
        }
    }
}
