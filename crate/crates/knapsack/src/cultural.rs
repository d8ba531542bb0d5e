//! Belief space (situational elite archive) and the cultural main loop.
//!
//! The belief space holds the top 10% of the initial population and is
//! updated by a fitness-plus-diversity accept rule. Its influence replaces
//! tournament selection: every crossover draws one parent from the belief
//! space and one uniformly from the population.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::evolution::{
    adaptive_rates, bit_flip_mutation, elite_clones, init_population, per_gene_rate,
    single_point_crossover, BestTracker, ConvergenceTrace, EvolutionConfig, Population,
    TracePoint,
};
use crate::problem::{evaluate, EvaluatedSolution, Instance};

pub const DEFAULT_MIN_DIFFERENCE_FRACTION: f64 = 0.5;
pub const BELIEF_SPACE_FRACTION: f64 = 0.10;

/// Bounded archive of elite individuals, sorted by fitness descending.
/// No two members share the same bit vector.
#[derive(Debug, Clone)]
pub struct BeliefSpace {
    elites: Vec<EvaluatedSolution>,
    capacity: usize,
    min_difference_fraction: f64,
}

impl BeliefSpace {
    pub fn elites(&self) -> &[EvaluatedSolution] {
        &self.elites
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn min_fitness(&self) -> f64 {
        self.elites.last().map(|e| e.fitness).unwrap_or(f64::NEG_INFINITY)
    }

    pub fn max_fitness(&self) -> f64 {
        self.elites.first().map(|e| e.fitness).unwrap_or(f64::NEG_INFINITY)
    }

    /// Fraction of elites that include each item. Read-only diagnostic;
    /// has no effect on the search.
    pub fn gene_frequency(&self, n: usize) -> Vec<f64> {
        let mut freq = vec![0.0; n];
        for e in &self.elites {
            for (i, &b) in e.solution.bits.iter().enumerate() {
                if b {
                    freq[i] += 1.0;
                }
            }
        }
        let count = self.elites.len().max(1) as f64;
        freq.iter_mut().for_each(|f| *f /= count);
        freq
    }

    /// Admit a candidate when (a) it beats the current minimum fitness and
    /// (b) it is distinct from every elite and either improves on the best
    /// elite outright or differs from every elite in at least
    /// `min_difference_fraction x (selected item count)` positions, floored
    /// at one. On admission at capacity the lowest-fitness elite is evicted.
    /// Returns whether the candidate was admitted.
    ///
    /// The diversity clause gates only lateral admissions: a candidate
    /// fitter than everything in the archive would otherwise be permanently
    /// locked out by its own neighbors, and the archive could never track
    /// the incumbent best.
    pub fn accept(&mut self, candidate: &EvaluatedSolution) -> bool {
        if candidate.fitness <= self.min_fitness() {
            return false;
        }
        let distinct = self
            .elites
            .iter()
            .all(|e| candidate.solution != e.solution);
        if !distinct {
            return false;
        }
        if candidate.fitness <= self.max_fitness() {
            let threshold =
                (self.min_difference_fraction * candidate.solution.ones() as f64).max(1.0);
            let diverse = self
                .elites
                .iter()
                .all(|e| candidate.solution.hamming_distance(&e.solution) as f64 >= threshold);
            if !diverse {
                return false;
            }
        }
        if self.elites.len() >= self.capacity {
            self.elites.pop();
        }
        let at = self
            .elites
            .partition_point(|e| e.fitness >= candidate.fitness);
        self.elites.insert(at, candidate.clone());
        true
    }
}

/// Top `ceil(0.10 * population_size)` members by fitness, ties toward lower
/// population index, with duplicate bit vectors replaced by the next-best
/// distinct members (fewer elites if the population lacks diversity).
pub fn init_belief_space(pop: &Population) -> BeliefSpace {
    let capacity = ((BELIEF_SPACE_FRACTION * pop.members.len() as f64).ceil() as usize).max(1);
    let mut elites: Vec<EvaluatedSolution> = Vec::with_capacity(capacity);
    for i in pop.ranked_indices() {
        let m = &pop.members[i];
        if elites.iter().any(|e| e.solution == m.solution) {
            continue;
        }
        elites.push(m.clone());
        if elites.len() == capacity {
            break;
        }
    }
    if elites.is_empty() {
        // All members identical: keep one copy so the space is never empty.
        elites.push(pop.members[0].clone());
    }
    BeliefSpace {
        elites,
        capacity,
        min_difference_fraction: DEFAULT_MIN_DIFFERENCE_FRACTION,
    }
}

/// Influence step: one parent uniform over the elites, the other uniform
/// over the population.
pub fn influence_select_parents<'a>(
    bs: &'a BeliefSpace,
    pop: &'a Population,
    rng: &mut impl Rng,
) -> (&'a EvaluatedSolution, &'a EvaluatedSolution) {
    let elite = &bs.elites[rng.random_range(0..bs.elites.len())];
    let other = &pop.members[rng.random_range(0..pop.members.len())];
    (elite, other)
}

/// One CA generation: as `ga_step`, but every pair of parents comes from
/// the influence step, and each new member is offered to `accept` in
/// population order once the generation is evaluated.
pub fn ca_step(
    inst: &Instance,
    pop: &Population,
    bs: &mut BeliefSpace,
    cfg: &EvolutionConfig,
    rng: &mut impl Rng,
) -> Result<Population> {
    let next_gen = pop.generation + 1;
    let rates = adaptive_rates(cfg, inst.n(), next_gen);
    let mut members = elite_clones(pop, cfg.elitism_count);

    while members.len() < cfg.population_size {
        let (p1, p2) = influence_select_parents(bs, pop, rng);
        let (p1, p2) = (p1.solution.clone(), p2.solution.clone());
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

    for m in &members {
        bs.accept(m);
    }

    Ok(Population { members, generation: next_gen })
}

/// Full CA run: random init, belief-space creation from the top 10%, then
/// `max_iterations` cultural generations. Returns the best feasible solution
/// seen plus the best-so-far trace with belief-space bounds per iteration.
pub fn run_ca(inst: &Instance, cfg: &EvolutionConfig) -> Result<(EvaluatedSolution, ConvergenceTrace)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pop = init_population(inst, cfg, &mut rng)?;
    let mut bs = init_belief_space(&pop);
    let mut tracker = BestTracker::default();
    tracker.observe_population(&pop);

    let mut trace = ConvergenceTrace::default();
    let r0 = adaptive_rates(cfg, inst.n(), 1);
    trace.points.push(TracePoint {
        iteration: 0,
        best_so_far: tracker.best_fitness(),
        p_c: r0.p_c,
        p_m: r0.p_m,
        belief_min: Some(bs.min_fitness()),
        belief_max: Some(bs.max_fitness()),
    });

    for iter in 1..=cfg.max_iterations {
        pop = ca_step(inst, &pop, &mut bs, cfg, &mut rng)?;
        tracker.observe_population(&pop);
        let r = adaptive_rates(cfg, inst.n(), iter);
        trace.points.push(TracePoint {
            iteration: iter,
            best_so_far: tracker.best_fitness(),
            p_c: r.p_c,
            p_m: r.p_m,
            belief_min: Some(bs.min_fitness()),
            belief_max: Some(bs.max_fitness()),
        });
    }

    Ok((tracker.into_report(), trace))
}

/// Per-iteration belief-space snapshot for verbose trace output.
pub fn belief_snapshot(bs: &BeliefSpace, n: usize) -> (Vec<f64>, Vec<f64>) {
    (
        bs.elites.iter().map(|e| e.fitness).collect(),
        bs.gene_frequency(n),
    )
}
