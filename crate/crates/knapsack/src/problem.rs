//! Problem representation and the penalized fitness function.
//!
//! An [`Instance`] is a 0-1 knapsack problem: `n` items with positive
//! weights and values and a positive capacity. A [`Solution`] is a bit
//! vector over the items; [`evaluate`] scores it under one of two
//! [`FitnessMode`]s.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A 0-1 knapsack problem instance.
///
/// Immutable after construction; all fields are validated by [`Instance::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    weights: Vec<f64>,
    values: Vec<f64>,
    capacity: f64,
    known_optimum: Option<f64>,
    name: Option<String>,
}

impl Instance {
    pub fn new(weights: Vec<f64>, values: Vec<f64>, capacity: f64) -> Result<Self> {
        if weights.len() != values.len() {
            return Err(Error::Dimension {
                expected: weights.len(),
                actual: values.len(),
            });
        }
        if weights.is_empty() {
            return Err(Error::Domain("instance must have at least one item".into()));
        }
        if !(capacity > 0.0) || !capacity.is_finite() {
            return Err(Error::Domain(format!("capacity must be positive, got {capacity}")));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!("weight of item {i} must be positive, got {w}")));
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("value of item {i} must be positive, got {v}")));
            }
        }
        Ok(Self {
            n: weights.len(),
            weights,
            values,
            capacity,
            known_optimum: None,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_known_optimum(mut self, optimum: f64) -> Self {
        self.known_optimum = Some(optimum);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// True when every weight and the capacity are whole numbers,
    /// which is what the weight-indexed DP oracle requires.
    pub fn has_integral_weights(&self) -> bool {
        self.capacity.fract() == 0.0 && self.weights.iter().all(|w| w.fract() == 0.0)
    }

    fn check_len(&self, sol: &Solution) -> Result<()> {
        if sol.bits.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: sol.bits.len(),
            });
        }
        Ok(())
    }
}

/// A candidate packing: bit `i` set means item `i` goes into the knapsack.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub bits: Vec<bool>,
}

impl Solution {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of selected items.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Number of positions where two equal-length solutions differ.
    pub fn hamming_distance(&self, other: &Solution) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Indices of the selected items.
    pub fn selected_indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

/// How infeasible solutions are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitnessMode {
    /// Value minus an adaptive penalty proportional to the capacity overshoot.
    #[default]
    Penalized,
    /// Plain value when feasible, zero otherwise.
    ZeroIfInvalid,
}

/// A solution together with its score against a fixed instance.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedSolution {
    pub solution: Solution,
    pub total_value: f64,
    pub total_weight: f64,
    pub violation: f64,
    pub fitness: f64,
}

impl EvaluatedSolution {
    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// Sum of values of the selected items.
pub fn total_value(inst: &Instance, sol: &Solution) -> Result<f64> {
    inst.check_len(sol)?;
    Ok(sol
        .bits
        .iter()
        .zip(inst.values())
        .filter(|(&b, _)| b)
        .map(|(_, &v)| v)
        .sum())
}

/// Sum of weights of the selected items.
pub fn total_weight(inst: &Instance, sol: &Solution) -> Result<f64> {
    inst.check_len(sol)?;
    Ok(sol
        .bits
        .iter()
        .zip(inst.weights())
        .filter(|(&b, _)| b)
        .map(|(_, &w)| w)
        .sum())
}

/// Capacity overshoot, floored at zero. Zero exactly when feasible.
pub fn violation(inst: &Instance, sol: &Solution) -> Result<f64> {
    let weight = total_weight(inst, sol)?;
    Ok((weight - inst.capacity()).max(0.0))
}

/// Dimensionality damping factor `d = 1 + ln(ln n)`, clamped below at 1.
///
/// The clamp keeps the `100 / d` penalty coefficient from exceeding 100 on
/// very small instances where `ln(ln n)` goes negative.
pub fn dim_damping(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("dim_damping requires n >= 2, got {n}")));
    }
    Ok(damping_clamped(n))
}

fn damping_clamped(n: usize) -> f64 {
    (1.0 + (n as f64).ln().ln()).max(1.0)
}

/// Score a solution under the chosen fitness mode.
pub fn evaluate(inst: &Instance, sol: &Solution, mode: FitnessMode) -> Result<EvaluatedSolution> {
    inst.check_len(sol)?;
    let value = total_value(inst, sol)?;
    let weight = total_weight(inst, sol)?;
    let overshoot = (weight - inst.capacity()).max(0.0);
    let fitness = match mode {
        FitnessMode::Penalized => value - (100.0 / damping_clamped(inst.n())) * overshoot,
        FitnessMode::ZeroIfInvalid => {
            if overshoot == 0.0 {
                value
            } else {
                0.0
            }
        }
    };
    Ok(EvaluatedSolution {
        solution: sol.clone(),
        total_value: value,
        total_weight: weight,
        violation: overshoot,
        fitness,
    })
}

/// Generate a random instance with integer weights in `[5, 20]` and integer
/// values in `[50, 100]`, both inclusive. Deterministic for a given seed.
pub fn generate_random_instance(n: usize, capacity: f64, seed: u64) -> Result<Instance> {
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(capacity > 0.0) {
        return Err(Error::Domain(format!("capacity must be positive, got {capacity}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        weights.push(rng.random_range(5..=20) as f64);
        values.push(rng.random_range(50..=100) as f64);
    }
    Instance::new(weights, values, capacity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin_problems;
    use proptest::prelude::*;

    fn p(idx: usize) -> Instance {
        builtin_problems()[idx - 1].clone()
    }

    fn sol(bits: &[u8]) -> Solution {
        Solution::new(bits.iter().map(|&b| b != 0).collect())
    }

    #[test]
    fn total_value_p3_optimum_selection() {
        assert_eq!(total_value(&p(3), &sol(&[1, 1, 0, 1])).unwrap(), 35.0);
    }

    #[test]
    fn total_value_empty_knapsack() {
        assert_eq!(total_value(&p(3), &Solution::zeros(4)).unwrap(), 0.0);
    }

    #[test]
    fn total_value_p4_all_ones_sums_even_when_infeasible() {
        assert_eq!(total_value(&p(4), &sol(&[1, 1, 1, 1])).unwrap(), 41.0);
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(total_weight(&p(3), &sol(&[1, 1, 1, 1])).unwrap(), 27.0);
        assert_eq!(total_weight(&p(3), &Solution::zeros(4)).unwrap(), 0.0);
        assert_eq!(total_weight(&p(4), &sol(&[1, 1, 0, 0])).unwrap(), 6.0);
    }

    #[test]
    fn violation_examples() {
        assert_eq!(violation(&p(3), &sol(&[1, 1, 1, 1])).unwrap(), 7.0);
        assert_eq!(violation(&p(3), &sol(&[1, 1, 0, 1])).unwrap(), 0.0);
        assert_eq!(violation(&p(4), &sol(&[1, 1, 1, 1])).unwrap(), 8.0);
    }

    #[test]
    fn length_mismatch_is_a_dimension_error() {
        let err = total_value(&p(3), &Solution::zeros(5)).unwrap_err();
        assert!(matches!(err, Error::Dimension { expected: 4, actual: 5 }));
    }

    #[test]
    fn dim_damping_values() {
        // Analytic fixed point: d = 2 at n = e^e.
        let n = std::f64::consts::E.exp();
        assert!((1.0 + n.ln().ln() - 2.0).abs() < 1e-12);
        assert!((dim_damping(10).unwrap() - 1.8340).abs() < 1e-4);
        assert!((dim_damping(4).unwrap() - 1.3266).abs() < 1e-4);
    }

    #[test]
    fn dim_damping_clamps_small_n() {
        assert_eq!(dim_damping(2).unwrap(), 1.0);
        assert!((dim_damping(3).unwrap() - 1.0940).abs() < 1e-4);
        assert!(dim_damping(1).is_err());
        assert!(dim_damping(0).is_err());
    }

    #[test]
    fn evaluate_p3_feasible() {
        let e = evaluate(&p(3), &sol(&[1, 1, 0, 1]), FitnessMode::Penalized).unwrap();
        assert_eq!(e.fitness, 35.0);
        assert!(e.is_feasible());
    }

    #[test]
    fn evaluate_p3_all_ones_penalized() {
        let e = evaluate(&p(3), &sol(&[1, 1, 1, 1]), FitnessMode::Penalized).unwrap();
        // raw value 9+11+13+15 = 48, overshoot 7, d = 1 + ln(ln 4)
        let expected = 48.0 - (100.0 / dim_damping(4).unwrap()) * 7.0;
        assert_eq!(e.fitness, expected);
        assert!((e.fitness - -479.6511).abs() < 1e-4);
    }

    #[test]
    fn evaluate_p3_all_ones_zero_if_invalid() {
        let e = evaluate(&p(3), &sol(&[1, 1, 1, 1]), FitnessMode::ZeroIfInvalid).unwrap();
        assert_eq!(e.fitness, 0.0);
    }

    #[test]
    fn generator_is_deterministic_and_in_range() {
        let a = generate_random_instance(100, 1100.0, 42).unwrap();
        let b = generate_random_instance(100, 1100.0, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.weights().iter().all(|&w| (5.0..=20.0).contains(&w)));
        assert!(a.values().iter().all(|&v| (50.0..=100.0).contains(&v)));
    }

    #[test]
    fn instance_rejects_bad_data() {
        assert!(Instance::new(vec![1.0], vec![1.0, 2.0], 5.0).is_err());
        assert!(Instance::new(vec![0.0], vec![1.0], 5.0).is_err());
        assert!(Instance::new(vec![1.0], vec![-1.0], 5.0).is_err());
        assert!(Instance::new(vec![1.0], vec![1.0], 0.0).is_err());
        assert!(Instance::new(vec![], vec![], 5.0).is_err());
    }

    proptest! {
        #[test]
        fn violation_zero_iff_feasible(bits in proptest::collection::vec(any::<bool>(), 10)) {
            let inst = p(1);
            let s = Solution::new(bits);
            let c = violation(&inst, &s).unwrap();
            let w = total_weight(&inst, &s).unwrap();
            prop_assert!(c >= 0.0);
            prop_assert_eq!(c == 0.0, w <= inst.capacity());
        }

        #[test]
        fn penalized_fitness_never_exceeds_value(bits in proptest::collection::vec(any::<bool>(), 10)) {
            let inst = p(6);
            let s = Solution::new(bits);
            let e = evaluate(&inst, &s, FitnessMode::Penalized).unwrap();
            prop_assert!(e.fitness <= e.total_value);
            if e.violation == 0.0 {
                prop_assert_eq!(e.fitness, e.total_value);
            } else {
                prop_assert!(e.fitness < e.total_value);
            }
        }

        #[test]
        fn damping_monotone(n in 3usize..5000) {
            prop_assert!(dim_damping(n + 1).unwrap() >= dim_damping(n).unwrap());
            prop_assert!(dim_damping(n).unwrap() >= 1.0);
        }
    }
}
