//! Exact ground-truth solvers and a greedy lower-bound baseline.
//!
//! Two exact methods on purpose: subset enumeration handles real-valued
//! weights at small `n`, the weight-indexed dynamic program handles large
//! integer-weight instances. Greedy is a sanity baseline only.

use crate::error::{Error, Result};
use crate::problem::{total_weight, Instance, Solution};

/// Enumeration budget for [`brute_force_solve`].
pub const BRUTE_FORCE_MAX_N: usize = 25;

/// Cell budget for the DP table.
pub const DP_MAX_CELLS: usize = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    BruteForce,
    DynamicProgramming,
    Greedy,
}

impl std::fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleMethod::BruteForce => write!(f, "brute_force"),
            OracleMethod::DynamicProgramming => write!(f, "dynamic_programming"),
            OracleMethod::Greedy => write!(f, "greedy"),
        }
    }
}

/// Result of an exact solver or the greedy baseline.
///
/// The witness is always feasible. For the exact methods `optimum_value`
/// is the true optimum; for greedy it is the achieved value, a lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimum_value: f64,
    pub witness: Solution,
    pub method: OracleMethod,
}

// Lexicographic order on bit vectors encoded as item masks: the first
// differing index decides, and the mask with that bit clear is smaller.
fn mask_lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let i = diff.trailing_zeros();
    (a >> i) & 1 == 0
}

fn mask_to_solution(mask: u32, n: usize) -> Solution {
    Solution::new((0..n).map(|i| (mask >> i) & 1 == 1).collect())
}

/// Exact optimum by enumerating all `2^n` subsets (Gray-code walk).
/// Ties break toward the lexicographically smallest bit vector.
pub fn brute_force_solve(inst: &Instance) -> Result<OracleResult> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Budget(format!(
            "brute force limited to n <= {BRUTE_FORCE_MAX_N}, instance has {n} items"
        )));
    }
    let weights = inst.weights();
    let values = inst.values();
    let capacity = inst.capacity();

    let mut mask: u32 = 0;
    let mut weight = 0.0f64;
    let mut value = 0.0f64;
    let mut best_mask: u32 = 0;
    let mut best_value = 0.0f64;

    // Gray-code enumeration: step k toggles item trailing_zeros(k).
    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        if (mask >> i) & 1 == 0 {
            mask |= 1 << i;
            weight += weights[i];
            value += values[i];
        } else {
            mask &= !(1 << i);
            weight -= weights[i];
            value -= values[i];
        }
        if weight <= capacity
            && (value > best_value || (value == best_value && mask_lex_less(mask, best_mask)))
        {
            best_value = value;
            best_mask = mask;
        }
    }

    let witness = mask_to_solution(best_mask, n);
    // Recompute from scratch so the reported value carries no accumulation drift.
    let exact_value = crate::problem::total_value(inst, &witness)?;
    Ok(OracleResult {
        optimum_value: exact_value,
        witness,
        method: OracleMethod::BruteForce,
    })
}

/// Exact optimum via the classic `O(n·W)` weight-indexed table.
/// Requires integral weights and capacity.
pub fn dp_solve(inst: &Instance) -> Result<OracleResult> {
    if !inst.has_integral_weights() {
        return Err(Error::Precondition(
            "dp_solve requires integer weights and capacity".into(),
        ));
    }
    let n = inst.n();
    let capacity = inst.capacity() as usize;
    let cells = n
        .checked_mul(capacity + 1)
        .ok_or_else(|| Error::Budget("DP table size overflows".into()))?;
    if cells > DP_MAX_CELLS {
        return Err(Error::Budget(format!(
            "DP table of {cells} cells exceeds the {DP_MAX_CELLS} cell budget"
        )));
    }

    let weights: Vec<usize> = inst.weights().iter().map(|&w| w as usize).collect();
    let values = inst.values();

    let mut prev = vec![0.0f64; capacity + 1];
    let mut curr = vec![0.0f64; capacity + 1];
    let mut take = vec![false; cells];

    for i in 0..n {
        let w = weights[i];
        let v = values[i];
        let row = &mut take[i * (capacity + 1)..(i + 1) * (capacity + 1)];
        for c in 0..=capacity {
            let skip = prev[c];
            curr[c] = if c >= w {
                let with = prev[c - w] + v;
                if with > skip {
                    row[c] = true;
                    with
                } else {
                    skip
                }
            } else {
                skip
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }

    let optimum = prev[capacity];
    let mut bits = vec![false; n];
    let mut c = capacity;
    for i in (0..n).rev() {
        if take[i * (capacity + 1) + c] {
            bits[i] = true;
            c -= weights[i];
        }
    }
    let witness = Solution::new(bits);
    debug_assert!(total_weight(inst, &witness)? <= inst.capacity());
    Ok(OracleResult {
        optimum_value: optimum,
        witness,
        method: OracleMethod::DynamicProgramming,
    })
}

/// Value-to-weight ratio greedy. Feasible by construction; the achieved
/// value is a lower bound on the optimum, not the optimum itself.
pub fn greedy_solve(inst: &Instance) -> Result<OracleResult> {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by(|&a, &b| {
        let ra = inst.values()[a] / inst.weights()[a];
        let rb = inst.values()[b] / inst.weights()[b];
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });

    let mut bits = vec![false; inst.n()];
    let mut weight = 0.0;
    let mut value = 0.0;
    for i in order {
        if weight + inst.weights()[i] <= inst.capacity() {
            bits[i] = true;
            weight += inst.weights()[i];
            value += inst.values()[i];
        }
    }
    Ok(OracleResult {
        optimum_value: value,
        witness: Solution::new(bits),
        method: OracleMethod::Greedy,
    })
}

/// Pick DP when weights are integral and within budget, otherwise brute force.
pub fn auto_solve(inst: &Instance) -> Result<OracleResult> {
    if inst.has_integral_weights() && inst.n() * (inst.capacity() as usize + 1) <= DP_MAX_CELLS {
        dp_solve(inst)
    } else {
        brute_force_solve(inst)
    }
}
