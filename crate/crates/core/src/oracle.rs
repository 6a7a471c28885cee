//! Brute-force reference computations.
//!
//! None of these are used by the solvers themselves. They recompute the same
//! quantities by exhaustive search so the closed forms and the covering
//! enumeration can be checked against them.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::consistency::apply_F;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{leq, maxmin_prod, Tolerance, UnitMatrix, UnitVector};
use crate::learning::{learning_error, TrainingSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_grid_points: u64,
    pub max_samples: u64,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_grid_points: 1_000_000,
            max_samples: 1_000,
            seed: 0x5eed,
        }
    }
}

fn condition_holds(a: &UnitMatrix, b: &UnitVector, delta: f64, tol: Tolerance) -> Result<bool> {
    let lower = UnitVector::from_raw(b.iter().map(|&x| (x - delta).max(0.0)).collect());
    let upper = UnitVector::from_raw(b.iter().map(|&x| (x + delta).min(1.0)).collect());
    leq(&lower, &apply_F(a, &upper, tol)?, tol)
}

/// Least `δ` in the finite candidate set
/// `{0} ∪ {(b_i − a_ij)⁺} ∪ {min((b_i − b_k)⁺/2, (a_kj − b_k)⁺)}` such that
/// `b̲(δ) ≤ F(b̄(δ))`.
pub fn oracle_delta(
    a: &UnitMatrix,
    b: &UnitVector,
    tol: Tolerance,
    budget: OracleBudget,
) -> Result<f64> {
    check_dim("oracle Δ", a.rows(), b.len())?;
    let (n, m) = (a.rows(), a.cols());
    let required = 1 + (n * m + n * n * m) as u128;
    if required > budget.max_grid_points as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget.max_grid_points,
        });
    }
    let mut candidates = vec![0.0];
    for i in 0..n {
        for j in 0..m {
            candidates.push((b[i] - a.get(i, j)).max(0.0));
            for k in 0..n {
                let half_gap = (b[i] - b[k]).max(0.0) / 2.0;
                let overshoot = (a.get(k, j) - b[k]).max(0.0);
                candidates.push(half_gap.min(overshoot));
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    for delta in candidates {
        if condition_holds(a, b, delta, tol)? {
            return Ok(delta);
        }
    }
    Err(Error::InvalidArgument(
        "no candidate satisfies the threshold condition".into(),
    ))
}

/// Least `δ = k / steps` satisfying the threshold condition. An upper bound on
/// the Chebyshev distance that is within `1 / steps` of it.
pub fn oracle_delta_grid(
    a: &UnitMatrix,
    b: &UnitVector,
    tol: Tolerance,
    steps: u32,
) -> Result<f64> {
    check_dim("oracle Δ", a.rows(), b.len())?;
    for k in 0..=steps {
        let delta = k as f64 / steps as f64;
        if condition_holds(a, b, delta, tol)? {
            return Ok(delta);
        }
    }
    Ok(1.0)
}

/// Minimal solutions of `threshold ≤ A □ x` with `x ≤ bound`, by exhaustive
/// search over the grid `({0} ∪ {threshold_i})^m`.
pub fn oracle_minimal_solutions(
    a: &UnitMatrix,
    threshold: &UnitVector,
    bound: &UnitVector,
    tol: Tolerance,
    budget: OracleBudget,
) -> Result<Vec<UnitVector>> {
    check_dim("oracle threshold", a.rows(), threshold.len())?;
    check_dim("oracle bound", a.cols(), bound.len())?;
    let mut values: Vec<f64> = std::iter::once(0.0)
        .chain(threshold.iter().copied())
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup();

    let m = a.cols();
    let required = (values.len() as u128).saturating_pow(m as u32);
    if required > budget.max_grid_points as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget.max_grid_points,
        });
    }

    let mut solutions: Vec<UnitVector> = Vec::new();
    let mut digits = vec![0usize; m];
    'grid: loop {
        let x = UnitVector::from_raw(digits.iter().map(|&d| values[d]).collect());
        if leq(&x, bound, tol)? && leq(threshold, &maxmin_prod(a, &x)?, tol)? {
            solutions.push(x);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < values.len() {
                continue 'grid;
            }
            *d = 0;
        }
        break;
    }

    let mut minimal: Vec<UnitVector> = Vec::new();
    for (idx, x) in solutions.iter().enumerate() {
        let dominated = solutions.iter().enumerate().any(|(other, y)| {
            other != idx && leq(y, x, tol).unwrap_or(false) && !leq(x, y, tol).unwrap_or(true)
        });
        let duplicate = minimal.iter().any(|y| tol.eq_vec(x, y));
        if !dominated && !duplicate {
            minimal.push(x.clone());
        }
    }
    minimal.sort_by(UnitVector::lex_cmp);
    Ok(minimal)
}

fn grid_value<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0..=20) as f64 / 20.0
}

/// Checks that `w_star` attains `mu` and that no sampled weight matrix does
/// better than `mu`. Samples are drawn uniformly from the grid `{k/20}` and
/// as perturbations of `w_star`.
pub fn oracle_mu_check(
    t: &TrainingSet,
    mu: f64,
    w_star: &UnitMatrix,
    tol: Tolerance,
    budget: OracleBudget,
) -> Result<bool> {
    if !tol.eq(learning_error(t, w_star)?, mu) {
        return Ok(false);
    }
    let mut rng = StdRng::seed_from_u64(budget.seed);
    let (rows, cols) = (w_star.rows(), w_star.cols());
    for sample in 0..budget.max_samples {
        let data: Vec<f64> = if sample % 2 == 0 {
            (0..rows * cols).map(|_| grid_value(&mut rng)).collect()
        } else {
            w_star
                .as_slice()
                .iter()
                .map(|&w| (w + rng.gen_range(-4..=4) as f64 / 20.0).clamp(0.0, 1.0))
                .collect()
        };
        let w = UnitMatrix::from_raw(rows, cols, data);
        if learning_error(t, &w)? < mu - tol.eps {
            return Ok(false);
        }
    }
    Ok(true)
}
