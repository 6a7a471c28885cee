//! Extremal solutions of max-min and min-max inequality systems.
//!
//! A vector solves `d ≤ A □ x` exactly when every row `i` with `d_i > 0` has
//! some column `j` with `a_ij ≥ d_i` and `x_j ≥ d_i`. Choosing one such column
//! per row and raising `x_j` to the largest requirement placed on it yields a
//! candidate; the minimal solutions are the minimal candidates.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::lattice::{Tolerance, UnitMatrix, UnitVector};

/// Default cap on the number of covering combinations examined.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `threshold ≤ A □max-min x` with `x ≤ bound`.
    Lower,
    /// `G □min-max x ≤ threshold` with `x ≥ bound`.
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IneqProblem {
    pub matrix: UnitMatrix,
    pub threshold: UnitVector,
    pub bound: UnitVector,
    pub direction: Direction,
}

impl IneqProblem {
    pub fn new(
        matrix: UnitMatrix,
        threshold: UnitVector,
        bound: UnitVector,
        direction: Direction,
    ) -> Result<Self> {
        check_dim("inequality threshold", matrix.rows(), threshold.len())?;
        check_dim("inequality bound", matrix.cols(), bound.len())?;
        Ok(IneqProblem {
            matrix,
            threshold,
            bound,
            direction,
        })
    }

    pub fn lower(matrix: UnitMatrix, threshold: UnitVector, bound: UnitVector) -> Result<Self> {
        Self::new(matrix, threshold, bound, Direction::Lower)
    }

    pub fn upper(matrix: UnitMatrix, threshold: UnitVector, bound: UnitVector) -> Result<Self> {
        Self::new(matrix, threshold, bound, Direction::Upper)
    }
}

/// Minimal solutions of `threshold ≤ A □ x` lying below `bound`, in
/// lexicographic order. Empty when no solution lies below `bound`.
pub fn minimal_solutions(p: &IneqProblem, tol: Tolerance, cap: u64) -> Result<Vec<UnitVector>> {
    if p.direction != Direction::Lower {
        return Err(Error::InvalidArgument(
            "minimal_solutions expects a LOWER inequality problem".into(),
        ));
    }
    covering_minimal(&p.matrix, &p.threshold, &p.bound, tol, cap)
}

/// Maximal solutions of `G □ x ≤ threshold` lying above `bound`, obtained by
/// complementing into the max-min problem.
pub fn maximal_solutions(p: &IneqProblem, tol: Tolerance, cap: u64) -> Result<Vec<UnitVector>> {
    if p.direction != Direction::Upper {
        return Err(Error::InvalidArgument(
            "maximal_solutions expects an UPPER inequality problem".into(),
        ));
    }
    let minimal = covering_minimal(
        &p.matrix.complement(),
        &p.threshold.complement(),
        &p.bound.complement(),
        tol,
        cap,
    )?;
    let mut out: Vec<UnitVector> = minimal.iter().map(UnitVector::complement).collect();
    out.sort_by(UnitVector::lex_cmp);
    Ok(out)
}

fn covering_minimal(
    a: &UnitMatrix,
    threshold: &UnitVector,
    bound: &UnitVector,
    tol: Tolerance,
    cap: u64,
) -> Result<Vec<UnitVector>> {
    let m = a.cols();
    let mut rows: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, &t) in threshold.iter().enumerate() {
        if t <= tol.eps {
            continue;
        }
        let cover: Vec<usize> = (0..m)
            .filter(|&j| tol.le(t, a.get(i, j)) && tol.le(t, bound[j]))
            .collect();
        if cover.is_empty() {
            return Ok(Vec::new());
        }
        rows.push((t, cover));
    }

    let required = rows
        .iter()
        .fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128));
    if required > cap as u128 {
        return Err(Error::EnumerationBudgetExceeded { required, cap });
    }

    let mut antichain: Vec<Vec<f64>> = Vec::new();
    let mut choice = vec![0usize; rows.len()];
    loop {
        let mut x = vec![0.0f64; m];
        for (r, (t, cover)) in rows.iter().enumerate() {
            let j = cover[choice[r]];
            x[j] = x[j].max(*t);
        }
        insert_minimal(&mut antichain, x, tol);

        // odometer over the cartesian product of covers
        let mut r = 0;
        loop {
            if r == rows.len() {
                let mut out: Vec<UnitVector> =
                    antichain.into_iter().map(UnitVector::from_raw).collect();
                out.sort_by(UnitVector::lex_cmp);
                return Ok(out);
            }
            choice[r] += 1;
            if choice[r] < rows[r].1.len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
    }
}

fn le_slice(a: &[f64], b: &[f64], tol: Tolerance) -> bool {
    a.iter().zip(b).all(|(&x, &y)| tol.le(x, y))
}

fn insert_minimal(antichain: &mut Vec<Vec<f64>>, x: Vec<f64>, tol: Tolerance) {
    if antichain.iter().any(|w| le_slice(w, &x, tol)) {
        return;
    }
    antichain.retain(|w| !le_slice(&x, w, tol));
    antichain.push(x);
}

/// Minimal elements of a finite set under the componentwise order, with
/// near-duplicates collapsed. Result is lexicographically sorted.
pub fn minimal_elements(items: &[UnitVector], tol: Tolerance) -> Vec<UnitVector> {
    let mut antichain: Vec<Vec<f64>> = Vec::new();
    for item in items {
        insert_minimal(&mut antichain, item.as_slice().to_vec(), tol);
    }
    let mut out: Vec<UnitVector> = antichain.into_iter().map(UnitVector::from_raw).collect();
    out.sort_by(UnitVector::lex_cmp);
    out
}

/// Maximal elements, the order-dual of [`minimal_elements`].
pub fn maximal_elements(items: &[UnitVector], tol: Tolerance) -> Vec<UnitVector> {
    let flipped: Vec<UnitVector> = items.iter().map(UnitVector::complement).collect();
    let mut out: Vec<UnitVector> = minimal_elements(&flipped, tol)
        .iter()
        .map(UnitVector::complement)
        .collect();
    out.sort_by(UnitVector::lex_cmp);
    out
}
