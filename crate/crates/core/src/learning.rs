//! Learning weight matrices `W` with `W □ x⁽ⁱ⁾ ≈ y⁽ⁱ⁾` under the worst-case
//! L∞ error.
//!
//! Stacking the inputs as rows gives a matrix `L`; output coordinate `k`
//! yields the system `L □ u = b⁽ᵏ⁾` with `b⁽ᵏ⁾_i = y⁽ⁱ⁾_k`, and row `k` of `W`
//! is an (approximate) solution of it. The least attainable error is the
//! largest Chebyshev distance among these systems.

use serde::Serialize;

use crate::chebyshev::{chebyshev_delta, greatest_cheb_approx, minimal_cheb_approximations};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{godel_min_prod, linf_dist, maxmin_prod, Tolerance, UnitMatrix, UnitVector};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    inputs: Vec<UnitVector>,
    outputs: Vec<UnitVector>,
}

impl TrainingSet {
    pub fn new(inputs: Vec<UnitVector>, outputs: Vec<UnitVector>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::Empty {
                what: "training set",
            });
        }
        check_dim("training outputs", inputs.len(), outputs.len())?;
        let m = inputs[0].len();
        for x in &inputs {
            check_dim("training input length", m, x.len())?;
        }
        let n = outputs[0].len();
        for y in &outputs {
            check_dim("training output length", n, y.len())?;
        }
        Ok(TrainingSet { inputs, outputs })
    }

    pub fn from_rows<R: AsRef<[f64]>>(inputs: &[R], outputs: &[R]) -> Result<Self> {
        let conv = |rows: &[R]| {
            rows.iter()
                .map(|r| UnitVector::from_slice(r.as_ref()))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(conv(inputs)?, conv(outputs)?)
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn input_len(&self) -> usize {
        self.inputs[0].len()
    }

    pub fn output_len(&self) -> usize {
        self.outputs[0].len()
    }

    pub fn inputs(&self) -> &[UnitVector] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[UnitVector] {
        &self.outputs
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&UnitVector, &UnitVector)> {
        self.inputs.iter().zip(&self.outputs)
    }
}

/// `L` (one row per input) and the right-hand sides `b⁽ᵏ⁾`, one per output
/// coordinate.
pub fn build_systems(t: &TrainingSet) -> Result<(UnitMatrix, Vec<UnitVector>)> {
    let l = UnitMatrix::from_rows(
        &t.inputs
            .iter()
            .map(UnitVector::as_slice)
            .collect::<Vec<_>>(),
    )?;
    let rhs = (0..t.output_len())
        .map(|k| UnitVector::from_raw(t.outputs.iter().map(|y| y[k]).collect()))
        .collect();
    Ok((l, rhs))
}

/// Rows of `W` as column vectors `u⁽ᵏ⁾`.
pub fn weight_rows(w: &UnitMatrix) -> Vec<UnitVector> {
    (0..w.rows()).map(|k| w.row_vector(k)).collect()
}

/// Inverse of [`weight_rows`].
pub fn weights_from_rows(rows: &[UnitVector]) -> Result<UnitMatrix> {
    UnitMatrix::from_rows(&rows.iter().map(UnitVector::as_slice).collect::<Vec<_>>())
}

fn check_weights(t: &TrainingSet, w: &UnitMatrix) -> Result<()> {
    check_dim("weight matrix rows", t.output_len(), w.rows())?;
    check_dim("weight matrix columns", t.input_len(), w.cols())
}

/// Residual `‖y⁽ⁱ⁾ − W □ x⁽ⁱ⁾‖` for every training pair.
pub fn pair_residuals(t: &TrainingSet, w: &UnitMatrix) -> Result<Vec<f64>> {
    check_weights(t, w)?;
    t.pairs()
        .map(|(x, y)| linf_dist(y, &maxmin_prod(w, x)?))
        .collect()
}

/// `E(W) = max_i ‖y⁽ⁱ⁾ − W □ x⁽ⁱ⁾‖`.
pub fn learning_error(t: &TrainingSet, w: &UnitMatrix) -> Result<f64> {
    Ok(pair_residuals(t, w)?.into_iter().fold(0.0, f64::max))
}

/// `E(W)` evaluated system by system: `max_k ‖b⁽ᵏ⁾ − L □ u⁽ᵏ⁾‖`.
pub fn learning_error_by_outputs(t: &TrainingSet, w: &UnitMatrix) -> Result<f64> {
    check_weights(t, w)?;
    let (l, rhs) = build_systems(t)?;
    weight_rows(w)
        .iter()
        .zip(&rhs)
        .map(|(u, b)| linf_dist(b, &maxmin_prod(&l, u)?))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}

/// `μ = max_k Δ(L, b⁽ᵏ⁾)`, the minimum of `E` over all weight matrices.
pub fn minimal_learning_error(t: &TrainingSet) -> Result<(f64, Vec<f64>)> {
    let (l, rhs) = build_systems(t)?;
    let per_output = rhs
        .iter()
        .map(|b| chebyshev_delta(&l, b).map(|d| d.delta))
        .collect::<Result<Vec<_>>>()?;
    let mu = per_output.iter().copied().fold(0.0, f64::max);
    Ok((mu, per_output))
}

/// Which Chebyshev approximation of `b⁽ᵏ⁾` a row of `W` is built from.
/// For a consistent system every choice reduces to `b⁽ᵏ⁾` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "choice", content = "index")]
pub enum RowChoice {
    Greatest,
    /// Index into the lexicographically ordered minimal approximations.
    Minimal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum WeightPolicy {
    #[default]
    Greatest,
    PerRow(Vec<RowChoice>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningReport {
    #[serde(rename = "input_matrix")]
    pub l: UnitMatrix,
    pub rhs_per_output: Vec<UnitVector>,
    pub per_output_delta: Vec<f64>,
    pub mu: f64,
    /// Right-hand side each row of `W` solves exactly.
    pub chosen_rhs: Vec<UnitVector>,
    pub weights: UnitMatrix,
    pub achieved_error: f64,
    pub residuals: Vec<f64>,
}

/// Builds `W` row by row: row `k` is the greatest solution of
/// `L □ u = c⁽ᵏ⁾` where `c⁽ᵏ⁾` is `b⁽ᵏ⁾` if that system is consistent and
/// the selected Chebyshev approximation of `b⁽ᵏ⁾` otherwise.
pub fn build_approximate_weights(
    t: &TrainingSet,
    policy: &WeightPolicy,
    tol: Tolerance,
    cap: u64,
) -> Result<LearningReport> {
    let (l, rhs) = build_systems(t)?;
    if let WeightPolicy::PerRow(choices) = policy {
        check_dim("per-row weight policy", rhs.len(), choices.len())?;
    }
    let lt = l.transpose();
    let mut per_output_delta = Vec::with_capacity(rhs.len());
    let mut chosen_rhs = Vec::with_capacity(rhs.len());
    let mut rows = Vec::with_capacity(rhs.len());
    for (k, b) in rhs.iter().enumerate() {
        let delta = chebyshev_delta(&l, b)?.delta;
        let choice = match policy {
            WeightPolicy::Greatest => RowChoice::Greatest,
            WeightPolicy::PerRow(choices) => choices[k],
        };
        let c = if tol.eq(delta, 0.0) {
            b.clone()
        } else {
            match choice {
                RowChoice::Greatest => greatest_cheb_approx(&l, b, delta, tol)?,
                RowChoice::Minimal(idx) => {
                    let minimal = minimal_cheb_approximations(&l, b, delta, tol, cap)?;
                    minimal.chebs.get(idx).cloned().ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "output {k} has {} minimal Chebyshev approximations, index {idx} requested",
                            minimal.chebs.len()
                        ))
                    })?
                }
            }
        };
        rows.push(godel_min_prod(&lt, &c, tol)?);
        per_output_delta.push(delta);
        chosen_rhs.push(c);
    }
    let mu = per_output_delta.iter().copied().fold(0.0, f64::max);
    let weights = weights_from_rows(&rows)?;
    let residuals = pair_residuals(t, &weights)?;
    let achieved_error = residuals.iter().copied().fold(0.0, f64::max);
    Ok(LearningReport {
        l,
        rhs_per_output: rhs,
        per_output_delta,
        mu,
        chosen_rhs,
        weights,
        achieved_error,
        residuals,
    })
}
