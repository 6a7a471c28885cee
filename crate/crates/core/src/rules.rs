//! Rule-parameter learning for possibilistic rule bases from several
//! training data at once.
//!
//! Each datum contributes a min-max system `Y_i = Γ_i □ X` over the same
//! unknown parameter vector `X`. Stacking the blocks gives one system whose
//! (approximate) solutions account for all data together.

use serde::Serialize;

use crate::consistency::{solve, SystemProblem};
use crate::dual::dual_report;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{Tolerance, UnitMatrix, UnitVector};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleTrainingInstance {
    /// Possibility degrees of the rule premises.
    pub gamma: UnitMatrix,
    /// Output possibility distribution.
    pub target: UnitVector,
}

impl RuleTrainingInstance {
    pub fn new(gamma: UnitMatrix, target: UnitVector) -> Result<Self> {
        check_dim("rule instance target", gamma.rows(), target.len())?;
        Ok(RuleTrainingInstance { gamma, target })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum IntervalSource {
    /// The stacked system is consistent; the interval bounds its solutions.
    Exact,
    /// Solutions reproducing the lowest Chebyshev approximation.
    LowestChebyshev,
    /// Solutions reproducing the given maximal Chebyshev approximation.
    MaximalChebyshev(usize),
}

/// Every `X` with `lower ≤ X ≤ upper` satisfies `Γ □ X = rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterInterval {
    pub source: IntervalSource,
    pub rhs: UnitVector,
    pub lower: UnitVector,
    pub upper: UnitVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleLearningResult {
    pub stacked_matrix: UnitMatrix,
    pub stacked_rhs: UnitVector,
    pub consistent: bool,
    pub nabla: f64,
    /// Lowest solution when consistent, lowest approximate solution otherwise.
    pub lowest_solution: UnitVector,
    /// Maximal solutions when consistent, maximal approximate solutions
    /// otherwise.
    pub maximal_solutions: Vec<UnitVector>,
    pub lowest_cheb: UnitVector,
    pub maximal_chebs: Vec<UnitVector>,
    pub intervals: Vec<ParameterInterval>,
}

/// Vertical concatenation of the `Γ_i` and `Y_i` into one min-max system.
pub fn stack_systems(instances: &[RuleTrainingInstance]) -> Result<SystemProblem> {
    if instances.is_empty() {
        return Err(Error::Empty {
            what: "rule instance list",
        });
    }
    let blocks: Vec<&UnitMatrix> = instances.iter().map(|i| &i.gamma).collect();
    let targets: Vec<&UnitVector> = instances.iter().map(|i| &i.target).collect();
    SystemProblem::minmax(UnitMatrix::vstack(&blocks)?, UnitVector::concat(&targets)?)
}

fn intervals_for(
    matrix: &UnitMatrix,
    rhs: &UnitVector,
    source: IntervalSource,
    tol: Tolerance,
    cap: u64,
) -> Result<Vec<ParameterInterval>> {
    let set = solve(
        &SystemProblem::minmax(matrix.clone(), rhs.clone())?,
        tol,
        cap,
    )?;
    Ok(set
        .intervals()
        .into_iter()
        .map(|(lower, upper)| ParameterInterval {
            source,
            rhs: rhs.clone(),
            lower,
            upper,
        })
        .collect())
}

/// Solves the stacked system exactly when possible and approximately
/// otherwise, reporting one parameter interval per extremal Chebyshev
/// approximation and maximal solution.
pub fn learn_rule_parameters(
    instances: &[RuleTrainingInstance],
    tol: Tolerance,
    cap: u64,
) -> Result<RuleLearningResult> {
    let stacked = stack_systems(instances)?;
    let report = dual_report(&stacked.matrix, &stacked.rhs, tol, cap)?;
    let consistent = report.is_consistent(tol);

    let mut intervals = Vec::new();
    if consistent {
        intervals.extend(intervals_for(
            &stacked.matrix,
            &stacked.rhs,
            IntervalSource::Exact,
            tol,
            cap,
        )?);
    } else {
        intervals.extend(intervals_for(
            &stacked.matrix,
            &report.lowest_cheb,
            IntervalSource::LowestChebyshev,
            tol,
            cap,
        )?);
        for (k, c) in report.maximal_chebs().iter().enumerate() {
            intervals.extend(intervals_for(
                &stacked.matrix,
                c,
                IntervalSource::MaximalChebyshev(k),
                tol,
                cap,
            )?);
        }
    }

    Ok(RuleLearningResult {
        consistent,
        nabla: report.nabla,
        lowest_solution: report.nu.clone(),
        maximal_solutions: report.maximal_approx_solutions().to_vec(),
        lowest_cheb: report.lowest_cheb.clone(),
        maximal_chebs: report.maximal_chebs().to_vec(),
        intervals,
        stacked_matrix: stacked.matrix,
        stacked_rhs: stacked.rhs,
    })
}
