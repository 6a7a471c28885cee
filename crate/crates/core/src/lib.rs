//! Solving, diagnosing, and Chebyshev-approximating systems of max-min and
//! min-max fuzzy relational equations.
//!
//! * [`lattice`]: unit-interval vectors and matrices and the four compositions.
//! * [`consistency`]: greatest/lowest solutions, the maps `F` and `U`, and
//!   complete solution sets.
//! * [`ineq`]: minimal (maximal) solutions of max-min (min-max) inequalities.
//! * [`chebyshev`]: the Chebyshev distance Δ of an inconsistent max-min
//!   system and its extremal approximations.
//! * [`dual`]: the same for min-max systems, via complementation.
//! * [`learning`]: weight matrices minimizing the worst-case L∞ error.
//! * [`rules`]: rule parameters of possibilistic rule bases from stacked
//!   min-max systems.
//! * [`oracle`]: brute-force reference computations.
//!
//! ```
//! use fuzzyrel::{chebyshev_report, Tolerance, UnitMatrix, UnitVector, DEFAULT_ENUMERATION_CAP};
//!
//! let a = UnitMatrix::from_rows(&[
//!     [0.03, 0.38, 0.26],
//!     [0.98, 0.10, 0.03],
//!     [0.77, 0.15, 0.85],
//! ])?;
//! let b = UnitVector::from_slice(&[0.54, 0.13, 0.87])?;
//! let report = chebyshev_report(&a, &b, Tolerance::default(), DEFAULT_ENUMERATION_CAP)?;
//! assert!((report.delta - 0.16).abs() < 1e-9);
//! # Ok::<(), fuzzyrel::Error>(())
//! ```

pub mod chebyshev;
pub mod consistency;
pub mod dual;
pub mod error;
pub mod ineq;
pub mod lattice;
pub mod learning;
pub mod oracle;
pub mod rules;

pub use chebyshev::{
    chebyshev_delta, chebyshev_report, chebyshev_report_without_minimal, greatest_approx_solution,
    greatest_cheb_approx, is_approx_solution, is_approx_solution_direct,
    is_approx_solution_subset_char, is_cheb_approximation, minimal_cheb_approximations,
    shifted_bounds, sigma_g, threshold_condition, ChebyshevDistance, ChebyshevReport,
    MinimalApproximations, ShiftedBounds, SubsetCharData, DEFAULT_SUBSET_CAP,
};
pub use consistency::{
    apply_F, apply_U, greatest_candidate, is_consistent, solve, Composition, SolutionSet,
    SystemProblem,
};
pub use dual::{
    dual_chebyshev_nabla, dual_report, dual_report_without_maximal, is_dual_approx_solution,
    is_dual_approx_solution_direct, is_dual_cheb_approximation, sigma_eps, DualChebyshevReport,
};
pub use error::{Error, Result};
pub use ineq::{
    maximal_solutions, minimal_solutions, Direction, IneqProblem, DEFAULT_ENUMERATION_CAP,
};
pub use lattice::{
    eps_max_prod, godel_min_prod, leq, linf_dist, maxmin_prod, minmax_prod, Tolerance, UnitMatrix,
    UnitScalar, UnitVector,
};
pub use learning::{
    build_approximate_weights, build_systems, learning_error, minimal_learning_error,
    LearningReport, RowChoice, TrainingSet, WeightPolicy,
};
pub use rules::{learn_rule_parameters, stack_systems, RuleLearningResult, RuleTrainingInstance};
