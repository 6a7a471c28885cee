//! One function per verb. Each returns the text rendering, the JSON report and
//! the exit code; `main` picks the rendering.

use std::fmt::Write as _;

use fuzzyrel::oracle::{oracle_delta, oracle_delta_grid, oracle_minimal_solutions, OracleBudget};
use fuzzyrel::rules::IntervalSource;
use fuzzyrel::{
    build_approximate_weights, chebyshev_report, chebyshev_report_without_minimal,
    dual_chebyshev_nabla, dual_report, dual_report_without_maximal, greatest_candidate,
    is_consistent, learn_rule_parameters, minimal_solutions, solve, Composition, Error,
    IneqProblem, RuleTrainingInstance, SolutionSet, SystemProblem, Tolerance, TrainingSet,
    UnitVector, WeightPolicy,
};
use serde::Serialize;
use serde_json::Value;

use crate::output::{fmt_num, fmt_vec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub tol: Tolerance,
    pub cap: u64,
    pub skip_minimal: bool,
}

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

pub struct Failure {
    pub message: String,
    pub code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationBudgetExceeded { .. }
            | Error::SubsetCapExceeded { .. }
            | Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure {
            message,
            code: EXIT_INPUT,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("report types serialize to JSON")
}

fn kind_name(kind: Composition) -> &'static str {
    match kind {
        Composition::MaxMin => "max-min",
        Composition::MinMax => "min-max",
    }
}

fn header(out: &mut String, p: &SystemProblem) {
    let _ = writeln!(
        out,
        "system: {}, {} equations, {} unknowns",
        kind_name(p.kind),
        p.matrix.rows(),
        p.matrix.cols()
    );
}

fn list(out: &mut String, title: &str, items: &[UnitVector]) {
    let _ = writeln!(out, "{title} ({}):", items.len());
    for x in items {
        let _ = writeln!(out, "  {}", fmt_vec(x));
    }
}

pub fn cmd_solve(p: &SystemProblem, s: Settings) -> CmdResult {
    let set = if s.skip_minimal {
        let consistent = is_consistent(p, s.tol)?;
        SolutionSet {
            kind: p.kind,
            consistent,
            extremal: consistent
                .then(|| greatest_candidate(p, s.tol))
                .transpose()?,
            extremal_opposite: Vec::new(),
        }
    } else {
        solve(p, s.tol, s.cap)?
    };

    let mut text = String::new();
    header(&mut text, p);
    let _ = writeln!(
        text,
        "verdict: {}",
        if set.consistent {
            "consistent"
        } else {
            "inconsistent"
        }
    );
    let (ext_name, opp_name) = match p.kind {
        Composition::MaxMin => ("greatest solution", "minimal solutions"),
        Composition::MinMax => ("lowest solution", "maximal solutions"),
    };
    if let Some(ext) = &set.extremal {
        let _ = writeln!(text, "{ext_name}: {}", fmt_vec(ext));
        if !s.skip_minimal {
            list(&mut text, opp_name, &set.extremal_opposite);
        }
    } else {
        let candidate = greatest_candidate(p, s.tol)?;
        let _ = writeln!(text, "candidate {ext_name}: {}", fmt_vec(&candidate));
        let _ = writeln!(text, "its image: {}", fmt_vec(&p.image(&candidate)?));
    }

    Ok(Outcome {
        text,
        json: to_value(&set),
        code: if set.consistent {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        },
    })
}

pub fn cmd_chebyshev(p: &SystemProblem, s: Settings) -> CmdResult {
    let mut text = String::new();
    header(&mut text, p);
    let json = match p.kind {
        Composition::MaxMin => {
            let r = if s.skip_minimal {
                chebyshev_report_without_minimal(&p.matrix, &p.rhs, s.tol)?
            } else {
                chebyshev_report(&p.matrix, &p.rhs, s.tol, s.cap)?
            };
            let _ = writeln!(text, "Chebyshev distance: {}", fmt_num(r.delta));
            if r.is_consistent(s.tol) {
                let _ = writeln!(text, "system is consistent");
            }
            let _ = writeln!(text, "per-row distances: {}", fmt_vec(&r.per_row));
            let _ = writeln!(text, "lower bound: {}", fmt_vec(&r.bounds.lower));
            let _ = writeln!(text, "upper bound: {}", fmt_vec(&r.bounds.upper));
            let _ = writeln!(
                text,
                "greatest Chebyshev approximation: {}",
                fmt_vec(&r.greatest_cheb)
            );
            let _ = writeln!(text, "greatest approximate solution: {}", fmt_vec(&r.eta));
            if r.minimal.is_some() {
                list(
                    &mut text,
                    "minimal Chebyshev approximations",
                    r.minimal_chebs(),
                );
                list(
                    &mut text,
                    "minimal approximate solutions",
                    r.minimal_approx_solutions(),
                );
            }
            to_value(&r)
        }
        Composition::MinMax => {
            let r = if s.skip_minimal {
                dual_report_without_maximal(&p.matrix, &p.rhs, s.tol)?
            } else {
                dual_report(&p.matrix, &p.rhs, s.tol, s.cap)?
            };
            let _ = writeln!(text, "Chebyshev distance: {}", fmt_num(r.nabla));
            if r.is_consistent(s.tol) {
                let _ = writeln!(text, "system is consistent");
            }
            let _ = writeln!(text, "per-row distances: {}", fmt_vec(&r.per_row));
            let _ = writeln!(text, "lower bound: {}", fmt_vec(&r.lower));
            let _ = writeln!(text, "upper bound: {}", fmt_vec(&r.upper));
            let _ = writeln!(
                text,
                "lowest Chebyshev approximation: {}",
                fmt_vec(&r.lowest_cheb)
            );
            let _ = writeln!(text, "lowest approximate solution: {}", fmt_vec(&r.nu));
            if r.maximal.is_some() {
                list(
                    &mut text,
                    "maximal Chebyshev approximations",
                    r.maximal_chebs(),
                );
                list(
                    &mut text,
                    "maximal approximate solutions",
                    r.maximal_approx_solutions(),
                );
            }
            to_value(&r)
        }
    };
    Ok(Outcome {
        text,
        json,
        code: EXIT_OK,
    })
}

pub fn cmd_learn(t: &TrainingSet, s: Settings) -> CmdResult {
    let r = build_approximate_weights(t, &WeightPolicy::Greatest, s.tol, s.cap)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "training pairs: {}, inputs: {}, outputs: {}",
        t.len(),
        t.input_len(),
        t.output_len()
    );
    for (k, d) in r.per_output_delta.iter().enumerate() {
        let _ = writeln!(text, "output {k}: Chebyshev distance {}", fmt_num(*d));
    }
    let _ = writeln!(text, "minimal learning error: {}", fmt_num(r.mu));
    let _ = writeln!(text, "weights:");
    for row in r.weights.to_rows() {
        let _ = writeln!(text, "  {}", fmt_vec(&row));
    }
    let _ = writeln!(text, "achieved error: {}", fmt_num(r.achieved_error));
    let _ = writeln!(text, "per-pair residuals:");
    for (i, e) in r.residuals.iter().enumerate() {
        let _ = writeln!(text, "  pair {i}: {}", fmt_num(*e));
    }
    Ok(Outcome {
        text,
        json: to_value(&r),
        code: EXIT_OK,
    })
}

pub fn cmd_rules(instances: &[RuleTrainingInstance], s: Settings) -> CmdResult {
    let r = learn_rule_parameters(instances, s.tol, s.cap)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "stacked system: {} equations, {} parameters, {} instances",
        r.stacked_matrix.rows(),
        r.stacked_matrix.cols(),
        instances.len()
    );
    let _ = writeln!(text, "Chebyshev distance: {}", fmt_num(r.nabla));
    if r.consistent {
        let _ = writeln!(text, "system is consistent");
    } else {
        let _ = writeln!(
            text,
            "lowest Chebyshev approximation: {}",
            fmt_vec(&r.lowest_cheb)
        );
        list(
            &mut text,
            "maximal Chebyshev approximations",
            &r.maximal_chebs,
        );
    }
    let _ = writeln!(text, "parameter intervals ({}):", r.intervals.len());
    for iv in &r.intervals {
        let source = match iv.source {
            IntervalSource::Exact => "exact".to_string(),
            IntervalSource::LowestChebyshev => "lowest approximation".to_string(),
            IntervalSource::MaximalChebyshev(k) => format!("maximal approximation {k}"),
        };
        let _ = writeln!(
            text,
            "  {source}: {} <= X <= {}",
            fmt_vec(&iv.lower),
            fmt_vec(&iv.upper)
        );
    }
    Ok(Outcome {
        text,
        json: to_value(&r),
        code: EXIT_OK,
    })
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    pub kind: Composition,
    pub delta: f64,
    pub delta_oracle: f64,
    pub delta_grid: f64,
    pub delta_agrees: bool,
    /// Closed form for the min-max distance, compared with the distance of
    /// the complemented system.
    pub delta_direct: Option<f64>,
    pub minimal_count: Option<usize>,
    /// `None` when the grid search was over budget.
    pub minimal_agrees: Option<bool>,
    pub agrees: bool,
}

const GRID_STEPS: u32 = 1000;

pub fn cmd_oracle_check(p: &SystemProblem, s: Settings) -> CmdResult {
    let tol = s.tol;
    let (a, b) = match p.kind {
        Composition::MaxMin => (p.matrix.clone(), p.rhs.clone()),
        Composition::MinMax => (p.matrix.complement(), p.rhs.complement()),
    };
    let budget = OracleBudget {
        max_grid_points: s.cap,
        ..OracleBudget::default()
    };
    let report = chebyshev_report_without_minimal(&a, &b, tol)?;
    let delta = report.delta;
    let delta_oracle = oracle_delta(&a, &b, tol, budget)?;
    let delta_grid = oracle_delta_grid(&a, &b, tol, GRID_STEPS)?;
    let step = 1.0 / GRID_STEPS as f64;
    let delta_agrees = tol.eq(delta, delta_oracle)
        && delta_grid >= delta - tol.eps
        && delta_grid <= delta + step + tol.eps;
    let delta_direct = match p.kind {
        Composition::MaxMin => None,
        Composition::MinMax => Some(dual_chebyshev_nabla(&p.matrix, &p.rhs)?.delta),
    };
    let direct_agrees = delta_direct.is_none_or(|d| tol.eq(d, delta));

    let (minimal_count, minimal_agrees) = if s.skip_minimal {
        (None, None)
    } else {
        let problem =
            IneqProblem::lower(a.clone(), report.bounds.lower.clone(), report.eta.clone())?;
        let fast = minimal_solutions(&problem, tol, s.cap)?;
        match oracle_minimal_solutions(&a, &report.bounds.lower, &report.eta, tol, budget) {
            Ok(slow) => {
                let same = fast.len() == slow.len()
                    && fast.iter().zip(&slow).all(|(x, y)| tol.eq_vec(x, y));
                (Some(fast.len()), Some(same))
            }
            Err(Error::BudgetExceeded { .. }) => (Some(fast.len()), None),
            Err(e) => return Err(e.into()),
        }
    };

    let agrees = delta_agrees && direct_agrees && minimal_agrees != Some(false);
    let check = OracleCheck {
        kind: p.kind,
        delta,
        delta_oracle,
        delta_grid,
        delta_agrees,
        delta_direct,
        minimal_count,
        minimal_agrees,
        agrees,
    };

    let mut text = String::new();
    header(&mut text, p);
    let _ = writeln!(text, "Chebyshev distance: {}", fmt_num(delta));
    let _ = writeln!(text, "candidate search: {}", fmt_num(delta_oracle));
    let _ = writeln!(
        text,
        "grid search (step {}): {}",
        fmt_num(step),
        fmt_num(delta_grid)
    );
    if let Some(d) = delta_direct {
        let _ = writeln!(text, "direct min-max formula: {}", fmt_num(d));
    }
    match minimal_agrees {
        Some(ok) => {
            let _ = writeln!(
                text,
                "minimal solutions: {} enumerated, grid search {}",
                minimal_count.unwrap_or(0),
                if ok { "agrees" } else { "disagrees" }
            );
        }
        None if s.skip_minimal => {}
        None => {
            let _ = writeln!(text, "minimal solutions: grid search skipped, over budget");
        }
    }
    let _ = writeln!(
        text,
        "verdict: {}",
        if agrees { "agree" } else { "mismatch" }
    );

    Ok(Outcome {
        text,
        json: to_value(&check),
        code: if agrees { EXIT_OK } else { EXIT_NEGATIVE },
    })
}
