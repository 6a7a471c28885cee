//! Min-max systems `G □min-max x = d`.
//!
//! Every result is computed on the complemented max-min system `(G°, d°)` and
//! complemented back. The closed-form ∇ and σε below are kept as independent
//! cross-checks of that route.

use serde::Serialize;

use crate::chebyshev::{
    chebyshev_report, chebyshev_report_without_minimal, ChebyshevDistance, ChebyshevReport,
};
use crate::consistency::apply_U;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{
    leq, linf_dist, minmax_prod, positive_part, Tolerance, UnitMatrix, UnitVector,
};

/// `σε(u, v, w) = min((w − u)⁺ / 2, (w − v)⁺)`, equal to
/// `σG(1 − u, 1 − v, 1 − w)`.
pub fn sigma_eps(u: f64, v: f64, w: f64) -> f64 {
    (positive_part(w - u) / 2.0).min(positive_part(w - v))
}

/// Closed-form ∇:
/// `∇_i = min_j max[(g_ij − d_i)⁺, max_k σε(d_i, g_kj, d_k)]`, `∇ = max_i ∇_i`.
pub fn dual_chebyshev_nabla(g: &UnitMatrix, d: &UnitVector) -> Result<ChebyshevDistance> {
    check_dim("dual Chebyshev distance", g.rows(), d.len())?;
    let (n, m) = (g.rows(), g.cols());
    let per_row: Vec<f64> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let spread = (0..n)
                        .map(|k| sigma_eps(d[i], g.get(k, j), d[k]))
                        .fold(0.0, f64::max);
                    positive_part(g.get(i, j) - d[i]).max(spread)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let delta = per_row.iter().copied().fold(0.0, f64::max);
    Ok(ChebyshevDistance { delta, per_row })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalApproximations {
    pub chebs: Vec<UnitVector>,
    pub solutions: Vec<UnitVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualChebyshevReport {
    pub nabla: f64,
    pub per_row: Vec<f64>,
    /// `d̲(∇)`, entries `(d_i − ∇)⁺`.
    pub lower: UnitVector,
    /// `d̄(∇)`, entries `min(d_i + ∇, 1)`.
    pub upper: UnitVector,
    /// Lowest Chebyshev approximation `U(d̲(∇))`.
    pub lowest_cheb: UnitVector,
    /// Lowest approximate solution `ν`.
    pub nu: UnitVector,
    pub maximal: Option<MaximalApproximations>,
}

impl DualChebyshevReport {
    pub fn is_consistent(&self, tol: Tolerance) -> bool {
        tol.eq(self.nabla, 0.0)
    }

    pub fn maximal_chebs(&self) -> &[UnitVector] {
        self.maximal.as_ref().map_or(&[], |m| &m.chebs)
    }

    pub fn maximal_approx_solutions(&self) -> &[UnitVector] {
        self.maximal.as_ref().map_or(&[], |m| &m.solutions)
    }

    fn from_primal(primal: ChebyshevReport) -> Self {
        let flip = |vs: &[UnitVector]| {
            let mut out: Vec<UnitVector> = vs.iter().map(UnitVector::complement).collect();
            out.sort_by(UnitVector::lex_cmp);
            out
        };
        DualChebyshevReport {
            nabla: primal.delta,
            per_row: primal.per_row,
            lower: primal.bounds.upper.complement(),
            upper: primal.bounds.lower.complement(),
            lowest_cheb: primal.greatest_cheb.complement(),
            nu: primal.eta.complement(),
            maximal: primal.minimal.map(|m| MaximalApproximations {
                chebs: flip(&m.chebs),
                solutions: flip(&m.solutions),
            }),
        }
    }
}

pub fn dual_report(
    g: &UnitMatrix,
    d: &UnitVector,
    tol: Tolerance,
    cap: u64,
) -> Result<DualChebyshevReport> {
    let primal = chebyshev_report(&g.complement(), &d.complement(), tol, cap)?;
    Ok(DualChebyshevReport::from_primal(primal))
}

pub fn dual_report_without_maximal(
    g: &UnitMatrix,
    d: &UnitVector,
    tol: Tolerance,
) -> Result<DualChebyshevReport> {
    let primal = chebyshev_report_without_minimal(&g.complement(), &d.complement(), tol)?;
    Ok(DualChebyshevReport::from_primal(primal))
}

/// `x` is an approximate solution of the min-max system iff
/// `G □ x ≤ d̄(∇)` and `x ≥ ν`.
pub fn is_dual_approx_solution(
    g: &UnitMatrix,
    report: &DualChebyshevReport,
    x: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    check_dim("dual approximate solution", g.cols(), x.len())?;
    Ok(leq(&minmax_prod(g, x)?, &report.upper, tol)? && leq(&report.nu, x, tol)?)
}

/// `‖d − G □ x‖ = ∇`.
pub fn is_dual_approx_solution_direct(
    g: &UnitMatrix,
    d: &UnitVector,
    nabla: f64,
    x: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    Ok(tol.eq(linf_dist(&minmax_prod(g, x)?, d)?, nabla))
}

/// `c` is a Chebyshev approximation of `d` iff `U(c) = c` and
/// `U(d̲(∇)) ≤ c ≤ c'` for some maximal Chebyshev approximation `c'`.
pub fn is_dual_cheb_approximation(
    g: &UnitMatrix,
    report: &DualChebyshevReport,
    c: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    check_dim("dual Chebyshev approximation", g.rows(), c.len())?;
    let maximal = report.maximal.as_ref().ok_or_else(|| {
        Error::InvalidArgument("report was computed without maximal approximations".into())
    })?;
    if !tol.eq_vec(&apply_U(g, c, tol)?, c) || !leq(&report.lowest_cheb, c, tol)? {
        return Ok(false);
    }
    for upper in &maximal.chebs {
        if leq(c, upper, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{chebyshev_delta, sigma_g};
    use crate::ineq::DEFAULT_ENUMERATION_CAP;

    fn v(xs: &[f64]) -> UnitVector {
        UnitVector::from_slice(xs).unwrap()
    }

    fn close(a: &UnitVector, b: &[f64]) -> bool {
        Tolerance::default().eq_vec(a, &v(b))
    }

    fn gamma() -> UnitMatrix {
        UnitMatrix::from_rows(&[
            [0.1, 1.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
            [0.1, 1.0, 1.0, 0.8, 1.0, 1.0],
            [1.0, 1.0, 1.0, 0.8, 1.0, 1.0],
            [0.1, 1.0, 1.0, 1.0, 1.0, 0.3],
            [1.0, 1.0, 1.0, 1.0, 1.0, 0.3],
            [0.1, 1.0, 1.0, 0.8, 1.0, 0.3],
            [1.0, 1.0, 1.0, 0.8, 1.0, 0.3],
        ])
        .unwrap()
    }

    #[test]
    fn sigma_eps_examples() {
        assert!((sigma_eps(0.44, 0.13, 0.64) - 0.10).abs() < 1e-12);
        assert!((sigma_eps(0.44, 0.13, 0.64) - sigma_g(0.56, 0.87, 0.36)).abs() < 1e-12);
        assert_eq!(sigma_eps(0.6, 0.1, 0.5), 0.0);
        assert_eq!(sigma_eps(0.0, 0.0, 1.0), 0.5);
    }

    #[test]
    fn nabla_of_inconsistent_rule_system() {
        let y = v(&[0.3, 1.0, 0.3, 0.8, 0.7, 0.7, 0.3, 0.7]);
        let direct = dual_chebyshev_nabla(&gamma(), &y).unwrap();
        assert!((direct.delta - 0.2).abs() < 1e-9);
        let primal = chebyshev_delta(&gamma().complement(), &y.complement()).unwrap();
        assert!((direct.delta - primal.delta).abs() < 1e-9);
    }

    #[test]
    fn consistent_rule_system_has_zero_nabla() {
        let tol = Tolerance::default();
        let y = v(&[0.3, 1.0, 0.3, 0.8, 0.3, 0.7, 0.3, 0.7]);
        assert!(dual_chebyshev_nabla(&gamma(), &y).unwrap().delta.abs() < 1e-9);
        let r = dual_report(&gamma(), &y, tol, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.is_consistent(tol));
        assert!(tol.eq_vec(&r.lowest_cheb, &y));
        assert!(close(&r.nu, &[0.3, 0.0, 0.0, 0.0, 0.0, 0.7]));
    }

    #[test]
    fn dual_report_of_inconsistent_rule_system() {
        let tol = Tolerance::default();
        let y = v(&[0.3, 1.0, 0.3, 0.8, 0.7, 0.7, 0.3, 0.7]);
        let r = dual_report(&gamma(), &y, tol, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!((r.nabla - 0.2).abs() < 1e-9);
        assert!(close(
            &r.lowest_cheb,
            &[0.5, 1.0, 0.5, 0.8, 0.5, 0.5, 0.5, 0.5]
        ));
        assert_eq!(r.maximal_chebs().len(), 1);
        assert!(close(
            &r.maximal_chebs()[0],
            &[0.5, 1.0, 0.5, 1.0, 0.5, 0.9, 0.5, 0.9]
        ));

        let x = v(&[0.5, 1.0, 1.0, 1.0, 1.0, 0.9]);
        assert!(is_dual_approx_solution(&gamma(), &r, &x, tol).unwrap());
        assert!(r
            .maximal_approx_solutions()
            .iter()
            .any(|s| tol.eq_vec(s, &x)));
        assert!(is_dual_approx_solution(&gamma(), &r, &r.nu, tol).unwrap());

        let zero = v(&[0.0; 6]);
        assert!(!is_dual_approx_solution(&gamma(), &r, &zero, tol).unwrap());
        assert!(!is_dual_approx_solution_direct(&gamma(), &y, r.nabla, &zero, tol).unwrap());

        assert!(is_dual_cheb_approximation(&gamma(), &r, &r.lowest_cheb, tol).unwrap());
        assert!(is_dual_cheb_approximation(&gamma(), &r, &r.maximal_chebs()[0], tol).unwrap());
        assert!(!is_dual_cheb_approximation(&gamma(), &r, &y, tol).unwrap());
    }
}
