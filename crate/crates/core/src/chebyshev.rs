//! Chebyshev distance of a max-min system's right-hand side to the set of
//! consistent right-hand sides, and the extremal Chebyshev approximations
//! and approximate solutions derived from it.
//!
//! Notation used in the docs below: `θ(x) = A □ x`, `F` as in
//! [`crate::consistency::apply_F`], `b̲(δ)`/`b̄(δ)` the vectors `b` shifted down
//! and up by `δ` and clipped to `[0, 1]`.

use serde::Serialize;

use crate::consistency::apply_F;
use crate::error::{check_dim, Error, Result};
use crate::ineq::{minimal_elements, minimal_solutions, IneqProblem};
use crate::lattice::{
    godel_min_prod, leq, linf_dist, maxmin_prod, positive_part, Tolerance, UnitMatrix, UnitVector,
};

/// Default limit on the number of columns for the subset characterization.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// `σG(x, y, z) = min((x − z)⁺ / 2, (y − z)⁺)`.
pub fn sigma_g(x: f64, y: f64, z: f64) -> f64 {
    (positive_part(x - z) / 2.0).min(positive_part(y - z))
}

/// Chebyshev distance together with its per-row contributions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevDistance {
    pub delta: f64,
    pub per_row: Vec<f64>,
}

/// Closed-form Chebyshev distance:
///
/// `δ_i = min_j max[(b_i − a_ij)⁺, max_k σG(b_i, a_kj, b_k)]`, `Δ = max_i δ_i`.
pub fn chebyshev_delta(a: &UnitMatrix, b: &UnitVector) -> Result<ChebyshevDistance> {
    check_dim("Chebyshev distance", a.rows(), b.len())?;
    let (n, m) = (a.rows(), a.cols());
    let per_row: Vec<f64> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let spread = (0..n)
                        .map(|k| sigma_g(b[i], a.get(k, j), b[k]))
                        .fold(0.0, f64::max);
                    positive_part(b[i] - a.get(i, j)).max(spread)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let delta = per_row.iter().copied().fold(0.0, f64::max);
    Ok(ChebyshevDistance { delta, per_row })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftedBounds {
    /// `(b_i − δ)⁺`
    pub lower: UnitVector,
    /// `min(b_i + δ, 1)`
    pub upper: UnitVector,
    pub delta: f64,
}

pub fn shifted_bounds(b: &UnitVector, delta: f64) -> Result<ShiftedBounds> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::OutOfRange { value: delta });
    }
    let lower = b.iter().map(|&x| positive_part(x - delta)).collect();
    let upper = b.iter().map(|&x| (x + delta).min(1.0)).collect();
    Ok(ShiftedBounds {
        lower: UnitVector::from_raw(lower),
        upper: UnitVector::from_raw(upper),
        delta,
    })
}

/// `b̲(δ) ≤ F(b̄(δ))`. The Chebyshev distance is the least `δ` for which this
/// holds.
pub fn threshold_condition(
    a: &UnitMatrix,
    b: &UnitVector,
    delta: f64,
    tol: Tolerance,
) -> Result<bool> {
    let bounds = shifted_bounds(b, delta)?;
    leq(&bounds.lower, &apply_F(a, &bounds.upper, tol)?, tol)
}

/// Greatest Chebyshev approximation `F(b̄(Δ))`.
pub fn greatest_cheb_approx(
    a: &UnitMatrix,
    b: &UnitVector,
    delta: f64,
    tol: Tolerance,
) -> Result<UnitVector> {
    apply_F(a, &shifted_bounds(b, delta)?.upper, tol)
}

/// Greatest approximate solution `η = Aᵗ □→G F(b̄(Δ))`.
pub fn greatest_approx_solution(
    a: &UnitMatrix,
    b: &UnitVector,
    delta: f64,
    tol: Tolerance,
) -> Result<UnitVector> {
    let greatest = greatest_cheb_approx(a, b, delta, tol)?;
    godel_min_prod(&a.transpose(), &greatest, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalApproximations {
    /// Minimal Chebyshev approximations of `b`.
    pub chebs: Vec<UnitVector>,
    /// Minimal solutions of `b̲(Δ) ≤ θ(x)` below `η` whose image is a minimal
    /// Chebyshev approximation.
    pub solutions: Vec<UnitVector>,
}

/// Minimal Chebyshev approximations and the minimal approximate solutions
/// that produce them.
///
/// The minimal solutions `v` of `b̲(Δ) ≤ A □ x` with `v ≤ η` are enumerated;
/// the minimal elements of `{θ(v)}` are exactly the minimal Chebyshev
/// approximations.
pub fn minimal_cheb_approximations(
    a: &UnitMatrix,
    b: &UnitVector,
    delta: f64,
    tol: Tolerance,
    cap: u64,
) -> Result<MinimalApproximations> {
    let bounds = shifted_bounds(b, delta)?;
    let eta = greatest_approx_solution(a, b, delta, tol)?;
    let problem = IneqProblem::lower(a.clone(), bounds.lower, eta)?;
    let candidates = minimal_solutions(&problem, tol, cap)?;
    let images = candidates
        .iter()
        .map(|v| maxmin_prod(a, v))
        .collect::<Result<Vec<_>>>()?;

    let chebs = if tol.eq(delta, 0.0) {
        vec![b.clone()]
    } else {
        minimal_elements(&images, tol)
    };
    let solutions = candidates
        .into_iter()
        .zip(&images)
        .filter(|(_, img)| chebs.iter().any(|c| tol.eq_vec(c, img)))
        .map(|(v, _)| v)
        .collect();
    Ok(MinimalApproximations { chebs, solutions })
}

/// Everything known about the Chebyshev approximation of one system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevReport {
    pub delta: f64,
    pub per_row: Vec<f64>,
    pub bounds: ShiftedBounds,
    pub greatest_cheb: UnitVector,
    pub eta: UnitVector,
    /// `None` when the minimal elements were not requested.
    pub minimal: Option<MinimalApproximations>,
}

impl ChebyshevReport {
    pub fn is_consistent(&self, tol: Tolerance) -> bool {
        tol.eq(self.delta, 0.0)
    }

    pub fn minimal_chebs(&self) -> &[UnitVector] {
        self.minimal.as_ref().map_or(&[], |m| &m.chebs)
    }

    pub fn minimal_approx_solutions(&self) -> &[UnitVector] {
        self.minimal.as_ref().map_or(&[], |m| &m.solutions)
    }
}

/// Computes Δ, the greatest elements, and the minimal elements.
pub fn chebyshev_report(
    a: &UnitMatrix,
    b: &UnitVector,
    tol: Tolerance,
    cap: u64,
) -> Result<ChebyshevReport> {
    let mut report = chebyshev_report_without_minimal(a, b, tol)?;
    report.minimal = Some(minimal_cheb_approximations(a, b, report.delta, tol, cap)?);
    Ok(report)
}

/// Same as [`chebyshev_report`] but skips the enumeration of minimal elements.
pub fn chebyshev_report_without_minimal(
    a: &UnitMatrix,
    b: &UnitVector,
    tol: Tolerance,
) -> Result<ChebyshevReport> {
    let ChebyshevDistance { delta, per_row } = chebyshev_delta(a, b)?;
    let bounds = shifted_bounds(b, delta)?;
    let greatest_cheb = apply_F(a, &bounds.upper, tol)?;
    let eta = godel_min_prod(&a.transpose(), &greatest_cheb, tol)?;
    Ok(ChebyshevReport {
        delta,
        per_row,
        bounds,
        greatest_cheb,
        eta,
        minimal: None,
    })
}

/// `x` is an approximate solution iff `b̲(Δ) ≤ θ(x)` and `x ≤ η`.
pub fn is_approx_solution(
    a: &UnitMatrix,
    report: &ChebyshevReport,
    x: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    check_dim("approximate solution", a.cols(), x.len())?;
    Ok(leq(&report.bounds.lower, &maxmin_prod(a, x)?, tol)? && leq(x, &report.eta, tol)?)
}

/// `‖θ(x) − b‖ = Δ`, the defining property of approximate solutions.
pub fn is_approx_solution_direct(
    a: &UnitMatrix,
    b: &UnitVector,
    delta: f64,
    x: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    Ok(tol.eq(linf_dist(&maxmin_prod(a, x)?, b)?, delta))
}

/// Per-column index sets `H_j = {i | a_ij < b_i − Δ}` and the derived map
/// `T ↦ ξ_T = max_{i ∈ ∩_{j∈T} H_j} (b_i − Δ)⁺`.
///
/// Subsets `T` of the columns are encoded as bit masks.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetCharData {
    pub h: Vec<Vec<usize>>,
    /// For each row, the mask of columns `j` with `i ∈ H_j`.
    row_masks: Vec<u64>,
    lower: Vec<f64>,
    columns: usize,
}

impl SubsetCharData {
    pub fn new(
        a: &UnitMatrix,
        report: &ChebyshevReport,
        tol: Tolerance,
        cap: usize,
    ) -> Result<Self> {
        let columns = a.cols();
        if columns > cap.min(63) {
            return Err(Error::SubsetCapExceeded {
                columns,
                cap: cap.min(63),
            });
        }
        check_dim(
            "subset characterization",
            a.rows(),
            report.bounds.lower.len(),
        )?;
        let lower = report.bounds.lower.as_slice().to_vec();
        let h: Vec<Vec<usize>> = (0..columns)
            .map(|j| {
                (0..a.rows())
                    .filter(|&i| tol.lt(a.get(i, j), lower[i]))
                    .collect()
            })
            .collect();
        let mut row_masks = vec![0u64; a.rows()];
        for (j, rows) in h.iter().enumerate() {
            for &i in rows {
                row_masks[i] |= 1 << j;
            }
        }
        Ok(SubsetCharData {
            h,
            row_masks,
            lower,
            columns,
        })
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.columns) - 1
    }

    /// `I_T`, the rows lying in every `H_j` for `j ∈ T`.
    pub fn rows_in(&self, subset: u64) -> Vec<usize> {
        (0..self.row_masks.len())
            .filter(|&i| self.row_masks[i] & subset == subset)
            .collect()
    }

    pub fn xi(&self, subset: u64) -> f64 {
        self.row_masks
            .iter()
            .zip(&self.lower)
            .filter(|(mask, _)| *mask & subset == subset)
            .map(|(_, &l)| l)
            .fold(0.0, f64::max)
    }
}

/// Subset characterization: `x` is an approximate solution iff
/// `ξ_T ≤ max_{j ∉ T} x_j` for every column subset `T`, and `x ≤ η`.
///
/// Exponential in the number of columns; rejected beyond `subset_cap`.
pub fn is_approx_solution_subset_char(
    a: &UnitMatrix,
    report: &ChebyshevReport,
    x: &UnitVector,
    tol: Tolerance,
    subset_cap: usize,
) -> Result<bool> {
    check_dim("approximate solution", a.cols(), x.len())?;
    let data = SubsetCharData::new(a, report, tol, subset_cap)?;
    if !leq(x, &report.eta, tol)? {
        return Ok(false);
    }
    let full = data.full_mask();
    for subset in 0..=full {
        let outside = (0..data.columns())
            .filter(|j| subset & (1 << j) == 0)
            .map(|j| x[j])
            .fold(0.0, f64::max);
        if !tol.le(data.xi(subset), outside) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c` is a Chebyshev approximation iff `F(c) = c` and some minimal
/// Chebyshev approximation `c'` satisfies `c' ≤ c ≤ F(b̄(Δ))`.
pub fn is_cheb_approximation(
    a: &UnitMatrix,
    report: &ChebyshevReport,
    c: &UnitVector,
    tol: Tolerance,
) -> Result<bool> {
    check_dim("Chebyshev approximation", a.rows(), c.len())?;
    let minimal = report.minimal.as_ref().ok_or_else(|| {
        Error::InvalidArgument("report was computed without minimal approximations".into())
    })?;
    if !tol.eq_vec(&apply_F(a, c, tol)?, c) || !leq(c, &report.greatest_cheb, tol)? {
        return Ok(false);
    }
    for lower in &minimal.chebs {
        if leq(lower, c, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ineq::DEFAULT_ENUMERATION_CAP;

    fn v(xs: &[f64]) -> UnitVector {
        UnitVector::from_slice(xs).unwrap()
    }

    fn close(a: &UnitVector, b: &[f64]) -> bool {
        Tolerance::default().eq_vec(a, &v(b))
    }

    fn cheb_a() -> UnitMatrix {
        UnitMatrix::from_rows(&[[0.03, 0.38, 0.26], [0.98, 0.10, 0.03], [0.77, 0.15, 0.85]])
            .unwrap()
    }

    fn cheb_b() -> UnitVector {
        v(&[0.54, 0.13, 0.87])
    }

    fn report() -> ChebyshevReport {
        chebyshev_report(
            &cheb_a(),
            &cheb_b(),
            Tolerance::default(),
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap()
    }

    #[test]
    fn sigma_g_examples() {
        assert!((sigma_g(0.56, 0.87, 0.36) - 0.10).abs() < 1e-12);
        assert!((sigma_g(0.54, 0.98, 0.13) - 0.205).abs() < 1e-12);
        assert_eq!(sigma_g(0.5, 0.2, 0.3), 0.0);
        assert_eq!(sigma_g(0.2, 0.9, 0.3), 0.0);
    }

    #[test]
    fn delta_example() {
        let d = chebyshev_delta(&cheb_a(), &cheb_b()).unwrap();
        assert!((d.delta - 0.16).abs() < 1e-9);
        for (got, want) in d.per_row.iter().zip([0.16, 0.0, 0.02]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn shifted_bounds_examples() {
        let s = shifted_bounds(&cheb_b(), 0.16).unwrap();
        assert!(close(&s.lower, &[0.38, 0.0, 0.71]));
        assert!(close(&s.upper, &[0.70, 0.29, 1.00]));
        let z = shifted_bounds(&cheb_b(), 0.0).unwrap();
        assert_eq!(z.lower, cheb_b());
        assert_eq!(z.upper, cheb_b());
        let one = shifted_bounds(&cheb_b(), 1.0).unwrap();
        assert_eq!(one.lower, v(&[0.0, 0.0, 0.0]));
        assert_eq!(one.upper, v(&[1.0, 1.0, 1.0]));
        assert!(shifted_bounds(&cheb_b(), 1.5).is_err());
    }

    #[test]
    fn greatest_elements() {
        let r = report();
        assert!(close(&r.greatest_cheb, &[0.38, 0.29, 0.85]));
        assert!(close(&r.eta, &[0.29, 1.0, 1.0]));
        assert!((linf_dist(&r.greatest_cheb, &cheb_b()).unwrap() - r.delta).abs() < 1e-9);
    }

    #[test]
    fn minimal_elements_of_example() {
        let r = report();
        assert_eq!(r.minimal_chebs().len(), 1);
        assert!(close(&r.minimal_chebs()[0], &[0.38, 0.10, 0.71]));
        assert_eq!(r.minimal_approx_solutions().len(), 1);
        assert!(close(&r.minimal_approx_solutions()[0], &[0.0, 0.38, 0.71]));
    }

    #[test]
    fn consistent_system_short_circuits() {
        let tol = Tolerance::default();
        let a =
            UnitMatrix::from_rows(&[[0.06, 0.87, 0.95], [0.75, 0.13, 0.88], [0.82, 0.06, 0.19]])
                .unwrap();
        let b = v(&[0.4, 0.7, 0.7]);
        let r = chebyshev_report(&a, &b, tol, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.delta, 0.0);
        assert!(tol.eq_vec(&r.greatest_cheb, &b));
        assert!(close(&r.eta, &[0.7, 0.4, 0.4]));
        assert_eq!(r.minimal_chebs(), &[b]);
    }

    #[test]
    fn approx_solution_membership() {
        let tol = Tolerance::default();
        let (a, r) = (cheb_a(), report());
        for (x, want) in [
            (v(&[0.0, 0.38, 0.71]), true),
            (r.eta.clone(), true),
            (v(&[0.71, 0.38, 0.0]), false),
            (v(&[0.0, 0.0, 0.0]), false),
        ] {
            assert_eq!(is_approx_solution(&a, &r, &x, tol).unwrap(), want, "{x}");
            assert_eq!(
                is_approx_solution_subset_char(&a, &r, &x, tol, DEFAULT_SUBSET_CAP).unwrap(),
                want,
                "{x}"
            );
        }
    }

    #[test]
    fn xi_properties() {
        let tol = Tolerance::default();
        let data = SubsetCharData::new(&cheb_a(), &report(), tol, DEFAULT_SUBSET_CAP).unwrap();
        assert!((data.xi(0) - 0.71).abs() < 1e-9);
        assert_eq!(data.xi(data.full_mask()), 0.0);
        assert!(data.rows_in(data.full_mask()).is_empty());
        for t in 0..=data.full_mask() {
            for extra in 0..data.columns() {
                assert!(data.xi(t | (1 << extra)) <= data.xi(t));
            }
        }
    }

    #[test]
    fn subset_cap_is_enforced() {
        let r = report();
        let err = is_approx_solution_subset_char(&cheb_a(), &r, &r.eta, Tolerance::default(), 2);
        assert!(matches!(
            err,
            Err(Error::SubsetCapExceeded { columns: 3, cap: 2 })
        ));
    }

    #[test]
    fn cheb_membership() {
        let tol = Tolerance::default();
        let (a, r) = (cheb_a(), report());
        assert!(is_cheb_approximation(&a, &r, &r.greatest_cheb, tol).unwrap());
        assert!(is_cheb_approximation(&a, &r, &v(&[0.38, 0.10, 0.71]), tol).unwrap());
        assert!(!is_cheb_approximation(&a, &r, &cheb_b(), tol).unwrap());
        let bare = chebyshev_report_without_minimal(&a, &cheb_b(), tol).unwrap();
        assert!(is_cheb_approximation(&a, &bare, &r.greatest_cheb, tol).is_err());
    }

    #[test]
    fn threshold_condition_at_delta() {
        let tol = Tolerance::default();
        assert!(threshold_condition(&cheb_a(), &cheb_b(), 0.16, tol).unwrap());
        assert!(!threshold_condition(&cheb_a(), &cheb_b(), 0.16 - 1e-8, tol).unwrap());
    }
}
