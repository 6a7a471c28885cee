//! Consistency of max-min and min-max systems and their solution sets.
//!
//! A max-min system `A □ x = b` is consistent iff its potential greatest
//! solution `e = Aᵗ □→G b` solves it, equivalently iff `F(b) = b` where
//! `F(c) = A □ (Aᵗ □→G c)`. Min-max systems are handled by complementing into
//! the max-min case.

use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::ineq::{minimal_solutions, IneqProblem};
use crate::lattice::{
    eps_max_prod, godel_min_prod, maxmin_prod, minmax_prod, Tolerance, UnitMatrix, UnitVector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Composition {
    /// `A □max-min x = b`
    MaxMin,
    /// `G □min-max x = d`
    MinMax,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemProblem {
    pub matrix: UnitMatrix,
    pub rhs: UnitVector,
    pub kind: Composition,
}

impl SystemProblem {
    pub fn new(matrix: UnitMatrix, rhs: UnitVector, kind: Composition) -> Result<Self> {
        check_dim("system right-hand side", matrix.rows(), rhs.len())?;
        Ok(SystemProblem { matrix, rhs, kind })
    }

    pub fn maxmin(matrix: UnitMatrix, rhs: UnitVector) -> Result<Self> {
        Self::new(matrix, rhs, Composition::MaxMin)
    }

    pub fn minmax(matrix: UnitMatrix, rhs: UnitVector) -> Result<Self> {
        Self::new(matrix, rhs, Composition::MinMax)
    }

    /// The system obtained by complementing matrix and right-hand side, which
    /// switches the composition kind.
    pub fn switched(&self) -> SystemProblem {
        SystemProblem {
            matrix: self.matrix.complement(),
            rhs: self.rhs.complement(),
            kind: match self.kind {
                Composition::MaxMin => Composition::MinMax,
                Composition::MinMax => Composition::MaxMin,
            },
        }
    }

    /// Applies the system's composition to `x`.
    pub fn image(&self, x: &UnitVector) -> Result<UnitVector> {
        match self.kind {
            Composition::MaxMin => maxmin_prod(&self.matrix, x),
            Composition::MinMax => minmax_prod(&self.matrix, x),
        }
    }
}

/// Solution set of a system: the greatest (max-min) or lowest (min-max)
/// solution plus the complete list of minimal (resp. maximal) solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSet {
    pub kind: Composition,
    pub consistent: bool,
    /// Greatest solution for max-min systems, lowest for min-max systems.
    pub extremal: Option<UnitVector>,
    /// Minimal solutions for max-min systems, maximal for min-max systems.
    pub extremal_opposite: Vec<UnitVector>,
}

impl SolutionSet {
    pub fn greatest(&self) -> Option<&UnitVector> {
        match self.kind {
            Composition::MaxMin => self.extremal.as_ref(),
            Composition::MinMax => None,
        }
    }

    pub fn lowest(&self) -> Option<&UnitVector> {
        match self.kind {
            Composition::MaxMin => None,
            Composition::MinMax => self.extremal.as_ref(),
        }
    }

    /// The order intervals whose union is the solution set, as
    /// `(lower, upper)` pairs.
    pub fn intervals(&self) -> Vec<(UnitVector, UnitVector)> {
        let Some(ext) = &self.extremal else {
            return Vec::new();
        };
        self.extremal_opposite
            .iter()
            .map(|o| match self.kind {
                Composition::MaxMin => (o.clone(), ext.clone()),
                Composition::MinMax => (ext.clone(), o.clone()),
            })
            .collect()
    }
}

/// Potential greatest solution `e` (max-min) or potential lowest solution
/// `r = e°` of the complemented system (min-max).
pub fn greatest_candidate(p: &SystemProblem, tol: Tolerance) -> Result<UnitVector> {
    match p.kind {
        Composition::MaxMin => godel_min_prod(&p.matrix.transpose(), &p.rhs, tol),
        Composition::MinMax => Ok(greatest_candidate(&p.switched(), tol)?.complement()),
    }
}

/// Direct form of the lowest candidate, `r = Gᵗ □ε-max d`.
pub fn lowest_candidate_direct(
    g: &UnitMatrix,
    d: &UnitVector,
    tol: Tolerance,
) -> Result<UnitVector> {
    check_dim("system right-hand side", g.rows(), d.len())?;
    eps_max_prod(&g.transpose(), d, tol)
}

/// `F(c) = A □max-min (Aᵗ □→G-min c)`. Always `F(c) ≤ c`; `F(c) = c` iff
/// `A □ x = c` is consistent.
#[allow(non_snake_case)]
pub fn apply_F(a: &UnitMatrix, c: &UnitVector, tol: Tolerance) -> Result<UnitVector> {
    check_dim("F argument", a.rows(), c.len())?;
    let e = godel_min_prod(&a.transpose(), c, tol)?;
    maxmin_prod(a, &e)
}

/// `U(c) = G □min-max (Gᵗ □ε-max c)`. Always `U(c) ≥ c`; `U(c) = c` iff
/// `G □ x = c` is consistent.
#[allow(non_snake_case)]
pub fn apply_U(g: &UnitMatrix, c: &UnitVector, tol: Tolerance) -> Result<UnitVector> {
    check_dim("U argument", g.rows(), c.len())?;
    let r = eps_max_prod(&g.transpose(), c, tol)?;
    minmax_prod(g, &r)
}

pub fn is_consistent(p: &SystemProblem, tol: Tolerance) -> Result<bool> {
    match p.kind {
        Composition::MaxMin => Ok(tol.eq_vec(&apply_F(&p.matrix, &p.rhs, tol)?, &p.rhs)),
        Composition::MinMax => is_consistent(&p.switched(), tol),
    }
}

/// Full solution set. Minimal solutions of a consistent max-min system are
/// the minimal solutions of `b ≤ A □ x` lying below `e`.
pub fn solve(p: &SystemProblem, tol: Tolerance, cap: u64) -> Result<SolutionSet> {
    match p.kind {
        Composition::MaxMin => {
            let e = greatest_candidate(p, tol)?;
            if !tol.eq_vec(&maxmin_prod(&p.matrix, &e)?, &p.rhs) {
                return Ok(SolutionSet {
                    kind: p.kind,
                    consistent: false,
                    extremal: None,
                    extremal_opposite: Vec::new(),
                });
            }
            let ineq = IneqProblem::lower(p.matrix.clone(), p.rhs.clone(), e.clone())?;
            let minimal = minimal_solutions(&ineq, tol, cap)?;
            Ok(SolutionSet {
                kind: p.kind,
                consistent: true,
                extremal: Some(e),
                extremal_opposite: minimal,
            })
        }
        Composition::MinMax => {
            let primal = solve(&p.switched(), tol, cap)?;
            let mut opposite: Vec<UnitVector> = primal
                .extremal_opposite
                .iter()
                .map(UnitVector::complement)
                .collect();
            opposite.sort_by(UnitVector::lex_cmp);
            Ok(SolutionSet {
                kind: p.kind,
                consistent: primal.consistent,
                extremal: primal.extremal.map(|e| e.complement()),
                extremal_opposite: opposite,
            })
        }
    }
}
