//! Unit-interval vectors and matrices together with the four compositions
//! used throughout the crate.
//!
//! | composition            | "product"          | "addition" |
//! |------------------------|--------------------|------------|
//! | [`maxmin_prod`]        | `min`              | `max`      |
//! | [`minmax_prod`]        | `max`              | `min`      |
//! | [`godel_min_prod`]     | Gödel implication  | `min`      |
//! | [`eps_max_prod`]       | ε-product          | `max`      |
//!
//! The complement `t ↦ 1 - t` exchanges the first two and the last two.

use std::fmt;
use std::ops::Index;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

/// Absolute slack used for every order comparison: `x ≤ y` is read as
/// `x ≤ y + eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance { eps })
        } else {
            Err(Error::InvalidArgument(format!(
                "tolerance must be a finite non-negative number, got {eps}"
            )))
        }
    }

    #[inline]
    pub fn le(self, x: f64, y: f64) -> bool {
        x <= y + self.eps
    }

    /// Strict order that survives the slack: `x < y - eps`.
    #[inline]
    pub fn lt(self, x: f64, y: f64) -> bool {
        x < y - self.eps
    }

    #[inline]
    pub fn eq(self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.eps
    }

    /// Componentwise equality of two vectors of the same length.
    pub fn eq_vec(self, a: &UnitVector, b: &UnitVector) -> bool {
        a.len() == b.len() && a.iter().zip(b.iter()).all(|(&x, &y)| self.eq(x, y))
    }
}

fn to_unit(value: f64) -> Result<f64> {
    let slack = Tolerance::default().eps;
    if !value.is_finite() || value < -slack || value > 1.0 + slack {
        return Err(Error::OutOfRange { value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct UnitScalar(f64);

impl UnitScalar {
    /// Values within `1e-9` outside the interval are clamped, anything
    /// farther out is rejected.
    pub fn new(value: f64) -> Result<Self> {
        to_unit(value).map(UnitScalar)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<UnitScalar> for f64 {
    fn from(s: UnitScalar) -> f64 {
        s.0
    }
}

/// A non-empty column vector with entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty { what: "vector" });
        }
        entries
            .into_iter()
            .map(to_unit)
            .collect::<Result<Vec<_>>>()
            .map(UnitVector)
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// Builds a vector from values that are in range by construction.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|v| (0.0..=1.0).contains(v)));
        UnitVector(entries)
    }

    pub fn filled(len: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::filled(len, 0.0)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::filled(len, 1.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn complement(&self) -> UnitVector {
        UnitVector(self.0.iter().map(|v| 1.0 - v).collect())
    }

    /// Concatenates vectors end to end.
    pub fn concat(parts: &[&UnitVector]) -> Result<UnitVector> {
        let entries: Vec<f64> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        UnitVector::new(entries)
    }

    /// Lexicographic order on entries, used to canonicalize result lists.
    pub fn lex_cmp(&self, other: &UnitVector) -> std::cmp::Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl Index<usize> for UnitVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a UnitVector {
    type Item = &'a f64;
    type IntoIter = std::slice::Iter<'a, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for UnitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl fmt::Display for UnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A dense row-major matrix with entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl UnitMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty { what: "matrix" });
        }
        check_dim("matrix data length", rows * cols, data.len())?;
        let data = data.into_iter().map(to_unit).collect::<Result<Vec<_>>>()?;
        Ok(UnitMatrix { rows, cols, data })
    }

    /// Builds a matrix from a list of rows, which must all have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty { what: "matrix" })?;
        let cols = first.as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            check_dim("matrix row length", cols, row.as_ref().len())?;
            data.extend_from_slice(row.as_ref());
        }
        Self::new(rows.len(), cols, data)
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        UnitMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> UnitVector {
        UnitVector::from_raw(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> UnitVector {
        UnitVector::from_raw((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> UnitMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        UnitMatrix::from_raw(self.cols, self.rows, data)
    }

    pub fn complement(&self) -> UnitMatrix {
        UnitMatrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().map(|v| 1.0 - v).collect(),
        )
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&UnitMatrix]) -> Result<UnitMatrix> {
        let first = blocks.first().ok_or(Error::Empty { what: "block list" })?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for block in blocks {
            check_dim("stacked block columns", cols, block.cols)?;
            data.extend_from_slice(&block.data);
            rows += block.rows;
        }
        Ok(UnitMatrix::from_raw(rows, cols, data))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl Serialize for UnitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Gödel implication, the residuum of `min`.
#[inline]
pub fn godel_implication(x: f64, y: f64, tol: Tolerance) -> f64 {
    if tol.le(x, y) {
        1.0
    } else {
        y
    }
}

/// ε-product: `y` when `x < y`, otherwise `0`. Complement-dual of
/// [`godel_implication`].
#[inline]
pub fn eps_product(x: f64, y: f64, tol: Tolerance) -> f64 {
    if tol.le(y, x) {
        0.0
    } else {
        y
    }
}

fn compose<F, G>(
    context: &'static str,
    m: &UnitMatrix,
    v: &UnitVector,
    neutral: f64,
    product: F,
    addition: G,
) -> Result<UnitVector>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    check_dim(context, m.cols(), v.len())?;
    let out = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v.iter())
                .fold(neutral, |acc, (&a, &x)| addition(acc, product(a, x)))
        })
        .collect();
    Ok(UnitVector::from_raw(out))
}

/// `result_i = max_j min(a_ij, x_j)`.
pub fn maxmin_prod(a: &UnitMatrix, x: &UnitVector) -> Result<UnitVector> {
    compose("max-min product", a, x, 0.0, f64::min, f64::max)
}

/// `result_i = min_j max(g_ij, x_j)`.
pub fn minmax_prod(g: &UnitMatrix, x: &UnitVector) -> Result<UnitVector> {
    compose("min-max product", g, x, 1.0, f64::max, f64::min)
}

/// `result_i = min_j (m_ij →G c_j)`.
pub fn godel_min_prod(m: &UnitMatrix, c: &UnitVector, tol: Tolerance) -> Result<UnitVector> {
    compose(
        "Gödel-min product",
        m,
        c,
        1.0,
        |a, x| godel_implication(a, x, tol),
        f64::min,
    )
}

/// `result_i = max_j (m_ij ε c_j)`.
pub fn eps_max_prod(m: &UnitMatrix, c: &UnitVector, tol: Tolerance) -> Result<UnitVector> {
    compose(
        "ε-max product",
        m,
        c,
        0.0,
        |a, x| eps_product(a, x, tol),
        f64::max,
    )
}

/// Chebyshev (L∞) distance between two vectors.
pub fn linf_dist(a: &UnitVector, b: &UnitVector) -> Result<f64> {
    check_dim("L∞ distance", a.len(), b.len())?;
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

/// Componentwise `a ≤ b` under the tolerance.
pub fn leq(a: &UnitVector, b: &UnitVector, tol: Tolerance) -> Result<bool> {
    check_dim("componentwise order", a.len(), b.len())?;
    Ok(a.iter().zip(b.iter()).all(|(&x, &y)| tol.le(x, y)))
}

/// `(x)^+ = max(x, 0)`.
#[inline]
pub fn positive_part(x: f64) -> f64 {
    x.max(0.0)
}
