//! Exact dense linear algebra over `ℚ(i)`: Hankel windows, fraction-free
//! determinants, kernels, solves and an exact positive-semidefiniteness test.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::GaussianRational;
use crate::Error;

/// Row-major dense matrix of Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[GaussianRational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, Error> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> Result<GaussianRational, Error> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    /// Column rank by exact row reduction.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).inv().unwrap();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A finite prefix `(c_s, …, c_{s+N-1})` of a sequence, with `s = start_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceWindow {
    start_index: usize,
    terms: Vec<GaussianRational>,
}

impl SequenceWindow {
    pub fn new(start_index: usize, terms: Vec<GaussianRational>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::DegenerateInput("empty sequence window".into()));
        }
        Ok(Self { start_index, terms })
    }

    pub fn from_ints(start_index: usize, terms: &[i64]) -> Result<Self, Error> {
        Self::new(
            start_index,
            terms.iter().map(|&t| GaussianRational::from_int(t)).collect(),
        )
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn terms(&self) -> &[GaussianRational] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the last available term.
    pub fn last_index(&self) -> usize {
        self.start_index + self.terms.len() - 1
    }

    /// `c_n` by absolute index.
    pub fn term(&self, n: usize) -> Option<&GaussianRational> {
        n.checked_sub(self.start_index).and_then(|k| self.terms.get(k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(GaussianRational::is_real)
    }

    /// The shifted sequence `T[C] = (c_{n+1})_{n≥0}`, indexed from zero.
    pub fn shift(&self) -> Result<Self, Error> {
        match self.start_index {
            0 => Self::new(0, self.terms[1..].to_vec()),
            s => Self::new(s - 1, self.terms.clone()),
        }
    }

    /// Same terms, new indexing origin.
    pub fn reindexed(&self, start_index: usize) -> Self {
        Self {
            start_index,
            terms: self.terms.clone(),
        }
    }

    pub fn require_start(&self, expected: usize) -> Result<(), Error> {
        if self.start_index != expected {
            return Err(Error::IndexConvention {
                expected,
                got: self.start_index,
            });
        }
        Ok(())
    }
}

/// `(m+1)×(m+1)` Hankel matrix with `(i, j)` entry `c_{t+i+j}`; `t` is an
/// absolute sequence index.
pub fn hankel_window(seq: &SequenceWindow, m: usize, t: usize) -> Result<ExactMatrix, Error> {
    let last = t + 2 * m;
    if t < seq.start_index() || last > seq.last_index() {
        return Err(Error::PrefixTooShort {
            needed: last + 1 - seq.start_index().min(t),
            have: seq.len(),
        });
    }
    let n = m + 1;
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| i + j))
        .map(|k| seq.term(t + k).unwrap().clone())
        .collect();
    ExactMatrix::new(n, n, entries)
}

/// Determinant by single-step Bareiss elimination with row pivoting.
pub fn exact_det(m: &ExactMatrix) -> Result<GaussianRational, Error> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(GaussianRational::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = GaussianRational::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let v = &(&(a.get(i, j) * &pivot) - &(&aik * a.get(k, j))) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, GaussianRational::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -det } else { det })
}

/// Basis of the right null space. Each vector has its last nonzero entry
/// equal to one.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    let (r, pivots) = m.rref();
    let free = (0..m.cols()).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![GaussianRational::zero(); m.cols()];
        v[f] = GaussianRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, f);
        }
        v
    })
    .collect()
}

/// Solve `M x = b` for square nonsingular `M`.
pub fn solve(m: &ExactMatrix, b: &[GaussianRational]) -> Result<Vec<GaussianRational>, Error> {
    if !m.is_square() || b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "solve with a {}x{} matrix and a length-{} right-hand side",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a.get(i, k).is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap_rows(k, p);
        x.swap(k, p);
        let inv = a.get(k, k).inv().unwrap();
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k) * &inv;
            for j in k..n {
                let v = a.get(i, j) - &(&f * a.get(k, j));
                a.set(i, j, v);
            }
            x[i] = &x[i] - &(&f * &x[k]);
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k].clone();
        for j in k + 1..n {
            acc -= &(a.get(k, j) * &x[j]);
        }
        x[k] = &acc / a.get(k, k);
    }
    Ok(x)
}

/// Exact positive-semidefiniteness test for a Hermitian matrix by pivoted
/// `LDL*` elimination: every pivot must be nonnegative, and once only zero
/// diagonal entries remain the rest of the active block must vanish.
pub fn psd_window_check(m: &ExactMatrix) -> Result<bool, Error> {
    if !m.is_hermitian() {
        return Err(Error::Shape("PSD check needs a Hermitian matrix".into()));
    }
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| a.get(i, i).re().is_negative()) {
            return Ok(false);
        }
        let Some(pos) = active.iter().position(|&i| a.get(i, i).re().is_positive()) else {
            let all_zero = active
                .iter()
                .all(|&i| active.iter().all(|&j| a.get(i, j).is_zero()));
            return Ok(all_zero);
        };
        let p = active.remove(pos);
        let pivot = a.get(p, p).clone();
        for &i in &active {
            let f = a.get(i, p) / &pivot;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = a.get(i, j) - &(&f * a.get(p, j));
                a.set(i, j, v);
            }
        }
    }
    Ok(true)
}
