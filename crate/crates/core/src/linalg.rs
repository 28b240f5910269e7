//! Valuation-aware linear algebra over the truncated Novikov field.
//!
//! Sparse column elimination picks, in each column, the entry of least
//! valuation (smallest row index on ties). Entries whose every known term
//! sits within `slack` of the cutoff cannot be told apart from zero and make
//! the computation fail with an insufficient-cutoff error.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graded::Vector;
use crate::novikov::{Exp, Novikov, NovikovError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("insufficient cutoff: an entry of valuation {valuation} is within the slack of the cutoff {cutoff}")]
    InsufficientCutoff { valuation: Exp, cutoff: Exp },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] NovikovError),
}

/// Cutoff and slack used to decide whether an entry is certainly nonzero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certification {
    pub cutoff: Exp,
    pub slack: Exp,
}

impl Certification {
    pub fn new(cutoff: Exp, slack: Exp) -> Certification {
        Certification { cutoff, slack }
    }

    fn threshold(&self) -> Exp {
        self.cutoff - self.slack
    }

    /// Nonzero entries must have a term below `E - slack`.
    pub fn check(&self, x: &Novikov) -> Result<(), LinalgError> {
        match x.valuation() {
            Some(v) if v >= self.threshold() => Err(LinalgError::InsufficientCutoff { valuation: v, cutoff: self.cutoff }),
            _ => Ok(()),
        }
    }

    /// Whether a residual vector is zero, nonzero, or undecidable.
    pub fn is_zero_vector(&self, v: &Vector) -> Result<bool, LinalgError> {
        for (_, x) in v.iter() {
            self.check(x)?;
        }
        Ok(v.is_zero())
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    reduced: Vector,
    combination: Vector,
    value_inv: Novikov,
}

/// Result of column-echelon elimination of a list of columns.
#[derive(Clone, Debug)]
pub struct Elimination {
    cert: Certification,
    pivots: BTreeMap<usize, Pivot>,
    pivot_columns: Vec<usize>,
    kernel: Vec<Vector>,
    ncols: usize,
}

impl Elimination {
    pub fn new(cert: Certification) -> Elimination {
        Elimination { cert, pivots: BTreeMap::new(), pivot_columns: Vec::new(), kernel: Vec::new(), ncols: 0 }
    }

    /// Eliminates the columns in order.
    pub fn run(columns: &[Vector], cert: Certification) -> Result<Elimination, LinalgError> {
        let mut e = Elimination::new(cert);
        for c in columns {
            e.push(c)?;
        }
        Ok(e)
    }

    /// Reduces `v` against the current pivots. Returns the residual and the
    /// combination `c` of pushed columns with `v - Σ c_k col_k = residual`.
    pub fn reduce(&self, v: &Vector) -> Result<(Vector, Vector), LinalgError> {
        let mut residual = v.clone();
        let mut combination = Vector::zero();
        loop {
            let row = residual.support().find(|r| self.pivots.contains_key(r));
            let Some(row) = row else { break };
            let pivot = &self.pivots[&row];
            let factor = residual.get(row).expect("support entry") * &pivot.value_inv;
            residual.add_scaled(&-&factor, &pivot.reduced);
            // the pivot row entry cancels up to precision; drop what remains
            if residual.get(row).is_some() {
                let mut cleaned = Vector::zero();
                for (i, x) in residual.iter() {
                    if i != row {
                        cleaned.add_term(i, x);
                    }
                }
                residual = cleaned;
            }
            combination.add_scaled(&factor, &pivot.combination);
        }
        Ok((residual, combination))
    }

    /// Adds one column; returns whether it was independent.
    pub fn push(&mut self, column: &Vector) -> Result<bool, LinalgError> {
        let index = self.ncols;
        self.ncols += 1;
        let (residual, combination) = self.reduce(column)?;
        let mut combo = combination.scaled(&Novikov::int(-1, self.cert.cutoff));
        combo.add_term(index, &Novikov::one(self.cert.cutoff));
        for (_, x) in residual.iter() {
            self.cert.check(x)?;
        }
        if residual.is_zero() {
            self.kernel.push(combo);
            return Ok(false);
        }
        let (row, value) = residual
            .iter()
            .min_by(|a, b| a.1.valuation().cmp(&b.1.valuation()).then(a.0.cmp(&b.0)))
            .map(|(r, x)| (r, x.clone()))
            .expect("nonzero residual");
        let value_inv = value.inv()?;
        self.pivots.insert(row, Pivot { reduced: residual, combination: combo, value_inv });
        self.pivot_columns.push(index);
        Ok(true)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis in terms of the pushed columns.
    pub fn kernel(&self) -> &[Vector] {
        &self.kernel
    }

    /// Indices of the columns that were independent of their predecessors.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_columns
    }

    /// Solves `Σ c_k col_k = v`; `None` if `v` is outside the span.
    pub fn solve(&self, v: &Vector) -> Result<Option<Vector>, LinalgError> {
        let (residual, combination) = self.reduce(v)?;
        if self.cert.is_zero_vector(&residual)? {
            Ok(Some(combination))
        } else {
            Ok(None)
        }
    }

    pub fn in_span(&self, v: &Vector) -> Result<bool, LinalgError> {
        Ok(self.solve(v)?.is_some())
    }
}

/// Rank of a list of columns.
pub fn rank(columns: &[Vector], cert: Certification) -> Result<usize, LinalgError> {
    Ok(Elimination::run(columns, cert)?.rank())
}

/// Dense square matrix over `Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: Vec<Vec<Novikov>>,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<Novikov>>) -> Matrix {
        Matrix { rows }
    }

    pub fn zero(n: usize, m: usize, cutoff: Exp) -> Matrix {
        Matrix { rows: vec![vec![Novikov::zero(cutoff); m]; n] }
    }

    pub fn identity(n: usize, cutoff: Exp) -> Matrix {
        let mut m = Matrix::zero(n, n, cutoff);
        for i in 0..n {
            m.rows[i][i] = Novikov::one(cutoff);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &Novikov {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.ncols() != other.nrows() {
            return Err(LinalgError::Dimension("matrix product".into()));
        }
        let cutoff = self.rows.first().and_then(|r| r.first()).map_or(Exp::from_integer(1), |x| x.cutoff());
        let mut out = Matrix::zero(self.nrows(), other.ncols(), cutoff);
        for i in 0..self.nrows() {
            for j in 0..other.ncols() {
                let mut acc = Novikov::zero(cutoff);
                for k in 0..self.ncols() {
                    acc = acc.checked_add(&self.rows[i][k].checked_mul(&other.rows[k][j])?)?;
                }
                out.rows[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.nrows();
        let m = self.ncols();
        Matrix { rows: (0..m).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    /// Determinant by Gaussian elimination with least-valuation pivots.
    pub fn det(&self) -> Result<Novikov, LinalgError> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(LinalgError::Dimension("determinant of a non-square matrix".into()));
        }
        let cutoff = self.cutoff();
        let mut a = self.rows.clone();
        let mut det = Novikov::one(cutoff);
        for col in 0..n {
            let Some(p) = least_valuation_row(&a, col, col) else {
                return Ok(Novikov::zero(cutoff));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            let inv = pivot.inv()?;
            det = det.checked_mul(&pivot)?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].checked_mul(&inv)?;
                for c in col..n {
                    let t = f.checked_mul(&a[col][c])?;
                    a[r][c] = a[r][c].checked_sub(&t)?;
                }
            }
        }
        Ok(det)
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[Novikov]) -> Result<Vec<Novikov>, LinalgError> {
        let n = self.nrows();
        if n != self.ncols() || b.len() != n {
            return Err(LinalgError::Dimension("linear solve".into()));
        }
        let mut a: Vec<Vec<Novikov>> = self.rows.iter().zip(b).map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        }).collect();
        for col in 0..n {
            let p = least_valuation_row(&a, col, col).ok_or(LinalgError::Singular)?;
            a.swap(p, col);
            let inv = a[col][col].inv()?;
            for c in col..=n {
                a[col][c] = a[col][c].checked_mul(&inv)?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = f.checked_mul(&a[col][c])?;
                    a[r][c] = a[r][c].checked_sub(&t)?;
                }
            }
        }
        Ok(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        let n = self.nrows();
        let cutoff = self.cutoff();
        let id = Matrix::identity(n, cutoff);
        let cols: Result<Vec<Vec<Novikov>>, LinalgError> =
            (0..n).map(|j| self.solve(&id.rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>())).collect();
        Ok(Matrix { rows: cols? }.transpose())
    }

    fn cutoff(&self) -> Exp {
        self.rows.first().and_then(|r| r.first()).map_or(Exp::from_integer(1), |x| x.cutoff())
    }
}

fn least_valuation_row(a: &[Vec<Novikov>], col: usize, from: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&r| !a[r][col].is_zero())
        .min_by(|&x, &y| a[x][col].valuation().cmp(&a[y][col].valuation()).then(x.cmp(&y)))
}
