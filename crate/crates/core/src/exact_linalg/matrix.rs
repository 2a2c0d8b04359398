use std::fmt;
use std::ops::{Index, IndexMut};

use serde_json::{json, Value};

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field. Zero-row and zero-column
/// matrices are legal and stand for the zero map to or from the zero space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, s: &Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    /// Builds from integer rows. Every row must have the same length.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_elems(field: Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(e) = data.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), e.field().to_string()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, e) in col.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product `self * rhs`, i.e. the composite "first `rhs`, then `self`".
    pub fn compose(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum of equal-shape matrices.
    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.shape() != rhs.shape() || self.field != rhs.field {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    /// Block-diagonal matrix `[[self, 0], [0, rhs]]`.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "direct sum across fields");
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Keeps the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row; no other pivoting.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            m.scale_row(row, &inv);
            for i in 0..m.rows {
                if i != row && !m[(i, col)].is_zero() {
                    let factor = m[(i, col)].clone();
                    m.add_row_multiple(i, row, &(-factor));
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Exact determinant; the 0x0 matrix has determinant 1.
    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in col + 1..m.rows {
                if !m[(i, col)].is_zero() {
                    let factor = &m[(i, col)] * &inv;
                    m.add_row_multiple(i, col, &(-factor));
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        if n == 0 {
            return Some(id);
        }
        let aug = self.hstack(&id).ok()?;
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(e.reduced.submatrix(&rows, &cols))
    }

    /// Some `X` with `self * X = rhs`, or `None` if the system is inconsistent.
    /// Free variables are set to zero, so the answer is reproducible.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "system with {} equations and right-hand side of {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let e = aug.echelon();
        if e.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &pc) in e.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = e.reduced[(r, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Basis of the kernel, one column per free variable, in column order.
    pub fn nullspace(&self) -> Matrix {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = self.field.one();
            for (r, &pc) in e.pivots.iter().enumerate() {
                basis[(pc, k)] = -&e.reduced[(r, f)];
            }
        }
        basis
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.field != rhs.field {
            return Err(Error::Shape(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, below: &Matrix) -> Result<Matrix> {
        if self.cols != below.cols || self.field != below.field {
            return Err(Error::Shape(format!(
                "cannot place {}x{} above {}x{}",
                self.rows, self.cols, below.rows, below.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + below.rows, cols: self.cols, data })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.data.iter().map(Elem::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: Field, v: &Value) -> Result<Matrix> {
        let bad = |what: &str| Error::Parse(format!("matrix: {what}"));
        let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| bad("rows"))? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("cols"))? as usize;
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("entries"))?;
        let data = entries
            .iter()
            .map(|e| match e {
                Value::Number(n) => field.parse_elem(&n.to_string()),
                Value::String(s) => field.parse_elem(s),
                _ => Err(bad("entry must be an integer or \"a/b\" string")),
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_elems(field, rows, cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Elem) {
        for j in 0..self.cols {
            self[(r, j)] = &self[(r, j)] * s;
        }
    }

    /// row[target] += s * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, s: &Elem) {
        for j in 0..self.cols {
            let delta = s * &self[(source, j)];
            self[(target, j)] = &self[(target, j)] + &delta;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
