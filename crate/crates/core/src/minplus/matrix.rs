use crate::error::{Error, Result};

/// The min-plus zero: strictly above any finite sum this crate forms.
pub const INF: i64 = i64::MAX / 4;

#[inline]
pub fn is_inf(x: i64) -> bool {
    x >= INF
}

/// `a + b` with `INF` absorbing.
#[inline]
pub fn tropical_add(a: i64, b: i64) -> i64 {
    if is_inf(a) || is_inf(b) {
        INF
    } else {
        a + b
    }
}

/// Dense row-major integer matrix whose entries may be `INF`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn filled(rows: usize, cols: usize, value: i64) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn infinite(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, INF)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn relax(&mut self, i: usize, j: usize, v: i64) {
        let slot = &mut self.data[i * self.cols + j];
        if v < *slot {
            *slot = v;
        }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise minimum, in place.
    pub fn min_assign(&mut self, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b < *a {
                *a = b;
            }
        }
    }

    /// First `(row, col)` where adjacent rows differ by more than one.
    pub fn column_bd_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows.saturating_sub(1) {
            for j in 0..self.cols {
                if !unit_step(self.get(i, j), self.get(i + 1, j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First `(row, col)` where adjacent columns differ by more than one.
    pub fn row_bd_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols.saturating_sub(1) {
                if !unit_step(self.get(i, j), self.get(i, j + 1)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_column_bd(&self) -> bool {
        self.column_bd_violation().is_none()
    }

    pub fn is_row_bd(&self) -> bool {
        self.row_bd_violation().is_none()
    }

    pub fn is_fully_bd(&self) -> bool {
        self.is_column_bd() && self.is_row_bd()
    }
}

#[inline]
fn unit_step(a: i64, b: i64) -> bool {
    !is_inf(a) && !is_inf(b) && (a - b).abs() <= 1
}

pub(crate) fn check_inner(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}
