//! Min-plus product for entries in `[-R..R] ∪ {INF}` via exponent encoding.
//!
//! Entry `a` becomes the monomial `x^(R - a)` and `INF` the zero polynomial.
//! Then `Σ_ℓ x^(R - A[i,ℓ]) · x^(R - B[ℓ,j])` has degree `2R - C[i,j]`.
//! Read as an integer in base `s + 1` (`s` the inner dimension) no digit ever
//! carries, so the leading digit sits exactly at that degree. Coefficients
//! are counts and never cancel, which lets us track the leading exponent
//! per cell instead of materializing the digits.

use super::matrix::{check_inner, is_inf, Matrix, INF};
use crate::error::{Error, Result};

fn exponents(m: &Matrix, r: i64) -> Result<Vec<Option<u32>>> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for (j, &x) in m.row(i).iter().enumerate() {
            if is_inf(x) {
                out.push(None);
            } else if x.abs() > r {
                return Err(Error::EntryOutOfRange {
                    row: i,
                    col: j,
                    value: x,
                    range: r,
                });
            } else {
                out.push(Some((r - x) as u32));
            }
        }
    }
    Ok(out)
}

pub fn minplus_small_entries(a: &Matrix, b: &Matrix, r: i64) -> Result<Matrix> {
    check_inner(a, b)?;
    if r < 0 {
        return Err(Error::InvalidParameter(format!("negative range {r}")));
    }
    let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());
    let ea = exponents(a, r)?;
    let eb = exponents(b, r)?;
    let mut c = Matrix::infinite(rows, cols);
    let mut lead: Vec<Option<u32>> = vec![None; cols];
    for i in 0..rows {
        lead.iter_mut().for_each(|d| *d = None);
        for l in 0..inner {
            let Some(x) = ea[i * inner + l] else { continue };
            for (j, d) in lead.iter_mut().enumerate() {
                if let Some(y) = eb[l * cols + j] {
                    let deg = x + y;
                    if d.is_none_or(|d| deg > d) {
                        *d = Some(deg);
                    }
                }
            }
        }
        for (j, d) in lead.iter().enumerate() {
            c.set(i, j, d.map_or(INF, |d| 2 * r - i64::from(d)));
        }
    }
    Ok(c)
}
