//! Truncated operators on `ℋ = ℋ₋ ⊕ ℋ₊`: block matrices, kernels, traces
//! and Fredholm determinants.
//!
//! Index convention: the `ℋ₊` basis is `z^0, …, z^N` (index `p` is the power
//! `p`), the `ℋ₋` basis is `z^{-1}, …, z^{-N}` (index `q` is the power
//! `-(q+1)`).

mod block;
mod det;
mod kernel;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use block::{block_of_group, block_of_lie, BlockOperator};
pub use det::{
    condition_number, fredholm_det_lu, fredholm_det_series, inverse_one_plus, trace_diag,
    trace_wedge_contour,
};
pub use kernel::{trace_contour, Kernel};

pub type Matrix = DMatrix<Complex64>;

/// JSON form `{"rows", "cols", "data"}` with `data` row-major `[re, im]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m[(i, j)];
                data.push([v.re, v.im]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.data.len() != j.rows * j.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                j.rows,
                j.cols,
                j.rows * j.cols,
                j.data.len()
            )));
        }
        Ok(DMatrix::from_row_iterator(
            j.rows,
            j.cols,
            j.data.iter().map(|v| Complex64::new(v[0], v[1])),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_is_row_major() {
        let m = DMatrix::from_fn(2, 3, |i, j| Complex64::new((3 * i + j) as f64, 0.0));
        let j = MatrixJson::from(&m);
        assert_eq!(j.data[1], [1.0, 0.0]);
        assert_eq!(j.data[3], [3.0, 0.0]);
        let back = Matrix::try_from(j).unwrap();
        assert_eq!(back, m);
        let bad = MatrixJson {
            rows: 2,
            cols: 2,
            data: vec![[0.0, 0.0]],
        };
        assert!(Matrix::try_from(bad).is_err());
    }
}
