use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Kernel, Matrix};
use crate::error::{Error, Result};

const SERIES_TERM_TOL: f64 = 1e-12;
const INVERTIBLE_TOL: f64 = 1e-12;

fn check_square(t: &Matrix) -> Result<usize> {
    if t.nrows() != t.ncols() {
        return Err(Error::Shape(format!(
            "expected a square matrix, got {}x{}",
            t.nrows(),
            t.ncols()
        )));
    }
    Ok(t.nrows())
}

/// Sum of the diagonal in index order.
pub fn trace_diag(t: &Matrix) -> Complex64 {
    let n = t.nrows().min(t.ncols());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        acc += t[(i, i)];
    }
    acc
}

/// `det(1 + T)` by LU with partial pivoting; an exactly singular `1 + T`
/// gives `0`.
pub fn fredholm_det_lu(t: &Matrix) -> Result<Complex64> {
    let n = check_square(t)?;
    let a = DMatrix::identity(n, n) + t;
    Ok(a.lu().determinant())
}

/// `Σ_l tr Λ^l T`, with the exterior-power traces `e_l` generated from the
/// power sums `p_k = tr T^k` by Newton's identities
/// `l·e_l = Σ_{i=1}^{l} (-1)^{i-1} e_{l-i} p_i`.
///
/// Stops once two consecutive terms fall below `1e-12`, or at `l = size`
/// (where the sum is exact). Running out of terms before either happens is a
/// [`Error::SeriesTruncation`] carrying the partial sum.
pub fn fredholm_det_series(t: &Matrix, l_max: usize) -> Result<Complex64> {
    let n = check_square(t)?;
    let l_max = l_max.min(n);
    let mut p = Vec::with_capacity(l_max + 1);
    p.push(Complex64::new(n as f64, 0.0));
    let mut power = t.clone();
    let mut e = vec![Complex64::new(1.0, 0.0)];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for l in 1..=l_max {
        p.push(trace_diag(&power));
        if l < l_max {
            power = &power * t;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=l {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += e[l - i] * p[i] * sign;
        }
        let el = acc / l as f64;
        e.push(el);
        sum += el;
        if el.norm() < SERIES_TERM_TOL {
            small_run += 1;
            if small_run == 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    if l_max == n {
        return Ok(sum);
    }
    Err(Error::SeriesTruncation {
        partial: sum,
        terms: l_max,
        last_term: e[l_max].norm(),
    })
}

/// `tr Λ^l T` as the `l`-fold contour integral of `det[f(v_a, v_b)]` over
/// `|v_a| = 1+σ`, divided by `l!`. Cost is `m^l`, so `l ≤ 3`.
pub fn trace_wedge_contour(k: &Kernel, l: usize, sigma: f64, m: usize) -> Result<Complex64> {
    if l > 3 {
        return Err(Error::Domain(format!("contour exterior power limited to l ≤ 3, got {l}")));
    }
    if l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = k.size();
    if m < 2 * n + 1 {
        return Err(Error::InsufficientResolution { grid: m, order: n });
    }
    let radius = 1.0 + sigma;
    let v: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / m as f64))
        .collect();
    let w: Vec<Complex64> = v.iter().map(|x| Complex64::new(0.0, TAU) * x / m as f64).collect();
    let f = DMatrix::from_fn(m, m, |a, b| k.evaluate(v[a], v[b]));
    let mut acc = Complex64::new(0.0, 0.0);
    match l {
        1 => {
            for a in 0..m {
                acc += f[(a, a)] * w[a];
            }
        }
        2 => {
            for a in 0..m {
                for b in 0..m {
                    let det = f[(a, a)] * f[(b, b)] - f[(a, b)] * f[(b, a)];
                    acc += det * w[a] * w[b];
                }
            }
            acc /= 2.0;
        }
        _ => {
            for a in 0..m {
                for b in 0..m {
                    let wab = w[a] * w[b];
                    for c in 0..m {
                        let det = f[(a, a)] * (f[(b, b)] * f[(c, c)] - f[(b, c)] * f[(c, b)])
                            - f[(a, b)] * (f[(b, a)] * f[(c, c)] - f[(b, c)] * f[(c, a)])
                            + f[(a, c)] * (f[(b, a)] * f[(c, b)] - f[(b, b)] * f[(c, a)]);
                        acc += det * wab * w[c];
                    }
                }
            }
            acc /= 6.0;
        }
    }
    Ok(acc)
}

/// `(1 + T)^{-1}` by a direct LU solve.
pub fn inverse_one_plus(t: &Matrix) -> Result<Matrix> {
    let n = check_square(t)?;
    let lu = (DMatrix::identity(n, n) + t).lu();
    let det = lu.determinant();
    if det.norm() <= INVERTIBLE_TOL {
        return Err(Error::NonInvertibleOperator {
            modulus: det.norm(),
        });
    }
    lu.solve(&DMatrix::identity(n, n))
        .ok_or(Error::NonInvertibleOperator {
            modulus: det.norm(),
        })
}

/// Two-norm condition number `σ_max / σ_min`; infinite for singular input.
pub fn condition_number(a: &Matrix) -> f64 {
    if a.is_empty() {
        return 1.0;
    }
    let sv = a.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
