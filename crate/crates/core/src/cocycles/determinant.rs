use num_complex::Complex64;

use crate::circle_group::GroupElement;
use crate::error::{Error, Result};
use crate::operator::{block_of_group, Matrix};

/// `D(g₁, g₂) = det((g₁)₊₊ (g₂)₊₊ ((g₁g₂)₊₊)^{-1})` at truncation `n`.
///
/// The block of the product is formed through the exact identity
/// `(g₁g₂)₊₊ = (g₁)₊₊(g₂)₊₊ + (g₁)₋₊(g₂)₊₋`, so both factors share the same
/// truncated intermediate sums; truncating the product element directly
/// converges to a different limit.
///
/// With `M = (g₁)₊₊(g₂)₊₊` the value is evaluated as
/// `1 / det(I + (g₂)₊₋ M⁻¹ (g₁)₋₊)`. Finite sections of composition blocks
/// lose stability as `n` grows, so `(g)₊₊⁻¹` is never formed by solving with
/// `(g)₊₊`; it is applied through the blocks of `g⁻¹` as
/// `A′ − B′ E′⁻¹ C′`, whose outer factors damp the unstable directions of `E′`.
pub fn cocycle_d(g1: &GroupElement, g2: &GroupElement, n: usize) -> Result<Complex64> {
    for g in [g1, g2] {
        if g.winding() != 0 {
            return Err(Error::NonzeroWinding {
                winding: g.winding(),
            });
        }
    }
    let b1 = block_of_group(g1, n)?;
    let b2 = block_of_group(g2, n)?;
    let w = apply_plus_inverse(g1, &b1.amp, n)?;
    let y = apply_plus_inverse(g2, &w, n)?;
    let mut core = &b2.apm * &y;
    for i in 0..core.nrows() {
        core[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let det = core.lu().determinant();
    if !(det.norm() > 0.0) || !det.is_finite() {
        return Err(Error::SingularTruncation { n });
    }
    Ok(det.inv())
}

/// `(g)₊₊⁻¹ v` through the Schur complement of the blocks of `g⁻¹`.
fn apply_plus_inverse(g: &GroupElement, v: &Matrix, n: usize) -> Result<Matrix> {
    let inv = block_of_group(&g.inverse()?, n)?;
    let cv = &inv.apm * v;
    let e = solve(&inv.amm, &cv, n)?;
    Ok(&inv.app * v - &inv.amp * e)
}

/// `A⁻¹ B` by partial-pivot LU, refusing numerically singular `A`.
fn solve(a: &Matrix, b: &Matrix, n: usize) -> Result<Matrix> {
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let lu = a.clone().lu();
    let min_pivot = lu.u().diagonal().iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    if !(min_pivot > 1e-13 * scale) {
        return Err(Error::SingularTruncation { n });
    }
    lu.solve(b).ok_or(Error::SingularTruncation { n })
}
