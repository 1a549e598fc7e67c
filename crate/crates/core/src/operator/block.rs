use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Matrix;
use crate::circle_group::{GroupElement, LieElement};
use crate::error::Result;
use crate::laurent::{default_grid, LaurentSeries};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// The compressions of an operator on `ℋ` to `ℋ₋ ⊕ ℋ₊`.
///
/// `app: ℋ₊→ℋ₊`, `amm: ℋ₋→ℋ₋`, `apm: ℋ₊→ℋ₋`, `amp: ℋ₋→ℋ₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    pub n: usize,
    pub app: Matrix,
    pub amm: Matrix,
    pub apm: Matrix,
    pub amp: Matrix,
}

fn plus_power(p: usize) -> i64 {
    p as i64
}

fn minus_power(q: usize) -> i64 {
    -(q as i64 + 1)
}

impl BlockOperator {
    /// Assembles blocks from the images of `z^k`, `|k| ≤ n`, each given as a
    /// series whose coefficients beyond order `n` are ignored.
    fn from_columns(n: usize, mut column: impl FnMut(i64) -> Result<LaurentSeries>) -> Result<Self> {
        let mut app = DMatrix::from_element(n + 1, n + 1, ZERO);
        let mut apm = DMatrix::from_element(n, n + 1, ZERO);
        let mut amp = DMatrix::from_element(n + 1, n, ZERO);
        let mut amm = DMatrix::from_element(n, n, ZERO);
        for p in 0..=n {
            let col = column(plus_power(p))?;
            for i in 0..=n {
                app[(i, p)] = col.coeff(plus_power(i));
            }
            for i in 0..n {
                apm[(i, p)] = col.coeff(minus_power(i));
            }
        }
        for q in 0..n {
            let col = column(minus_power(q))?;
            for i in 0..=n {
                amp[(i, q)] = col.coeff(plus_power(i));
            }
            for i in 0..n {
                amm[(i, q)] = col.coeff(minus_power(i));
            }
        }
        Ok(BlockOperator {
            n,
            app,
            amm,
            apm,
            amp,
        })
    }

    pub fn identity(n: usize) -> Self {
        BlockOperator {
            n,
            app: DMatrix::identity(n + 1, n + 1),
            amm: DMatrix::identity(n, n),
            apm: DMatrix::from_element(n, n + 1, ZERO),
            amp: DMatrix::from_element(n + 1, n, ZERO),
        }
    }

    /// Applies the assembled operator to the order-`n` part of `h`.
    pub fn apply(&self, h: &LaurentSeries) -> LaurentSeries {
        let n = self.n;
        let hp = DMatrix::from_fn(n + 1, 1, |i, _| h.coeff(plus_power(i)));
        let hm = DMatrix::from_fn(n, 1, |i, _| h.coeff(minus_power(i)));
        let out_p = &self.app * &hp + &self.amp * &hm;
        let out_m = &self.apm * &hp + &self.amm * &hm;
        let mut out = LaurentSeries::zeros(n);
        for i in 0..=n {
            out.set(plus_power(i), out_p[(i, 0)]);
        }
        for i in 0..n {
            out.set(minus_power(i), out_m[(i, 0)]);
        }
        out
    }
}

/// Blocks of the action `h ↦ d · (h ∘ f^{∘-1})` at truncation `n`.
pub fn block_of_group(g: &GroupElement, n: usize) -> Result<BlockOperator> {
    let m = default_grid(n.max(g.order()).max(1));
    let pts = g.f().inverse_points(m)?;
    let d = g.d().to_samples(m);
    let u: Vec<Complex64> = pts
        .iter()
        .map(|x| Complex64::from_polar(1.0, std::f64::consts::TAU * x))
        .collect();
    BlockOperator::from_columns(n, |k| {
        let vals: Vec<_> = d.iter().zip(&u).map(|(dv, uv)| dv * uv.powi(k as i32)).collect();
        LaurentSeries::from_samples(&vals, n)
    })
}

/// Blocks of `h ↦ s·h + r·h′` at truncation `n`, assembled from exact
/// coefficient formulas.
pub fn block_of_lie(x: &LieElement, n: usize) -> BlockOperator {
    BlockOperator::from_columns(n, |k| {
        // image of z^k has coefficient s_{l-k} + k r_{l-k+1} at z^l
        Ok(LaurentSeries::from_fn(n, |l| {
            x.s.coeff(l - k) + x.r.coeff(l - k + 1) * k as f64
        }))
    })
    .expect("lie assembly is infallible")
}
