use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle_group::LieElement;
use crate::error::{Error, Result};
use crate::laurent::{contour_mean, LaurentSeries};
use crate::operator::{block_of_lie, Matrix};

/// `tr(A·B)` without forming the product.
fn trace_of_product(a: &Matrix, b: &Matrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for q in 0..a.ncols() {
            acc += a[(i, q)] * b[(q, i)];
        }
    }
    acc
}

/// `tr(Z₋₊X₊₋) − tr(X₋₊Z₊₋)` from the blocks at truncation `n`.
pub fn lie_cocycle_d(x: &LieElement, z: &LieElement, n: usize) -> Complex64 {
    let bx = block_of_lie(x, n);
    let bz = block_of_lie(z, n);
    trace_of_product(&bz.amp, &bx.apm) - trace_of_product(&bx.amp, &bz.apm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    /// `(1/πi)∮ s₁ ds₂`.
    LL,
    /// `(1/2πi)∮ (s₁ dr₂′ − s₂ dr₁′)`.
    LO,
    /// `(1/πi)∮ r₁′ dr₂′`.
    OO,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::LL, PairKind::LO, PairKind::OO];
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::LL => "LL",
            PairKind::LO => "LO",
            PairKind::OO => "OO",
        })
    }
}

impl FromStr for PairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LL" => Ok(PairKind::LL),
            "LO" => Ok(PairKind::LO),
            "OO" => Ok(PairKind::OO),
            _ => Err(Error::Domain(format!("unknown Lie pairing {s:?}"))),
        }
    }
}

fn d(a: &LaurentSeries) -> LaurentSeries {
    a.padded(1).derivative()
}

/// `(1/2πi)∮ a·b dz` from grid samples.
fn contour(a: &LaurentSeries, b: &LaurentSeries, m: usize) -> Complex64 {
    let m = m.max(2 * (a.order() + b.order()) + 3);
    let sa = a.to_samples(m);
    let sb = b.to_samples(m);
    let prod: Vec<_> = sa.iter().zip(&sb).map(|(x, y)| x * y).collect();
    contour_mean(&prod)
}

/// The Lie 2-cocycle of the given kind by trapezoid quadrature on the unit
/// circle with at least `m` points.
pub fn lie_cocycle_pair(kind: PairKind, x: &LieElement, z: &LieElement, m: usize) -> Complex64 {
    match kind {
        PairKind::LL => contour(&x.s, &d(&z.s), m) * 2.0,
        PairKind::LO => contour(&x.s, &d(&d(&z.r)), m) - contour(&z.s, &d(&d(&x.r)), m),
        PairKind::OO => contour(&d(&x.r), &d(&d(&z.r)), m) * 2.0,
    }
}

/// `6·LL − 6·LO + OO`.
pub fn lie_rr_rhs(x: &LieElement, z: &LieElement, m: usize) -> Complex64 {
    lie_cocycle_pair(PairKind::LL, x, z, m) * 6.0 - lie_cocycle_pair(PairKind::LO, x, z, m) * 6.0
        + lie_cocycle_pair(PairKind::OO, x, z, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn f(k: i64, n: usize) -> LieElement {
        LieElement::function(LaurentSeries::monomial(k, one(), n))
    }

    fn v(k: i64, n: usize) -> LieElement {
        LieElement::vector_field(LaurentSeries::monomial(k, one(), n))
    }

    #[test]
    fn lie_d_examples() {
        let n = 16;
        let x = LieElement::new(
            LaurentSeries::from_fn(3, |k| Complex64::new(k as f64, 1.0)),
            LaurentSeries::monomial(2, one(), 3),
        );
        assert_eq!(lie_cocycle_d(&x, &x, n), Complex64::new(0.0, 0.0));
        for j in 1..=6i64 {
            let got = lie_cocycle_d(&f(j, n), &f(-j, n), n);
            assert!((got + j as f64).norm() < 1e-12, "j={j}");
            let got = lie_cocycle_d(&v(j + 1, n), &v(1 - j, n), n);
            let want = (j * j * j - j) as f64 / 6.0;
            assert!((got - want).norm() < 1e-12, "j={j}: {got}");
        }
    }

    #[test]
    fn pair_examples() {
        let n = 16;
        let m = 65;
        for j in 1..=6i64 {
            let got = lie_cocycle_pair(PairKind::LL, &f(j, n), &f(-j, n), m);
            assert!((got + 2.0 * j as f64).norm() < 1e-12);
            let got = lie_cocycle_pair(PairKind::OO, &v(j + 1, n), &v(1 - j, n), m);
            assert!((got - 2.0 * (j * j * j - j) as f64).norm() < 1e-10);
        }
        let got = lie_cocycle_pair(PairKind::LO, &f(1, n), &v(1, n), m);
        assert!(got.norm() < 1e-14);
    }

    #[test]
    fn simple_rr_pairs() {
        let n = 16;
        let m = 65;
        let (x, z) = (f(1, n), f(-1, n));
        assert!((lie_cocycle_d(&x, &z, n) * 12.0 - lie_rr_rhs(&x, &z, m)).norm() < 1e-12);
        for j in 1..=4i64 {
            let (x, z) = (f(-j, n), v(j + 1, n));
            let lhs = lie_cocycle_d(&x, &z, n);
            assert!((lhs + (j * (j + 1)) as f64 / 2.0).norm() < 1e-12, "{lhs}");
            assert!((lhs * 12.0 - lie_rr_rhs(&x, &z, m)).norm() < 1e-10);
        }
    }
}
