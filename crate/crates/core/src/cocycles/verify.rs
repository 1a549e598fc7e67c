//! Single-truncation verification routines. Truncation doubling is left to
//! the caller.

use num_complex::Complex64;
use serde::Serialize;

use super::{cocycle_d, combined_cocycle, lie_cocycle_d, lie_cocycle_pair, lie_rr_rhs, PairKind};
use crate::circle_group::{GroupElement, LieElement};
use crate::error::Result;
use crate::laurent::{default_grid, LaurentSeries};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `{(z^l, 0) : |l| ≤ L} ∪ {(0, z^{j+1}) : |j| ≤ L}`.
pub fn lie_basis(max_degree: i64, n: usize) -> Vec<LieElement> {
    let mut out = Vec::new();
    for l in -max_degree..=max_degree {
        out.push(LieElement::function(LaurentSeries::monomial(l, one(), n)));
    }
    for j in -max_degree..=max_degree {
        out.push(LieElement::vector_field(LaurentSeries::monomial(j + 1, one(), n)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LieRrReport {
    pub pairs: usize,
    pub max_defect: f64,
}

/// `max |12·LieD − (6·LL − 6·LO + OO)|` over all ordered basis pairs.
pub fn verify_lie_rr(max_degree: i64, n: usize) -> LieRrReport {
    let basis = lie_basis(max_degree, n);
    let m = default_grid(n);
    let mut max_defect: f64 = 0.0;
    for x in &basis {
        for z in &basis {
            let lhs = lie_cocycle_d(x, z, n) * 12.0;
            let rhs = lie_rr_rhs(x, z, m);
            max_defect = max_defect.max((lhs - rhs).norm());
        }
    }
    LieRrReport {
        pairs: basis.len() * basis.len(),
        max_defect,
    }
}

/// Six basis pairs, two dominated by each of `LL`, `LO`, `OO`.
pub fn rank_panel(n: usize) -> Vec<(LieElement, LieElement)> {
    let f = |k: i64| LieElement::function(LaurentSeries::monomial(k, one(), n));
    let v = |k: i64| LieElement::vector_field(LaurentSeries::monomial(k, one(), n));
    vec![
        (f(1), f(-1)),
        (f(2).add(&v(1)), f(-2)),
        (f(-1), v(2)),
        (f(-2), v(3).add(&f(1))),
        (v(3), v(-1)),
        (v(4), v(-2).add(&f(1))),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub singular_values: Vec<f64>,
    /// Smallest singular value of the row-normalized `3 × K` matrix.
    pub min_normalized: f64,
}

/// Numerical rank diagnostic for the values of `(LL, LO, OO)` on `pairs`.
pub fn lie_rank(pairs: &[(LieElement, LieElement)], m: usize) -> RankReport {
    let k = pairs.len();
    let mut mat = nalgebra::DMatrix::from_element(3, k, Complex64::new(0.0, 0.0));
    for (row, kind) in PairKind::ALL.iter().enumerate() {
        for (col, (x, z)) in pairs.iter().enumerate() {
            mat[(row, col)] = lie_cocycle_pair(*kind, x, z, m);
        }
        let norm = mat.row(row).norm();
        if norm > 0.0 {
            let scaled = mat.row(row) / Complex64::new(norm, 0.0);
            mat.set_row(row, &scaled);
        }
    }
    let sv: Vec<f64> = mat.singular_values().iter().cloned().collect();
    let min_normalized = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    RankReport {
        singular_values: sv,
        min_normalized,
    }
}

/// Lie cocycle selector for antisymmetry and Jacobi checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieCocycle {
    D,
    Pair(PairKind),
}

impl LieCocycle {
    pub const ALL: [LieCocycle; 4] = [
        LieCocycle::D,
        LieCocycle::Pair(PairKind::LL),
        LieCocycle::Pair(PairKind::LO),
        LieCocycle::Pair(PairKind::OO),
    ];

    pub fn eval(self, x: &LieElement, z: &LieElement, n: usize) -> Complex64 {
        match self {
            LieCocycle::D => lie_cocycle_d(x, z, n),
            LieCocycle::Pair(kind) => lie_cocycle_pair(kind, x, z, default_grid(n)),
        }
    }
}

/// `|c([X,Y],Z) + c([Y,Z],X) + c([Z,X],Y)|`.
pub fn jacobi_defect(c: LieCocycle, x: &LieElement, y: &LieElement, z: &LieElement, n: usize) -> f64 {
    let a = c.eval(&x.bracket(y), z, n);
    let b = c.eval(&y.bracket(z), x, n);
    let d = c.eval(&z.bracket(x), y, n);
    (a + b + d).norm()
}

/// `|c(g₁,g₂)c(g₁g₂,g₃) / (c(g₁,g₂g₃)c(g₂,g₃)) − 1|`.
pub fn cocycle_identity_defect<F>(c: F, g1: &GroupElement, g2: &GroupElement, g3: &GroupElement) -> Result<f64>
where
    F: Fn(&GroupElement, &GroupElement) -> Result<Complex64>,
{
    let g12 = g1.mul(g2)?;
    let g23 = g2.mul(g3)?;
    let lhs = c(g1, g2)? * c(&g12, g3)?;
    let rhs = c(g1, &g23)? * c(g2, g3)?;
    Ok((lhs / rhs - 1.0).norm())
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorCheck {
    /// `(D(g₁,g₂)/D(g₂,g₁))¹²`.
    pub d_ratio_12: [f64; 2],
    /// `C(g₁,g₂)/C(g₂,g₁)` for `C = ⟨Λ,Λ⟩⁶⟨Λ,Ω⟩⁻⁶⟨Ω,Ω⟩`.
    pub c_ratio: [f64; 2],
    /// Relative discrepancy of the two.
    pub defect: f64,
}

/// Compares the commutator ratios of `D¹²` and `C` on a commuting pair.
pub fn commutator_check(g1: &GroupElement, g2: &GroupElement, n: usize) -> Result<CommutatorCheck> {
    let d = cocycle_d(g1, g2, n)? / cocycle_d(g2, g1, n)?;
    let c = combined_cocycle(g1, g2)? / combined_cocycle(g2, g1)?;
    let d12 = d.powi(12);
    Ok(CommutatorCheck {
        d_ratio_12: [d12.re, d12.im],
        c_ratio: [c.re, c.im],
        defect: (d12 / c - 1.0).norm(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupCheck {
    pub d: [f64; 2],
    pub c: [f64; 2],
    /// `max(|D − 1|, |C − 1|)`.
    pub defect: f64,
}

/// On the subgroup of pairs extending into the disk both cocycles are `1`.
pub fn subgroup_check(g1: &GroupElement, g2: &GroupElement, n: usize) -> Result<SubgroupCheck> {
    let d = cocycle_d(g1, g2, n)?;
    let c = combined_cocycle(g1, g2)?;
    Ok(SubgroupCheck {
        d: [d.re, d.im],
        c: [c.re, c.im],
        defect: (d - 1.0).norm().max((c - 1.0).norm()),
    })
}
