use serde::{Deserialize, Serialize};

use crate::laurent::LaurentSeries;

/// Lie algebra element `s − r·d/dz`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieElement {
    pub s: LaurentSeries,
    pub r: LaurentSeries,
}

/// Exact derivative: pads by one so the `z^{-N-1}` term survives.
fn d(a: &LaurentSeries) -> LaurentSeries {
    a.padded(1).derivative()
}

impl LieElement {
    pub fn new(s: LaurentSeries, r: LaurentSeries) -> Self {
        LieElement { s, r }
    }

    /// Multiplication operator `s`.
    pub fn function(s: LaurentSeries) -> Self {
        let r = LaurentSeries::zeros(s.order());
        LieElement { s, r }
    }

    /// Vector field `−r·d/dz`.
    pub fn vector_field(r: LaurentSeries) -> Self {
        let s = LaurentSeries::zeros(r.order());
        LieElement { s, r }
    }

    pub fn order(&self) -> usize {
        self.s.order().max(self.r.order())
    }

    /// `[X, Z] = (r₁s₂′ − r₂s₁′) − (r₁r₂′ − r₂r₁′) d/dz`, truncated to the
    /// larger operand order.
    pub fn bracket(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let s = self.r.mul(&d(&other.s)).sub(&other.r.mul(&d(&self.s)));
        let r = self.r.mul(&d(&other.r)).sub(&other.r.mul(&d(&self.r)));
        LieElement {
            s: s.resized(order),
            r: r.resized(order),
        }
    }

    /// `(s − r d/dz)(h) = s·h + r·h′`.
    pub fn act(&self, h: &LaurentSeries) -> LaurentSeries {
        let order = self.order().max(h.order());
        let out = self.s.mul(h).add(&self.r.mul(&d(h)));
        out.resized(order)
    }

    pub fn scale(&self, lambda: num_complex::Complex64) -> Self {
        LieElement {
            s: self.s.scale(lambda),
            r: self.r.scale(lambda),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LieElement {
            s: self.s.add(&other.s),
            r: self.r.add(&other.r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn mono(k: i64, n: usize) -> LaurentSeries {
        LaurentSeries::monomial(k, one(), n)
    }

    #[test]
    fn bracket_examples() {
        let n = 4;
        // [−d/dz, z d/dz] = d/dz: r-part is −1 (the vector field d/dz = −(−1)d/dz)
        let x = LieElement::vector_field(mono(0, n));
        let z = LieElement::vector_field(mono(1, n).scale(-one()));
        let b = x.bracket(&z);
        assert!(b.s.is_zero());
        assert!(b.r.max_coeff_diff(&mono(0, n).scale(-one())) < 1e-15);

        // [−d/dz, z] = 1
        let z = LieElement::function(mono(1, n));
        let b = x.bracket(&z);
        assert!(b.s.max_coeff_diff(&mono(0, n)) < 1e-15);
        assert!(b.r.is_zero() || b.r.sup_on_grid(17) < 1e-15);

        let x = LieElement::new(mono(2, n).add(&mono(-1, n)), mono(1, n));
        let b = x.bracket(&x);
        assert!(b.s.sup_on_grid(17) < 1e-15 && b.r.sup_on_grid(17) < 1e-15);
    }

    #[test]
    fn action_examples() {
        let n = 4;
        let h = mono(3, n).add(&mono(-2, n));
        let x = LieElement::function(mono(0, n));
        assert!(x.act(&h).max_coeff_diff(&h) < 1e-15);
        let x = LieElement::vector_field(mono(1, n));
        let got = x.act(&mono(2, n));
        assert!(got.max_coeff_diff(&mono(2, n).scale(Complex64::new(2.0, 0.0))) < 1e-15);
    }

    #[test]
    fn action_keeps_extreme_negative_mode() {
        let n = 3;
        let x = LieElement::vector_field(mono(1, n));
        let got = x.act(&mono(-3, n));
        assert!((got.coeff(-3) + 3.0).norm() < 1e-15);
    }
}
