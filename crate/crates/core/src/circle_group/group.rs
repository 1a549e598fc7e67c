use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diffeo::{eval_at_angles, CircleDiffeo, DiffeoJson};
use crate::error::{Error, Result};
use crate::laurent::{default_grid, winding_number, LaurentSeries, SeriesJson};

/// Element `(d, f)` of the semidirect product of invertible analytic functions
/// and analytic circle diffeomorphisms.
///
/// Multiplication is `(d₁, f₁)(d₂, f₂) = (d₁ · (d₂ ∘ f₁^{∘-1}), f₁ ∘ f₂)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct GroupElement {
    d: LaurentSeries,
    f: CircleDiffeo,
    winding: i64,
}

impl GroupElement {
    pub fn new(d: LaurentSeries, f: CircleDiffeo) -> Result<Self> {
        let m = default_grid(d.order().max(f.order()).max(1));
        let winding = winding_number(&d, m)?;
        Ok(GroupElement { d, f, winding })
    }

    pub fn identity(order: usize) -> Self {
        GroupElement {
            d: LaurentSeries::one(order),
            f: CircleDiffeo::identity(order),
            winding: 0,
        }
    }

    /// `(d, id)`.
    pub fn function(d: LaurentSeries) -> Result<Self> {
        let order = d.order();
        Self::new(d, CircleDiffeo::identity(order))
    }

    /// `(1, f)`.
    pub fn diffeo(f: CircleDiffeo) -> Self {
        GroupElement {
            d: LaurentSeries::one(f.order()),
            f,
            winding: 0,
        }
    }

    pub fn d(&self) -> &LaurentSeries {
        &self.d
    }

    pub fn f(&self) -> &CircleDiffeo {
        &self.f
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    /// Whether the element lies in the identity component.
    pub fn is_identity_component(&self) -> bool {
        self.winding == 0
    }

    pub fn order(&self) -> usize {
        self.d.order().max(self.f.order())
    }

    /// Both components zero-padded or truncated to `order`.
    pub fn resized(&self, order: usize) -> Result<Self> {
        Self::new(self.d.resized(order), self.f.resized(order)?)
    }

    fn grid(&self, other_order: usize) -> usize {
        default_grid(self.order().max(other_order).max(1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = self.grid(other.order());
        let pushed = self.f.pushforward_samples(&other.d, m)?;
        let own = self.d.to_samples(m);
        let vals: Vec<_> = own.iter().zip(&pushed).map(|(a, b)| a * b).collect();
        let order = self.d.order().max(other.d.order());
        Ok(GroupElement {
            d: LaurentSeries::from_samples(&vals, order)?,
            f: self.f.compose(&other.f, m)?,
            winding: self.winding + other.winding,
        })
    }

    /// `(1/(d ∘ f), f^{∘-1})`.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.grid(0);
        let vals = self.f.pullback_samples(&self.d, m);
        if vals.iter().any(|v| v.norm() == 0.0) {
            return Err(Error::NotInvertible { min_modulus: 0.0 });
        }
        let inv: Vec<_> = vals.iter().map(|v| v.inv()).collect();
        Ok(GroupElement {
            d: LaurentSeries::from_samples(&inv, self.d.order())?,
            f: self.f.inverse(m)?,
            winding: -self.winding,
        })
    }

    /// `g ◇ h = d · (h ∘ f^{∘-1})`, at the order of `h`.
    pub fn act(&self, h: &LaurentSeries) -> Result<LaurentSeries> {
        let m = self.grid(h.order());
        let pts = self.f.inverse_points(m)?;
        self.act_at(h, &pts)
    }

    /// [`act`](Self::act) with precomputed preimages of the unit grid.
    pub fn act_at(&self, h: &LaurentSeries, inverse_points: &[f64]) -> Result<LaurentSeries> {
        let m = inverse_points.len();
        let d = self.d.to_samples(m);
        let hv = eval_at_angles(h, inverse_points);
        let vals: Vec<_> = d.iter().zip(&hv).map(|(a, b)| a * b).collect();
        LaurentSeries::from_samples(&vals, h.order())
    }

    /// `u ∘ f^{∘-1}` at the order of `u`.
    pub fn transport(&self, u: &LaurentSeries) -> Result<LaurentSeries> {
        let m = self.grid(u.order());
        let vals = self.f.pushforward_samples(u, m)?;
        LaurentSeries::from_samples(&vals, u.order())
    }

    /// `Λ(g) = d`.
    pub fn lambda(&self) -> LaurentSeries {
        self.d.clone()
    }

    /// `Ω(g) = (f^{∘-1})′ = 1/(f′ ∘ f^{∘-1})`.
    pub fn omega(&self) -> Result<LaurentSeries> {
        let order = self.f.order();
        let m = self.grid(0);
        let pts = self.f.inverse_points(m)?;
        let vals: Vec<Complex64> = self
            .f
            .derivative_at_angles(&pts)
            .iter()
            .map(|v| v.inv())
            .collect();
        LaurentSeries::from_samples(&vals, order)
    }
}

/// On-disk form `{"d": series, "f": diffeo}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub d: SeriesJson,
    pub f: DiffeoJson,
}

impl TryFrom<GroupJson> for GroupElement {
    type Error = Error;
    fn try_from(j: GroupJson) -> Result<Self> {
        GroupElement::new(j.d.try_into()?, j.f.try_into()?)
    }
}

impl From<GroupElement> for GroupJson {
    fn from(g: GroupElement) -> Self {
        GroupJson {
            d: g.d.into(),
            f: g.f.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::unit_grid;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sampled(order: usize, f: impl Fn(Complex64) -> Complex64) -> LaurentSeries {
        let m = default_grid(order);
        let vals: Vec<_> = unit_grid(m).into_iter().map(f).collect();
        LaurentSeries::from_samples(&vals, order).unwrap()
    }

    fn sample_element(n: usize) -> GroupElement {
        let d = sampled(n, |z| c(1.5, 0.2) + 0.3 * z + c(0.0, 0.2) / z);
        let mut disp = LaurentSeries::zeros(n);
        disp.set(0, c(0.1, 0.0));
        disp.set(1, c(0.02, 0.01));
        disp.set(2, c(-0.005, 0.004));
        GroupElement::new(d, CircleDiffeo::new(disp).unwrap()).unwrap()
    }

    fn close(a: &GroupElement, b: &GroupElement, tol: f64) -> bool {
        a.d.max_coeff_diff(&b.d) < tol
            && a.f.displacement().max_coeff_diff(b.f.displacement()) < tol
            && a.winding == b.winding
    }

    #[test]
    fn identity_is_neutral() {
        let g = sample_element(32);
        let e = GroupElement::identity(32);
        assert!(close(&g.mul(&e).unwrap(), &g, 1e-13));
        assert!(close(&e.mul(&g).unwrap(), &g, 1e-12));
    }

    #[test]
    fn abelian_fiber() {
        let n = 16;
        let d = sampled(n, |z| (0.2 * z).exp());
        let e = sampled(n, |z| (0.1 / z).exp());
        let p = GroupElement::function(d.clone())
            .unwrap()
            .mul(&GroupElement::function(e.clone()).unwrap())
            .unwrap();
        assert!(p.d.max_coeff_diff(&d.mul(&e)) < 1e-14);
        assert!(p.f.displacement().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let g = sample_element(48);
        let e = GroupElement::identity(48);
        assert!(close(&g.mul(&g.inverse().unwrap()).unwrap(), &e, 1e-10));
        assert!(close(&g.inverse().unwrap().mul(&g).unwrap(), &e, 1e-10));
    }

    #[test]
    fn inverse_examples() {
        let n = 16;
        let d = sampled(n, |z| (0.2 * z).exp());
        let inv = GroupElement::function(d).unwrap().inverse().unwrap();
        assert!(inv.d.max_coeff_diff(&sampled(n, |z| (-0.2 * z).exp())) < 1e-14);
        let f = CircleDiffeo::rotation(0.5, n);
        let inv = GroupElement::diffeo(f).inverse().unwrap();
        assert!((inv.f.displacement().coeff(0).re + 0.5 / TAU).abs() < 1e-14);
        assert!(inv.d.max_coeff_diff(&LaurentSeries::one(n)) < 1e-15);
    }

    #[test]
    fn action_examples() {
        let n = 8;
        let z3 = LaurentSeries::monomial(3, c(1.0, 0.0), n);
        let e = GroupElement::identity(n);
        assert!(e.act(&z3).unwrap().max_coeff_diff(&z3) < 1e-15);
        let two = GroupElement::function(LaurentSeries::constant(c(2.0, 0.0), n)).unwrap();
        assert!(two.act(&z3).unwrap().max_coeff_diff(&z3.scale(c(2.0, 0.0))) < 1e-14);
        let th = 0.9;
        let rot = GroupElement::diffeo(CircleDiffeo::rotation(th, n));
        for k in [-3i64, 2, 5] {
            let zk = LaurentSeries::monomial(k, c(1.0, 0.0), n);
            let want = zk.scale(Complex64::from_polar(1.0, -(k as f64) * th));
            assert!(rot.act(&zk).unwrap().max_coeff_diff(&want) < 1e-13);
        }
    }

    #[test]
    fn omega_examples() {
        let n = 8;
        let e = GroupElement::identity(n);
        assert!(e.omega().unwrap().max_coeff_diff(&LaurentSeries::one(n)) < 1e-15);
        let th = 0.4;
        let rot = GroupElement::diffeo(CircleDiffeo::rotation(th, n));
        let want = LaurentSeries::constant(Complex64::from_polar(1.0, -th), n);
        assert!(rot.omega().unwrap().max_coeff_diff(&want) < 1e-14);
    }

    #[test]
    fn winding_adds() {
        let n = 8;
        let z = LaurentSeries::monomial(1, c(1.0, 0.0), n);
        let g = GroupElement::function(z).unwrap();
        assert_eq!(g.winding(), 1);
        assert_eq!(g.mul(&g).unwrap().winding(), 2);
        assert_eq!(g.inverse().unwrap().winding(), -1);
    }

    #[test]
    fn json_round_trip() {
        let g = sample_element(4);
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with("{\"d\":{\"order\":4"));
        let back: GroupElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
