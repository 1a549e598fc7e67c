//! Seeded random test corpus.
//!
//! Every generator draws Laurent coefficients as `ρ^{|k|}·ξ` with `ξ` a
//! standard complex gaussian `(N(0,1) + iN(0,1))/√2`, then rescales so the
//! element sits a fixed distance away from the failure conditions of its
//! type. The stream is ChaCha8 keyed by a `u64` seed, so a seed reproduces
//! the same corpus on every platform.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circle_group::{CircleDiffeo, GroupElement, LieElement};
use crate::error::Result;
use crate::laurent::{default_grid, LaurentSeries};
use crate::operator::{Kernel, Matrix};

/// Decay rates drawn for generic series.
pub const RHO_RANGE: (f64, f64) = (0.3, 0.7);
/// Decay rates drawn for diffeomorphism displacements.
pub const DIFFEO_RHO_RANGE: (f64, f64) = (0.3, 0.6);
/// Upper bound on `max |φ′ − 1|` for generated diffeomorphisms.
pub const MAX_SLOPE_DEVIATION: f64 = 0.3;
/// Upper bound on `|a|` for generated Möbius maps.
pub const MAX_MOBIUS_RADIUS: f64 = 0.15;
/// Upper bound on the relative perturbation size of generated units.
pub const MAX_UNIT_PERTURBATION: f64 = 0.8;
/// Upper bound on the Frobenius norm of generated trace-class matrices.
pub const MAX_MATRIX_NORM: f64 = 0.5;

pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Seed for an independent child corpus.
    pub fn next_seed(&mut self) -> u64 {
        self.rng.random()
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn rho(&mut self) -> f64 {
        self.uniform(RHO_RANGE.0, RHO_RANGE.1)
    }

    /// `c_k = ρ^{|k|} ξ_k` for `|k| ≤ order`.
    pub fn series(&mut self, order: usize, rho: f64) -> LaurentSeries {
        LaurentSeries::from_fn(order, |k| self.gaussian() * rho.powi(k.unsigned_abs() as i32))
            .with_decay_hint(rho)
    }

    /// Winding-zero unit `c·(1 + s·p)` with `s·sup|p| ≤ 0.8`, `|c| ∈ [1, 2]`,
    /// so `min |d| ≥ 0.2` on the circle.
    pub fn unit(&mut self, order: usize) -> LaurentSeries {
        let rho = self.rho();
        let mut p = self.series(order, rho);
        p.set(0, Complex64::new(0.0, 0.0));
        self.finish_unit(p, order, rho, |p| p.sup_on_grid(default_grid(order)))
    }

    /// Unit extending holomorphically and without zeros into the disk:
    /// `p` has only positive modes and `s·Σ|p_k| ≤ 0.8`.
    pub fn plus_unit(&mut self, order: usize) -> LaurentSeries {
        let rho = self.rho();
        let raw = self.series(order, rho);
        let p = LaurentSeries::from_fn(order, |k| if k > 0 { raw.coeff(k) } else { Complex64::new(0.0, 0.0) });
        self.finish_unit(p, order, rho, |p| p.coeffs().iter().map(|c| c.norm()).sum())
    }

    fn finish_unit(
        &mut self,
        p: LaurentSeries,
        order: usize,
        rho: f64,
        bound: impl Fn(&LaurentSeries) -> f64,
    ) -> LaurentSeries {
        let size = self.uniform(0.1, MAX_UNIT_PERTURBATION);
        let b = bound(&p);
        let s = if b > 0.0 { size / b } else { 0.0 };
        let modulus = self.uniform(1.0, 2.0);
        let c = Complex64::from_polar(modulus, self.uniform(0.0, TAU));
        p.scale(Complex64::new(s, 0.0))
            .add(&LaurentSeries::one(order))
            .scale(c)
            .with_decay_hint(rho)
    }

    /// Real displacement with `ρ`-decaying modes, `c₀ ∈ [−0.5, 0.5]` and
    /// `max |φ′ − 1|` drawn in `[0.1, 0.3]`.
    pub fn diffeo(&mut self, order: usize) -> CircleDiffeo {
        let target = self.uniform(0.1, MAX_SLOPE_DEVIATION);
        self.diffeo_with_deviation(order, target)
    }

    /// As [`Corpus::diffeo`] with `max |φ′ − 1|` fixed to `deviation`.
    pub fn diffeo_with_deviation(&mut self, order: usize, deviation: f64) -> CircleDiffeo {
        let rho = self.uniform(DIFFEO_RHO_RANGE.0, DIFFEO_RHO_RANGE.1);
        let mut disp = LaurentSeries::zeros(order);
        for k in 1..=order as i64 {
            let c = self.gaussian() * rho.powi(k as i32);
            disp.set(k, c);
            disp.set(-k, c.conj());
        }
        let slope = LaurentSeries::from_fn(order, |k| disp.coeff(k) * Complex64::new(0.0, TAU * k as f64));
        let dev = slope.sup_on_grid(default_grid(order).max(64));
        if dev > 0.0 {
            disp = disp.scale(Complex64::new(deviation / dev, 0.0));
        }
        disp.set(0, Complex64::new(self.uniform(-0.5, 0.5), 0.0));
        CircleDiffeo::new(disp.with_decay_hint(rho)).expect("slope deviation below 1 keeps orientation")
    }

    /// `|a| ≤ 0.15`, uniform phase and rotation.
    pub fn mobius(&mut self, order: usize) -> Result<CircleDiffeo> {
        let r = self.uniform(0.0, MAX_MOBIUS_RADIUS);
        let a = Complex64::from_polar(r, self.uniform(0.0, TAU));
        let theta = self.uniform(-std::f64::consts::PI, std::f64::consts::PI);
        CircleDiffeo::mobius(a, theta, order)
    }

    /// Identity-component element `(unit, diffeo)`.
    pub fn group_element(&mut self, order: usize) -> Result<GroupElement> {
        let d = self.unit(order);
        let f = self.diffeo(order);
        GroupElement::new(d, f)
    }

    /// Element of the subgroup extending into the disk: `(plus unit, Möbius)`.
    pub fn plus_element(&mut self, order: usize) -> Result<GroupElement> {
        let d = self.plus_unit(order);
        let f = self.mobius(order)?;
        GroupElement::new(d, f)
    }

    pub fn lie_element(&mut self, order: usize) -> LieElement {
        let rho = self.rho();
        let s = self.series(order, rho);
        let r = self.series(order, rho);
        LieElement::new(s, r)
    }

    /// `T_{jk} = ρ^{j+k} ξ_{jk}`, rescaled to Frobenius norm in `[0.1, 0.5]`.
    pub fn matrix(&mut self, size: usize) -> Matrix {
        let rho = self.rho();
        let mut t = Matrix::from_fn(size, size, |_, _| Complex64::new(0.0, 0.0));
        for j in 0..size {
            for k in 0..size {
                t[(j, k)] = self.gaussian() * rho.powi((j + k) as i32);
            }
        }
        let norm = t.norm();
        let target = self.uniform(0.1, MAX_MATRIX_NORM);
        if norm > 0.0 {
            t *= Complex64::new(target / norm, 0.0);
        }
        t
    }

    pub fn kernel(&mut self, size: usize) -> Kernel {
        Kernel::new(self.matrix(size)).expect("square matrix")
    }
}
