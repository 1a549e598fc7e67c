use num_complex::Complex64;

use crate::error::Result;
use crate::laurent::{contour_mean, log_series, winding_number, LaurentSeries};

/// The pairing `𝕋(f, g)` of two nonvanishing functions.
///
/// Writing `f = z^{n_f} f₀`, `g = z^{n_g} g₀` with winding-zero `f₀, g₀`,
/// bimultiplicativity, antisymmetry and `𝕋(z, z) = −1` reduce everything to
/// `𝕋(f₀, g₀) = exp((1/2πi)∮ log f₀ · d log g₀)`, `𝕋(f₀, z) = exp((log f₀)₀)`:
///
/// `𝕋(f, g) = (−1)^{n_f n_g} · exp(n_g (log f₀)₀ − n_f (log g₀)₀ + (1/2πi)∮ log f₀ · (log g₀)′ dz)`.
pub fn pairing_t(f: &LaurentSeries, g: &LaurentSeries, m: usize) -> Result<Complex64> {
    let nf = winding_number(f, m.max(2 * f.order() + 1))?;
    let ng = winding_number(g, m.max(2 * g.order() + 1))?;
    let f0 = f.shifted(-nf);
    let g0 = g.shifted(-ng);
    let mf = m.max(2 * f0.order() + 1);
    let mg = m.max(2 * g0.order() + 1);
    let lf = log_series(&f0, mf)?;
    let lg = log_series(&g0, mg)?;
    let order = lf.order().max(lg.order()) + 1;
    let mq = m.max(2 * order + 1);
    let lf_s = lf.to_samples(mq);
    let dlg_s = lg.padded(1).derivative().to_samples(mq);
    let prod: Vec<_> = lf_s.iter().zip(&dlg_s).map(|(a, b)| a * b).collect();
    let integral = contour_mean(&prod);
    let sign = if (nf * ng).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let exponent = lf.coeff(0) * ng as f64 - lg.coeff(0) * nf as f64 + integral;
    Ok(exponent.exp() * sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{default_grid, unit_grid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sampled(order: usize, f: impl Fn(Complex64) -> Complex64) -> LaurentSeries {
        let m = default_grid(order);
        let vals: Vec<_> = unit_grid(m).into_iter().map(f).collect();
        LaurentSeries::from_samples(&vals, order).unwrap()
    }

    #[test]
    fn z_with_z() {
        let z = LaurentSeries::monomial(1, c(1.0, 0.0), 4);
        let t = pairing_t(&z, &z, 17).unwrap();
        assert!((t + 1.0).norm() < 1e-12);
    }

    #[test]
    fn exponentials() {
        let n = 32;
        let (a, b) = (0.2, 0.3);
        let f = sampled(n, |z| (a * z).exp());
        let g = sampled(n, |z| (b / z).exp());
        let t = pairing_t(&f, &g, default_grid(n)).unwrap();
        assert!((t - (-a * b).exp()).norm() < 1e-12);
    }

    #[test]
    fn constants() {
        let f = LaurentSeries::constant(c(2.0, 1.0), 3);
        let g = LaurentSeries::constant(c(-0.5, 3.0), 3);
        assert!((pairing_t(&f, &g, 13).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn constant_against_z() {
        // 𝕋(c, z) = c, 𝕋(z, c) = 1/c
        let k = c(1.5, -0.7);
        let f = LaurentSeries::constant(k, 3);
        let z = LaurentSeries::monomial(1, c(1.0, 0.0), 3);
        assert!((pairing_t(&f, &z, 13).unwrap() - k).norm() < 1e-13);
        assert!((pairing_t(&z, &f, 13).unwrap() - k.inv()).norm() < 1e-13);
    }

    #[test]
    fn steinberg() {
        let n = 48;
        let f = sampled(n, |z| 0.5 + 0.2 * z);
        let g = sampled(n, |z| 0.5 - 0.2 * z);
        let t = pairing_t(&f, &g, default_grid(n)).unwrap();
        assert!((t - 1.0).norm() < 1e-9);
    }

    #[test]
    fn antisymmetry_with_windings() {
        let n = 24;
        let f = sampled(n, |z| z * z * (c(1.0, 0.3) + 0.3 * z + 0.2 / z));
        let g = sampled(n, |z| (c(2.0, -0.1) + 0.5 / z) / z);
        let m = default_grid(n + 2);
        let t = pairing_t(&f, &g, m).unwrap() * pairing_t(&g, &f, m).unwrap();
        assert!((t - 1.0).norm() < 1e-10);
    }
}
