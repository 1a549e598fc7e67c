//! Verification suites. Each check draws its samples from a seed stream of its
//! own so results do not depend on thread count or on which checks ran.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use circext::cocycles::verify::{
    cocycle_identity_defect, commutator_check, jacobi_defect, lie_rank, rank_panel, subgroup_check,
    verify_lie_rr, LieCocycle,
};
use circext::cocycles::{cocycle_d, combined_cocycle, lie_cocycle_d, lie_rr_rhs, pairing_t, Status};
use circext::corpus::Corpus;
use circext::laurent::{default_grid, winding_number};
use circext::operator::{
    block_of_group, condition_number, fredholm_det_lu, fredholm_det_series, inverse_one_plus,
    trace_contour, trace_diag, trace_wedge_contour, Matrix,
};
use circext::welding::{mobius_weld_oracle, weld};
use circext::{CircleDiffeo, GroupElement, LaurentSeries, LieElement};
use clap::ValueEnum;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::convergence::doubling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LieRr,
    GroupRr,
    Pairing,
    CocycleId,
    Welding,
    Determinant,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::LieRr,
        Suite::GroupRr,
        Suite::Pairing,
        Suite::CocycleId,
        Suite::Welding,
        Suite::Determinant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LieRr => "lie-rr",
            Suite::GroupRr => "group-rr",
            Suite::Pairing => "pairing",
            Suite::CocycleId => "cocycle-id",
            Suite::Welding => "welding",
            Suite::Determinant => "determinant",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Acceptance bound on a check's worst value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Worst value must be below.
    Max(f64),
    /// Worst value must be above.
    Min(f64),
    /// Every value must equal.
    Exact(f64),
}

impl Bound {
    fn accepts(self, v: f64) -> bool {
        match self {
            Bound::Max(b) => v < b,
            Bound::Min(b) => v > b,
            Bound::Exact(b) => v == b,
        }
    }

    fn worse(self, a: f64, b: f64) -> f64 {
        match self {
            Bound::Min(_) => a.min(b),
            Bound::Max(_) | Bound::Exact(_) => {
                if (a - self.target()).abs() >= (b - self.target()).abs() {
                    a
                } else {
                    b
                }
            }
        }
    }

    fn target(self) -> f64 {
        match self {
            Bound::Max(_) | Bound::Min(_) => 0.0,
            Bound::Exact(b) => b,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub worst: Option<f64>,
    pub bound: Bound,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl Check {
    /// Aggregates per-sample values in sample order; any error fails the check.
    pub fn from_samples(name: &str, bound: Bound, values: Vec<Result<f64, String>>) -> Check {
        let samples = values.len();
        let mut worst: Option<f64> = None;
        let mut errors = Vec::new();
        let mut passed = true;
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Ok(v) => {
                    passed &= bound.accepts(v);
                    worst = Some(match worst {
                        None => v,
                        Some(w) => bound.worse(w, v),
                    });
                }
                Err(e) => {
                    passed = false;
                    errors.push(format!("sample {i}: {e}"));
                }
            }
        }
        Check {
            name: name.to_string(),
            passed: passed && samples > 0,
            samples,
            worst,
            bound,
            errors,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub seed: u64,
    pub truncation: usize,
    pub checks: Vec<Check>,
}

/// Runs `suite` on a pool of `cfg.jobs` threads.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    let checks = pool.install(|| match suite {
        Suite::LieRr => lie_rr(cfg),
        Suite::GroupRr => group_rr(cfg),
        Suite::Pairing => pairing(cfg),
        Suite::CocycleId => cocycle_id(cfg),
        Suite::Welding => welding(cfg),
        Suite::Determinant => determinant(cfg),
    });
    SuiteReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        seed: cfg.seed,
        truncation: cfg.truncation,
        checks,
    }
}

/// `count` child seeds for the check identified by `stream`.
fn seeds(cfg: &RunConfig, stream: u64, count: usize) -> Vec<u64> {
    let mut root = Corpus::new(cfg.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count).map(|_| root.next_seed()).collect()
}

fn sampled<F>(cfg: &RunConfig, stream: u64, count: usize, f: F) -> Vec<Result<f64, String>>
where
    F: Fn(&mut Corpus) -> circext::Result<f64> + Sync,
{
    seeds(cfg, stream, count)
        .into_par_iter()
        .map(|s| f(&mut Corpus::new(s)).map_err(|e| e.to_string()))
        .collect()
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn monomial(k: i64, order: usize) -> LaurentSeries {
    LaurentSeries::monomial(k, one(), order)
}

fn sampled_series(order: usize, f: impl Fn(Complex64) -> Complex64) -> circext::Result<LaurentSeries> {
    let m = default_grid(order);
    let vals: Vec<_> = circext::laurent::unit_grid(m).into_iter().map(f).collect();
    LaurentSeries::from_samples(&vals, order)
}

fn lie_rr(cfg: &RunConfig) -> Vec<Check> {
    let n = cfg.truncation;
    let m = cfg.grid;
    let sweep = verify_lie_rr(cfg.degree, n);
    let virasoro: Vec<Result<f64, String>> = (1..=6i64)
        .map(|j| {
            let x = LieElement::vector_field(monomial(j + 1, n));
            let z = LieElement::vector_field(monomial(1 - j, n));
            let want = 2.0 * (j * j * j - j) as f64;
            let matrix = lie_cocycle_d(&x, &z, n) * 12.0;
            let quadrature = lie_rr_rhs(&x, &z, m);
            Ok((matrix - want).norm().max((quadrature - want).norm()).max((matrix - quadrature).norm()))
        })
        .collect();
    let rank = lie_rank(&rank_panel(n), m);
    let jacobi = sampled(cfg, 4, cfg.samples_or(10), |c| {
        let mut pick = || {
            let x = c.lie_element(4);
            LieElement::new(x.s.padded(12), x.r.padded(12))
        };
        let (x, y, z) = (pick(), pick(), pick());
        Ok(LieCocycle::ALL
            .iter()
            .map(|k| jacobi_defect(*k, &x, &y, &z, 32))
            .fold(0.0, f64::max))
    });
    vec![
        Check::from_samples("riemann-roch-sweep", Bound::Max(1e-8), vec![Ok(sweep.max_defect)]),
        Check::from_samples("virasoro-dual-route", Bound::Max(1e-9), virasoro),
        Check::from_samples("rank-three", Bound::Min(1e-6), vec![Ok(rank.min_normalized)]),
        Check::from_samples("jacobi", Bound::Max(1e-9), jacobi),
    ]
}

fn pairing(cfg: &RunConfig) -> Vec<Check> {
    let n = 32;
    let m = default_grid(n + 2);
    let t = |a: &LaurentSeries, b: &LaurentSeries| pairing_t(a, b, m);
    let zz = t(&monomial(1, 2), &monomial(1, 2)).map(|v| (v + 1.0).norm());
    let steinberg = (|| {
        let f = LaurentSeries::new(1, vec![c(0.0), c(0.5), c(0.2)])?;
        let g = LaurentSeries::one(1).sub(&f);
        Ok((t(&f, &g)? - 1.0).norm())
    })();
    let exponentials = (|| {
        let f = sampled_series(n, |z| (0.2 * z).exp())?;
        let g = sampled_series(n, |z| (0.3 / z).exp())?;
        Ok((t(&f, &g)? - (-0.06f64).exp()).norm())
    })();
    let with_winding = |c: &mut Corpus| -> LaurentSeries {
        let k = c.integer(-2, 2);
        c.unit(n).padded(2).mul(&monomial(k, n + 2))
    };
    let bimultiplicative = sampled(cfg, 11, cfg.samples_or(50), |c| {
        let f1 = with_winding(c);
        let f2 = with_winding(c);
        let g = with_winding(c);
        let big = default_grid(2 * n + 4);
        let lhs = pairing_t(&f1.padded(n + 2).mul(&f2.padded(n + 2)), &g.padded(n + 2), big)?;
        let rhs = t(&f1, &g)? * t(&f2, &g)?;
        Ok((lhs / rhs - 1.0).norm())
    });
    let antisymmetric = sampled(cfg, 12, cfg.samples_or(50), |c| {
        let f = with_winding(c);
        let g = with_winding(c);
        Ok((t(&f, &g)? * t(&g, &f)? - 1.0).norm())
    });
    let invariant = sampled(cfg, 13, cfg.samples_or(20), |c| {
        let order = 48;
        let f = c.unit(16).resized(order);
        let g = c.unit(16).resized(order);
        let psi = GroupElement::diffeo(c.diffeo(order));
        let m = default_grid(order);
        let direct = pairing_t(&f, &g, m)?;
        let moved = pairing_t(&psi.transport(&f)?, &psi.transport(&g)?, m)?;
        Ok((moved / direct - 1.0).norm())
    });
    let err = |r: circext::Result<f64>| vec![r.map_err(|e| e.to_string())];
    vec![
        Check::from_samples("z-z", Bound::Max(1e-12), err(zz)),
        Check::from_samples("steinberg", Bound::Max(1e-9), err(steinberg)),
        Check::from_samples("exponentials", Bound::Max(1e-10), err(exponentials)),
        Check::from_samples("bimultiplicativity", Bound::Max(1e-9), bimultiplicative),
        Check::from_samples("antisymmetry", Bound::Max(1e-9), antisymmetric),
        Check::from_samples("diffeomorphism-invariance", Bound::Max(1e-9), invariant),
    ]
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Commuting pair number `i` of the quick sample: function pairs, rotation
/// pairs and `(g, g²)`.
fn commuting_pair(c: &mut Corpus, i: usize, n: usize) -> circext::Result<(GroupElement, GroupElement)> {
    match i % 3 {
        0 => Ok((GroupElement::function(c.unit(n))?, GroupElement::function(c.unit(n))?)),
        1 => {
            let a = c.uniform(-3.0, 3.0);
            let b = c.uniform(-3.0, 3.0);
            Ok((
                GroupElement::diffeo(CircleDiffeo::rotation(a, n)),
                GroupElement::diffeo(CircleDiffeo::rotation(b, n)),
            ))
        }
        _ => {
            let g = c.group_element(n / 2)?.resized(n)?;
            let g2 = g.mul(&g)?;
            Ok((g, g2))
        }
    }
}

fn group_rr(cfg: &RunConfig) -> Vec<Check> {
    let n = cfg.truncation;
    let commuting = sampled(cfg, 21, cfg.samples_or(20), |c| {
        let i = c.integer(0, 2) as usize;
        let (g1, g2) = commuting_pair(c, i, n)?;
        Ok(commutator_check(&g1, &g2, n)?.defect)
    });
    let plus = sampled(cfg, 22, cfg.samples_or(10), |c| {
        let g = c.plus_element(n)?;
        let h = c.plus_element(n)?;
        Ok(subgroup_check(&g, &h, n)?.defect)
    });
    let conditioning = sampled(cfg, 23, cfg.samples_or(50), |c| {
        let g = c.group_element(n)?;
        let b = block_of_group(&g, n)?;
        Ok(condition_number(&b.app).max(condition_number(&b.amm)))
    });
    let derivative_winding = sampled(cfg, 24, cfg.samples_or(50), |c| {
        let f = c.diffeo(n);
        let m = cfg.grid_for(n + 1);
        let fp = f.derivative_series(m)?;
        Ok(winding_number(&fp, m)?.abs() as f64)
    });
    vec![
        Check::from_samples("commuting-pairs", Bound::Max(1e-7), commuting),
        Check::from_samples("plus-subgroup", Bound::Max(1e-8), plus),
        Check::from_samples("block-conditioning", Bound::Max(1e10), conditioning),
        Check::from_samples("derivative-winding", Bound::Exact(0.0), derivative_winding),
    ]
}

/// Converged value of `D(a, b)` by truncation doubling from `cfg.truncation`.
fn converged_d(cfg: &RunConfig, a: &GroupElement, b: &GroupElement) -> circext::Result<Complex64> {
    let r = doubling(cfg.truncation, cfg.nmax, cfg.tol, |n| cocycle_d(a, b, n))?;
    if r.status != Status::Converged {
        return Err(circext::Error::Domain(format!(
            "D not converged by N = {} (gap {:e})",
            r.truncation, r.max_defect
        )));
    }
    Ok(r.value)
}

fn cocycle_id(cfg: &RunConfig) -> Vec<Check> {
    let n = cfg.truncation;
    let triple = |c: &mut Corpus| -> circext::Result<[GroupElement; 3]> {
        Ok([c.group_element(n)?, c.group_element(n)?, c.group_element(n)?])
    };
    let d_identity = sampled(cfg, 31, cfg.samples_or(25), |c| {
        let [g1, g2, g3] = triple(c)?;
        cocycle_identity_defect(|a, b| converged_d(cfg, a, b), &g1, &g2, &g3)
    });
    let c_identity = sampled(cfg, 32, cfg.samples_or(25), |c| {
        let [g1, g2, g3] = triple(c)?;
        cocycle_identity_defect(combined_cocycle, &g1, &g2, &g3)
    });
    vec![
        Check::from_samples("determinant-cocycle", Bound::Max(1e-7), d_identity),
        Check::from_samples("combined-cocycle", Bound::Max(1e-7), c_identity),
    ]
}

fn welding(cfg: &RunConfig) -> Vec<Check> {
    let n = cfg.truncation;
    let m = cfg.grid;
    let residual = sampled(cfg, 41, cfg.samples_or(20), |c| Ok(weld(&c.diffeo(n), n, m)?.residual));
    let mut mobius = Vec::new();
    for r in [0.1, 0.2, 0.3] {
        for phase in [0.0, TAU / 3.0, 2.0 * TAU / 3.0] {
            let a = Complex64::from_polar(r, phase);
            let v = (|| {
                let w = weld(&CircleDiffeo::mobius(a, 0.0, n)?, n, m)?;
                let want = mobius_weld_oracle(a, n)?;
                Ok(w.v_plus.max_coeff_diff(&want.v_plus).max(w.v_minus.max_coeff_diff(&want.v_minus)))
            })();
            mobius.push(v.map_err(|e: circext::Error| e.to_string()));
        }
    }
    let drift = sampled(cfg, 42, cfg.samples_or(20), |c| {
        let f = c.diffeo(n);
        let coarse = weld(&f, n, m)?;
        let fine = weld(&f.resized(2 * n)?, 2 * n, cfg.grid_for(2 * n))?;
        Ok(coarse
            .v_plus
            .resized(2 * n)
            .max_coeff_diff(&fine.v_plus)
            .max(coarse.v_minus.resized(2 * n).max_coeff_diff(&fine.v_minus)))
    });
    let univalent = sampled(cfg, 43, cfg.samples_or(20), |c| {
        let w = weld(&c.diffeo(n), n, m)?;
        Ok(if w.univalence()?.plausible() { 0.0 } else { 1.0 })
    });
    vec![
        Check::from_samples("residual", Bound::Max(1e-8), residual),
        Check::from_samples("mobius-oracle", Bound::Max(1e-9), mobius),
        Check::from_samples("doubling-drift", Bound::Max(1e-7), drift),
        Check::from_samples("univalence", Bound::Exact(0.0), univalent),
    ]
}

fn determinant(cfg: &RunConfig) -> Vec<Check> {
    let size = 16;
    let id = Matrix::identity(size, size);
    let routes = sampled(cfg, 51, cfg.samples_or(50), |c| {
        let t = c.matrix(size);
        Ok((fredholm_det_lu(&t)? - fredholm_det_series(&t, size)?).norm())
    });
    let multiplicative = sampled(cfg, 52, cfg.samples_or(50), |c| {
        let s = c.matrix(size);
        let t = c.matrix(size);
        let st = (&id + &s) * (&id + &t) - &id;
        Ok((fredholm_det_lu(&st)? - fredholm_det_lu(&s)? * fredholm_det_lu(&t)?).norm())
    });
    let inverse = sampled(cfg, 53, cfg.samples_or(50), |c| {
        let t = c.matrix(size);
        let r = inverse_one_plus(&t)?;
        Ok((&r * (&id + &t) - &id).norm())
    });
    let contour = sampled(cfg, 54, cfg.samples_or(50), |c| {
        let k = c.kernel(size);
        Ok((trace_contour(&k, cfg.sigma, cfg.grid.max(2 * size + 1))? - trace_diag(&k.coeff)).norm())
    });
    // tr Λ²K = ((tr K)² − tr K²)/2
    let wedge = sampled(cfg, 55, cfg.samples_or(10), |c| {
        let k = c.kernel(6);
        let tr = trace_diag(&k.coeff);
        let e2 = (tr * tr - trace_diag(&(&k.coeff * &k.coeff))) / 2.0;
        Ok((trace_wedge_contour(&k, 2, cfg.epsilon, 41)? - e2).norm())
    });
    vec![
        Check::from_samples("lu-vs-series", Bound::Max(1e-10), routes),
        Check::from_samples("multiplicativity", Bound::Max(1e-9), multiplicative),
        Check::from_samples("inverse", Bound::Max(1e-12), inverse),
        Check::from_samples("contour-trace", Bound::Max(1e-10), contour),
        Check::from_samples("wedge-trace", Bound::Max(1e-10), wedge),
    ]
}
