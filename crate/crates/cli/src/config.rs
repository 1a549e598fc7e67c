use circext::laurent::default_grid;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Starting truncation `N`.
    pub truncation: usize,
    /// Quadrature grid at the starting truncation.
    pub grid: usize,
    /// Cauchy tolerance for truncation doubling.
    pub tol: f64,
    pub nmax: usize,
    pub seed: u64,
    /// Contour offset for kernel traces.
    pub sigma: f64,
    /// Contour offset for exterior-power traces.
    pub epsilon: f64,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
    pub convergence: bool,
    /// Overrides the per-check sample counts of the suites.
    pub samples: Option<usize>,
    /// Largest basis degree of the Lie sweep.
    pub degree: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            truncation: 64,
            grid: default_grid(64),
            tol: 1e-9,
            nmax: 512,
            seed: DEFAULT_SEED,
            sigma: 0.1,
            epsilon: 0.1,
            jobs: 0,
            convergence: false,
            samples: None,
            degree: 6,
        }
    }
}

impl RunConfig {
    /// Default config at truncation `n`, grid `4n+1`.
    pub fn with_truncation(n: usize) -> Self {
        RunConfig {
            truncation: n,
            grid: default_grid(n),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.truncation == 0 {
            return bad("truncation must be positive".into());
        }
        if self.grid < 2 * self.truncation + 1 {
            return bad(format!(
                "grid {} is below 2N+1 = {}",
                self.grid,
                2 * self.truncation + 1
            ));
        }
        if !(self.tol > 0.0) {
            return bad(format!("tolerance {} must be positive", self.tol));
        }
        for (name, v) in [("sigma", self.sigma), ("epsilon", self.epsilon)] {
            if !(v > 0.0 && v <= 0.5) {
                return bad(format!("{name} = {v} must lie in (0, 0.5]"));
            }
        }
        if self.nmax < self.truncation {
            return bad(format!("nmax {} is below the truncation {}", self.nmax, self.truncation));
        }
        Ok(())
    }

    /// Grid for truncation `n`, keeping the oversampling ratio of the start.
    pub fn grid_for(&self, n: usize) -> usize {
        let scaled = ((self.grid - 1) as u128 * n as u128 / self.truncation as u128) as usize + 1;
        scaled.max(2 * n + 1) | 1
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}
