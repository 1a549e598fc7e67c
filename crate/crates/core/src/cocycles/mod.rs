//! The pairing `𝕋`, group 2-cocycles built from it and from block
//! determinants, their Lie algebra counterparts, and verification helpers.

mod cup;
mod determinant;
mod lie;
mod pairing;
pub mod verify;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use cup::{combined_cocycle, cup_cocycle, OneCocycle};
pub use determinant::cocycle_d;
pub use lie::{lie_cocycle_d, lie_cocycle_pair, lie_rr_rhs, PairKind};
pub use pairing::pairing_t;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Converged,
    Unconverged,
}

/// A computed value with its truncation history.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    pub value: Complex64,
    pub truncation: usize,
    /// `(N, value)` for each truncation tried, in order.
    pub convergence: Vec<(usize, Complex64)>,
    pub status: Status,
    pub max_defect: f64,
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl CocycleReport {
    /// A single-truncation value; no Cauchy test has been made.
    pub fn single(value: Complex64, truncation: usize) -> Self {
        CocycleReport {
            value,
            truncation,
            convergence: vec![(truncation, value)],
            status: Status::Unconverged,
            max_defect: 0.0,
            meta: BTreeMap::new(),
        }
    }

    /// A value that needs no truncation (closed-form or exact quadrature).
    pub fn exact(value: Complex64, truncation: usize) -> Self {
        CocycleReport {
            status: Status::Converged,
            ..Self::single(value, truncation)
        }
    }
}

impl Serialize for CocycleReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("value", &[self.value.re, self.value.im])?;
        map.serialize_entry("truncation", &self.truncation)?;
        let trace: Vec<(usize, f64, f64)> = self
            .convergence
            .iter()
            .map(|(n, v)| (*n, v.re, v.im))
            .collect();
        map.serialize_entry("convergence", &trace)?;
        map.serialize_entry("status", &self.status)?;
        map.serialize_entry("max_defect", &self.max_defect)?;
        if !self.meta.is_empty() {
            map.serialize_entry("meta", &self.meta)?;
        }
        map.end()
    }
}
