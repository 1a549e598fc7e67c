use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pairing::pairing_t;
use crate::circle_group::GroupElement;
use crate::error::{Error, Result};
use crate::laurent::{default_grid, LaurentSeries};

/// The two function-valued 1-cocycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OneCocycle {
    /// `Λ(d, f) = d`.
    Lambda,
    /// `Ω(d, f) = (f^{∘-1})′`.
    Omega,
}

impl OneCocycle {
    pub fn eval(self, g: &GroupElement) -> Result<LaurentSeries> {
        match self {
            OneCocycle::Lambda => Ok(g.lambda()),
            OneCocycle::Omega => g.omega(),
        }
    }
}

impl fmt::Display for OneCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OneCocycle::Lambda => "Lambda",
            OneCocycle::Omega => "Omega",
        })
    }
}

impl FromStr for OneCocycle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Lambda" | "lambda" | "L" => Ok(OneCocycle::Lambda),
            "Omega" | "omega" | "O" => Ok(OneCocycle::Omega),
            _ => Err(Error::Domain(format!("unknown 1-cocycle {s:?}"))),
        }
    }
}

/// `⟨λ₁, λ₂⟩(g₁, g₂) = 𝕋(λ₁(g₁), λ₂(g₂) ∘ f₁^{∘-1})`.
pub fn cup_cocycle(
    l1: OneCocycle,
    l2: OneCocycle,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<Complex64> {
    let a = l1.eval(g1)?;
    let b = g1.transport(&l2.eval(g2)?)?;
    let m = default_grid(a.order().max(b.order()) + 1);
    pairing_t(&a, &b, m)
}

/// `⟨Λ,Λ⟩⁶ · ⟨Λ,Ω⟩⁻⁶ · ⟨Ω,Ω⟩`.
pub fn combined_cocycle(g1: &GroupElement, g2: &GroupElement) -> Result<Complex64> {
    use OneCocycle::*;
    let ll = cup_cocycle(Lambda, Lambda, g1, g2)?;
    let lo = cup_cocycle(Lambda, Omega, g1, g2)?;
    let oo = cup_cocycle(Omega, Omega, g1, g2)?;
    Ok(ll.powi(6) * lo.powi(-6) * oo)
}
