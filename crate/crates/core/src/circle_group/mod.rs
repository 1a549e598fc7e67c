//! The semidirect product of invertible analytic functions with analytic
//! circle diffeomorphisms, and its complexified Lie algebra.

mod diffeo;
mod group;
mod lie;

pub use diffeo::{eval_at_angles, CircleDiffeo, DiffeoJson};
pub use group::{GroupElement, GroupJson};
pub use lie::LieElement;
