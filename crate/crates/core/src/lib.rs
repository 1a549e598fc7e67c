pub mod circle_group;
pub mod cocycles;
pub mod corpus;
pub mod error;
pub mod laurent;
pub mod operator;
pub mod welding;

pub use circle_group::{CircleDiffeo, GroupElement, LieElement};
pub use error::{Error, Result};
pub use laurent::LaurentSeries;
pub use operator::{BlockOperator, Kernel};
