pub mod audit;
pub mod colimits;
pub mod duality;
pub mod enriched;
pub mod poset;
pub mod quantale;
pub mod stone_weierstrass;
pub mod value;
pub mod vietoris;
pub mod vcat;
pub mod vrel;

pub use audit::{Audit, Witness};
pub use poset::{FinPoset, Subset};
pub use quantale::{GridAlgebra, Level, Quantale, TNorm, TNormParseError};
pub use value::Value;
pub use vcat::{Matrix, VCategory};
pub use vrel::VRelation;
