//! Tangent structures, tangent morphisms, tangent indexing functors and the
//! induced tangent structure on pseudolimits.

pub mod etale;
pub mod indexing;
pub mod morphism;
pub mod pclimit;
pub mod structure;

pub use etale::*;
pub use indexing::*;
pub use morphism::*;
pub use pclimit::*;
pub use structure::*;
