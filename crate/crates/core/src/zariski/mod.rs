//! Affine schemes over finitely presented ℚ-algebras: polynomial arithmetic,
//! Gröbner bases, the tangent bundle of an algebra, base change and the
//! resulting tangent indexing functor.

pub mod algebra;
pub mod category;
pub mod etale;
pub mod fixtures;
pub mod groebner;
pub mod lemmas;
pub mod maps;
pub mod poly;

pub use algebra::{
    base_change, tangent_algebra, tensor_pushout, Alg, AlgebraHom, Cospan, FpAlgebra, Mode, Pushout,
};
pub use category::{
    build_zariski_indexing, zariski_samples, zariski_tangent, QAlg, QHom, SchemeMap, ZariskiCategory, ZariskiDiagram,
};
pub use groebner::{groebner_basis, set_step_budget, step_budget, DEFAULT_BUDGET};
pub use lemmas::{check_affine_lemmas, check_base_change_lemmas, check_pseudonaturality};
pub use maps::check_ring_coherences;
pub use poly::{parse_poly, Poly};
