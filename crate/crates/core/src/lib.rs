//! Geometry of rays in `C^d`: similarity, superposition, the triple phase,
//! Born-rule probabilities of propositions, regular maps and product states,
//! with a seeded randomized checker for the laws relating them.

pub mod error;
pub mod geometry;
pub mod lawcheck;
pub mod linalg;
pub mod morphism;
pub mod probability;
pub mod random;
pub mod subspace;
pub mod superposition;
pub mod tensor;

pub use error::{Error, Result};
pub use geometry::{a_sim, coplanar, p_prop, p_sim, prime_triple, reciprocity_holds, theta, Triple};
pub use lawcheck::{run_all, run_law, Exec, Flavor, GeneratorSpec, LawReport};
pub use linalg::{inner, CVector, Cplx, Mat, Tolerance};
pub use morphism::{LinearMap, RegularMap};
pub use subspace::{commutes, is_member, is_orthogonal, Projected, Ray, Subspace};
pub use superposition::{superpose, superpose_rays, SuperpositionSpec};
pub use tensor::{tensor_ray, ProductRay};
