//! Exact algebra of normal-ordered torus words over phase polynomials.

pub mod eval;
pub mod matrix;
pub mod poly;
pub mod reduction;
pub mod torus;

pub use eval::{CMatrix, Evaluator};
pub use matrix::{diamond_hat, SymbolicLattice, TorusMatrix};
pub use poly::PhasePoly;
pub use reduction::{d_relation_checks, verify_x1, verify_x3, verify_x6, RelationCheck, Report};
pub use torus::{TorusAlgebra, TorusElement, Word};
