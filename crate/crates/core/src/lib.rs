//! Exact adjoint-orbit computations for the Jacobi group
//! `G^J = SL(2,R) x| H_R` and its complexified counterpart.
//!
//! - [`scalar`], [`matrix`]: exact rationals, Gaussian rationals, small matrices.
//! - [`jacobi`]: group law, embeddings, bracket, adjoint action, invariants.
//! - [`real_orbits`]: classification of adjoint `G^J`-orbits with witnesses.
//! - [`sl2`]: the `sl(2,R)` example, sl2/KS-triples and the Cayley transform.
//! - [`complex_orbits`]: `K_C^J`-orbits on `p_C^J` via weight coordinates.
//! - [`audit`]: seeded randomized checks producing a PASS/FLAG report.

pub mod audit;
pub mod complex_orbits;
pub mod error;
pub mod jacobi;
pub mod matrix;
pub mod real_orbits;
pub mod scalar;
pub mod sl2;

pub use error::{Error, Result};
