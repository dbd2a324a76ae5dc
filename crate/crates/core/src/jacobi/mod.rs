//! The Jacobi group `SL(2,R) x| H` and its Lie algebra, realized inside
//! `Sp(4)` / `sp(4)` by explicit 4x4 embeddings.

mod algebra;
mod group;
mod siegel;

pub use algebra::{basis, Invariants, JacobiAlgElem};
pub use group::JacobiGroupElem;
pub use siegel::{sj_action, sj_action_exact, sj_action_gauss, SiegelJacobiPoint};
