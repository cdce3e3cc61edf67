//! Exact algebra for orthogonal and symplectic invariants of commuting
//! skew-symmetric matrices: scalars, polynomials, truncated power series,
//! Pfaffians, Cartan embeddings and identity checks.

pub mod cartan;
pub mod commfam;
pub mod dual;
pub mod error;
pub mod format;
pub mod grid;
pub mod identities;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod witness;

pub use dual::DualNumber;
pub use matrix::{block_det_commuting, RingMat};
pub use pencil::Pencil;
pub use error::{AlgebraError, Result};
pub use poly::{Monomial, MultiPoly, VarTable};
pub use ring::Ring;
pub use scalar::{ExactScalar, FieldKind};
pub use series::{alphabet, Parity, TMonomial, TSeries, WeightIndex};
