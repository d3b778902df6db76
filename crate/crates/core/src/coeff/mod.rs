//! Exact scalars: the Laurent ring ℤ[q, q⁻¹] and linear algebra over its
//! fraction field.

mod bigpoly;
mod laurent;
mod matrix;

use thiserror::Error;

pub use bigpoly::BigLaurent;
pub use laurent::{laurent_arith, Laurent, LaurentOp};
pub use matrix::{
    express_in_span, rank_at, rank_of_rows, rank_over_fraction_field, rank_rational, QFraction, QMatrix, SparseRow,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("cannot evaluate a Laurent polynomial at q = 0")]
    EvalAtZero,
    #[error("rows of unequal length")]
    Ragged,
}
