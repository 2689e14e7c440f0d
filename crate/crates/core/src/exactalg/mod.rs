//! Exact integer linear algebra: matrices, Smith normal form, cokernels,
//! lattice membership and truncated power series.
//!
//! Relation matrices use the row convention throughout: the rows of a matrix
//! are relations among generators indexed by its columns, so the cokernel of
//! an `r x c` matrix is `Z^c / rowspan`.

mod abelian;
mod lattice;
mod matrix;
mod ring;
mod series;
mod snf;

pub use abelian::AbelianGroupPresentation;
pub(crate) use abelian::{json_int, JsonInt};
pub use lattice::{lattice_index, lattice_membership, lattice_membership_2local, solve_integer};
pub use matrix::IntMatrix;
pub use series::TruncatedSeries;
pub use snf::{
    cokernel, cokernel_map, echelon_coordinates, invariant_factors, row_basis, saturation, smith_normal_form, CokernelMap,
    SmithDecomposition,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("modulus {0} is not 0 or a prime")]
    BadModulus(u64),
    #[error("series are over different coefficient rings ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
}
