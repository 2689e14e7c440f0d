//! The Steenrod algebra at `p = 2, 3`, the Thom module of the normal
//! bundle data of a degree-`d` hypersurface, minimal resolutions and Adams
//! charts.

pub mod algebra;
pub mod chart;
pub mod module;
pub mod resolution;

pub use algebra::{
    adem_reduce, adem_reduce_with, admissible_basis, is_admissible, parse_word, Monomial, Op, SteenrodAlgebra,
    SteenrodElement, Strategy,
};
pub use chart::{
    apply_differential_pattern, differential_pattern, emit_chart, ext_chart, filtration_quotient_rank,
    guard_band_independent, ChartFormat, Differential, ExtChart, StemOutcome, ThreePrimaryOutcome,
};
pub use module::{thom_module, total_operation_on_u, ModuleSummary, SteenrodModule};
pub use resolution::{minimal_resolution, Resolution};

use crate::hypersurface::HypersurfaceError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("only p = 2 and p = 3 are supported, got {0}")]
    UnsupportedPrime(u32),
    #[error("cannot parse Steenrod word token {0:?}")]
    BadToken(String),
    #[error("degree {degree} exceeds the precomputed bound {max}")]
    DegreeBound { degree: u32, max: u32 },
    #[error("action from basis element {from} to {to} does not match degrees")]
    DegreeMismatch { from: usize, to: usize },
    #[error("the Thom module at p = 2 needs even d, got {0}")]
    OddDegreeAtTwo(i64),
    #[error("algebra is at p = {0} but module is at p = {1}")]
    PrimeMismatch(u32, u32),
    #[error("internal degree {t_max} exceeds the algebra bound {algebra} or module truncation {module:?}")]
    RangeExceedsTruncation { t_max: u32, algebra: u32, module: Option<u32> },
    #[error("differential {from:?} -> {to:?} does not fit the chart")]
    PatternMismatch { from: (u32, usize), to: (u32, usize) },
    #[error("no differential pattern recorded for p = {p}, d = {d}")]
    UnsupportedResidue { p: u32, d: i64 },
    #[error(transparent)]
    Series(#[from] HypersurfaceError),
}
