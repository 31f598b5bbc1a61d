//! Construction and exhaustive cryptanalytic profiling of low-differential-
//! uniformity permutations over GF(2^n).
//!
//! The crate provides:
//!
//! * [`gf2n`] — GF(2^n) arithmetic, subfields and trace maps;
//! * [`funcrep`] — lookup-table, univariate-polynomial and ANF views of
//!   vectorial Boolean functions, plus algebraic degree;
//! * [`recipe`] — a tiny expression grammar for building functions from the
//!   command line;
//! * [`spectra`] — DDT, Walsh and boomerang spectra, each with an optimized
//!   algorithm and a literal-definition oracle;
//! * [`constructions`] — the Gold / Kasami / inverse / Bracken-Leander /
//!   Bracken-Tan-Tan families, piecewise subfield modifications of them, and
//!   exhaustive verifiers for the hypotheses those constructions rely on;
//! * [`equivalence`] — invariant profiles for distinguishing inequivalent
//!   functions;
//! * [`tables`] — golden metric tables for the built-in piecewise families
//!   and a cell-by-cell checker;
//! * [`cache`] — a content-addressed on-disk spectrum cache used by the CLI.

pub mod cache;
pub mod constructions;
pub mod equivalence;
pub mod funcrep;
pub mod gf2n;
pub mod recipe;
pub mod spectra;
pub mod tables;

use thiserror::Error as ThisError;

/// Crate-wide error type.
///
/// `Internal` and `BoundViolation` indicate a broken invariant (CLI exit
/// code 2); everything else is a user/input error (exit code 1).
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("construction condition violated: {0}")]
    Construction(String),

    #[error("recipe error at byte {pos}: {msg}")]
    Recipe { pos: usize, msg: String },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("operands belong to different fields: {0}")]
    FieldMismatch(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundViolation(_) | Error::Internal(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
