//! Error type shared by every module of the engine.

use alloc::string::String;
use core::fmt;

/// Errors produced by parsing and by the algebraic operations.
///
/// All operations in this crate are exact; an `Error` always signals a
/// violated precondition or malformed input, never a numerical problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Syntax error at a byte offset of the input text.
    Parse {
        /// Byte offset into the source text.
        pos: usize,
        /// What was expected or found.
        msg: String,
    },
    /// A variable index outside `1..=dim` was referenced at `pos`.
    VarOutOfRange {
        /// The offending variable index.
        var: u32,
        /// The ambient dimension.
        dim: usize,
        /// Byte offset into the source text (0 outside parsing).
        pos: usize,
    },
    /// Two operands were built over polynomial rings of different dimension.
    DimMismatch {
        /// Dimension of the receiver or context.
        expected: usize,
        /// Dimension of the offending operand.
        found: usize,
    },
    /// A cochain was applied to the wrong number of arguments, or an
    /// operation expected an operand of a different arity.
    ArityMismatch {
        /// Arity required by the operation.
        expected: usize,
        /// Arity supplied.
        found: usize,
    },
    /// Slot index outside `1..=arity` in a composition product.
    InvalidSlot {
        /// The offending slot index (1-based).
        slot: usize,
        /// Arity of the outer cochain.
        arity: usize,
    },
    /// Division by zero, or a denominator that vanished at a substitution
    /// point.
    ZeroDenominator,
    /// Exponential of a series whose constant term is not zero.
    NonzeroConstantTerm,
    /// Two derivations that were required to commute do not.
    NotCommuting,
    /// The relation `[D1, D2] = D1` required by the descending-factorial
    /// star product does not hold for the given pair.
    WrongCommutator,
    /// An operation restricted to first-order derivative slots encountered a
    /// factor of a different differential order.
    NotFirstOrder,
    /// The requested computation cannot be represented faithfully at the
    /// available truncation order.
    TruncationTooSmall {
        /// Order the computation needs.
        needed: u32,
        /// Order actually available.
        available: u32,
    },
    /// An operation-specific requirement was not met; the message names it.
    InvalidInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::VarOutOfRange { var, dim, pos } => {
                write!(f, "variable x{var} at byte {pos} out of range for dimension {dim}")
            }
            Error::DimMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::InvalidSlot { slot, arity } => {
                write!(f, "slot {slot} invalid for a cochain of arity {arity}")
            }
            Error::ZeroDenominator => write!(f, "division by zero"),
            Error::NonzeroConstantTerm => {
                write!(f, "exponential requires a series with zero constant term")
            }
            Error::NotCommuting => write!(f, "derivations do not commute"),
            Error::WrongCommutator => {
                write!(f, "commutator of the derivation pair is not the first derivation")
            }
            Error::NotFirstOrder => {
                write!(f, "operation requires every derivative slot to have order exactly 1")
            }
            Error::TruncationTooSmall { needed, available } => {
                write!(f, "truncation order {available} too small (need at least {needed})")
            }
            Error::InvalidInput(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
