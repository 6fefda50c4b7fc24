//! Centred pseudometrics and preorders on `Z`, `Z^m`, and sequences of
//! consecutive integers, induced by arithmetic functions extended modulo `n`.
//!
//! The building blocks are:
//!
//! * [`arith`] — a catalog of base arithmetic functions on the positive
//!   integers, their classification into admissible sets, and the
//!   exponential-style transforms that build function triples,
//! * [`extension`] — the modulus-`n` lift of an arithmetic function from the
//!   naturals to all integers via the residue transform,
//! * [`means`] — Pythagorean means and moving averages over windows of
//!   consecutive integers, plus the constructive inverse of the moving
//!   geometric average,
//! * [`metrics`] — the induced centred pseudometrics together with an
//!   axiom checker,
//! * [`preorders`] — the induced preorders, their equivalence-class
//!   partition, and extrema/duality analyses,
//! * [`verify`] — seeded, deterministic verification suites driven by the
//!   CLI and reusable from tests.

pub mod arith;
pub mod extension;
pub mod golden;
pub mod means;
pub mod metrics;
pub mod preorders;
pub mod registry;
pub mod verify;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum AfError {
    /// An argument is outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A name or option does not resolve to anything known.
    #[error("configuration error: {0}")]
    Config(String),
    /// A conditional operation was invoked with its hypothesis unmet.
    /// Distinct from a `false` result: the check never ran.
    #[error("precondition not met: {0}")]
    Precondition(String),
    /// A structural guarantee was violated; this always signals a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AfError>;

/// Relative tolerance for key ties: two comparison keys are considered
/// equal iff `|a - b| <= KEY_TIE_TOL * max(1, |a|, |b|)`. Exact rational
/// ties evaluated along different floating paths land well inside this
/// band, while genuinely distinct values of the catalog functions stay
/// well outside it.
pub const KEY_TIE_TOL: f64 = 1e-9;

/// Returns true when `a` and `b` agree within `tol` relative to
/// `max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return false;
    }
    (a - b).abs() <= tol * 1.0_f64.max(a.abs()).max(b.abs())
}
