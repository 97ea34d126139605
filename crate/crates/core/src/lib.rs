//! Exact arithmetic for multi-parameter deformations of generalized Cartan
//! matrices.
//!
//! A symmetrizable generalized Cartan matrix `C` with symmetrizer
//! `D = diag(d_1, ..., d_n)` deforms into a matrix `C(q,t,u)` over the group
//! ring of `Gamma = q^Z x t^Z x u^Z`, where each edge `i ~ j` of the diagram
//! carries parameters `u[i,j,g]` subject to `u[i,j,g] * u[j,i,g] = 1`:
//!
//! ```text
//! C_ij(q,t,u) = q^{d_i} t^{-1} + q^{-d_i} t          if i = j,
//!             = -[f_ij]_{q^{d_i}} (u[i,j,1] + ... )   if c_ij < 0,
//!             = 0                                     otherwise.
//! ```
//!
//! The crate provides:
//!
//! * [`gamma`]: sparse Laurent polynomials and truncated power series over
//!   `Z[Gamma]` with a canonical term order and rendering.
//! * [`cartan`]: validation and derived data of a GCM (symmetrizers, finite
//!   type, orientations), the deformed matrix, the fractional-quiver
//!   comparison, and the input file format.
//! * [`weyl`]: the undeformed Weyl group side - reflections, reduced words,
//!   positive roots, longest element, Coxeter numbers.
//! * [`braid`]: deformed braid operators `T_i`, braid relation checks, and
//!   four independent algorithms inverting `C(q,t,u)` as a `t`-adic series.
//! * [`pairing`]: closed-form Euler pairings, their expansions, and the
//!   `Ext^1`-dimension reader.

pub mod braid;
pub mod cartan;
pub mod gamma;
pub mod pairing;
pub mod weyl;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input text could not be parsed at all (syntax, not semantics).
    #[error("parse error: {0}")]
    Parse(String),
    /// The input matrix violates the GCM axioms, is not symmetrizable, is
    /// reducible, or carries an inconsistent symmetrizer/orientation.
    #[error("invalid GCM: {0}")]
    InvalidGcm(String),
    /// An operation that only makes sense in finite type was called on an
    /// infinite-type GCM (or vice versa).
    #[error("{op} requires {need} type, but the GCM is {got}")]
    WrongType {
        op: &'static str,
        need: &'static str,
        got: &'static str,
    },
    /// The supplied vertex heights do not form a height function.
    #[error("not a height function: {0}")]
    BadHeight(String),
    /// A word was rejected by `invert_word`'s preconditions.
    #[error("word rejected: {0}")]
    WordRejected(String),
    /// A requested coefficient lies beyond the computed truncation order.
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    /// `t -> 1` evaluation of a truncated series is undefined without the
    /// regraded expansion (see `pairing::t_one_inverse`).
    #[error("t-evaluation undefined for a truncated series; use the regraded expansion")]
    TEvalUndefined,
    /// The quiver data does not match the GCM.
    #[error("invalid quiver: {0}")]
    BadQuiver(String),
    /// A scalar argument was out of range.
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    /// An internal consistency assertion failed; indicates a bug, not bad
    /// input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
