//! Generalized Cartan matrices, their deformations, and file input.
//!
//! [`Gcm`] validates an integer Cartan matrix and derives everything the
//! rest of the crate consumes: the minimal (or a supplied) symmetrizer, the
//! diagram orientation, finite/infinite classification by principal minors,
//! and the per-edge constants `g_ij`, `f_ij`, `d_ij`. [`deformed_cartan`]
//! produces the matrix `C(q,t,u)` over the deformation ring, and the
//! [`kp`] submodule relates it to the mass-parameter matrix of a fractional
//! quiver.

mod gcm;
mod input;
mod matrix;
pub mod kp;

pub use gcm::{Gcm, TypeClass};
pub use input::GcmFile;
pub use matrix::{deformed_cartan, DeformedMatrix};
