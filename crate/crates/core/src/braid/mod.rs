//! Deformed braid operators and the four inversion algorithms.
//!
//! The operators `T_i` act on the deformed root space by
//! `T_i(alpha_j) = alpha_j - q^{-d_i} t C_ij(q,t,u) alpha_i`; their `t = 1`
//! companions `Tbar_i` drive the bipartite recursion. Both satisfy the braid
//! relations of the Weyl group, checked exactly on operator matrices.
//!
//! The inverse matrix `Ctilde = C(q,t,u)^{-1}`, a power series in `t`, is
//! computed four independent ways — geometric series, Coxeter-element mesh
//! recursion, bipartite mesh recursion, and word summation — all exact up to
//! a declared truncation, so each serves as an oracle for the others.

mod invert;
mod longest;
mod ops;

pub use invert::{
    beta_elements, beta_elements_ordered, invert_bipartite, invert_coxeter, invert_series,
    invert_word, validate_height, InverseResult, Method, WordSpec,
};
pub use longest::{extract_longest_monomial, path_mu, LongestMonomial};
pub use ops::{
    apply_t, apply_t_bar, check_braid_relations, BraidAction, BraidCheck, BraidRelation,
    PolyMatrix, RootVec,
};
