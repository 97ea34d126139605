//! Sparse exact arithmetic over the group ring `Z[Gamma]`,
//! `Gamma = q^Z x t^Z x prod u[i,j,g]^Z`.
//!
//! * [`GammaMonomial`]: a group element in normal form.
//! * [`LaurentPoly`]: a finite integer combination of monomials.
//! * [`TruncatedSeries`]: a `t`-adic series known through a given degree.
//!
//! All containers are `BTreeMap`-backed and iterate in the canonical term
//! order (`t_exp`, then `q_exp`, then parameter exponents), which makes every
//! computation and every rendered string deterministic.

mod mono;
mod poly;
mod series;

pub use mono::{GammaMonomial, MuKey};
pub use poly::LaurentPoly;
pub use series::TruncatedSeries;

use crate::{Error, Result};

/// Which generator class to evaluate at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// All deformation parameters `u[i,j,g] -> 1`.
    MuOne,
    /// `q -> 1`.
    QOne,
    /// `t -> 1` (refused on truncated series; see `pairing::t_one_series`).
    TOne,
}

/// The balanced `q`-integer `[k]_{q^d} = (q^{dk} - q^{-dk}) / (q^d - q^{-d})`
/// expanded as the Laurent polynomial
/// `q^{d(k-1)} + q^{d(k-3)} + ... + q^{-d(k-1)}`.
///
/// Requires `k >= 1` and `d >= 1`.
pub fn q_integer(k: i64, d: i64) -> Result<LaurentPoly> {
    if k < 1 {
        return Err(Error::InvalidArg(format!("q_integer: k must be >= 1, got {k}")));
    }
    if d < 1 {
        return Err(Error::InvalidArg(format!("q_integer: d must be >= 1, got {d}")));
    }
    let mut out = LaurentPoly::zero();
    let mut e = d * (k - 1);
    for _ in 0..k {
        out += &LaurentPoly::q_pow(e);
        e -= 2 * d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integer_is_symmetric_and_palindromic() {
        for (k, d) in [(2, 1), (4, 3), (5, 2)] {
            let p = q_integer(k, d).unwrap();
            assert_eq!(p.num_terms() as i64, k);
            // phi fixes q, so [k]_{q^d} is phi-invariant; it is also
            // invariant under q -> q^{-1} by construction.
            assert_eq!(p.phi(), p);
        }
        assert_eq!(q_integer(2, 1).unwrap().to_string(), "q^-1 + q");
    }
}
