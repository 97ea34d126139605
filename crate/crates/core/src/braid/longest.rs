use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;

use crate::cartan::Gcm;
use crate::gamma::GammaMonomial;
use crate::weyl::{longest_and_star, require_finite};
use crate::{Error, Result};

use super::ops::{BraidAction, PolyMatrix};

/// The parameter monomial `mu_ij` attached to the unique path from `i` to
/// `j` in a finite diagram (a tree): the product of the edge parameters
/// along the way, and `1` when `i = j`.
pub fn path_mu(g: &Gcm, i: usize, j: usize) -> Result<GammaMonomial> {
    require_finite(g, "path_mu")?;
    let n = g.size();
    if i >= n || j >= n {
        return Err(Error::InvalidArg(format!(
            "path endpoints ({}, {}) out of range for {} vertices",
            i + 1,
            j + 1,
            n
        )));
    }
    // BFS from i; the diagram is connected, so j is always reached.
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[i] = true;
    let mut queue = VecDeque::from([i]);
    while let Some(v) = queue.pop_front() {
        for &w in g.adjacent(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    let mut out = GammaMonomial::unit();
    let mut v = j;
    while v != i {
        let p = parent[v].ok_or_else(|| Error::Internal("diagram not connected".into()))?;
        out = out.mul(&g.mu(p, v, 1)?);
        v = p;
    }
    Ok(out)
}

/// The closed form of `T_{w0}`: a global monomial `-q^{-rh_dual} t^h` times
/// the twist `nu`, which sends `alpha_i` to `nu_mu[i] alpha_{nu_perm[i]}`.
#[derive(Clone, Debug)]
pub struct LongestMonomial {
    /// A reduced word for the longest element (as used in the product).
    pub word: Vec<usize>,
    /// The exponent `a` in the global factor `-q^{-a} t^b`.
    pub rh_dual: i64,
    /// The exponent `b` in the global factor `-q^{-a} t^b`.
    pub h: i64,
    /// The diagram involution `i -> i*`.
    pub nu_perm: Vec<usize>,
    /// The parameter monomial carried to `alpha_{i*}`; depends only on `q`
    /// and the `u`-parameters (in fact only on the latter).
    pub nu_mu: Vec<GammaMonomial>,
}

/// Multiply out `T_{w0} = T_{i_1} ... T_{i_N}` over a reduced word for the
/// longest element and read off its closed form. Every structural property
/// of the product — monomial columns, coefficient `-1`, a global
/// `(q,t)`-factor shared by all columns, the permutation being the star
/// involution — is asserted, not assumed.
pub fn extract_longest_monomial(g: &Gcm) -> Result<LongestMonomial> {
    let longest = longest_and_star(g)?;
    let word = longest.word.letters().to_vec();
    let action = BraidAction::new(g)?;
    let n = g.size();

    let mut product = PolyMatrix::identity(n);
    for &i in &word {
        product = product.mul(&action.t_matrix(i));
    }

    let minus_one = -BigInt::one();
    let mut global: Option<(i64, i64)> = None;
    let mut nu_perm = vec![usize::MAX; n];
    let mut nu_mu = vec![GammaMonomial::unit(); n];
    for j in 0..n {
        let mut nonzero = (0..n).filter(|&i| !product.entry(i, j).is_zero());
        let (row, extra) = (nonzero.next(), nonzero.next());
        let Some(row) = row else {
            return Err(Error::Internal(format!("column {} of T_w0 vanished", j + 1)));
        };
        if extra.is_some() {
            return Err(Error::Internal(format!(
                "column {} of T_w0 is not a monomial column",
                j + 1
            )));
        }
        let entry = product.entry(row, j);
        if entry.num_terms() != 1 {
            return Err(Error::Internal(format!(
                "entry ({}, {}) of T_w0 is not a single term",
                row + 1,
                j + 1
            )));
        }
        let (mono, coeff) = entry.terms().next().expect("single term");
        if *coeff != minus_one {
            return Err(Error::Internal(format!(
                "entry ({}, {}) of T_w0 has coefficient {}, expected -1",
                row + 1,
                j + 1,
                coeff
            )));
        }
        let here = (-mono.q_exp, mono.t_exp);
        match global {
            None => global = Some(here),
            Some(seen) if seen != here => {
                return Err(Error::Internal(
                    "columns of T_w0 carry different (q, t)-factors".into(),
                ));
            }
            Some(_) => {}
        }
        nu_perm[j] = row;
        nu_mu[j] = mono.mul(&GammaMonomial::qt(mono.q_exp, mono.t_exp).inv());
    }

    let (rh_dual, h) = global.expect("diagram is nonempty");
    if rh_dual <= 0 || h <= 0 {
        return Err(Error::Internal("global factor of T_w0 has the wrong sign".into()));
    }
    if nu_perm != longest.star {
        return Err(Error::Internal(
            "permutation of T_w0 disagrees with the longest element's star".into(),
        ));
    }
    Ok(LongestMonomial { word, rh_dual, h, nu_perm, nu_mu })
}
