use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mono::GammaMonomial;
use super::Specialization;

/// A sparse Laurent polynomial over `Z[Gamma]` with arbitrary-precision
/// integer coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`GammaMonomial`], so iteration (and
/// hence rendering, hashing into strings, arithmetic) always follows the
/// canonical term order `(t_exp, q_exp, mu_exp)`. No zero coefficient is ever
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<GammaMonomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GammaMonomial::unit())
    }

    /// The polynomial with a single term `1 * m`.
    pub fn monomial(m: GammaMonomial) -> Self {
        Self::term(m, BigInt::one())
    }

    /// The polynomial `c * m`.
    pub fn term(m: GammaMonomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// A constant integer.
    pub fn int(c: impl Into<BigInt>) -> Self {
        Self::term(GammaMonomial::unit(), c)
    }

    /// `q^a`.
    pub fn q_pow(a: i64) -> Self {
        Self::monomial(GammaMonomial::q(a))
    }

    /// `t^b`.
    pub fn t_pow(b: i64) -> Self {
        Self::monomial(GammaMonomial::t(b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&GammaMonomial, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &GammaMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_term(&mut self, m: GammaMonomial, c: &BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Smallest `t`-exponent, or `None` for the zero polynomial.
    pub fn t_valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.t_exp)
    }

    /// Largest `t`-exponent, or `None` for the zero polynomial.
    pub fn t_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|m| m.t_exp)
    }

    /// Smallest `q`-exponent over all terms.
    pub fn min_q_exp(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q_exp).min()
    }

    /// The sub-polynomial of terms with `t_exp == k`.
    pub fn t_slice(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .range(GammaMonomial::qt(i64::MIN, k)..)
                .take_while(|(m, _)| m.t_exp == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop all terms with `t_exp > n`.
    pub fn truncate_t(&self, n: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.t_exp <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiply by a single monomial (cheap; no regrouping can occur).
    pub fn mul_monomial(&self, m: &GammaMonomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Product truncated to `t`-degree `<= n`. Exact on that range.
    pub fn mul_trunc(&self, other: &LaurentPoly, n: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            if let Some(vb) = other.t_valuation() {
                if ma.t_exp + vb > n {
                    // Terms are t-ascending; nothing later can contribute.
                    break;
                }
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if m.t_exp > n {
                    break;
                }
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }

    /// `self^k`, `k >= 0`.
    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Apply the involution `phi` (negates all parameter exponents) to every
    /// term. A ring homomorphism fixing `q` and `t`.
    pub fn phi(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.phi(), c.clone())).collect() }
    }

    /// Specialize one generator class to 1. Always exact on a polynomial;
    /// coefficients of colliding monomials merge.
    pub fn specialize(&self, which: Specialization) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.erase(which), c);
        }
        out
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &(-c));
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Deterministic rendering: terms in canonical order joined by signs,
    /// coefficients of magnitude 1 elided, `*` between a larger coefficient
    /// and its monomial. The zero polynomial renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
