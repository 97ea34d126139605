use std::fmt;

use super::poly::LaurentPoly;
use super::Specialization;
use crate::{Error, Result};

/// Effective valuation used in truncation bookkeeping for a zero polynomial
/// (stands in for `+infinity`, kept small enough that sums cannot overflow).
const VAL_INF: i64 = i64::MAX / 4;

/// A `t`-adic series known exactly through `t`-degree `trunc`.
///
/// The payload polynomial holds every term with `t_exp <= trunc`; nothing is
/// known beyond. Arithmetic tracks how far the result stays exact: sums keep
/// the smaller truncation, products shift it by the other factor's
/// `t`-valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: LaurentPoly,
    trunc: i64,
}

impl TruncatedSeries {
    /// Wrap a polynomial, dropping any term beyond the truncation order.
    pub fn new(poly: LaurentPoly, trunc: i64) -> Self {
        TruncatedSeries { poly: poly.truncate_t(trunc), trunc }
    }

    pub fn zero(trunc: i64) -> Self {
        TruncatedSeries { poly: LaurentPoly::zero(), trunc }
    }

    /// The known terms (every `t`-degree `<= trunc`).
    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    /// Largest `t`-degree through which the series is exact.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    fn val(&self) -> i64 {
        self.poly.t_valuation().unwrap_or(VAL_INF)
    }

    pub fn t_valuation(&self) -> Option<i64> {
        self.poly.t_valuation()
    }

    /// Re-truncate to a (smaller) order.
    pub fn truncate(&self, n: i64) -> Self {
        TruncatedSeries::new(self.poly.clone(), self.trunc.min(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        TruncatedSeries::new(&self.poly + &other.poly, self.trunc.min(other.trunc))
    }

    pub fn sub(&self, other: &Self) -> Self {
        TruncatedSeries::new(&self.poly - &other.poly, self.trunc.min(other.trunc))
    }

    /// Product of two truncated series. The result is exact through
    /// `min(a.trunc + val(b), b.trunc + val(a))`: the unknown tail of one
    /// factor meets the other factor no lower than its valuation.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc.saturating_add(other.val()))
            .min(other.trunc.saturating_add(self.val()))
            .min(VAL_INF);
        TruncatedSeries::new(self.poly.mul_trunc(&other.poly, trunc), trunc)
    }

    /// Multiply by an exact polynomial. Exactness shifts by the polynomial's
    /// `t`-valuation, which may be negative (e.g. the diagonal of the
    /// deformed Cartan matrix has a `t^{-1}` term).
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let trunc = match p.t_valuation() {
            None => VAL_INF, // exact zero everywhere
            Some(v) => self.trunc.saturating_add(v).min(VAL_INF),
        };
        TruncatedSeries::new(self.poly.mul_trunc(p, trunc), trunc)
    }

    /// Specialize `mu -> 1` or `q -> 1` termwise (grading in `t` is
    /// untouched, so the truncation is preserved). `t -> 1` is rejected: a
    /// truncated series has unknown higher terms that would collide, so the
    /// evaluation is only available through the guarded regrading path
    /// (`pairing::t_one_inverse`).
    pub fn specialize(&self, which: Specialization) -> Result<TruncatedSeries> {
        match which {
            Specialization::TOne => Err(Error::TEvalUndefined),
            other => Ok(TruncatedSeries { poly: self.poly.specialize(other), trunc: self.trunc }),
        }
    }

    /// Equality of the overlap: both series agree on every `t`-degree both
    /// know. Used for cross-method comparisons.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.trunc.min(other.trunc);
        self.poly.truncate_t(n) == other.poly.truncate_t(n)
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders the known terms only; the truncation order is metadata and is
    /// printed by callers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::GammaMonomial;

    fn qt(a: i64, b: i64) -> LaurentPoly {
        LaurentPoly::monomial(GammaMonomial::qt(a, b))
    }

    #[test]
    fn construction_truncates() {
        let s = TruncatedSeries::new(&qt(0, 1) + &qt(0, 9), 5);
        assert_eq!(s.poly(), &qt(0, 1));
        assert_eq!(s.trunc(), 5);
    }

    #[test]
    fn product_truncation_shifts_by_valuation() {
        // (t + ...unknown past t^5) * (t^2 + ...unknown past t^7)
        let a = TruncatedSeries::new(qt(0, 1), 5);
        let b = TruncatedSeries::new(qt(0, 2), 7);
        let p = a.mul(&b);
        assert_eq!(p.trunc(), (5 + 2).min(7 + 1));
        assert_eq!(p.poly(), &qt(0, 3));
    }

    #[test]
    fn poly_with_negative_valuation_lowers_exactness() {
        let s = TruncatedSeries::new(qt(0, 1), 5);
        let c = &qt(1, -1) + &qt(-1, 1); // q t^-1 + q^-1 t
        let p = s.mul_poly(&c);
        assert_eq!(p.trunc(), 4);
    }

    #[test]
    fn t_one_specialization_is_refused() {
        let s = TruncatedSeries::new(qt(0, 1), 5);
        assert!(matches!(s.specialize(Specialization::TOne), Err(Error::TEvalUndefined)));
        assert!(s.specialize(Specialization::MuOne).is_ok());
    }

    #[test]
    fn agreement_uses_the_overlap() {
        let a = TruncatedSeries::new(&qt(0, 1) + &qt(0, 6), 6);
        let b = TruncatedSeries::new(qt(0, 1), 4);
        assert!(a.agrees_with(&b));
        let c = TruncatedSeries::new(&qt(0, 1) + &qt(0, 3), 4);
        assert!(!a.agrees_with(&c));
    }
}
