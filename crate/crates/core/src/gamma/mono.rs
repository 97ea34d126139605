use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Key of one deformation parameter `u[i,j,g]`.
///
/// `i` and `j` are 0-based vertex indices of the edge carrying the parameter
/// and `g` is the 1-based sheet index, `1 <= g <= g_ij`. Stored keys are
/// always in the *normal form* fixed by the GCM's orientation: only pairs
/// `(i,j)` in the orientation appear; the reversed parameter `u[j,i,g]` is
/// represented as `u[i,j,g]^{-1}` via the relation `u[i,j,g] u[j,i,g] = 1`.
/// Construction of oriented keys lives on [`crate::cartan::Gcm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MuKey {
    pub i: usize,
    pub j: usize,
    pub g: usize,
}

impl fmt::Display for MuKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based vertex indices in all rendered output.
        write!(f, "u[{},{},{}]", self.i + 1, self.j + 1, self.g)
    }
}

/// A monomial `q^a t^b * prod u[i,j,g]^e` in the group `Gamma`.
///
/// The parameter exponents are a sparse map holding only nonzero entries, so
/// equal group elements have equal representations. Monomials order by
/// `(t_exp, q_exp, mu_exp)` - the canonical term order used everywhere
/// (series are read off by ascending `t`-degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMonomial {
    pub q_exp: i64,
    pub t_exp: i64,
    mu_exp: BTreeMap<MuKey, i64>,
}

impl GammaMonomial {
    /// The identity of `Gamma`.
    pub fn unit() -> Self {
        GammaMonomial { q_exp: 0, t_exp: 0, mu_exp: BTreeMap::new() }
    }

    /// `q^a`.
    pub fn q(a: i64) -> Self {
        GammaMonomial { q_exp: a, ..Self::unit() }
    }

    /// `t^b`.
    pub fn t(b: i64) -> Self {
        GammaMonomial { t_exp: b, ..Self::unit() }
    }

    /// `q^a t^b`.
    pub fn qt(a: i64, b: i64) -> Self {
        GammaMonomial { q_exp: a, t_exp: b, mu_exp: BTreeMap::new() }
    }

    /// A single parameter power `u[key]^e`. The caller is responsible for
    /// `key` being in normal form; use `Gcm::mu` when an orientation is in
    /// scope.
    pub fn mu(key: MuKey, e: i64) -> Self {
        let mut mu_exp = BTreeMap::new();
        if e != 0 {
            mu_exp.insert(key, e);
        }
        GammaMonomial { q_exp: 0, t_exp: 0, mu_exp }
    }

    /// Nonzero parameter exponents in key order.
    pub fn mu_exps(&self) -> impl Iterator<Item = (&MuKey, &i64)> {
        self.mu_exp.iter()
    }

    pub fn is_unit(&self) -> bool {
        self.q_exp == 0 && self.t_exp == 0 && self.mu_exp.is_empty()
    }

    /// True when no parameter `u[i,j,g]` occurs.
    pub fn is_mu_free(&self) -> bool {
        self.mu_exp.is_empty()
    }

    /// Group multiplication (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut mu_exp = self.mu_exp.clone();
        for (k, e) in &other.mu_exp {
            let entry = mu_exp.entry(*k).or_insert(0);
            *entry += e;
            if *entry == 0 {
                mu_exp.remove(k);
            }
        }
        GammaMonomial { q_exp: self.q_exp + other.q_exp, t_exp: self.t_exp + other.t_exp, mu_exp }
    }

    /// Group inverse (all exponents negate).
    pub fn inv(&self) -> Self {
        GammaMonomial {
            q_exp: -self.q_exp,
            t_exp: -self.t_exp,
            mu_exp: self.mu_exp.iter().map(|(k, e)| (*k, -e)).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        GammaMonomial {
            q_exp: self.q_exp * k,
            t_exp: self.t_exp * k,
            mu_exp: if k == 0 {
                BTreeMap::new()
            } else {
                self.mu_exp.iter().map(|(key, e)| (*key, e * k)).collect()
            },
        }
    }

    /// The involution `phi`: fixes `q` and `t`, swaps `u[i,j,g] <-> u[j,i,g]`.
    /// In normal form that is exactly negating every parameter exponent.
    pub fn phi(&self) -> Self {
        GammaMonomial {
            q_exp: self.q_exp,
            t_exp: self.t_exp,
            mu_exp: self.mu_exp.iter().map(|(k, e)| (*k, -e)).collect(),
        }
    }

    /// Forget the exponent of one generator class (specialization to 1).
    pub(crate) fn erase(&self, which: super::Specialization) -> Self {
        use super::Specialization::*;
        let mut m = self.clone();
        match which {
            MuOne => m.mu_exp.clear(),
            QOne => m.q_exp = 0,
            TOne => m.t_exp = 0,
        }
        m
    }
}

impl Ord for GammaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Canonical term order: t-degree first (series read ascending in t),
        // then q-degree, then the parameter exponents lexicographically.
        (self.t_exp, self.q_exp, &self.mu_exp).cmp(&(other.t_exp, other.q_exp, &other.mu_exp))
    }
}

impl PartialOrd for GammaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, first: &mut bool, base: &str, exp: i64) -> fmt::Result {
    if exp == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, " ")?;
    }
    *first = false;
    if exp == 1 {
        write!(f, "{base}")
    } else {
        write!(f, "{base}^{exp}")
    }
}

impl fmt::Display for GammaMonomial {
    /// Canonical rendering: `q^a t^b u[i,j,g]^e ...` with factors in fixed
    /// order, exponent 1 elided, and the unit monomial rendered as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        write_factor(f, &mut first, "q", self.q_exp)?;
        write_factor(f, &mut first, "t", self.t_exp)?;
        for (k, e) in &self.mu_exp {
            write_factor(f, &mut first, &k.to_string(), *e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(i: usize, j: usize, g: usize) -> MuKey {
        MuKey { i, j, g }
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(GammaMonomial::unit().to_string(), "1");
        assert_eq!(GammaMonomial::q(1).to_string(), "q");
        assert_eq!(GammaMonomial::qt(-3, 3).to_string(), "q^-3 t^3");
        let m = GammaMonomial::qt(2, -1).mul(&GammaMonomial::mu(key(0, 1, 2), -1));
        assert_eq!(m.to_string(), "q^2 t^-1 u[1,2,2]^-1");
    }

    #[test]
    fn multiplication_cancels_parameters() {
        let a = GammaMonomial::mu(key(0, 1, 1), 1);
        let b = GammaMonomial::mu(key(0, 1, 1), -1);
        assert_eq!(a.mul(&b), GammaMonomial::unit());
        assert!(a.mul(&b).is_unit());
    }

    #[test]
    fn phi_is_an_involution_negating_mu() {
        let m = GammaMonomial::qt(2, 5).mul(&GammaMonomial::mu(key(0, 1, 1), 3));
        let p = m.phi();
        assert_eq!(p.q_exp, 2);
        assert_eq!(p.t_exp, 5);
        assert_eq!(p.mu_exps().next(), Some((&key(0, 1, 1), &-3)));
        assert_eq!(p.phi(), m);
    }

    #[test]
    fn term_order_is_t_then_q_then_mu() {
        let a = GammaMonomial::qt(5, -1);
        let b = GammaMonomial::qt(-5, 0);
        let c = GammaMonomial::qt(-7, 1);
        assert!(a < b && b < c);
        let d = GammaMonomial::mu(key(0, 1, 1), 1);
        let e = GammaMonomial::mu(key(0, 1, 2), 1);
        assert!(d < e);
    }
}
