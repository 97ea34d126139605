//! The mass-parameter matrix of a fractional quiver and its monomial
//! transform into the deformed Cartan matrix.
//!
//! A fractional quiver of type `C` is a directed multigraph on `I` whose
//! edge counts reproduce the off-diagonal entries:
//!
//! ```text
//! c_ij = 2 delta_ij - (d_j/d_ij) * #{edges between i and j}
//! ```
//!
//! Its matrix lives in a variable namespace of its own — `q1`, `q2`, and one
//! mass parameter `m[e]` per quiver edge:
//!
//! ```text
//! KP_ij = delta_ij (1 + q1^-d_i q2^-1)
//!         - (1 + q1^-d_ij + ... + q1^-(f_ij - 1) d_ij)
//!           (sum_{e: i->j} m[e]^-1  +  sum_{e: j->i} m[e] q1^-d_ij q2^-1)
//! ```
//!
//! The monomial substitution `q1 -> q^2`, `q2 -> t^-2`,
//! `m[e] -> q^{d_ij} t^-1 u_{t(e) s(e)}^{(g(e))}` carries `KP` into the main
//! ring, where it lands on `C(q,t,u) q^{-D} t` exactly when every adjacent
//! pair has `f_ij = 1` or `f_ji = 1`; the general image swaps the bracket
//! `[f_ij]_{q^{d_i}}` for `[f_ij]_{q^{d_ij}}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gamma::{GammaMonomial, LaurentPoly};
use crate::{Error, Result};

use super::gcm::Gcm;
use super::matrix::deformed_cartan;

/// Monomial in `q1`, `q2`, and the edge masses. Edge indices are 0-based
/// positions into the quiver's edge list.
///
/// The ordering sorts `q1`/`q2` exponents descending and mass exponents
/// ascending, which is the display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpMonomial {
    q1_exp: i64,
    q2_exp: i64,
    mass_exp: BTreeMap<usize, i64>,
}

impl KpMonomial {
    fn unit() -> Self {
        KpMonomial { q1_exp: 0, q2_exp: 0, mass_exp: BTreeMap::new() }
    }

    fn q1(e: i64) -> Self {
        KpMonomial { q1_exp: e, ..Self::unit() }
    }

    fn mass(edge: usize, e: i64) -> Self {
        let mut m = Self::unit();
        if e != 0 {
            m.mass_exp.insert(edge, e);
        }
        m
    }

    fn mul(&self, other: &Self) -> Self {
        let mut mass_exp = self.mass_exp.clone();
        for (&edge, &e) in &other.mass_exp {
            let entry = mass_exp.entry(edge).or_insert(0);
            *entry += e;
            if *entry == 0 {
                mass_exp.remove(&edge);
            }
        }
        KpMonomial { q1_exp: self.q1_exp + other.q1_exp, q2_exp: self.q2_exp + other.q2_exp, mass_exp }
    }

    /// Image under `q1 -> q^2, q2 -> t^-2, m[e] -> mass_image[e]`.
    fn to_gamma(&self, mass_image: &[GammaMonomial]) -> GammaMonomial {
        let mut out = GammaMonomial::qt(2 * self.q1_exp, -2 * self.q2_exp);
        for (&edge, &e) in &self.mass_exp {
            out = out.mul(&mass_image[edge].pow(e));
        }
        out
    }
}

impl Ord for KpMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .q1_exp
            .cmp(&self.q1_exp)
            .then_with(|| other.q2_exp.cmp(&self.q2_exp))
            .then_with(|| self.mass_exp.cmp(&other.mass_exp))
    }
}

impl PartialOrd for KpMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KpMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (name, e) in [("q1", self.q1_exp), ("q2", self.q2_exp)] {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        for (&edge, &e) in &self.mass_exp {
            let name = format!("m[{}]", edge + 1);
            match e {
                0 => {}
                1 => factors.push(name),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// Sparse Laurent polynomial in the KP namespace with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KpPoly {
    terms: BTreeMap<KpMonomial, BigInt>,
}

impl KpPoly {
    pub fn zero() -> Self {
        KpPoly::default()
    }

    pub fn one() -> Self {
        KpPoly::monomial(KpMonomial::unit())
    }

    pub fn monomial(m: KpMonomial) -> Self {
        let mut p = KpPoly::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: KpMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = KpPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Evaluate every variable at 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in the main ring under the monomial transformation, with
    /// `mass_image[e]` the image of `m[e]`.
    pub fn to_gamma(&self, mass_image: &[GammaMonomial]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out = &out + &LaurentPoly::term(m.to_gamma(mass_image), c.clone());
        }
        out
    }
}

impl fmt::Display for KpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The KP matrix together with the quiver that produced it. The label
/// `labels[e]` numbers edge `e` inside its parallel class, 1-based, matching
/// the superscript of the mass parameter it transforms onto.
#[derive(Clone, Debug)]
pub struct KpMatrix {
    entries: Vec<Vec<KpPoly>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<usize>,
}

impl KpMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &KpPoly {
        &self.entries[i][j]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Apply the monomial transformation into the main ring.
    pub fn transform(&self, g: &Gcm) -> Result<Vec<Vec<LaurentPoly>>> {
        let mass_image: Vec<GammaMonomial> = self
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(&(s, t), &label)| {
                let d_pair = g.d_pair(s, t);
                Ok(GammaMonomial::qt(d_pair, -1).mul(&g.mu(t, s, label)?))
            })
            .collect::<Result<_>>()?;
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.to_gamma(&mass_image)).collect())
            .collect())
    }
}

/// The default quiver of type `C`: `g_ij` parallel edges per adjacent pair,
/// all oriented with the diagram orientation, listed in orientation order.
pub fn default_quiver(g: &Gcm) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for &(i, j) in g.orientation() {
        for _ in 0..g.g(i, j) {
            edges.push((i, j));
        }
    }
    edges
}

/// Build the KP matrix of the given quiver, after checking that the quiver
/// is of type `C` (edge counts reproduce the Cartan entries).
pub fn kp_matrix(g: &Gcm, edges: &[(usize, usize)]) -> Result<KpMatrix> {
    let n = g.size();
    let mut pair_count = vec![vec![0i64; n]; n];
    for &(s, t) in edges {
        if s >= n || t >= n {
            return Err(Error::BadQuiver(format!(
                "edge ({}, {}) out of range for {} vertices",
                s + 1,
                t + 1,
                n
            )));
        }
        if s == t {
            return Err(Error::BadQuiver(format!("loop at vertex {}", s + 1)));
        }
        pair_count[s][t] += 1;
        pair_count[t][s] += 1;
    }
    // Edge counts must reproduce the Cartan matrix entrywise.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let count = pair_count[i][j];
            let expected = if g.is_adjacent(i, j) { g.g(i, j) } else { 0 };
            if count != expected {
                return Err(Error::BadQuiver(format!(
                    "{count} edges between vertices {} and {}, need {expected} \
                     to reproduce the Cartan entry",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    // Label each edge within its parallel class, in list order.
    let mut seen = vec![vec![0usize; n]; n];
    let labels: Vec<usize> = edges
        .iter()
        .map(|&(s, t)| {
            let (a, b) = (s.min(t), s.max(t));
            seen[a][b] += 1;
            seen[a][b]
        })
        .collect();

    let mut entries = vec![vec![KpPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut p = KpPoly::zero();
            if i == j {
                p = KpPoly::one().add(&KpPoly::monomial(KpMonomial {
                    q1_exp: -g.d(i),
                    q2_exp: -1,
                    mass_exp: BTreeMap::new(),
                }));
            }
            if g.is_adjacent(i, j) {
                let d_pair = g.d_pair(i, j);
                // (1 - q1^-d_j)/(1 - q1^-d_ij) as a polynomial in q1^-d_ij.
                let mut ratio = KpPoly::zero();
                for s in 0..g.f(i, j) {
                    ratio = ratio.add(&KpPoly::monomial(KpMonomial::q1(-s * d_pair)));
                }
                let mut edge_sum = KpPoly::zero();
                for (e, &(s, t)) in edges.iter().enumerate() {
                    if (s, t) == (i, j) {
                        edge_sum = edge_sum.add(&KpPoly::monomial(KpMonomial::mass(e, -1)));
                    } else if (s, t) == (j, i) {
                        edge_sum = edge_sum.add(&KpPoly::monomial(KpMonomial {
                            q1_exp: -d_pair,
                            q2_exp: -1,
                            mass_exp: KpMonomial::mass(e, 1).mass_exp,
                        }));
                    }
                }
                p = p.sub(&ratio.mul(&edge_sum));
            }
            entries[i][j] = p;
        }
    }
    Ok(KpMatrix { entries, edges: edges.to_vec(), labels })
}

/// Comparison of the transformed KP matrix against `C(q,t,u) q^{-D} t`.
#[derive(Clone, Debug)]
pub struct KpReport {
    pub condf: bool,
    pub transformed: Vec<Vec<LaurentPoly>>,
    pub reference: Vec<Vec<LaurentPoly>>,
    pub equal: bool,
}

/// Transform the default quiver's KP matrix and compare entrywise with
/// `C(q,t,u) q^{-D} t`. Equality holds exactly when every adjacent pair has
/// `f_ij = 1` or `f_ji = 1`.
pub fn kp_compare(g: &Gcm) -> Result<KpReport> {
    let kp = kp_matrix(g, &default_quiver(g))?;
    let transformed = kp.transform(g)?;
    let c = deformed_cartan(g)?;
    let n = g.size();
    let reference: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c.entry(i, j).mul_monomial(&GammaMonomial::qt(-g.d(j), 1)))
                .collect()
        })
        .collect();
    let equal = transformed == reference;
    Ok(KpReport { condf: g.condf(), transformed, reference, equal })
}
