use crate::cartan::{deformed_cartan, Gcm};
use crate::gamma::{GammaMonomial, LaurentPoly, TruncatedSeries};
use crate::weyl::PrefixChecker;
use crate::{Error, Result};

use super::ops::{BraidAction, PolyMatrix, RootVec};

/// Which algorithm produced an inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Coxeter,
    Bipartite,
    /// Word summation; `verified` is false when the word's admissibility
    /// could not be checked (finite type accepts any word on faith).
    Word { verified: bool },
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Coxeter => "coxeter",
            Method::Bipartite => "bipartite",
            Method::Word { verified: true } => "word",
            Method::Word { verified: false } => "word (admissibility unverified)",
        }
    }
}

/// The inverse `Ctilde(q,t,u)` up to a truncation, tagged with the method
/// that produced it. Every entry is a series with `t`-valuation at least 1.
#[derive(Clone, Debug)]
pub struct InverseResult {
    entries: Vec<Vec<TruncatedSeries>>,
    method: Method,
    trunc: i64,
}

impl InverseResult {
    fn new(entries: Vec<Vec<TruncatedSeries>>, method: Method, trunc: i64) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.poly().t_valuation().is_some_and(|v| v < 1) {
                    return Err(Error::Internal(format!(
                        "{} inverse entry ({}, {}) has t-valuation below 1",
                        method.as_str(),
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(InverseResult { entries, method, trunc })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i][j]
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Entrywise agreement with another result on the overlap of the two
    /// truncations.
    pub fn agrees_with(&self, other: &InverseResult) -> bool {
        self.size() == other.size()
            && (0..self.size()).all(|i| {
                (0..self.size()).all(|j| self.entries[i][j].agrees_with(&other.entries[i][j]))
            })
    }

    /// True when every coefficient of every entry is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.poly().is_nonnegative())
    }
}

fn require_trunc(trunc: i64) -> Result<()> {
    if trunc < 1 {
        return Err(Error::TruncationTooSmall(format!(
            "truncation must be at least 1, got {trunc}"
        )));
    }
    Ok(())
}

/// Invert by the geometric series: writing `C(q,t,u) = (id - tX) t^{-1} q^D`
/// gives `Ctilde = q^{-D} t sum_k (tX)^k`, and `tX = id - C q^{-D} t` has
/// entrywise `t`-valuation >= 1, so the sum truncates exactly.
pub fn invert_series(g: &Gcm, trunc: i64) -> Result<InverseResult> {
    require_trunc(trunc)?;
    let c = deformed_cartan(g)?;
    let n = g.size();

    // y = tX = id - C q^{-D} t.
    let mut y_rows = vec![vec![LaurentPoly::zero(); n]; n];
    for (i, row) in y_rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let shifted = c.entry(i, j).mul_monomial(&GammaMonomial::qt(-g.d(j), 1));
            *e = if i == j { &LaurentPoly::one() - &shifted } else { -&shifted };
        }
    }
    let y = PolyMatrix::from_rows(y_rows);
    debug_assert!(y.t_valuation().is_none_or(|v| v >= 1));

    let cap = trunc - 1;
    let mut sum = PolyMatrix::identity(n);
    let mut power = PolyMatrix::identity(n);
    for k in 1.. {
        power = power.mul_trunc(&y, cap);
        if power.is_zero() {
            break;
        }
        if power.t_valuation().is_some_and(|v| v < k) {
            return Err(Error::Internal("series power lost its valuation bound".into()));
        }
        sum = sum.add(&power);
    }

    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let poly = sum.entry(i, j).mul_monomial(&GammaMonomial::qt(-g.d(i), 1));
                    TruncatedSeries::new(poly, trunc)
                })
                .collect()
        })
        .collect();
    InverseResult::new(entries, Method::Series, trunc)
}

/// The elements `beta_i = q^{-d_i} t T_{i_1} ... T_{i_{k-1}} alpha_{i_k}`
/// (`i = i_k`) along the diagram's own orientation order.
pub fn beta_elements(g: &Gcm) -> Result<Vec<RootVec>> {
    beta_elements_ordered(g, &g.topological_order())
}

/// As [`beta_elements`], along a caller-supplied ordering compatible with
/// the diagram orientation. The result is independent of that choice.
pub fn beta_elements_ordered(g: &Gcm, order: &[usize]) -> Result<Vec<RootVec>> {
    check_compatible_order(g, order)?;
    let action = BraidAction::new(g)?;
    let n = g.size();
    let mut betas = vec![RootVec::zero(n); n];
    for (k, &i) in order.iter().enumerate() {
        let mut v = RootVec::simple(n, i);
        for &l in order[..k].iter().rev() {
            v = action.apply_t(l, &v);
        }
        betas[i] = v.scale(&GammaMonomial::qt(-g.d(i), 1));
    }
    Ok(betas)
}

fn check_compatible_order(g: &Gcm, order: &[usize]) -> Result<()> {
    let n = g.size();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::InvalidArg("ordering must list every vertex once".into()));
    }
    for (k, &i) in order.iter().enumerate() {
        if i >= n || pos[i] != usize::MAX {
            return Err(Error::InvalidArg("ordering must list every vertex once".into()));
        }
        pos[i] = k;
    }
    for &(i, j) in g.orientation() {
        if pos[i] > pos[j] {
            return Err(Error::InvalidArg(format!(
                "ordering puts {} after {}, against the orientation",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(())
}

/// Invert through the Coxeter-element mesh recursion: starting from the
/// `beta` family, each level `T^{k+1} beta_i` is solved from
///
/// ```text
/// q^{d_i} t^{-1} T^{k+1} beta_i + q^{-d_i} t T^k beta_i
///     + sum_{j ~ i} C_ji T^{k + [(j,i) in Omega]} beta_j = 0
/// ```
///
/// along the orientation order, and entry `(i,j)` accumulates the
/// `alpha_i`-coefficients of `T^k beta_j`. Levels gain at least one power
/// of `t` each, which bounds the iteration; that growth is asserted.
pub fn invert_coxeter(g: &Gcm, trunc: i64) -> Result<InverseResult> {
    require_trunc(trunc)?;
    let action = BraidAction::new(g)?;
    let n = g.size();
    let order = g.topological_order();
    let mut current: Vec<RootVec> = beta_elements(g)?
        .into_iter()
        .map(|v| v.truncate_t(trunc))
        .collect();

    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    let mut k = 0i64;
    while !current.iter().all(RootVec::is_zero) {
        if current.iter().any(|v| v.t_valuation().is_some_and(|val| val < k + 1)) {
            return Err(Error::Internal(
                "mesh recursion violated the valuation growth bound".into(),
            ));
        }
        for j in 0..n {
            for i in 0..n {
                entries[i][j] = &entries[i][j] + current[j].coeff(i);
            }
        }
        let mut next: Vec<Option<RootVec>> = vec![None; n];
        for &i in &order {
            let shift = GammaMonomial::qt(-g.d(i), 1);
            let mut inner = current[i].scale(&shift);
            for &j in g.adjacent(i) {
                let source = if g.oriented(j, i) {
                    next[j].as_ref().expect("orientation order supplies earlier vertices")
                } else {
                    &current[j]
                };
                inner = inner.add(&source.scale_poly(action.cartan().entry(j, i)));
            }
            next[i] = Some(inner.scale(&shift).neg().truncate_t(trunc));
        }
        current = next.into_iter().map(|v| v.expect("all vertices computed")).collect();
        k += 1;
    }

    let entries = entries
        .into_iter()
        .map(|row| row.into_iter().map(|p| TruncatedSeries::new(p, trunc)).collect())
        .collect();
    InverseResult::new(entries, Method::Coxeter, trunc)
}

/// Check that `xi` is a height function: one value per vertex, differing by
/// exactly 1 across every edge. Existence forces the diagram to be
/// bipartite.
pub fn validate_height(g: &Gcm, xi: &[i64]) -> Result<()> {
    if xi.len() != g.size() {
        return Err(Error::BadHeight(format!(
            "height function has {} values for {} vertices",
            xi.len(),
            g.size()
        )));
    }
    for &(i, j) in &g.adjacent_pairs() {
        if (xi[i] - xi[j]).abs() != 1 {
            return Err(Error::BadHeight(format!(
                "not a height function: vertices {} and {} are adjacent but \
                 their heights differ by {}",
                i + 1,
                j + 1,
                (xi[i] - xi[j]).abs()
            )));
        }
    }
    Ok(())
}

/// Invert through the bipartite mesh recursion. The `t`-free elements
/// `Phi(i, u)` live on the lattice `u = xi(i) + 2k`; seeds at `u = xi(i)`
/// are `q^{-d_i}` times a product of bar operators along the height
/// orientation, and
///
/// ```text
/// Phi(i, u+1) = -q^{-d_i} [ q^{-d_i} Phi(i, u-1)
///                           + sum_{j ~ i} C_ji(q,1,u) Phi(j, u) ]
/// ```
///
/// climbs the lattice. Entry `(i,j)` collects the `alpha_i`-coefficient of
/// `Phi(j, u)` at `t^{u - xi(i) + 1}`.
pub fn invert_bipartite(g: &Gcm, xi: &[i64], trunc: i64) -> Result<InverseResult> {
    require_trunc(trunc)?;
    validate_height(g, xi)?;
    let action = BraidAction::new(g)?;
    let c_bar = action.cartan_bar();
    let n = g.size();

    // Ordering compatible with the height orientation (edges go uphill).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (xi[i], i));

    let xi_min = *xi.iter().min().expect("nonempty");
    let xi_max = *xi.iter().max().expect("nonempty");
    let u_max = trunc - 1 + xi_max;

    // phi[i] holds Phi(i, xi(i)), Phi(i, xi(i) + 2), ... in order.
    let mut phi: Vec<Vec<RootVec>> = vec![Vec::new(); n];
    for (k, &i) in order.iter().enumerate() {
        let mut v = RootVec::simple(n, i);
        for &l in order[..k].iter().rev() {
            v = action.apply_t_bar(l, &v);
        }
        phi[i].push(v.scale(&GammaMonomial::q(-g.d(i))));
    }

    let at = |phi: &Vec<Vec<RootVec>>, j: usize, u: i64| -> Option<RootVec> {
        if u < xi[j] || (u - xi[j]) % 2 != 0 {
            return None;
        }
        phi[j].get(((u - xi[j]) / 2) as usize).cloned()
    };

    for u in (xi_min + 2)..=u_max {
        for i in 0..n {
            if u < xi[i] + 2 || (u - xi[i]) % 2 != 0 {
                continue;
            }
            let mut inner = at(&phi, i, u - 2)
                .expect("previous lattice point computed")
                .scale(&GammaMonomial::q(-g.d(i)));
            for &j in g.adjacent(i) {
                if let Some(v) = at(&phi, j, u - 1) {
                    inner = inner.add(&v.scale_poly(c_bar.entry(j, i)));
                }
            }
            let next = inner.scale(&GammaMonomial::q(-g.d(i))).neg();
            debug_assert_eq!(((u - xi[i]) / 2) as usize, phi[i].len());
            phi[i].push(next);
        }
    }

    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    for j in 0..n {
        for (k, v) in phi[j].iter().enumerate() {
            let u = xi[j] + 2 * k as i64;
            for i in 0..n {
                let coeff = v.coeff(i);
                if coeff.is_zero() {
                    continue;
                }
                let t_exp = u - xi[i] + 1;
                if t_exp < 1 {
                    return Err(Error::Internal(format!(
                        "bipartite recursion reached alpha_{} at height {} below \
                         its own height",
                        i + 1,
                        u
                    )));
                }
                if t_exp <= trunc {
                    entries[i][j] =
                        &entries[i][j] + &coeff.mul_monomial(&GammaMonomial::t(t_exp));
                }
            }
        }
    }

    let entries = entries
        .into_iter()
        .map(|row| row.into_iter().map(|p| TruncatedSeries::new(p, trunc)).collect())
        .collect();
    InverseResult::new(entries, Method::Bipartite, trunc)
}

/// Eventually periodic index sequence: a finite prefix followed by a block
/// repeated forever. Letters are 0-based vertex indices.
#[derive(Clone, Debug)]
pub struct WordSpec {
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
}

impl WordSpec {
    /// The infinite sequence obtained by repeating `period` after `prefix`.
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> WordSpec {
        WordSpec { prefix, period }
    }

    /// The Coxeter sequence of the diagram: empty prefix, orientation order
    /// repeated.
    pub fn coxeter(g: &Gcm) -> WordSpec {
        WordSpec::new(Vec::new(), g.topological_order())
    }
}

/// Invert by summing the word formula
/// `Ctilde_ij = q^{-d_j} t sum_{k : i_k = j} [alpha_i](T_{i_1} ... T_{i_{k-1}} alpha_j)`
/// over an eventually periodic sequence.
///
/// For infinite type every consumed prefix must be reduced (checked
/// incrementally; a failure names the offending prefix). For finite type
/// the admissibility condition has no decision procedure, so the result is
/// flagged unverified. Either way each vertex must occur in the period.
///
/// The running prefix matrix gains `t`-valuation as letters are consumed —
/// at least one power per full period — so the sum below any fixed power
/// is finite and the iteration stops once every column clears `t^{N-1}`.
pub fn invert_word(g: &Gcm, spec: &WordSpec, trunc: i64) -> Result<InverseResult> {
    require_trunc(trunc)?;
    let n = g.size();
    if spec.period.is_empty() {
        return Err(Error::WordRejected("the periodic part must be nonempty".into()));
    }
    for &l in spec.prefix.iter().chain(&spec.period) {
        if l >= n {
            return Err(Error::WordRejected(format!(
                "letter {} out of range for {} vertices",
                l + 1,
                n
            )));
        }
    }
    for i in 0..n {
        if !spec.period.contains(&i) {
            return Err(Error::WordRejected(format!(
                "vertex {} never occurs in the periodic part",
                i + 1
            )));
        }
    }

    let verify = !g.is_finite();
    let mut checker = PrefixChecker::new(g);
    let mut consumed: Vec<usize> = Vec::new();

    let action = BraidAction::new(g)?;
    let t_matrices: Vec<PolyMatrix> = (0..n).map(|i| action.t_matrix(i)).collect();
    let cap = trunc - 1;
    let limit = spec
        .prefix
        .len()
        .saturating_add(spec.period.len().saturating_mul((trunc as usize).saturating_add(2)));

    let mut prefix_matrix = PolyMatrix::identity(n);
    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    let mut stream = spec.prefix.iter().chain(spec.period.iter().cycle());
    let mut steps = 0usize;
    while !prefix_matrix.is_zero() {
        if steps > limit {
            return Err(Error::Internal(
                "word summation failed to gain valuation within the expected bound".into(),
            ));
        }
        steps += 1;
        let &j = stream.next().expect("infinite stream");
        if verify {
            consumed.push(j);
            if !checker.push(j) {
                return Err(Error::WordRejected(format!(
                    "prefix ({}) is not a reduced word",
                    consumed.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(", ")
                )));
            }
        }
        for i in 0..n {
            entries[i][j] = &entries[i][j] + prefix_matrix.entry(i, j);
        }
        prefix_matrix = prefix_matrix.mul_trunc(&t_matrices[j], cap);
    }

    let entries = entries
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .map(|(j, p)| {
                    let poly = p.mul_monomial(&GammaMonomial::qt(-g.d(j), 1));
                    TruncatedSeries::new(poly, trunc)
                })
                .collect()
        })
        .collect();
    InverseResult::new(entries, Method::Word { verified: verify }, trunc)
}
