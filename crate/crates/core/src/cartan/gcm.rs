use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::gamma::{GammaMonomial, LaurentPoly, MuKey};
use crate::{Error, Result};

/// Finite or infinite, decided exactly by positive-definiteness of the
/// symmetrized matrix `DC` (all leading principal minors positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeClass {
    Finite,
    Infinite,
}

impl TypeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeClass::Finite => "finite",
            TypeClass::Infinite => "infinite",
        }
    }
}

/// A validated symmetrizable generalized Cartan matrix together with all the
/// derived data the deformation needs.
///
/// Held immutable after construction:
///
/// * the integer matrix `c` (diagonal 2, off-diagonal `<= 0`, zeros paired),
///   irreducible;
/// * a symmetrizer `d` with `d_i c_ij = d_j c_ji` - the minimal one (entries
///   positive, gcd 1) when none is supplied;
/// * `r = lcm(d_i)`;
/// * per adjacent pair: `g_ij = gcd(|c_ij|, |c_ji|)`, `f_ij = |c_ij| / g_ij`
///   and `d_ij = gcd(d_i, d_j)`, which always satisfy `f_ij = d_j / d_ij`;
/// * an acyclic orientation of the diagram fixing the normal form of the
///   deformation parameters (`u[i,j,g]` with `(i,j)` oriented; the reverse
///   parameter is its inverse);
/// * the type class, and whether every adjacent pair has `f_ij = 1` or
///   `f_ji = 1` (the condition under which the fractional-quiver comparison
///   is an equality and `t -> 1` regrading is sound).
#[derive(Clone, Debug)]
pub struct Gcm {
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    r: i64,
    orientation: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    type_class: TypeClass,
    condf: bool,
}

impl Gcm {
    /// Validate a Cartan matrix with the default orientation (each adjacent
    /// pair `i ~ j` with `i < j` oriented `(i, j)`).
    pub fn new(c: Vec<Vec<i64>>, d: Option<Vec<i64>>) -> Result<Gcm> {
        Self::with_orientation(c, d, None)
    }

    /// Validate a Cartan matrix, optional symmetrizer, and optional
    /// orientation (0-based pairs).
    pub fn with_orientation(
        c: Vec<Vec<i64>>,
        d: Option<Vec<i64>>,
        orientation: Option<Vec<(usize, usize)>>,
    ) -> Result<Gcm> {
        let n = c.len();
        if n == 0 {
            return Err(Error::InvalidGcm("empty matrix".into()));
        }
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGcm(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidGcm(format!("diagonal entry ({0},{0}) must be 2", i + 1)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if c[i][j] > 0 {
                        return Err(Error::InvalidGcm(format!(
                            "off-diagonal entry ({},{}) must be <= 0",
                            i + 1,
                            j + 1
                        )));
                    }
                    if (c[i][j] == 0) != (c[j][i] == 0) {
                        return Err(Error::InvalidGcm(format!(
                            "entries ({},{}) and ({},{}) must vanish together",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
        }

        let adjacency: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).filter(|&j| j != i && c[i][j] != 0).collect()).collect();

        // Irreducibility: the diagram must be connected.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidGcm("matrix is reducible (diagram not connected)".into()));
        }

        let d = match d {
            Some(d) => {
                if d.len() != n {
                    return Err(Error::InvalidGcm(format!(
                        "symmetrizer has {} entries, expected {n}",
                        d.len()
                    )));
                }
                if d.iter().any(|&x| x <= 0) {
                    return Err(Error::InvalidGcm("symmetrizer entries must be positive".into()));
                }
                d
            }
            None => minimal_symmetrizer(&c, &adjacency)?,
        };
        for i in 0..n {
            for j in 0..n {
                if d[i] * c[i][j] != d[j] * c[j][i] {
                    return Err(Error::InvalidGcm(format!(
                        "symmetrizer fails d_{} c_{}{} = d_{} c_{}{}",
                        i + 1,
                        i + 1,
                        j + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }

        let r = d.iter().fold(1i64, |acc, &x| acc.lcm(&x));

        let orientation = match orientation {
            Some(om) => validate_orientation(n, &adjacency, om)?,
            None => {
                let mut om = Vec::new();
                for i in 0..n {
                    for &j in &adjacency[i] {
                        if i < j {
                            om.push((i, j));
                        }
                    }
                }
                om
            }
        };

        let type_class = classify(&c, &d);

        let mut condf = true;
        let mut gcm = Gcm { c, d, r, orientation, adjacency, type_class, condf };
        for (i, j) in gcm.adjacent_pairs() {
            // f_ij = d_j / gcd(d_i, d_j) holds for every valid symmetrizer;
            // a failure here is a bug, not bad input.
            let (fij, fji) = (gcm.f(i, j), gcm.f(j, i));
            if fij != gcm.d[j] / gcm.d_pair(i, j) || fji != gcm.d[i] / gcm.d_pair(i, j) {
                return Err(Error::Internal(format!(
                    "f/d mismatch on edge ({},{})",
                    i + 1,
                    j + 1
                )));
            }
            if fij != 1 && fji != 1 {
                condf = false;
            }
        }
        gcm.condf = condf;
        Ok(gcm)
    }

    pub fn size(&self) -> usize {
        self.c.len()
    }

    /// Cartan integer `c_ij`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn cartan_rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// Symmetrizer entry `d_i`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// `r = lcm(d_1, ..., d_n)`.
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn type_class(&self) -> TypeClass {
        self.type_class
    }

    pub fn is_finite(&self) -> bool {
        self.type_class == TypeClass::Finite
    }

    /// True when every adjacent pair satisfies `f_ij = 1` or `f_ji = 1`.
    pub fn condf(&self) -> bool {
        self.condf
    }

    /// The fixed acyclic orientation (normal form of the parameters).
    pub fn orientation(&self) -> &[(usize, usize)] {
        &self.orientation
    }

    pub fn oriented(&self, i: usize, j: usize) -> bool {
        self.orientation.contains(&(i, j))
    }

    /// Neighbours of `i` in the diagram, ascending.
    pub fn adjacent(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.c[i][j] != 0
    }

    /// All unordered adjacent pairs as `(i, j)` with `i < j`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for &j in &self.adjacency[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `g_ij = gcd(|c_ij|, |c_ji|)`. Panics unless `i ~ j`.
    pub fn g(&self, i: usize, j: usize) -> i64 {
        assert!(self.is_adjacent(i, j), "g_ij needs i ~ j");
        self.c[i][j].abs().gcd(&self.c[j][i].abs())
    }

    /// `f_ij = |c_ij| / g_ij`. Panics unless `i ~ j`.
    pub fn f(&self, i: usize, j: usize) -> i64 {
        self.c[i][j].abs() / self.g(i, j)
    }

    /// `d_ij = gcd(d_i, d_j)`. Panics unless `i ~ j`.
    pub fn d_pair(&self, i: usize, j: usize) -> i64 {
        assert!(self.is_adjacent(i, j), "d_ij needs i ~ j");
        self.d[i].gcd(&self.d[j])
    }

    /// The parameter `u[i,j,g]` as a monomial in normal form: stored on the
    /// oriented copy of the edge, as an inverse when `(j,i)` is the oriented
    /// pair.
    pub fn mu(&self, i: usize, j: usize, g: usize) -> Result<GammaMonomial> {
        if !self.is_adjacent(i, j) {
            return Err(Error::InvalidArg(format!(
                "mu({},{},{g}): vertices not adjacent",
                i + 1,
                j + 1
            )));
        }
        let gmax = self.g(i, j) as usize;
        if g < 1 || g > gmax {
            return Err(Error::InvalidArg(format!(
                "mu({},{},{g}): sheet index out of range 1..={gmax}",
                i + 1,
                j + 1
            )));
        }
        if self.oriented(i, j) {
            Ok(GammaMonomial::mu(MuKey { i, j, g }, 1))
        } else {
            Ok(GammaMonomial::mu(MuKey { i: j, j: i, g }, -1))
        }
    }

    /// `u[i,j,1] + ... + u[i,j,g_ij]`.
    pub fn mu_sum(&self, i: usize, j: usize) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for g in 1..=(self.g(i, j) as usize) {
            out += &LaurentPoly::monomial(self.mu(i, j, g)?);
        }
        Ok(out)
    }

    /// The unique orientation-compatible ordering produced by Kahn's
    /// algorithm with smallest-index tie-breaking: every oriented edge goes
    /// from an earlier to a later vertex.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.size();
        let mut indeg = vec![0usize; n];
        for &(_, j) in &self.orientation {
            indeg[j] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for _ in 0..n {
            let next = (0..n)
                .find(|&i| !used[i] && indeg[i] == 0)
                .expect("orientation validated acyclic");
            used[next] = true;
            order.push(next);
            for &(a, b) in &self.orientation {
                if a == next {
                    indeg[b] -= 1;
                }
            }
        }
        order
    }

    /// The transposed GCM with its own minimal symmetrizer (used for dual
    /// Coxeter data).
    pub fn transpose(&self) -> Result<Gcm> {
        let n = self.size();
        let ct = (0..n).map(|i| (0..n).map(|j| self.c[j][i]).collect()).collect();
        Gcm::new(ct, None)
    }
}

/// Minimal symmetrizer: propagate the ratios `d_j / d_i = c_ij / c_ji` over a
/// spanning tree as exact fractions, clear denominators, divide by the gcd.
/// Consistency on non-tree edges is re-checked by the caller.
fn minimal_symmetrizer(c: &[Vec<i64>], adjacency: &[Vec<usize>]) -> Result<Vec<i64>> {
    let n = c.len();
    // d_i = num_i / den_i with d_0 = 1.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for &j in &adjacency[i] {
            if den[j] != 0 {
                continue;
            }
            // d_i c_ij = d_j c_ji  =>  d_j = d_i * c_ij / c_ji.
            let mut nj = num[i] * c[i][j];
            let mut dj = den[i] * c[j][i];
            if dj < 0 {
                nj = -nj;
                dj = -dj;
            }
            let g = nj.gcd(&dj);
            num[j] = nj / g;
            den[j] = dj / g;
            stack.push(j);
        }
    }
    let l = den.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = d.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 0 || d.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidGcm("matrix is not symmetrizable".into()));
    }
    for x in &mut d {
        *x /= g;
    }
    Ok(d)
}

fn validate_orientation(
    n: usize,
    adjacency: &[Vec<usize>],
    om: Vec<(usize, usize)>,
) -> Result<Vec<(usize, usize)>> {
    let mut seen = std::collections::BTreeSet::new();
    for &(i, j) in &om {
        if i >= n || j >= n {
            return Err(Error::InvalidGcm(format!(
                "orientation pair ({},{}) out of range",
                i + 1,
                j + 1
            )));
        }
        if !adjacency[i].contains(&j) {
            return Err(Error::InvalidGcm(format!(
                "orientation pair ({},{}) is not an edge",
                i + 1,
                j + 1
            )));
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::InvalidGcm(format!(
                "edge {{{},{}}} oriented more than once",
                i + 1,
                j + 1
            )));
        }
    }
    let edge_count = adjacency.iter().map(|a| a.len()).sum::<usize>() / 2;
    if om.len() != edge_count {
        return Err(Error::InvalidGcm(format!(
            "orientation covers {} of {edge_count} edges",
            om.len()
        )));
    }
    // Acyclicity via Kahn.
    let mut indeg = vec![0usize; n];
    for &(_, j) in &om {
        indeg[j] += 1;
    }
    let mut used = vec![false; n];
    for _ in 0..n {
        match (0..n).find(|&i| !used[i] && indeg[i] == 0) {
            Some(next) => {
                used[next] = true;
                for &(a, b) in &om {
                    if a == next {
                        indeg[b] -= 1;
                    }
                }
            }
            None => return Err(Error::InvalidGcm("orientation contains a directed cycle".into())),
        }
    }
    Ok(om)
}

/// Finite type iff the symmetrized matrix `DC` is positive definite, tested
/// exactly: every leading principal minor is a positive integer.
fn classify(c: &[Vec<i64>], d: &[i64]) -> TypeClass {
    let n = c.len();
    for k in 1..=n {
        let minor: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(d[i] * c[i][j])).collect())
            .collect();
        if det(minor) <= BigInt::zero() {
            return TypeClass::Infinite;
        }
    }
    TypeClass::Finite
}

/// Exact determinant by cofactor expansion along the first row (matrices
/// here are tiny).
fn det(m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = (1..n)
            .map(|i| (0..n).filter(|&jj| jj != j).map(|jj| m[i][jj].clone()).collect())
            .collect();
        let term = &m[0][j] * det(sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
