//! Integer root-lattice combinatorics of the Weyl group.
//!
//! Everything here is undeformed: vectors in the root lattice `Q` with
//! integer coordinates in the simple-root basis, acted on by the simple
//! reflections `s_i(alpha_j) = alpha_j - c_ij alpha_i`. The module supplies
//! the word-level tests and finite-type constants the deformed operators
//! are checked against: prefixwise reduced-word verification, the positive
//! root system, the longest element `w0` with its star involution
//! `w0(alpha_i) = -alpha_{i*}`, and the Coxeter / dual Coxeter numbers.

use std::sync::OnceLock;

use crate::cartan::Gcm;
use crate::{Error, Result};

/// Vector in the root lattice, coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntRoot {
    coeffs: Vec<i64>,
}

impl IntRoot {
    pub fn zero(n: usize) -> IntRoot {
        IntRoot { coeffs: vec![0; n] }
    }

    /// The simple root `alpha_i`.
    pub fn simple(n: usize, i: usize) -> IntRoot {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        IntRoot { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.coeffs.iter().all(|&c| c <= 0)
    }

    /// Squared length with respect to the symmetrized form `D C` (twice the
    /// usual normalization; only ratios matter here).
    pub fn norm(&self, g: &Gcm) -> i64 {
        let n = g.size();
        let mut out = 0;
        for i in 0..n {
            for j in 0..n {
                out += g.d(i) * g.c(i, j) * self.coeffs[i] * self.coeffs[j];
            }
        }
        out
    }
}

/// Simple reflection: `s_i(v) = v - (sum_j c_ij v_j) alpha_i`.
pub fn reflect(g: &Gcm, i: usize, v: &IntRoot) -> IntRoot {
    let mut out = v.clone();
    let pairing: i64 = (0..g.size()).map(|j| g.c(i, j) * v.coeffs[j]).sum();
    out.coeffs[i] -= pairing;
    out
}

/// Word in the generators `s_i`, 0-based letters. The reduced flag is
/// computed on demand and cached; a word is meant to live with a single
/// diagram.
#[derive(Debug)]
pub struct WeylWord {
    letters: Vec<usize>,
    reduced: OnceLock<bool>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> WeylWord {
        WeylWord { letters, reduced: OnceLock::new() }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl Clone for WeylWord {
    fn clone(&self) -> WeylWord {
        let reduced = OnceLock::new();
        if let Some(&b) = self.reduced.get() {
            let _ = reduced.set(b);
        }
        WeylWord { letters: self.letters.clone(), reduced }
    }
}

/// Incremental reduced-word checker.
///
/// Tracks the matrix of `w = s_{i_1} ... s_{i_m}` column by column
/// (`cols[j] = w(alpha_j)`) and accepts one letter at a time; pushing `i`
/// extends the word by `s_i` on the right and reports whether the length
/// grew, i.e. whether `w(alpha_i)` was a positive root.
pub struct PrefixChecker<'a> {
    g: &'a Gcm,
    cols: Vec<IntRoot>,
}

impl<'a> PrefixChecker<'a> {
    pub fn new(g: &'a Gcm) -> PrefixChecker<'a> {
        let n = g.size();
        PrefixChecker { g, cols: (0..n).map(|j| IntRoot::simple(n, j)).collect() }
    }

    /// Extend by `s_i`; true iff the extended word is still reduced
    /// (assuming the current one was).
    pub fn push(&mut self, i: usize) -> bool {
        let grew = self.cols[i].is_nonnegative();
        let col_i = self.cols[i].clone();
        for j in 0..self.g.size() {
            let c = self.g.c(i, j);
            if c != 0 {
                for k in 0..self.g.size() {
                    self.cols[j].coeffs[k] -= c * col_i.coeffs[k];
                }
            }
        }
        grew
    }

    /// `w(alpha_j)` for the word consumed so far.
    pub fn column(&self, j: usize) -> &IntRoot {
        &self.cols[j]
    }
}

/// True iff every prefix `s_{i_1} ... s_{i_{k-1}}` sends `alpha_{i_k}` to a
/// nonnegative vector — the standard criterion for the word being reduced.
pub fn is_reduced_prefixwise(g: &Gcm, w: &WeylWord) -> bool {
    *w.reduced.get_or_init(|| {
        let mut checker = PrefixChecker::new(g);
        w.letters.iter().all(|&i| checker.push(i))
    })
}

/// All positive roots of a finite-type diagram: the closure of the simple
/// roots under the reflections, positive part, in lexicographic order.
pub fn positive_roots(g: &Gcm) -> Result<Vec<IntRoot>> {
    require_finite(g, "positive_roots")?;
    let n = g.size();
    let mut found: std::collections::BTreeSet<IntRoot> =
        (0..n).map(|i| IntRoot::simple(n, i)).collect();
    let mut work: Vec<IntRoot> = found.iter().cloned().collect();
    while let Some(v) = work.pop() {
        for i in 0..n {
            let r = reflect(g, i, &v);
            if r.is_nonnegative() && !found.contains(&r) {
                found.insert(r.clone());
                work.push(r);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// The longest element and the star involution it induces.
#[derive(Clone, Debug)]
pub struct LongestElement {
    pub word: WeylWord,
    pub star: Vec<usize>,
}

/// Greedy reduced word for `w0` (repeatedly append the smallest `i` with
/// `w(alpha_i)` still positive), plus the permutation `i*` defined by
/// `w0(alpha_i) = -alpha_{i*}`.
pub fn longest_and_star(g: &Gcm) -> Result<LongestElement> {
    require_finite(g, "longest_and_star")?;
    let n = g.size();
    let length = positive_roots(g)?.len();
    let mut checker = PrefixChecker::new(g);
    let mut letters = Vec::with_capacity(length);
    'outer: while letters.len() <= length {
        for i in 0..n {
            if checker.column(i).is_nonnegative() {
                checker.push(i);
                letters.push(i);
                continue 'outer;
            }
        }
        // Every w(alpha_i) is negative: w = w0.
        let star: Vec<usize> = (0..n)
            .map(|i| {
                let col = checker.column(i);
                let mut targets =
                    (0..n).filter(|&k| col.coeffs[k] != 0).collect::<Vec<_>>();
                match (targets.len(), targets.pop()) {
                    (1, Some(k)) if col.coeffs[k] == -1 => Ok(k),
                    _ => Err(Error::Internal(format!(
                        "w0(alpha_{}) is not a negative simple root",
                        i + 1
                    ))),
                }
            })
            .collect::<Result<_>>()?;
        if letters.len() != length {
            return Err(Error::Internal(format!(
                "greedy w0 word has length {} but there are {} positive roots",
                letters.len(),
                length
            )));
        }
        for i in 0..n {
            if star[star[i]] != i || g.d(i) != g.d(star[i]) {
                return Err(Error::Internal("star is not a d-preserving involution".into()));
            }
        }
        return Ok(LongestElement { word: WeylWord::new(letters), star });
    }
    Err(Error::Internal("longest-element search exceeded the root count".into()))
}

/// Coxeter number and dual Coxeter number of a finite-type diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoxeterData {
    pub h: i64,
    pub h_dual: i64,
}

/// `h` is the multiplicative order of the Coxeter element `tau` (product of
/// all simple reflections in a diagram-orientation-compatible order; the
/// order is independent of that choice). `h_dual` is `1 +` the height of
/// the highest short root of the transposed diagram — equivalently the
/// comark sum `1 + sum_i a_i d_i / d_theta` over the highest root
/// `theta = sum_i a_i alpha_i`.
pub fn coxeter_data(g: &Gcm) -> Result<CoxeterData> {
    require_finite(g, "coxeter_data")?;
    let n = g.size();

    let mut checker = PrefixChecker::new(g);
    for i in g.topological_order() {
        checker.push(i);
    }
    let tau: Vec<IntRoot> = (0..n).map(|j| checker.column(j).clone()).collect();
    let mut power = tau.clone();
    let mut h = 1i64;
    let id: Vec<IntRoot> = (0..n).map(|j| IntRoot::simple(n, j)).collect();
    while power != id {
        // power <- tau . power, i.e. apply tau to each column.
        power = power
            .iter()
            .map(|col| {
                let mut out = IntRoot::zero(n);
                for (k, &c) in col.coeffs.iter().enumerate() {
                    for l in 0..n {
                        out.coeffs[l] += c * tau[k].coeffs[l];
                    }
                }
                out
            })
            .collect();
        h += 1;
        if h > 10_000 {
            return Err(Error::Internal("Coxeter element order did not close".into()));
        }
    }

    let transpose = g.transpose()?;
    let roots = positive_roots(&transpose)?;
    let min_norm = roots.iter().map(|r| r.norm(&transpose)).min().expect("roots");
    let highest_short = roots
        .iter()
        .filter(|r| r.norm(&transpose) == min_norm)
        .max_by_key(|r| r.height())
        .expect("roots");
    let h_dual = 1 + highest_short.height();

    Ok(CoxeterData { h, h_dual })
}

pub(crate) fn require_finite(g: &Gcm, op: &'static str) -> Result<()> {
    if !g.is_finite() {
        return Err(Error::WrongType {
            op,
            need: "finite",
            got: g.type_class().as_str(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(c: Vec<Vec<i64>>) -> Gcm {
        Gcm::new(c, None).unwrap()
    }

    fn a2() -> Gcm {
        gcm(vec![vec![2, -1], vec![-1, 2]])
    }

    fn b2() -> Gcm {
        gcm(vec![vec![2, -1], vec![-2, 2]])
    }

    fn g2() -> Gcm {
        gcm(vec![vec![2, -1], vec![-3, 2]])
    }

    fn f4() -> Gcm {
        gcm(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ])
    }

    #[test]
    fn reflections_match_the_cartan_rows() {
        let g = a2();
        let a1 = IntRoot::simple(2, 0);
        let a2v = IntRoot::simple(2, 1);
        assert_eq!(reflect(&g, 0, &a2v).coeffs(), &[1, 1]);
        assert_eq!(reflect(&g, 0, &a1).coeffs(), &[-1, 0]);
        let b = b2();
        assert_eq!(reflect(&b, 1, &IntRoot::simple(2, 0)).coeffs(), &[1, 2]);
    }

    #[test]
    fn reflections_are_involutive_isometries() {
        let g = f4();
        let v = IntRoot { coeffs: vec![3, -1, 4, 2] };
        for i in 0..4 {
            let r = reflect(&g, i, &v);
            assert_eq!(reflect(&g, i, &r), v);
            assert_eq!(r.norm(&g), v.norm(&g));
        }
    }

    #[test]
    fn reduced_word_criterion() {
        let g = a2();
        assert!(is_reduced_prefixwise(&g, &WeylWord::new(vec![0, 1, 0])));
        assert!(!is_reduced_prefixwise(&g, &WeylWord::new(vec![0, 0])));
        assert!(!is_reduced_prefixwise(&g, &WeylWord::new(vec![0, 1, 0, 1])));
        // Rank-2 infinite type: every alternating word is reduced.
        let inf = Gcm::new(vec![vec![2, -6], vec![-9, 2]], Some(vec![3, 2])).unwrap();
        assert!(is_reduced_prefixwise(
            &inf,
            &WeylWord::new(vec![0, 1, 0, 1, 0, 1, 0, 1])
        ));
        assert!(!is_reduced_prefixwise(&inf, &WeylWord::new(vec![1, 1])));
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(positive_roots(&a2()).unwrap().len(), 3);
        assert_eq!(positive_roots(&b2()).unwrap().len(), 4);
        assert_eq!(positive_roots(&g2()).unwrap().len(), 6);
        assert_eq!(positive_roots(&f4()).unwrap().len(), 24);
        let a3 = gcm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(positive_roots(&a3).unwrap().len(), 6);
        let affine = gcm(vec![vec![2, -2], vec![-2, 2]]);
        assert!(matches!(positive_roots(&affine), Err(Error::WrongType { .. })));
    }

    #[test]
    fn longest_element_and_star() {
        let a1 = gcm(vec![vec![2]]);
        let long = longest_and_star(&a1).unwrap();
        assert_eq!(long.word.letters(), &[0]);
        assert_eq!(long.star, vec![0]);

        let long = longest_and_star(&a2()).unwrap();
        assert_eq!(long.word.letters(), &[0, 1, 0]);
        assert_eq!(long.star, vec![1, 0]);
        assert!(is_reduced_prefixwise(&a2(), &long.word));

        // -1 is the longest element in B2 and F4: star is the identity.
        assert_eq!(longest_and_star(&b2()).unwrap().star, vec![0, 1]);
        assert_eq!(longest_and_star(&f4()).unwrap().star, vec![0, 1, 2, 3]);
        assert_eq!(longest_and_star(&f4()).unwrap().word.len(), 24);

        // A3 flips the diagram.
        let a3 = gcm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let long = longest_and_star(&a3).unwrap();
        assert_eq!(long.word.len(), 6);
        assert_eq!(long.star, vec![2, 1, 0]);
    }

    #[test]
    fn coxeter_numbers() {
        for (g, h, h_dual) in [
            (gcm(vec![vec![2]]), 2, 2),
            (a2(), 3, 3),
            (b2(), 4, 3),
            (g2(), 6, 4),
            (f4(), 12, 9),
            // B3 distinguishes the two oracles: h = 6, h_dual = 5.
            (gcm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]), 6, 5),
        ] {
            assert_eq!(coxeter_data(&g).unwrap(), CoxeterData { h, h_dual });
        }
    }

    #[test]
    fn comark_sum_agrees_with_the_transpose_oracle() {
        // Independent derivation of h_dual: express the highest root
        // theta = sum a_i alpha_i, then sum the comarks a_i d_i / d_theta.
        for g in [a2(), b2(), g2(), f4()] {
            let roots = positive_roots(&g).unwrap();
            let theta = roots.iter().max_by_key(|r| r.height()).unwrap();
            let d_theta = theta.norm(&g) / 2;
            let comark_sum: i64 = theta
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    assert_eq!((a * g.d(i)) % d_theta, 0);
                    a * g.d(i) / d_theta
                })
                .sum();
            assert_eq!(coxeter_data(&g).unwrap().h_dual, 1 + comark_sum);
        }
    }

    #[test]
    fn coxeter_number_is_orientation_independent() {
        let c = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]];
        let orientations: Vec<Vec<(usize, usize)>> = vec![
            vec![(0, 1), (1, 2)],
            vec![(1, 0), (1, 2)],
            vec![(0, 1), (2, 1)],
            vec![(1, 0), (2, 1)],
        ];
        let reference = coxeter_data(&Gcm::new(c.clone(), None).unwrap()).unwrap();
        for omega in orientations {
            let g = Gcm::with_orientation(c.clone(), None, Some(omega)).unwrap();
            assert_eq!(coxeter_data(&g).unwrap(), reference);
        }
    }

    #[test]
    fn longest_word_length_matches_root_count() {
        for g in [a2(), b2(), g2(), f4()] {
            let long = longest_and_star(&g).unwrap();
            assert_eq!(long.word.len(), positive_roots(&g).unwrap().len());
        }
    }

    #[test]
    fn prefix_checker_tracks_the_product() {
        // Columns of the checker equal w(alpha_j) computed by composing
        // single reflections.
        let g = b2();
        let word = [0usize, 1, 0, 1];
        let mut checker = PrefixChecker::new(&g);
        for (k, &i) in word.iter().enumerate() {
            assert!(checker.push(i));
            for j in 0..2 {
                let mut v = IntRoot::simple(2, j);
                for &l in word[..=k].iter().rev() {
                    v = reflect(&g, l, &v);
                }
                assert_eq!(checker.column(j), &v);
            }
        }
    }

    #[test]
    fn norms_use_the_symmetrizer() {
        let g = b2();
        assert_eq!(IntRoot::simple(2, 0).norm(&g), 4); // long root
        assert_eq!(IntRoot::simple(2, 1).norm(&g), 2); // short root
    }
}
