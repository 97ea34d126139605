use crate::gamma::{q_integer, GammaMonomial, LaurentPoly, Specialization};
use crate::Result;

use super::gcm::Gcm;

/// The deformed Cartan matrix `C(q,t,u)` of a validated GCM:
///
/// ```text
/// C_ij = q^{d_i} t^{-1} + q^{-d_i} t                        (i = j)
///      = -[f_ij]_{q^{d_i}} (u[i,j,1] + ... + u[i,j,g_ij])   (c_ij < 0)
///      = 0                                                  (otherwise)
/// ```
///
/// Diagonal entries are the only ones carrying `t`; off-diagonal entries are
/// `t`-free, a fact the series inversions rely on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedMatrix {
    entries: Vec<Vec<LaurentPoly>>,
}

/// Build `C(q,t,u)` for a validated GCM.
pub fn deformed_cartan(g: &Gcm) -> Result<DeformedMatrix> {
    let n = g.size();
    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                entries[i][j] = &LaurentPoly::monomial(GammaMonomial::qt(g.d(i), -1))
                    + &LaurentPoly::monomial(GammaMonomial::qt(-g.d(i), 1));
            } else if g.is_adjacent(i, j) {
                let bracket = q_integer(g.f(i, j), g.d(i))?;
                entries[i][j] = -&(&bracket * &g.mu_sum(i, j)?);
            }
        }
    }
    Ok(DeformedMatrix { entries })
}

impl DeformedMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// Entrywise specialization `u -> 1`.
    pub fn at_mu_one(&self) -> DeformedMatrix {
        self.map(|p| p.specialize(Specialization::MuOne))
    }

    /// Entrywise evaluation `t -> 1` (each entry is a polynomial, so this is
    /// exact): the matrix `C(q,1,u)` driving the bar operators.
    pub fn at_t_one(&self) -> DeformedMatrix {
        self.map(|p| p.specialize(Specialization::TOne))
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> DeformedMatrix {
        DeformedMatrix {
            entries: self.entries.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_entries() {
        // B2 with minimal symmetrizer diag(2,1).
        let g = Gcm::new(vec![vec![2, -1], vec![-2, 2]], None).unwrap();
        let c = deformed_cartan(&g).unwrap();
        assert_eq!(c.entry(0, 0).to_string(), "q^2 t^-1 + q^-2 t");
        assert_eq!(c.entry(1, 1).to_string(), "q t^-1 + q^-1 t");
        assert_eq!(c.entry(0, 1).to_string(), "-u[1,2,1]");
        assert_eq!(c.entry(1, 0).to_string(), "-q^-1 u[1,2,1]^-1 - q u[1,2,1]^-1");
    }

    #[test]
    fn affine_a11_entries_and_determinant() {
        let g = Gcm::new(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
        let c = deformed_cartan(&g).unwrap();
        assert_eq!(c.entry(0, 1).to_string(), "-u[1,2,1] - u[1,2,2]");
        // det C = q^2 t^-2 - (u1/u2 + u2/u1) + q^-2 t^2 where ug = u[1,2,g].
        let det = &(c.entry(0, 0) * c.entry(1, 1)) - &(c.entry(0, 1) * c.entry(1, 0));
        assert_eq!(
            det.to_string(),
            "q^2 t^-2 - u[1,2,1]^-1 u[1,2,2] - u[1,2,1] u[1,2,2]^-1 + q^-2 t^2"
        );
    }

    #[test]
    fn zero_pattern_matches_diagram() {
        let g = Gcm::new(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], None).unwrap();
        let c = deformed_cartan(&g).unwrap();
        assert!(c.entry(0, 2).is_zero());
        assert!(c.entry(2, 0).is_zero());
        // Off-diagonal entries are t-free.
        for i in 0..3 {
            for j in 0..3 {
                if i != j && !c.entry(i, j).is_zero() {
                    assert_eq!(c.entry(i, j).t_valuation(), Some(0));
                    assert_eq!(c.entry(i, j).t_degree(), Some(0));
                }
            }
        }
    }

    #[test]
    fn t_one_evaluation_of_entries() {
        let g = Gcm::new(vec![vec![2]], None).unwrap();
        let c = deformed_cartan(&g).unwrap();
        assert_eq!(c.at_t_one().entry(0, 0).to_string(), "q^-1 + q");
    }
}
