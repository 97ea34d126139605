use crate::cartan::{deformed_cartan, DeformedMatrix, Gcm};
use crate::gamma::{GammaMonomial, LaurentPoly};
use crate::{Error, Result};

/// Vector in the deformed root space, coordinates in the `alpha`-basis with
/// Laurent-polynomial coefficients. All arithmetic stays in the polynomial
/// ring — nothing here ever divides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVec {
    coeffs: Vec<LaurentPoly>,
}

impl RootVec {
    pub fn zero(n: usize) -> RootVec {
        RootVec { coeffs: vec![LaurentPoly::zero(); n] }
    }

    /// The basis vector `alpha_i`.
    pub fn simple(n: usize, i: usize) -> RootVec {
        let mut v = RootVec::zero(n);
        v.coeffs[i] = LaurentPoly::one();
        v
    }

    pub fn size(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `alpha_i`.
    pub fn coeff(&self, i: usize) -> &LaurentPoly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, p: LaurentPoly) {
        self.coeffs[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// Minimum `t`-exponent over all coordinates; `None` when zero.
    pub fn t_valuation(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(LaurentPoly::t_valuation).min()
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> RootVec {
        RootVec { coeffs: self.coeffs.iter().map(|p| -p).collect() }
    }

    pub fn scale(&self, m: &GammaMonomial) -> RootVec {
        RootVec { coeffs: self.coeffs.iter().map(|p| p.mul_monomial(m)).collect() }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> RootVec {
        RootVec { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Drop every term above `t^cap` in every coordinate.
    pub fn truncate_t(&self, cap: i64) -> RootVec {
        RootVec { coeffs: self.coeffs.iter().map(|p| p.truncate_t(cap)).collect() }
    }
}

/// Square matrix over the deformation ring, acting on [`RootVec`]s on the
/// left. Row-major; `entry(i, j)` is the coefficient of `alpha_i` in the
/// image of `alpha_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn identity(n: usize) -> PolyMatrix {
        let mut rows = vec![vec![LaurentPoly::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = LaurentPoly::one();
        }
        PolyMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> PolyMatrix {
        debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
        PolyMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.size();
        let mut rows = vec![vec![LaurentPoly::zero(); n]; n];
        for i in 0..n {
            for (l, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[l][j];
                    if !b.is_zero() {
                        rows[i][j] = &rows[i][j] + &(a * b);
                    }
                }
            }
        }
        PolyMatrix { rows }
    }

    /// Product with every entry truncated above `t^cap`.
    pub fn mul_trunc(&self, other: &PolyMatrix, cap: i64) -> PolyMatrix {
        let n = self.size();
        let mut rows = vec![vec![LaurentPoly::zero(); n]; n];
        for i in 0..n {
            for (l, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[l][j];
                    if !b.is_zero() {
                        rows[i][j] = &rows[i][j] + &a.mul_trunc(b, cap);
                    }
                }
            }
        }
        PolyMatrix { rows }
    }

    pub fn apply(&self, v: &RootVec) -> RootVec {
        let n = self.size();
        let mut out = RootVec::zero(n);
        for i in 0..n {
            let mut acc = LaurentPoly::zero();
            for (j, m) in self.rows[i].iter().enumerate() {
                if !m.is_zero() && !v.coeff(j).is_zero() {
                    acc = &acc + &(m * v.coeff(j));
                }
            }
            out.coeffs[i] = acc;
        }
        out
    }

    /// Minimum `t`-exponent over all entries; `None` when the matrix is zero.
    pub fn t_valuation(&self) -> Option<i64> {
        self.rows.iter().flatten().filter_map(LaurentPoly::t_valuation).min()
    }
}

/// The braid operators of one diagram, with the deformed Cartan matrix and
/// its `t = 1` evaluation precomputed.
pub struct BraidAction<'a> {
    g: &'a Gcm,
    cartan: DeformedMatrix,
    cartan_bar: DeformedMatrix,
}

impl<'a> BraidAction<'a> {
    pub fn new(g: &'a Gcm) -> Result<BraidAction<'a>> {
        let cartan = deformed_cartan(g)?;
        let cartan_bar = cartan.at_t_one();
        Ok(BraidAction { g, cartan, cartan_bar })
    }

    pub fn gcm(&self) -> &Gcm {
        self.g
    }

    pub fn cartan(&self) -> &DeformedMatrix {
        &self.cartan
    }

    /// `C(q,1,u)`, the operator matrix of the bar action.
    pub fn cartan_bar(&self) -> &DeformedMatrix {
        &self.cartan_bar
    }

    /// `T_i(v)`: only the `alpha_i`-coordinate changes, by
    /// `-q^{-d_i} t sum_j C_ij v_j`.
    pub fn apply_t(&self, i: usize, v: &RootVec) -> RootVec {
        self.apply_row(i, v, &self.cartan, GammaMonomial::qt(-self.g.d(i), 1))
    }

    /// `Tbar_i(v)`: as `T_i` with `t` evaluated at 1 inside the operator.
    pub fn apply_t_bar(&self, i: usize, v: &RootVec) -> RootVec {
        self.apply_row(i, v, &self.cartan_bar, GammaMonomial::q(-self.g.d(i)))
    }

    fn apply_row(
        &self,
        i: usize,
        v: &RootVec,
        c: &DeformedMatrix,
        factor: GammaMonomial,
    ) -> RootVec {
        let mut acc = LaurentPoly::zero();
        for j in 0..v.size() {
            let entry = c.entry(i, j);
            if !entry.is_zero() && !v.coeff(j).is_zero() {
                acc = &acc + &(entry * v.coeff(j));
            }
        }
        let mut out = v.clone();
        out.coeffs[i] = &out.coeffs[i] - &acc.mul_monomial(&factor);
        out
    }

    /// Matrix of `T_i` in the `alpha`-basis.
    pub fn t_matrix(&self, i: usize) -> PolyMatrix {
        self.operator_matrix(i, &self.cartan, GammaMonomial::qt(-self.g.d(i), 1))
    }

    /// Matrix of `Tbar_i` in the `alpha`-basis.
    pub fn t_bar_matrix(&self, i: usize) -> PolyMatrix {
        self.operator_matrix(i, &self.cartan_bar, GammaMonomial::q(-self.g.d(i)))
    }

    fn operator_matrix(
        &self,
        i: usize,
        c: &DeformedMatrix,
        factor: GammaMonomial,
    ) -> PolyMatrix {
        let n = self.g.size();
        let mut m = PolyMatrix::identity(n);
        for j in 0..n {
            let shift = c.entry(i, j).mul_monomial(&factor);
            m.rows[i][j] = &m.rows[i][j] - &shift;
        }
        m
    }
}

/// Convenience one-shot form of [`BraidAction::apply_t`].
pub fn apply_t(g: &Gcm, i: usize, v: &RootVec) -> Result<RootVec> {
    Ok(BraidAction::new(g)?.apply_t(i, v))
}

/// Convenience one-shot form of [`BraidAction::apply_t_bar`].
pub fn apply_t_bar(g: &Gcm, i: usize, v: &RootVec) -> Result<RootVec> {
    Ok(BraidAction::new(g)?.apply_t_bar(i, v))
}

/// Which relation a vertex pair must satisfy, classified by `c_ij c_ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidRelation {
    /// `c_ij c_ji = 0`: `T_i T_j = T_j T_i`.
    Commute,
    /// `c_ij c_ji = 1`: `T_i T_j T_i = T_j T_i T_j`.
    Length3,
    /// `c_ij c_ji = 2`: `(T_i T_j)^2 = (T_j T_i)^2`.
    Length4,
    /// `c_ij c_ji = 3`: `(T_i T_j)^3 = (T_j T_i)^3`.
    Length6,
    /// `c_ij c_ji >= 4`: the braid group imposes no relation.
    NotRequired,
}

impl BraidRelation {
    pub fn as_str(&self) -> &'static str {
        match self {
            BraidRelation::Commute => "commutation",
            BraidRelation::Length3 => "length-3 braid",
            BraidRelation::Length4 => "length-4 braid",
            BraidRelation::Length6 => "length-6 braid",
            BraidRelation::NotRequired => "no relation required",
        }
    }
}

/// Outcome of an exact braid-relation check on one pair.
#[derive(Clone, Copy, Debug)]
pub struct BraidCheck {
    pub relation: BraidRelation,
    pub holds: bool,
}

/// Verify the braid relation mandated by `c_ij c_ji` as an exact equality
/// of full operator matrices over the deformation ring. Pairs with
/// `c_ij c_ji >= 4` have nothing to check and report vacuous success.
pub fn check_braid_relations(g: &Gcm, i: usize, j: usize) -> Result<BraidCheck> {
    let n = g.size();
    if i >= n || j >= n || i == j {
        return Err(Error::InvalidArg(format!(
            "braid check needs two distinct vertices; got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let action = BraidAction::new(g)?;
    let (ti, tj) = (action.t_matrix(i), action.t_matrix(j));
    let m = g.c(i, j) * g.c(j, i);
    let (relation, holds) = match m {
        0 => (BraidRelation::Commute, ti.mul(&tj) == tj.mul(&ti)),
        1 => (BraidRelation::Length3, ti.mul(&tj).mul(&ti) == tj.mul(&ti).mul(&tj)),
        2 | 3 => {
            let k = m as usize; // (T_i T_j)^{k} vs (T_j T_i)^{k} with k = 2, 3
            let (a, b) = (ti.mul(&tj), tj.mul(&ti));
            let mut pa = a.clone();
            let mut pb = b.clone();
            for _ in 1..k {
                pa = pa.mul(&a);
                pb = pb.mul(&b);
            }
            (if m == 2 { BraidRelation::Length4 } else { BraidRelation::Length6 }, pa == pb)
        }
        _ => (BraidRelation::NotRequired, true),
    };
    Ok(BraidCheck { relation, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(c: Vec<Vec<i64>>) -> Gcm {
        Gcm::new(c, None).unwrap()
    }

    #[test]
    fn t_action_on_simple_roots() {
        let g = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let action = BraidAction::new(&g).unwrap();
        // T_1 alpha_2 = alpha_2 + q^-1 t u alpha_1.
        let v = action.apply_t(0, &RootVec::simple(2, 1));
        assert_eq!(v.coeff(0).to_string(), "q^-1 t u[1,2,1]");
        assert_eq!(v.coeff(1).to_string(), "1");
        // T_i alpha_i = -q^{-2 d_i} t^2 alpha_i.
        let v = action.apply_t(0, &RootVec::simple(2, 0));
        assert_eq!(v.coeff(0).to_string(), "-q^-2 t^2");
        assert!(v.coeff(1).is_zero());
        // Disconnected coordinates are untouched.
        let a3 = gcm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let action = BraidAction::new(&a3).unwrap();
        let v = action.apply_t(0, &RootVec::simple(3, 2));
        assert_eq!(v, RootVec::simple(3, 2));
    }

    #[test]
    fn t_bar_action_evaluates_t_inside_the_operator() {
        let g = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let action = BraidAction::new(&g).unwrap();
        let v = action.apply_t_bar(0, &RootVec::simple(2, 1));
        assert_eq!(v.coeff(0).to_string(), "q^-1 u[1,2,1]");
        let v = action.apply_t_bar(0, &RootVec::simple(2, 0));
        assert_eq!(v.coeff(0).to_string(), "-q^-2");
    }

    #[test]
    fn matrices_realize_the_action() {
        let g = gcm(vec![vec![2, -1], vec![-2, 2]]);
        let action = BraidAction::new(&g).unwrap();
        for i in 0..2 {
            let m = action.t_matrix(i);
            for j in 0..2 {
                assert_eq!(m.apply(&RootVec::simple(2, j)), action.apply_t(i, &RootVec::simple(2, j)));
            }
        }
        // Matrix products compose operators: column j of M(T_0) M(T_1) is
        // T_0(T_1(alpha_j)).
        let prod = action.t_matrix(0).mul(&action.t_matrix(1));
        let direct = action.apply_t(0, &action.apply_t(1, &RootVec::simple(2, 0)));
        assert_eq!(prod.apply(&RootVec::simple(2, 0)), direct);
    }

    #[test]
    fn braid_relations_hold_where_required() {
        let a2 = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let check = check_braid_relations(&a2, 0, 1).unwrap();
        assert_eq!(check.relation, BraidRelation::Length3);
        assert!(check.holds);

        let b2 = gcm(vec![vec![2, -1], vec![-2, 2]]);
        let check = check_braid_relations(&b2, 0, 1).unwrap();
        assert_eq!(check.relation, BraidRelation::Length4);
        assert!(check.holds);

        let g2 = gcm(vec![vec![2, -1], vec![-3, 2]]);
        let check = check_braid_relations(&g2, 0, 1).unwrap();
        assert_eq!(check.relation, BraidRelation::Length6);
        assert!(check.holds);

        let a3 = gcm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let check = check_braid_relations(&a3, 0, 2).unwrap();
        assert_eq!(check.relation, BraidRelation::Commute);
        assert!(check.holds);

        let wild = Gcm::new(vec![vec![2, -6], vec![-9, 2]], Some(vec![3, 2])).unwrap();
        let check = check_braid_relations(&wild, 0, 1).unwrap();
        assert_eq!(check.relation, BraidRelation::NotRequired);
        assert!(check.holds);

        assert!(check_braid_relations(&a2, 0, 0).is_err());
    }

    #[test]
    fn bar_operators_also_satisfy_the_braid_relation() {
        // Same relations for the t = 1 action, via its matrices directly.
        let b2 = gcm(vec![vec![2, -1], vec![-2, 2]]);
        let action = BraidAction::new(&b2).unwrap();
        let (a, b) = (action.t_bar_matrix(0), action.t_bar_matrix(1));
        assert_eq!(a.mul(&b).mul(&a.mul(&b)), b.mul(&a).mul(&b.mul(&a)));
    }

    #[test]
    fn valuations_and_truncation() {
        let g = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let action = BraidAction::new(&g).unwrap();
        let m = action.t_matrix(0);
        assert_eq!(m.t_valuation(), Some(0));
        let v = action.apply_t(0, &RootVec::simple(2, 1));
        assert_eq!(v.t_valuation(), Some(0));
        assert_eq!(v.truncate_t(0).coeff(0), &LaurentPoly::zero());
    }
}
