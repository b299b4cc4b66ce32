//! Connections `A dlog z` and the gauge group acting on them.
//!
//! A connection is a square matrix of ramified series read as the
//! coefficient of `dlog z = z^-1 dz`; `dlog z` is the reference form in
//! every ramification.  A gauge transformation `g` acts by
//!
//! ```text
//! g[A dlog z] = (g A g^-1 + z d/dz(g) g^-1) dlog z,
//! ```
//!
//! and the pull-back along the `m`-fold covering `z -> z^m` sends
//! `A(z) dlog z` to `m A(z^m) dlog z`.  Because the gauge action needs the
//! inverse at every application, a [`GaugeMap`] stores its inverse at
//! construction time, which fixes the precision contract once.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_class, Matrix};
use crate::scalar::Cyclotomic;
use crate::series::{Exponent, Series};
use crate::GroupTag;

/// A connection `A dlog z` with `A` a square matrix of ramified series.
///
/// For the `sl` tag the trace vanishes identically (up to the stated
/// precision for truncated entries, exactly for polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    coeff: Matrix<Series>,
    tag: GroupTag,
}

/// Shape of a connection, reported cumulatively: zero standard form implies
/// standard form implies first kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// Every entry has nonnegative valuation.
    FirstKind,
    /// The coefficient is a constant matrix.
    Standard(Matrix<Cyclotomic>),
    /// Constant, and zero is the only rational eigenvalue of `ad X`.
    ZeroStandard(Matrix<Cyclotomic>),
    /// None of the above is certified.
    Other,
}

impl Connection {
    pub fn new(coeff: Matrix<Series>, tag: GroupTag) -> Result<Self> {
        if !coeff.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (coeff.rows(), coeff.rows()),
                found: (coeff.rows(), coeff.cols()),
            });
        }
        if tag == GroupTag::Sl && !coeff.trace().has_no_terms() {
            return Err(Error::TraceNonzero);
        }
        Ok(Connection { coeff, tag })
    }

    /// The constant connection `X dlog z`.
    pub fn from_constant(x: &Matrix<Cyclotomic>, tag: GroupTag) -> Result<Self> {
        Self::new(x.to_series(), tag)
    }

    pub fn zero(n: usize, tag: GroupTag) -> Self {
        Connection {
            coeff: Matrix::zero(n, n),
            tag,
        }
    }

    pub fn coeff(&self) -> &Matrix<Series> {
        &self.coeff
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.coeff.rows()
    }

    pub fn trace(&self) -> Series {
        self.coeff.trace()
    }

    /// Multiply the coefficient by a scalar (keeps the trace condition).
    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Connection {
            coeff: self.coeff.map(|s| s.scale(c)),
            tag: self.tag,
        }
    }

    /// Pull back along the `m`-fold covering: `A(z) -> m A(z^m)`.
    pub fn pullback(&self, m: u64) -> Self {
        assert!(m >= 1);
        let factor = Cyclotomic::from_integer(m as i64);
        Connection {
            coeff: self.coeff.substitute_power(m).map(|s| s.scale(&factor)),
            tag: self.tag,
        }
    }

    /// Entrywise Galois action of the covering group at level `l`; the form
    /// `dlog z` is invariant because `gamma(z^(1/l)) / z^(1/l)` is constant.
    pub fn galois_act(&self, l: u64, t: i64) -> Result<Self> {
        Ok(Connection {
            coeff: self.coeff.galois_act(l, t)?,
            tag: self.tag,
        })
    }

    /// Invert the pull-back: find `D` with `pullback(m, D) = self`.
    ///
    /// The connection is a pull-back exactly when every visible exponent is
    /// divisible by `m`; the first offending exponent is reported otherwise.
    pub fn descend(&self, m: u64) -> Result<Self> {
        assert!(m >= 1);
        let me = Exponent::from_integer(m as i64);
        for r in 0..self.coeff.rows() {
            for c in 0..self.coeff.cols() {
                for (e, _) in self.coeff.at(r, c).iter() {
                    if !(e / me).is_integer() {
                        return Err(Error::NotInvariant { exponent: *e });
                    }
                }
            }
        }
        let inv_m = Cyclotomic::ratio(1, m as i64);
        Ok(Connection {
            coeff: self
                .coeff
                .scale_exponents(Exponent::new(1, m as i64))
                .map(|s| s.scale(&inv_m)),
            tag: self.tag,
        })
    }

    /// Certified shape classification.  Categories are cumulative; the
    /// strongest certified one is returned.  Stronger categories need exact
    /// entries, and the zero-standard check silently degrades to
    /// `Standard` when the eigenvalue search fails.
    pub fn classify_shape(&self) -> Shape {
        let mut first_kind = true;
        for r in 0..self.coeff.rows() {
            for c in 0..self.coeff.cols() {
                let s = self.coeff.at(r, c);
                if let Some(v) = s.valuation() {
                    if v < Exponent::zero() {
                        return Shape::Other;
                    }
                }
                if let Some(p) = s.precision() {
                    if p < Exponent::zero() {
                        first_kind = false;
                    }
                }
            }
        }
        if !first_kind {
            return Shape::Other;
        }
        let constant = self.coeff.is_exact()
            && (0..self.coeff.rows()).all(|r| {
                (0..self.coeff.cols()).all(|c| self.coeff.at(r, c).is_constant_up_to_precision())
            });
        if !constant {
            return Shape::FirstKind;
        }
        let x = self
            .coeff
            .constant_part()
            .expect("exact constant entries have a constant part");
        match is_zero_class(&x) {
            Ok(true) => Shape::ZeroStandard(x),
            Ok(false) | Err(_) => Shape::Standard(x),
        }
    }

    /// Same visible coefficients: the difference has no stored term below
    /// the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.coeff.sub(&other.coeff).has_no_terms()
    }

    /// Largest exponent appearing in any entry (for polynomial inputs).
    pub fn degree(&self) -> Option<Exponent> {
        let mut best: Option<Exponent> = None;
        for r in 0..self.coeff.rows() {
            for c in 0..self.coeff.cols() {
                if let Some(d) = self.coeff.at(r, c).degree() {
                    best = Some(best.map_or(d, |b| b.max(d)));
                }
            }
        }
        best
    }

    /// The matrix of coefficients of `z^e` over all entries, when every
    /// entry knows its `z^e` coefficient.
    pub fn coefficient_matrix(&self, e: Exponent) -> Option<Matrix<Cyclotomic>> {
        let mut entries = Vec::with_capacity(self.dim() * self.dim());
        for r in 0..self.coeff.rows() {
            for c in 0..self.coeff.cols() {
                entries.push(self.coeff.at(r, c).coefficient(e)?);
            }
        }
        Some(Matrix::new(self.dim(), self.dim(), entries))
    }
}

/// An invertible gauge transformation with its inverse stored alongside,
/// precision-tracked.  For the `sl` tag the determinant is one (up to the
/// stored precision; exactly for exact entries).
#[derive(Debug, Clone)]
pub struct GaugeMap {
    matrix: Matrix<Series>,
    inverse: Matrix<Series>,
    tag: GroupTag,
}

impl GaugeMap {
    pub fn identity(n: usize, tag: GroupTag) -> Self {
        GaugeMap {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
            tag,
        }
    }

    /// A constant gauge transformation; the inverse is exact.
    pub fn constant(m: &Matrix<Cyclotomic>, tag: GroupTag) -> Result<Self> {
        if tag == GroupTag::Sl && !m.det().is_one() {
            return Err(Error::DeterminantNotOne);
        }
        let inv = m.inverse()?;
        Ok(GaugeMap {
            matrix: m.to_series(),
            inverse: inv.to_series(),
            tag,
        })
    }

    /// The diagonal monomial torus element `diag(z^{e_1}, ..., z^{e_n})`.
    pub fn monomial(exponents: &[Exponent], tag: GroupTag) -> Result<Self> {
        if tag == GroupTag::Sl {
            let total: Exponent = exponents.iter().copied().sum();
            if !total.is_zero() {
                return Err(Error::DeterminantNotOne);
            }
        }
        let n = exponents.len();
        let diag = |sign: i64| {
            Matrix::from_fn(n, n, |r, c| {
                if r == c {
                    Series::monomial(Cyclotomic::one(), exponents[r] * sign)
                } else {
                    Series::zero()
                }
            })
        };
        Ok(GaugeMap {
            matrix: diag(1),
            inverse: diag(-1),
            tag,
        })
    }

    /// The elementary transvection `I + s E_{ij}` (`i != j`); its inverse
    /// `I - s E_{ij}` is exact and the determinant is one.
    pub fn elementary(n: usize, i: usize, j: usize, s: Series, tag: GroupTag) -> Self {
        assert!(i != j && i < n && j < n);
        let mut matrix = Matrix::<Series>::identity(n);
        matrix.set(i, j, s.clone());
        let mut inverse = Matrix::<Series>::identity(n);
        inverse.set(i, j, s.neg());
        GaugeMap {
            matrix,
            inverse,
            tag,
        }
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.  Tagged
    /// `gl`; odd permutations do not lie in SL_n.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut matrix = Matrix::<Series>::zero(n, n);
        for (j, &i) in perm.iter().enumerate() {
            matrix.set(i, j, Series::one());
        }
        let inverse = matrix.transpose();
        GaugeMap {
            matrix,
            inverse,
            tag: GroupTag::Gl,
        }
    }

    /// The truncated exponential `exp(B z^r)` together with its inverse
    /// `exp(-B z^r)`, both cut at precision `p`.
    ///
    /// For traceless `B` the determinant is one as a formal series, so this
    /// is the `sl`-compatible way to perturb by `B z^r`; for nilpotent `B`
    /// the exponential terminates and the result is exact.
    pub fn exponential(b: &Matrix<Cyclotomic>, r: Exponent, p: Exponent, tag: GroupTag) -> Self {
        assert!(r > Exponent::zero());
        let n = b.rows();
        let build = |sign: i64| {
            let mut acc = Matrix::<Series>::identity(n);
            let mut power = Matrix::<Cyclotomic>::identity(n);
            let mut factorial = Cyclotomic::one();
            let mut k = 1i64;
            let mut exact = false;
            loop {
                power = power.mul(b);
                factorial = factorial.mul_ref(&Cyclotomic::from_integer(k));
                let e = r * k;
                if power.is_zero_matrix() {
                    exact = true;
                    break;
                }
                if e >= p {
                    break;
                }
                let coeff = factorial.inv().expect("factorial is nonzero");
                let coeff = if sign < 0 && k % 2 == 1 {
                    coeff.neg_ref()
                } else {
                    coeff
                };
                let term = power.map(|c| Series::monomial(c.mul_ref(&coeff), e));
                acc = acc.add(&term);
                k += 1;
            }
            if exact {
                acc
            } else {
                acc.map(|s| s.truncate(p))
            }
        };
        GaugeMap {
            matrix: build(1),
            inverse: build(-1),
            tag,
        }
    }

    /// General constructor from a series matrix: the inverse is computed
    /// through the adjugate so that `matrix * inverse = I + O(z^p)`.
    pub fn from_matrix(matrix: Matrix<Series>, tag: GroupTag, p: Exponent) -> Result<Self> {
        if tag == GroupTag::Sl {
            let det = matrix.det();
            if !det.sub(&Series::one()).has_no_terms() {
                return Err(Error::DeterminantNotOne);
            }
        }
        let inverse = matrix.inverse_at_precision(p)?;
        Ok(GaugeMap {
            matrix,
            inverse,
            tag,
        })
    }

    pub fn matrix(&self) -> &Matrix<Series> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<Series> {
        &self.inverse
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The inverse gauge map (swap matrix and inverse).
    pub fn inverted(&self) -> Self {
        GaugeMap {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            tag: self.tag,
        }
    }

    /// Retag as `sl` after verifying the determinant is one (up to the
    /// visible precision).
    pub fn into_sl(self) -> Result<Self> {
        if !self.matrix.det().sub(&Series::one()).has_no_terms() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(GaugeMap {
            tag: GroupTag::Sl,
            ..self
        })
    }

    /// Composition: `(g.compose(h))[A] = g[h[A]]`.
    pub fn compose(&self, other: &Self) -> Self {
        let tag = if self.tag == GroupTag::Sl && other.tag == GroupTag::Sl {
            GroupTag::Sl
        } else {
            GroupTag::Gl
        };
        GaugeMap {
            matrix: self.matrix.mul(&other.matrix),
            inverse: other.inverse.mul(&self.inverse),
            tag,
        }
    }

    /// Pull back along the covering `z -> z^m` (pure substitution; gauge
    /// maps pick up no factor).
    pub fn pullback(&self, m: u64) -> Self {
        GaugeMap {
            matrix: self.matrix.substitute_power(m),
            inverse: self.inverse.substitute_power(m),
            tag: self.tag,
        }
    }

    /// Exponent relabeling between coverings (divide exponents by `l`).
    pub(crate) fn rebase_to_cover(&self, l: u64) -> Self {
        let f = Exponent::new(1, l as i64);
        GaugeMap {
            matrix: self.matrix.scale_exponents(f),
            inverse: self.inverse.scale_exponents(f),
            tag: self.tag,
        }
    }

    /// Apply the gauge action:
    /// `g[A] = (g A g^-1 + z d/dz(g) g^-1) dlog z`.
    ///
    /// The result keeps the connection's tag; for an `sl` connection the
    /// trace condition is re-checked, so a gauge map that cannot preserve it
    /// (non-constant determinant) fails loudly instead of silently
    /// producing a `gl` result.
    pub fn apply(&self, a: &Connection) -> Result<Connection> {
        if self.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: (a.dim(), a.dim()),
                found: (self.dim(), self.dim()),
            });
        }
        let conjugated = self.matrix.mul(a.coeff()).mul(&self.inverse);
        let derivative = self.matrix.z_ddz().mul(&self.inverse);
        Connection::new(conjugated.add(&derivative), a.tag())
    }

    /// Check `matrix * inverse = I` up to the visible precision.
    pub fn is_consistent(&self) -> bool {
        self.matrix
            .mul(&self.inverse)
            .sub(&Matrix::identity(self.dim()))
            .has_no_terms()
    }

    pub fn det(&self) -> Series {
        self.matrix.det()
    }

    /// True when both the matrix and its inverse are exact polynomials.
    pub fn is_exact(&self) -> bool {
        self.matrix.is_exact() && self.inverse.is_exact()
    }
}

/// Apply a chain of gauge maps in order: `chain[k-1][... chain[0][A] ...]`.
pub fn apply_chain(chain: &[GaugeMap], a: &Connection) -> Result<Connection> {
    let mut acc = a.clone();
    for g in chain {
        acc = g.apply(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn diag_conn(values: &[(i64, i64)], tag: GroupTag) -> Connection {
        let n = values.len();
        let m = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                Cyclotomic::ratio(values[r].0, values[r].1)
            } else {
                Cyclotomic::zero()
            }
        });
        Connection::from_constant(&m, tag).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let a = diag_conn(&[(1, 2), (-1, 2)], GroupTag::Sl);
        let id = GaugeMap::identity(2, GroupTag::Sl);
        assert_eq!(id.apply(&a).unwrap(), a);
    }

    #[test]
    fn constant_gauge_is_plain_conjugation() {
        let a =
            Connection::from_constant(&Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]), GroupTag::Gl)
                .unwrap();
        let g =
            GaugeMap::constant(&Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]), GroupTag::Gl).unwrap();
        let expected = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]); // [[1,1],[0,1]] J [[1,-1],[0,1]]
        let got = g.apply(&a).unwrap();
        assert_eq!(got.coefficient_matrix(e(0, 1)).unwrap(), expected);
        assert!(got.coeff().is_exact());
    }

    #[test]
    fn torus_derivative_term() {
        // diag(z, 1) applied to the zero connection gives diag(1, 0) dlog z.
        let g = GaugeMap::monomial(&[e(1, 1), e(0, 1)], GroupTag::Gl).unwrap();
        let zero = Connection::zero(2, GroupTag::Gl);
        let out = g.apply(&zero).unwrap();
        let expected =
            Connection::from_constant(&Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]), GroupTag::Gl)
                .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn pullback_of_constant_scales() {
        let a = diag_conn(&[(1, 1), (0, 1)], GroupTag::Gl);
        let pulled = a.pullback(2);
        let expected = diag_conn(&[(2, 1), (0, 1)], GroupTag::Gl);
        assert_eq!(pulled, expected);
    }

    #[test]
    fn pullback_substitutes_and_scales() {
        // iota_2((z + 1) E dlog z) = (2 z^2 + 2) E dlog z on E = E_11, n = 1.
        let s = Series::z().add(&Series::one());
        let a = Connection::new(Matrix::from_rows(vec![vec![s]]), GroupTag::Gl).unwrap();
        let pulled = a.pullback(2);
        let expected = Series::monomial(ci(2), e(2, 1)).add(&Series::constant(ci(2)));
        assert_eq!(pulled.coeff().at(0, 0), &expected);
    }

    #[test]
    fn pullback_of_fractional_standardizes() {
        // iota_n((1/(2n)) diag(1, -1) dlog z) = diag(1/2, -1/2) dlog z.
        for n in 1..=4u64 {
            let b = diag_conn(&[(1, 2 * n as i64), (-1, 2 * n as i64)], GroupTag::Sl);
            let pulled = b.pullback(n);
            assert_eq!(pulled, diag_conn(&[(1, 2), (-1, 2)], GroupTag::Sl));
        }
    }

    #[test]
    fn galois_action_on_connections() {
        let base = diag_conn(&[(1, 2), (-1, 2)], GroupTag::Sl);
        assert_eq!(base.galois_act(2, 1).unwrap(), base);
        // z^(1/2) E_12 picks up a sign.
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 1, Series::monomial(ci(1), e(1, 2)));
        let a = Connection::new(m, GroupTag::Sl).unwrap();
        let acted = a.galois_act(2, 1).unwrap();
        assert_eq!(acted.coeff().at(0, 1), &Series::monomial(ci(-1), e(1, 2)));
        assert_eq!(acted.galois_act(2, 1).unwrap(), a);
    }

    #[test]
    fn descend_inverts_pullback() {
        let x = Connection::from_constant(&jordan_block(&ci(0), 2), GroupTag::Sl).unwrap();
        let c = x.pullback(2);
        assert_eq!(c.descend(2).unwrap(), x);
        // (2 z^2) E dlog z descends to z E dlog z.
        let a = Connection::new(
            Matrix::from_rows(vec![vec![Series::monomial(ci(2), e(2, 1))]]),
            GroupTag::Gl,
        )
        .unwrap();
        let d = a.descend(2).unwrap();
        assert_eq!(d.coeff().at(0, 0), &Series::z());
        assert_eq!(d.pullback(2), a);
        // z E dlog z is not a double pull-back.
        let bad =
            Connection::new(Matrix::from_rows(vec![vec![Series::z()]]), GroupTag::Gl).unwrap();
        assert_eq!(
            bad.descend(2),
            Err(Error::NotInvariant { exponent: e(1, 1) })
        );
    }

    #[test]
    fn shape_classification() {
        let std_not_zero = diag_conn(&[(1, 2), (-1, 2)], GroupTag::Sl);
        match std_not_zero.classify_shape() {
            Shape::Standard(x) => assert_eq!(x.rows(), 2),
            s => panic!("expected Standard, got {s:?}"),
        }
        let zero_std = Connection::from_constant(&jordan_block(&ci(0), 2), GroupTag::Sl).unwrap();
        assert!(matches!(zero_std.classify_shape(), Shape::ZeroStandard(_)));
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 1, Series::monomial(ci(1), e(-1, 1)));
        let other = Connection::new(m, GroupTag::Sl).unwrap();
        assert!(matches!(other.classify_shape(), Shape::Other));
        let mut fk = Matrix::<Series>::zero(2, 2);
        fk.set(0, 1, Series::z());
        let first = Connection::new(fk, GroupTag::Sl).unwrap();
        assert!(matches!(first.classify_shape(), Shape::FirstKind));
    }

    #[test]
    fn action_law_and_equivariance() {
        // g[h[A]] = (gh)[A] and iota_m(g)[iota_m(A)] = iota_m(g[A]) on exact
        // gauge maps.
        let a = Connection::new(
            Matrix::from_rows(vec![
                vec![Series::z(), Series::one()],
                vec![Series::zero(), Series::z().neg()],
            ]),
            GroupTag::Sl,
        )
        .unwrap();
        let g = GaugeMap::elementary(2, 0, 1, Series::z(), GroupTag::Sl);
        let h = GaugeMap::monomial(&[e(1, 1), e(-1, 1)], GroupTag::Sl).unwrap();
        let lhs = g.apply(&h.apply(&a).unwrap()).unwrap();
        let rhs = g.compose(&h).apply(&a).unwrap();
        assert_eq!(lhs, rhs);
        for m in [2u64, 3] {
            let lhs = g.pullback(m).apply(&a.pullback(m)).unwrap();
            let rhs = g.apply(&a).unwrap().pullback(m);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sl_gauge_preserves_trace() {
        let a = Connection::new(
            Matrix::from_rows(vec![
                vec![Series::one(), Series::z()],
                vec![Series::zero(), Series::one().neg()],
            ]),
            GroupTag::Sl,
        )
        .unwrap();
        let g = GaugeMap::elementary(2, 1, 0, Series::monomial(ci(3), e(2, 1)), GroupTag::Sl);
        let out = g.apply(&a).unwrap();
        assert!(out.trace().has_no_terms());
        assert_eq!(out.tag(), GroupTag::Sl);
    }

    #[test]
    fn exponential_gauge_map_consistency() {
        // Non-nilpotent traceless B: truncated, determinant 1 up to precision.
        let b = Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        let g = GaugeMap::exponential(&b, e(1, 1), e(6, 1), GroupTag::Sl);
        assert!(g.is_consistent());
        assert!(g.det().sub(&Series::one()).has_no_terms());
        // Nilpotent B: exact.
        let nil = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let gn = GaugeMap::exponential(&nil, e(2, 1), e(9, 1), GroupTag::Sl);
        assert!(gn.is_exact());
        assert!(gn.is_consistent());
    }

    #[test]
    fn general_matrix_constructor_inverts_at_precision() {
        let m = Matrix::from_rows(vec![
            vec![
                Series::one().add(&Series::z()),
                Series::monomial(ci(2), e(1, 1)),
            ],
            vec![Series::z(), Series::one().neg()],
        ]);
        let g = GaugeMap::from_matrix(m.clone(), GroupTag::Gl, e(6, 1)).unwrap();
        assert!(g.is_consistent());
        assert!(g.inverse_matrix().precision().unwrap() >= e(4, 1));
        // The sl tag rejects a visibly non-unimodular matrix.
        assert!(matches!(
            GaugeMap::from_matrix(m, GroupTag::Sl, e(6, 1)),
            Err(Error::DeterminantNotOne)
        ));
        // A singular matrix cannot be inverted at any precision.
        let singular = Matrix::from_rows(vec![
            vec![Series::z(), Series::z()],
            vec![Series::z(), Series::z()],
        ]);
        assert!(GaugeMap::from_matrix(singular, GroupTag::Gl, e(3, 1)).is_err());
    }

    #[test]
    fn gauge_witness_for_integral_shift() {
        // diag(z, z^-1)[diag(1/2, -1/2) dlog z] = diag(3/2, -3/2) dlog z.
        let a = diag_conn(&[(1, 2), (-1, 2)], GroupTag::Sl);
        let g = GaugeMap::monomial(&[e(1, 1), e(-1, 1)], GroupTag::Sl).unwrap();
        let out = g.apply(&a).unwrap();
        assert_eq!(out, diag_conn(&[(3, 2), (-3, 2)], GroupTag::Sl));
    }
}
