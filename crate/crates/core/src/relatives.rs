//! Galois cocycles and the explicit construction of the relatives of a
//! connection `X dlog z` over SL_n.
//!
//! Over the covering `k((z^(1/l)))` with fixed Galois generator
//! `gamma(z^(1/l)) = omega_l z^(1/l)`, a gauge map `b` trivializing a
//! connection against the invariant base `X dlog z` yields the constant
//! `d = b gamma(b^-1)` in the centralizer of `X`, of finite order dividing
//! `l`.  Conversely every torsion class of the centralizer torus is
//! realized by an explicit relative: for
//! `X = blockdiag(J(x_1, a_1), ..., J(x_r, a_r))` and exponents
//! `(j_1, ..., j_r)` with `Sigma = sum j_s a_s` divisible by `l`, the
//! relative shifts every block eigenvalue by `j_s / l`, except that the
//! last block becomes the companion-like matrix whose final diagonal entry
//! is `x_r + (j_r - Sigma)/l` and whose final superdiagonal entry is
//! `z^(Sigma/l)`.  The witness is the ramified block-scalar gauge map
//! `g = blockdiag(zeta^{j_1} E, ..., zeta^{j_r}, ..., zeta^{j_r - Sigma})`,
//! and the defining identity is re-verified exactly on every construction.

use alloc::vec::Vec;

use crate::centralizer::{CentralizerData, TorsionClass};
use crate::connection::{Connection, GaugeMap};
use crate::error::{Error, Result};
use crate::linalg::{jordan_blocks_of, Matrix};
use crate::scalar::Cyclotomic;
use crate::series::{Exponent, Series};
use crate::GroupTag;

/// A 1-cocycle of the covering Galois group at a finite level, represented
/// by its value at the fixed generator: a constant torsion matrix in the
/// centralizer of the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    level: u64,
    value: Matrix<Cyclotomic>,
}

impl Cocycle {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn value(&self) -> &Matrix<Cyclotomic> {
        &self.value
    }

    /// Reinterpret at a multiple of the level; the constant value is
    /// unchanged and the class is preserved.
    pub fn push_to_level(&self, m: u64) -> Result<Cocycle> {
        if m == 0 || m % self.level != 0 {
            return Err(Error::NotDivisible {
                from: self.level,
                to: m,
            });
        }
        Ok(Cocycle {
            level: m,
            value: self.value.clone(),
        })
    }
}

/// Extract the cocycle of a trivializing gauge map: `d = b gamma(b^-1)`.
///
/// `b` must map the connection under classification to `X dlog z` over the
/// level-`l` covering (caller-verified); then the product is constant by
/// the stabilizer description, lies in `Z(X)`, and has order dividing `l`.
/// Any violation is reported rather than truncated away.
pub fn cocycle_of(b: &GaugeMap, l: u64, x: &Matrix<Cyclotomic>) -> Result<Cocycle> {
    let gamma_b_inv = b.inverse_matrix().galois_act(l, 1)?;
    let product = b.matrix().mul(&gamma_b_inv);
    let value = product.constant_part()?;
    if !value.commutator(x).is_zero_matrix() {
        return Err(Error::NotInCentralizer);
    }
    if !value.pow(l as usize).is_identity() {
        return Err(Error::NotTorsion);
    }
    Ok(Cocycle { level: l, value })
}

/// A realized relative of `X dlog z`: the connection, the ramified witness
/// `g` with `g[X dlog z] = connection` over the level-`l` covering, and the
/// torsion class it came from.
#[derive(Debug, Clone)]
pub struct Relative {
    pub connection: Connection,
    pub witness: GaugeMap,
    pub class: TorsionClass,
}

/// Build the explicit relative of `X dlog z` attached to a torsion class.
///
/// `X` must be in Jordan normal form (blocks read in matrix order, matching
/// the class exponents) and the exponents must satisfy the determinant
/// congruence `sum j_s a_s = 0 (mod level)`.
pub fn realize_relative(x: &Matrix<Cyclotomic>, class: &TorsionClass) -> Result<Relative> {
    let blocks = jordan_blocks_of(x).ok_or(Error::NotJordanForm)?;
    let l = class.level();
    let exps = class.exponents();
    assert_eq!(exps.len(), blocks.len(), "one exponent per Jordan block");
    let sigma: u64 = exps
        .iter()
        .zip(blocks.iter())
        .map(|(j, (_, a))| j * (*a as u64))
        .sum();
    if sigma % l != 0 {
        return Err(Error::DeterminantConstraint);
    }
    let sigma_over_l = (sigma / l) as i64;

    let r = blocks.len();
    let mut mats: Vec<Matrix<Series>> = Vec::with_capacity(r);
    let mut witness_exps: Vec<Exponent> = Vec::new();
    for (s, ((x_s, a_s), j_s)) in blocks.iter().zip(exps.iter()).enumerate() {
        let a = *a_s;
        let shift = Cyclotomic::ratio(*j_s as i64, l as i64);
        let shifted = x_s.add_ref(&shift);
        if s + 1 < r {
            mats.push(crate::linalg::jordan_block(&shifted, a).to_series());
            for _ in 0..a {
                witness_exps.push(Exponent::new(*j_s as i64, l as i64));
            }
        } else {
            // Last block: the final diagonal entry absorbs -Sigma/l and the
            // final superdiagonal entry becomes z^(Sigma/l).
            let last_diag = x_s.add_ref(&Cyclotomic::ratio(*j_s as i64 - sigma as i64, l as i64));
            let mut c = Matrix::<Series>::zero(a, a);
            for i in 0..a {
                let d = if i + 1 == a {
                    last_diag.clone()
                } else {
                    shifted.clone()
                };
                c.set(i, i, Series::constant(d));
                if i + 2 < a {
                    c.set(i, i + 1, Series::one());
                } else if i + 2 == a {
                    c.set(
                        i,
                        i + 1,
                        Series::monomial(Cyclotomic::one(), Exponent::from_integer(sigma_over_l)),
                    );
                }
            }
            mats.push(c);
            for i in 0..a {
                let num = if i + 1 == a {
                    *j_s as i64 - sigma as i64
                } else {
                    *j_s as i64
                };
                witness_exps.push(Exponent::new(num, l as i64));
            }
        }
    }
    let connection = Connection::new(Matrix::block_diag(&mats), GroupTag::Sl)?;
    let witness = GaugeMap::monomial(&witness_exps, GroupTag::Sl)?;

    // Defining identity over the covering: g[X dlog z] = (X dlog z)^d.
    let base = Connection::from_constant(x, GroupTag::Sl)?;
    let transformed = witness.apply(&base)?;
    assert!(
        transformed.agrees_with(&connection) && transformed.coeff().is_exact(),
        "relative witness identity must hold exactly"
    );
    // The same identity in substitution coordinates:
    // pullback(l, relative) = g(z^l)[ l X dlog z ].
    let lhs = connection.pullback(l);
    let rhs = witness
        .pullback(l)
        .apply(&base.scale(&Cyclotomic::from_integer(l as i64)))?;
    assert!(
        lhs.agrees_with(&rhs),
        "pull-back form of the witness identity must hold"
    );

    Ok(Relative {
        connection,
        witness,
        class: class.clone(),
    })
}

/// Enumerate the relatives of `X dlog z` at a level: one realized
/// connection per torsion class of the centralizer torus modulo the Weyl
/// group.  Distinct classes yield pairwise non-gauge-equivalent relatives.
pub fn list_relatives(x: &Matrix<Cyclotomic>, level: u64) -> Result<Vec<Relative>> {
    let data = CentralizerData::new(x)?;
    let classes = data.torsion_elements(level, GroupTag::Sl)?;
    classes.iter().map(|c| realize_relative(x, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn cr(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::ratio(n, d)
    }

    #[test]
    fn trivial_class_realizes_the_base() {
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let class = data.class_from_exponents(1, alloc::vec![0]);
        let rel = realize_relative(&x, &class).unwrap();
        assert_eq!(
            rel.connection,
            Connection::from_constant(&x, GroupTag::Sl).unwrap()
        );
        assert!(rel.witness.matrix().is_identity());
    }

    #[test]
    fn nontrivial_class_on_a_2_block() {
        // X = J(0,2), j = 1 at level 2, Sigma = 2: the relative is
        // [[1/2, z], [0, -1/2]] dlog z.
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let class = data.class_from_exponents(2, alloc::vec![1]);
        let rel = realize_relative(&x, &class).unwrap();
        let mut expected = Matrix::<Series>::zero(2, 2);
        expected.set(0, 0, Series::constant(cr(1, 2)));
        expected.set(0, 1, Series::z());
        expected.set(1, 1, Series::constant(cr(-1, 2)));
        assert_eq!(rel.connection.coeff(), &expected);
    }

    #[test]
    fn two_singleton_blocks() {
        // X = diag(0, 0), exponents (1, 1) at level 2, Sigma = 2:
        // the relative is diag(1/2, -1/2) dlog z.
        let x = Matrix::<Cyclotomic>::zero(2, 2);
        let data = CentralizerData::new(&x).unwrap();
        let class = data.class_from_exponents(2, alloc::vec![1, 1]);
        let rel = realize_relative(&x, &class).unwrap();
        let expected = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 2), ci(0)],
            alloc::vec![ci(0), cr(-1, 2)],
        ]);
        assert_eq!(
            rel.connection,
            Connection::from_constant(&expected, GroupTag::Sl).unwrap()
        );
    }

    #[test]
    fn determinant_congruence_is_enforced() {
        let x = jordan_block(&ci(0), 2);
        // j = 1 at level 4 gives Sigma = 2, not divisible by 4.
        let class = TorsionClassBuilder::raw(4, alloc::vec![1]);
        assert!(matches!(
            realize_relative(&x, &class),
            Err(Error::DeterminantConstraint)
        ));
    }

    // Helper to fabricate raw classes without a CentralizerData.
    struct TorsionClassBuilder;
    impl TorsionClassBuilder {
        fn raw(level: u64, exponents: alloc::vec::Vec<u64>) -> TorsionClass {
            // go through a centralizer of the right block count
            let x = jordan_block(&Cyclotomic::zero(), 2);
            let data = CentralizerData::new(&x).unwrap();
            let _ = &data;
            data.class_from_exponents(level, exponents)
        }
    }

    #[test]
    fn relatives_count_for_the_sl2_example() {
        let x = jordan_block(&ci(0), 2);
        let rels = list_relatives(&x, 2).unwrap();
        assert_eq!(rels.len(), 2);
        let rels1 = list_relatives(&x, 1).unwrap();
        assert_eq!(rels1.len(), 1);
        assert_eq!(
            rels1[0].connection,
            Connection::from_constant(&x, GroupTag::Sl).unwrap()
        );
    }

    #[test]
    fn relatives_are_regular() {
        let x = Matrix::block_diag(&[jordan_block(&ci(0), 2), jordan_block(&ci(0), 1)]);
        for rel in list_relatives(&x, 3).unwrap() {
            assert!(!matches!(
                rel.connection.classify_shape(),
                crate::Shape::Other
            ));
        }
    }

    #[test]
    fn cocycle_of_constant_is_identity() {
        let x = Matrix::<Cyclotomic>::zero(2, 2);
        let g =
            GaugeMap::constant(&Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]), GroupTag::Sl).unwrap();
        let c = cocycle_of(&g, 2, &x).unwrap();
        assert!(c.value().is_identity());
    }

    #[test]
    fn cocycle_of_ramified_torus() {
        // b = diag(zeta, zeta^-1) with zeta = z^(1/2), X = 0:
        // d = b gamma(b^-1) = diag(-1, -1).
        let x = Matrix::<Cyclotomic>::zero(2, 2);
        let b =
            GaugeMap::monomial(&[Exponent::new(1, 2), Exponent::new(-1, 2)], GroupTag::Sl).unwrap();
        let c = cocycle_of(&b, 2, &x).unwrap();
        assert_eq!(c.value(), &Matrix::<Cyclotomic>::identity(2).scale(&ci(-1)));
        assert_eq!(c.level(), 2);
    }

    #[test]
    fn realize_witness_recovers_its_class() {
        // The inverse of the realization witness trivializes the relative,
        // and its cocycle reproduces the class.
        let x = Matrix::block_diag(&[jordan_block(&ci(0), 2), jordan_block(&ci(0), 1)]);
        let data = CentralizerData::new(&x).unwrap();
        for class in data.torsion_elements(3, GroupTag::Sl).unwrap() {
            let rel = realize_relative(&x, &class).unwrap();
            let b = rel.witness.inverted();
            let c = cocycle_of(&b, class.level(), &x).unwrap();
            let extracted = data.torus_class_of(c.value(), Some(class.level())).unwrap();
            assert_eq!(extracted, class);
        }
    }

    #[test]
    fn cocycle_of_rejects_non_trivializers() {
        // A gauge map whose cocycle is visibly non-constant violates the
        // caller contract and is reported, not truncated away.
        let x = jordan_block(&ci(0), 2);
        let b = GaugeMap::elementary(
            2,
            0,
            1,
            Series::monomial(ci(1), Exponent::new(1, 2)),
            GroupTag::Sl,
        );
        assert!(matches!(cocycle_of(&b, 2, &x), Err(Error::NotConstant)));
        // A constant cocycle value outside the centralizer is rejected:
        // b = diag(z^(1/2), 1) yields d = diag(-1, 1), which does not
        // commute with J(0,2).
        let b =
            GaugeMap::monomial(&[Exponent::new(1, 2), Exponent::new(0, 1)], GroupTag::Gl).unwrap();
        assert!(matches!(
            cocycle_of(&b, 2, &x),
            Err(Error::NotInCentralizer)
        ));
    }

    #[test]
    fn cocycle_push_preserves_class() {
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let class = data.class_from_exponents(2, alloc::vec![1]);
        let rel = realize_relative(&x, &class).unwrap();
        let c = cocycle_of(&rel.witness.inverted(), 2, &x).unwrap();
        let pushed = c.push_to_level(4).unwrap();
        assert_eq!(pushed.level(), 4);
        let cls = data.torus_class_of(pushed.value(), Some(4)).unwrap();
        assert_eq!(cls, class.push_to_level(4).unwrap());
        assert!(matches!(
            c.push_to_level(3),
            Err(Error::NotDivisible { .. })
        ));
    }
}
