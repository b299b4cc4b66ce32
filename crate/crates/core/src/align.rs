//! Reduction of first-kind connections to aligned form.
//!
//! A first-kind connection `A = sum_r A_r z^r dlog z` is aligned when every
//! coefficient satisfies `A_r in Eig(ad A_{0,s}; r)`, with `A_{0,s}` the
//! semisimple part of the constant term.  Every first-kind connection is
//! gauge equivalent to an aligned one, and the gauge transformation is
//! constructed explicitly here, one order at a time:
//!
//! 1. conjugate so that `A_0` is in Jordan form `D + N`;
//! 2. for `r = 1, 2, ...` split the order-`r` coefficient along the
//!    eigenspaces of `ad D` and, for each component with eigenvalue
//!    `lambda != r`, solve `(ad A_0 - r) B = C_{r,lambda}` (the operator is
//!    `(lambda - r) + nilpotent` there, so a terminating Neumann sum gives
//!    the exact solution) and apply `exp(B z^r)`, which cancels that
//!    component and touches only higher orders;
//! 3. orders above the largest integer ad-eigenvalue `r_max` vanish
//!    entirely, because their resonant eigenspace is zero.
//!
//! The aligned coefficients stabilize order by order, so the output
//! polynomial is exact even though the accumulated witness is truncated.
//! `exp` rather than `1 + B z^r` keeps the witness determinant one for
//! traceless `B`, so `sl` inputs stay honestly `sl` throughout.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::connection::{Connection, GaugeMap, Shape};
use crate::error::{Error, Result};
use crate::linalg::{jordan_form, Matrix};
use crate::scalar::Cyclotomic;
use crate::series::{Exponent, Series};
use crate::GroupTag;

/// An aligned connection together with the gauge witness that produced it.
#[derive(Debug, Clone)]
pub struct Aligned {
    /// The aligned connection; an exact polynomial of degree at most the
    /// largest integer ad-eigenvalue of `semisimple_part`.
    pub base: Connection,
    /// The semisimple part `A_{0,s}` of the (unchanged) constant term.
    pub semisimple_part: Matrix<Cyclotomic>,
    /// Gauge map with `witness[input] = base` up to the working precision.
    pub witness: GaugeMap,
    /// Working precision of the witness.
    pub precision: Exponent,
    /// Set when the input itself was truncated: coefficients beyond the
    /// input precision were treated as zero and the witness precision was
    /// reduced to match.
    pub truncated_input: bool,
}

/// The largest nonnegative integer eigenvalue of `ad X` (0 when no positive
/// integer eigenvalue exists).
pub fn max_integer_ad_eigenvalue(x: &Matrix<Cyclotomic>) -> Result<i64> {
    let mut best = 0i64;
    for d in crate::linalg::ad_eigenvalues(x)? {
        if let Some(q) = d.rational_part() {
            if q.is_integer() && q.numer() > &num_bigint::BigInt::from(best) {
                if let Ok(v) = i64::try_from(q.numer()) {
                    best = v;
                }
            }
        }
    }
    Ok(best)
}

/// Default working precision for a first-kind connection:
/// `2 (degree + n + r_max)`.
pub fn default_precision(a: &Connection) -> Exponent {
    let n = a.dim() as i64;
    let deg = a
        .degree()
        .map(|d| d.ceil().to_integer())
        .unwrap_or(0)
        .max(0);
    let r_max = a
        .coefficient_matrix(Exponent::zero())
        .and_then(|a0| max_integer_ad_eigenvalue(&a0).ok())
        .unwrap_or(n);
    Exponent::from_integer((2 * (deg + n + r_max)).max(2 * n))
}

/// Align a first-kind connection by an explicit gauge transformation.
///
/// `p` is the working precision; it must exceed both the input degree and
/// the largest integer ad-eigenvalue of `A_{0,s}`.
pub fn align(a: &Connection, p: Exponent) -> Result<Aligned> {
    if matches!(a.classify_shape(), Shape::Other) {
        return Err(Error::NotFirstKind);
    }
    // The aligned grading runs over integer orders; ramified input is out of
    // contract.
    for r in 0..a.coeff().rows() {
        for c in 0..a.coeff().cols() {
            let ram = a.coeff().at(r, c).ramification();
            if ram != 1 {
                return Err(Error::RamificationMismatch {
                    ramification: ram,
                    level: 1,
                });
            }
        }
    }
    let truncated_input = !a.coeff().is_exact();
    let p_eff = match a.coeff().precision() {
        Some(q) => p.min(q),
        None => p,
    };

    let a0 = a
        .coefficient_matrix(Exponent::zero())
        .expect("first-kind connection knows its constant term");
    let jf = jordan_form(&a0, a.tag())?;
    let r_max = {
        let eigen = jf.eigenvalues();
        let mut best = 0i64;
        for x in &eigen {
            for y in &eigen {
                if let Some(q) = x.sub_ref(y).rational_part() {
                    if q.is_integer() {
                        if let Ok(v) = i64::try_from(q.numer()) {
                            best = best.max(v);
                        }
                    }
                }
            }
        }
        best
    };
    let degree = a.degree().map(|d| d.ceil().to_integer()).unwrap_or(0);
    let needed = Exponent::from_integer(degree.max(r_max) + 1);
    if p_eff < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            available: p_eff,
        });
    }

    // Move to the Jordan frame of A_0.
    let p_mat = jf.transition().clone();
    let p_inv = p_mat.inverse().expect("transition is invertible");
    let conj_tag = if a.tag() == GroupTag::Sl && p_mat.det().is_one() {
        GroupTag::Sl
    } else {
        GroupTag::Gl
    };
    let into_frame = GaugeMap::constant(&p_inv, conj_tag)?;
    let out_of_frame = GaugeMap::constant(&p_mat, conj_tag)?;
    let mut current = into_frame.apply(a)?;
    let mut witness = into_frame;

    // Diagonal of the Jordan matrix drives the eigencomponent split.
    let j = jf.reconstruct();
    let n = a.dim();
    let diag: Vec<Cyclotomic> = (0..n).map(|i| j.at(i, i).clone()).collect();
    let nilpotent = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            Cyclotomic::zero()
        } else {
            j.at(r, c).clone()
        }
    });

    let p_int = p_eff.ceil().to_integer();
    let mut r = 1i64;
    while Exponent::from_integer(r) < p_eff && r < p_int + 1 {
        let order = Exponent::from_integer(r);
        let Some(c_r) = current.coefficient_matrix(order) else {
            break; // beyond the provable precision
        };
        let b = solve_pass(&c_r, &diag, &nilpotent, r);
        if !b.is_zero_matrix() {
            let step = GaugeMap::exponential(&b, order, p_eff, current.tag());
            current = step.apply(&current)?;
            witness = step.compose(&witness);
        }
        debug_assert!({
            let after = current.coefficient_matrix(order).unwrap();
            non_resonant_part(&after, &diag, r).is_zero_matrix()
        });
        r += 1;
    }

    // Collect the stabilized aligned coefficients and conjugate back.
    let mut base_entries = Matrix::<Series>::zero(n, n);
    for k in 0..=r_max {
        let order = Exponent::from_integer(k);
        let c_k = current
            .coefficient_matrix(order)
            .expect("orders up to r_max are below the working precision");
        let back = p_mat.mul(&c_k).mul(&p_inv);
        for i in 0..n {
            for jx in 0..n {
                if !back.at(i, jx).is_zero() {
                    let term = Series::monomial(back.at(i, jx).clone(), order);
                    base_entries.set(i, jx, base_entries.at(i, jx).add(&term));
                }
            }
        }
    }
    let base = Connection::new(base_entries, a.tag())?;
    let witness = out_of_frame.compose(&witness);

    // The split of the Jordan matrix gives A_{0,s} in the original frame.
    let d_mat = Matrix::from_fn(n, n, |r0, c0| {
        if r0 == c0 {
            diag[r0].clone()
        } else {
            Cyclotomic::zero()
        }
    });
    let semisimple_part = p_mat.mul(&d_mat).mul(&p_inv);

    debug_assert_eq!(
        base.coefficient_matrix(Exponent::zero()).unwrap(),
        a0,
        "alignment must not change the constant term"
    );
    Ok(Aligned {
        base,
        semisimple_part,
        witness,
        precision: p_eff,
        truncated_input,
    })
}

/// The part of `m` lying in eigencomponents of `ad diag` with eigenvalue
/// different from `r`.
fn non_resonant_part(m: &Matrix<Cyclotomic>, diag: &[Cyclotomic], r: i64) -> Matrix<Cyclotomic> {
    let r_scalar = Cyclotomic::from_integer(r);
    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        if diag[i].sub_ref(&diag[j]) == r_scalar {
            Cyclotomic::zero()
        } else {
            m.at(i, j).clone()
        }
    })
}

/// Solve `(ad A_0 - r) B = C_{r, != r}` componentwise.  On the component
/// with `ad diag` eigenvalue `lambda`, the operator is
/// `(lambda - r) + ad N` with `ad N` nilpotent, so
/// `B = sum_k (-1)^k (lambda - r)^-(k+1) (ad N)^k (C)` terminates.
fn solve_pass(
    c_r: &Matrix<Cyclotomic>,
    diag: &[Cyclotomic],
    nilpotent: &Matrix<Cyclotomic>,
    r: i64,
) -> Matrix<Cyclotomic> {
    let n = diag.len();
    let r_scalar = Cyclotomic::from_integer(r);
    // Group positions by their ad-diag eigenvalue.
    let mut components: Vec<(Cyclotomic, Matrix<Cyclotomic>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if c_r.at(i, j).is_zero() {
                continue;
            }
            let lambda = diag[i].sub_ref(&diag[j]);
            if lambda == r_scalar {
                continue; // resonant part stays
            }
            match components.iter_mut().find(|(l, _)| *l == lambda) {
                Some((_, m)) => {
                    let mut updated = m.clone();
                    updated.set(i, j, c_r.at(i, j).clone());
                    *m = updated;
                }
                None => {
                    let mut m = Matrix::zero(n, n);
                    m.set(i, j, c_r.at(i, j).clone());
                    components.push((lambda, m));
                }
            }
        }
    }
    let mut b = Matrix::<Cyclotomic>::zero(n, n);
    for (lambda, c) in components {
        let shift = lambda.sub_ref(&r_scalar);
        let shift_inv = shift.inv().expect("non-resonant eigenvalue differs from r");
        let mut term = c.scale(&shift_inv);
        let mut acc = term.clone();
        for _ in 0..2 * n {
            term = nilpotent.commutator(&term).scale(&shift_inv).neg();
            if term.is_zero_matrix() {
                break;
            }
            acc = acc.add(&term);
        }
        debug_assert!(
            nilpotent
                .commutator(&acc)
                .add(&acc.scale(&shift))
                .sub(&c)
                .is_zero_matrix(),
            "Neumann solve must satisfy the component equation"
        );
        b = b.add(&acc);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn e(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    fn check_alignment(al: &Aligned) {
        // A_r in Eig(ad A_{0,s}; r), coefficient-exactly.
        let s = &al.semisimple_part;
        let deg = al.base.degree().map(|d| d.to_integer()).unwrap_or(0);
        for r in 0..=deg {
            let a_r = al
                .base
                .coefficient_matrix(Exponent::from_integer(r))
                .unwrap();
            let lhs = s.commutator(&a_r);
            assert_eq!(lhs, a_r.scale(&ci(r)), "order {r} must be resonant");
        }
    }

    #[test]
    fn constant_connection_is_returned_unchanged() {
        let x = Matrix::from_rows(alloc::vec![
            alloc::vec![Cyclotomic::ratio(1, 2), ci(1)],
            alloc::vec![ci(0), Cyclotomic::ratio(-1, 2)],
        ]);
        let a = Connection::from_constant(&x, GroupTag::Sl).unwrap();
        let al = align(&a, e(6)).unwrap();
        assert_eq!(al.base, a);
        assert!(al.witness.matrix().is_identity());
        check_alignment(&al);
    }

    #[test]
    fn resonant_term_is_kept() {
        // [[n/2, z^n], [0, -n/2]] is already aligned for every n.
        for n in 1..=4i64 {
            let mut m = Matrix::<Series>::zero(2, 2);
            m.set(0, 0, Series::constant(Cyclotomic::ratio(n, 2)));
            m.set(1, 1, Series::constant(Cyclotomic::ratio(-n, 2)));
            m.set(0, 1, Series::monomial(ci(1), e(n)));
            let a = Connection::new(m, GroupTag::Sl).unwrap();
            let al = align(&a, e(2 * n + 4)).unwrap();
            assert_eq!(al.base, a);
            assert!(al.witness.matrix().is_identity());
            check_alignment(&al);
        }
    }

    #[test]
    fn non_resonant_term_is_removed() {
        // diag(1, 0) + E_12 z^2: the ad eigenvalue on E_12 is 1 != 2, so the
        // z^2 term dies and the result is diag(1, 0) dlog z.
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 0, Series::one());
        m.set(0, 1, Series::monomial(ci(1), e(2)));
        let a = Connection::new(m, GroupTag::Gl).unwrap();
        let al = align(&a, e(8)).unwrap();
        let expected =
            Connection::from_constant(&Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]), GroupTag::Gl)
                .unwrap();
        assert_eq!(al.base, expected);
        check_alignment(&al);
        // Witness replay: witness[input] = base up to the precision.
        let replay = al.witness.apply(&a).unwrap();
        assert!(replay.agrees_with(&al.base));
    }

    #[test]
    fn constant_term_is_preserved_and_idempotent() {
        // A non-trivial first-kind connection with a defective constant term.
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 0, Series::constant(ci(1)));
        m.set(0, 1, Series::one().add(&Series::z()));
        m.set(1, 0, Series::monomial(ci(2), e(2)));
        m.set(1, 1, Series::monomial(ci(1), e(1)));
        let a = Connection::new(m, GroupTag::Gl).unwrap();
        let al = align(&a, e(10)).unwrap();
        check_alignment(&al);
        assert_eq!(
            al.base.coefficient_matrix(Exponent::zero()).unwrap(),
            a.coefficient_matrix(Exponent::zero()).unwrap()
        );
        let replay = al.witness.apply(&a).unwrap();
        assert!(replay.agrees_with(&al.base));
        // Aligning the aligned output changes nothing.
        let again = align(&al.base, e(10)).unwrap();
        assert_eq!(again.base, al.base);
        assert!(again.witness.matrix().is_identity());
    }

    #[test]
    fn sl_input_stays_sl() {
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 0, Series::one());
        m.set(1, 1, Series::one().neg());
        m.set(0, 1, Series::monomial(ci(3), e(2)));
        m.set(1, 0, Series::monomial(ci(1), e(1)));
        let a = Connection::new(m, GroupTag::Sl).unwrap();
        let al = align(&a, e(12)).unwrap();
        assert_eq!(al.base.tag(), GroupTag::Sl);
        assert!(al.base.trace().has_no_terms());
        check_alignment(&al);
        let replay = al.witness.apply(&a).unwrap();
        assert!(replay.agrees_with(&al.base));
    }

    #[test]
    fn truncated_input_is_flagged_and_reduces_precision() {
        // Orders beyond the input precision are treated as zero; the
        // witness precision drops to the input's and the flag is set.
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 0, Series::one());
        m.set(0, 1, Series::monomial(ci(1), e(2)).truncate(e(6)));
        let a = Connection::new(m, GroupTag::Gl).unwrap();
        let al = align(&a, e(10)).unwrap();
        assert!(al.truncated_input);
        assert_eq!(al.precision, e(6));
        let expected =
            Connection::from_constant(&Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]), GroupTag::Gl)
                .unwrap();
        assert_eq!(al.base, expected);
        let replay = al.witness.apply(&a).unwrap();
        assert!(replay.agrees_with(&al.base));
        // Insufficient input precision is rejected, not silently extended.
        let mut low = Matrix::<Series>::zero(2, 2);
        low.set(0, 0, Series::one().truncate(e(1)));
        low.set(0, 1, Series::zero().truncate(e(1)));
        let a_low = Connection::new(low, GroupTag::Gl).unwrap();
        assert!(matches!(
            align(&a_low, e(10)),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn rejects_non_first_kind() {
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 1, Series::monomial(ci(1), e(-1)));
        let a = Connection::new(m, GroupTag::Gl).unwrap();
        assert!(matches!(align(&a, e(6)), Err(Error::NotFirstKind)));
    }

    #[test]
    fn degree_bound_is_r_max() {
        // J(0,2) + high-order junk: r_max = 0, so everything above order 0 dies.
        let mut m = jordan_block(&ci(0), 2).to_series();
        m.set(1, 0, Series::monomial(ci(5), e(3)));
        m.set(0, 0, Series::monomial(ci(2), e(1)));
        m.set(1, 1, Series::monomial(ci(-2), e(1)));
        let a = Connection::new(m, GroupTag::Sl).unwrap();
        let al = align(&a, e(9)).unwrap();
        assert_eq!(
            al.base,
            Connection::from_constant(&jordan_block(&ci(0), 2), GroupTag::Sl).unwrap()
        );
        let replay = al.witness.apply(&a).unwrap();
        assert!(replay.agrees_with(&al.base));
    }
}
