//! Reduction of aligned connections to standard form `X dlog z`, and of
//! standard forms to zero standard form, through explicit cocharacters of
//! the diagonal torus.
//!
//! For the diagonal tori of GL_n and SL_n the root values are
//! `<eps_i - eps_j, H> = h_i - h_j`, so the cocharacter conditions become an
//! integer program: find the minimal `m >= 1` and an integer vector `f`
//! (summing to zero in the `sl` lattice) with `f_i - f_j = m (h_i - h_j)`
//! whenever `h_i - h_j` is an integer.  With `t = diag(z^{-f_1}, ...,
//! z^{-f_n})` one has `Ad(t)(B z^{m r}) = B` for `B` in the `r`-eigenspace
//! of `ad H`, and `z d/dz (t) t^-1 = diag(-f_i)`, which together turn an
//! aligned connection pulled back along the `m`-fold covering into a
//! constant one.  Every identity is re-verified by replaying the gauge
//! chain, not assumed.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::align::{align, Aligned};
use crate::connection::{apply_chain, Connection, GaugeMap};
use crate::error::Result;
use crate::linalg::{is_zero_class, jordan_form, JordanForm, Matrix};
use crate::scalar::{Cyclotomic, Rational};
use crate::series::Exponent;
use crate::GroupTag;

/// A solution of the cocharacter conditions for a diagonal datum `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocharacter {
    /// The covering multiplier `m`.
    pub multiplier: u64,
    /// The exponent vector `f`; the torus element is
    /// `t = diag(z^{-f_1}, ..., z^{-f_n})`.
    pub exponents: Vec<i64>,
    /// Which cocharacter lattice was used (`sl` forces `sum f_i = 0`).
    pub lattice: GroupTag,
}

impl Cocharacter {
    /// The torus gauge map `t = diag(z^{-f_i})`.
    pub fn torus(&self) -> GaugeMap {
        let exps: Vec<Exponent> = self
            .exponents
            .iter()
            .map(|f| Exponent::from_integer(-f))
            .collect();
        GaugeMap::monomial(&exps, self.lattice).expect("sl exponents sum to zero")
    }

    /// The constant matrix `Y = z d/dz (t) t^-1 = diag(-f_i)`.
    pub fn derivative_term(&self) -> Matrix<Cyclotomic> {
        let n = self.exponents.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                Cyclotomic::from_integer(-self.exponents[r])
            } else {
                Cyclotomic::zero()
            }
        })
    }
}

/// Partition indices into integral classes (`i ~ j` iff `h_i - h_j` is an
/// integer) and return, per class, the member indices with their integer
/// offsets from the class base (the lowest member index).
fn integral_classes(h: &[Cyclotomic]) -> Vec<Vec<(usize, i64)>> {
    let mut classes: Vec<Vec<(usize, i64)>> = Vec::new();
    'outer: for (i, hi) in h.iter().enumerate() {
        for class in classes.iter_mut() {
            let base = class[0].0;
            let d = hi.sub_ref(&h[base]);
            if let Some(q) = d.rational_part() {
                if q.is_integer() {
                    let off = i64::try_from(q.numer()).expect("small offsets");
                    class.push((i, off));
                    continue 'outer;
                }
            }
        }
        classes.push(vec![(i, 0)]);
    }
    classes
}

/// Find the minimal `m >= 1` admitting an integer vector `f` in the stated
/// lattice with `f_i - f_j = m (h_i - h_j)` whenever `h_i - h_j` is an
/// integer.
///
/// Construction: within class `c` with base `b_c`, set
/// `f_i = m (h_i - h_{b_c}) + g_c`.  For `gl` any integer `g_c` works and
/// `m = 1`; for `sl` the constraint is `sum_c n_c g_c = -m S` with `S` the
/// sum of all within-class offsets, solvable iff `gcd(n_c)` divides `m S`,
/// so the minimal `m` is found by direct search up to `gcd(n_c)`.  Among
/// the solutions for the minimal `m`, the `g_c` are chosen to minimize the
/// sorted absolute-value profile of `f` (then `f` lexicographically).
pub fn find_cocharacter(h: &[Cyclotomic], lattice: GroupTag) -> Cocharacter {
    let classes = integral_classes(h);
    let n = h.len();
    let class_sizes: Vec<i64> = classes.iter().map(|c| c.len() as i64).collect();
    let total_offset: i64 = classes.iter().flat_map(|c| c.iter().map(|(_, o)| *o)).sum();

    let m: i64 = match lattice {
        GroupTag::Gl => 1,
        GroupTag::Sl => {
            // sum_c n_c g_c = -m S is solvable over Z iff gcd(n_c) | m S.
            let g = class_sizes.iter().fold(0i64, |acc, s| acc.gcd(s));
            (1..=g).find(|m| (m * total_offset) % g == 0).unwrap_or(1)
        }
    };

    let assemble = |gs: &[i64]| -> Vec<i64> {
        let mut f = vec![0i64; n];
        for (class, g) in classes.iter().zip(gs.iter()) {
            for (i, off) in class {
                f[*i] = m * off + g;
            }
        }
        f
    };
    let profile = |f: &[i64]| -> (Vec<i64>, Vec<i64>) {
        let mut abs: Vec<i64> = f.iter().map(|x| x.abs()).collect();
        abs.sort_unstable();
        (abs, f.to_vec())
    };

    // Candidate range per class: centered on balancing the scaled offsets.
    let ranges: Vec<(i64, i64)> = classes
        .iter()
        .map(|c| {
            let offs: Vec<i64> = c.iter().map(|(_, o)| m * o).collect();
            let lo = -offs.iter().copied().max().unwrap();
            let hi = -offs.iter().copied().min().unwrap();
            let w = m * (total_offset.abs() + n as i64 + 1);
            (lo - w, hi + w)
        })
        .collect();

    let mut best: Option<(Vec<i64>, Vec<i64>)> = None;
    let mut consider = |f: Vec<i64>| {
        let key = profile(&f);
        if best.as_ref().map(|b| key < *b).unwrap_or(true) {
            best = Some(key);
        }
    };

    match lattice {
        GroupTag::Gl => {
            // Classes are independent: optimize each g_c separately.
            let mut gs = vec![0i64; classes.len()];
            for (ci, (lo, hi)) in ranges.iter().enumerate() {
                let mut best_g: Option<((Vec<i64>, Vec<i64>), i64)> = None;
                for g in *lo..=*hi {
                    let offs: Vec<i64> = classes[ci].iter().map(|(_, o)| m * o + g).collect();
                    let mut abs: Vec<i64> = offs.iter().map(|x| x.abs()).collect();
                    abs.sort_unstable();
                    let key = (abs, offs);
                    if best_g.as_ref().map(|(k, _)| key < *k).unwrap_or(true) {
                        best_g = Some((key, g));
                    }
                }
                gs[ci] = best_g.expect("non-empty range").1;
            }
            consider(assemble(&gs));
        }
        GroupTag::Sl => {
            // Enumerate all classes but the last; solve the last exactly.
            let c = classes.len();
            let target = -m * total_offset;
            let mut gs = vec![0i64; c];
            enumerate_sl(&ranges, &class_sizes, target, 0, &mut gs, &mut |gs| {
                consider(assemble(gs));
            });
        }
    }

    let exponents = best.expect("the cocharacter program is always solvable").1;
    debug_assert!(verify_cocharacter(h, m, &exponents));
    debug_assert!(lattice == GroupTag::Gl || exponents.iter().sum::<i64>() == 0);
    Cocharacter {
        multiplier: m as u64,
        exponents,
        lattice,
    }
}

fn enumerate_sl(
    ranges: &[(i64, i64)],
    sizes: &[i64],
    target: i64,
    idx: usize,
    gs: &mut Vec<i64>,
    consider: &mut impl FnMut(&[i64]),
) {
    if idx + 1 == ranges.len() {
        // Solve the last coordinate exactly.
        let partial: i64 = gs[..idx].iter().zip(sizes.iter()).map(|(g, s)| g * s).sum();
        let rem = target - partial;
        if rem % sizes[idx] == 0 {
            gs[idx] = rem / sizes[idx];
            consider(gs);
        }
        return;
    }
    for g in ranges[idx].0..=ranges[idx].1 {
        gs[idx] = g;
        enumerate_sl(ranges, sizes, target, idx + 1, gs, consider);
    }
}

fn verify_cocharacter(h: &[Cyclotomic], m: i64, f: &[i64]) -> bool {
    for i in 0..h.len() {
        for j in 0..h.len() {
            let d = h[i].sub_ref(&h[j]);
            if let Some(q) = d.rational_part() {
                if q.is_integer() {
                    let expected = Rational::from_integer(BigInt::from(m)) * q;
                    if Rational::from_integer(BigInt::from(f[i] - f[j])) != expected {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Result of the standard-form reduction.
#[derive(Debug, Clone)]
pub struct Standardized {
    /// The minimal covering multiplier for the given lattice.
    pub multiplier: u64,
    /// The constant matrix `X` with
    /// `chain[pullback(multiplier, input)] = X dlog z`.
    pub standard: Matrix<Cyclotomic>,
    /// Gauge chain, replay-verified against the pulled-back input.
    pub chain: Vec<GaugeMap>,
    /// The aligned intermediate, kept for downstream classification.
    pub aligned: Aligned,
}

/// Transform a first-kind connection into standard form on a minimal
/// covering: align, conjugate the semisimple constant part into the
/// diagonal torus, and apply the cocharacter torus element.
pub fn standardize(a: &Connection, lattice: GroupTag, p: Exponent) -> Result<Standardized> {
    // The lattice fixes the gauge group for the whole reduction: the gl
    // torus may shift the trace, so an sl-tagged input is re-read as a gl
    // connection when the gl lattice is requested.
    let a = &Connection::new(a.coeff().clone(), lattice)?;
    let aligned = align(a, p)?;
    let n = a.dim();

    // Diagonalize A_{0,s}; a constant conjugation preserves alignment.
    let q_jf = jordan_form(&aligned.semisimple_part, GroupTag::Gl)?;
    let q = q_jf.transition().clone();
    let q_inv = q.inverse().expect("transition is invertible");
    let conj = GaugeMap::constant(&q_inv, GroupTag::Gl)?;
    let in_torus = conj.apply(&aligned.base)?;
    let h: Vec<Cyclotomic> = {
        let d = q_jf.reconstruct();
        (0..n).map(|i| d.at(i, i).clone()).collect()
    };

    let coch = find_cocharacter(&h, lattice);
    let m = coch.multiplier;
    let torus = coch.torus();

    // X = m * (sum of aligned coefficients) + diag(-f_i).
    let mut coeff_sum = Matrix::<Cyclotomic>::zero(n, n);
    let deg = in_torus.degree().map(|d| d.to_integer()).unwrap_or(0);
    for r in 0..=deg {
        coeff_sum = coeff_sum.add(
            &in_torus
                .coefficient_matrix(Exponent::from_integer(r))
                .expect("aligned coefficients are exact"),
        );
    }
    let x = coeff_sum
        .scale(&Cyclotomic::from_integer(m as i64))
        .add(&coch.derivative_term());

    // Full chain on the pulled-back input, replay-verified.
    let pre = conj.compose(&aligned.witness);
    let chain = vec![pre.pullback(m), torus];
    let replay = apply_chain(&chain, &a.pullback(m))?;
    let expected = Connection::from_constant(&x, a.tag())?;
    assert!(
        replay.agrees_with(&expected),
        "standard-form chain must replay to X dlog z"
    );
    Ok(Standardized {
        multiplier: m,
        standard: x,
        chain,
        aligned,
    })
}

/// Result of the zero-standard-form reduction.
#[derive(Debug, Clone)]
pub struct ZeroStandardized {
    /// The covering degree `m' * l`.
    pub cover: u64,
    /// The zero-standard constant matrix.
    pub zero_standard: Matrix<Cyclotomic>,
    /// Gauge chain with `chain[pullback(cover, X dlog z)] = X' dlog z`.
    pub chain: Vec<GaugeMap>,
    /// Jordan data of the input constant matrix.
    pub jordan: JordanForm,
}

/// Transform a standard form `X dlog z` into zero standard form: conjugate
/// to Jordan form, clear the denominators of the rational eigenvalue
/// differences with a factor `l`, and apply the cocharacter torus for
/// `l X_s`.  The result satisfies the zero-class property by construction
/// (asserted, not assumed).
pub fn zero_standardize(x: &Matrix<Cyclotomic>, lattice: GroupTag) -> Result<ZeroStandardized> {
    let jf = jordan_form(
        x,
        if lattice == GroupTag::Sl {
            GroupTag::Sl
        } else {
            GroupTag::Gl
        },
    )?;
    let j = jf.reconstruct();
    let n = x.rows();

    // l clears every rational eigenvalue difference to an integer.
    let eigen = jf.eigenvalues();
    let mut l = BigInt::one();
    for a in &eigen {
        for b in &eigen {
            if let Some(q) = a.sub_ref(b).rational_part() {
                l = l.lcm(q.denom());
            }
        }
    }
    let l = u64::try_from(&l).expect("small denominators");

    let h: Vec<Cyclotomic> = (0..n)
        .map(|i| {
            j.at(i, i)
                .scale(&Rational::from_integer(BigInt::from(l as i64)))
        })
        .collect();
    let coch = find_cocharacter(&h, lattice);
    let cover = coch.multiplier * l;

    let x_prime = j
        .scale(&Cyclotomic::from_integer(cover as i64))
        .add(&coch.derivative_term());
    assert!(
        is_zero_class(&x_prime)?,
        "the cocharacter construction must land in the zero class"
    );

    // Chain: constant conjugation into Jordan form, then the torus.
    let p = jf.transition().clone();
    let p_inv = p.inverse().expect("transition is invertible");
    let conj_tag = if lattice == GroupTag::Sl && p.det().is_one() {
        GroupTag::Sl
    } else {
        GroupTag::Gl
    };
    let conj = GaugeMap::constant(&p_inv, conj_tag)?;
    let chain = vec![conj, coch.torus()];

    let tag = if lattice == GroupTag::Sl {
        GroupTag::Sl
    } else {
        GroupTag::Gl
    };
    let input = Connection::from_constant(x, tag)?;
    let replay = apply_chain(&chain, &input.pullback(cover))?;
    let expected = Connection::from_constant(&x_prime, tag)?;
    assert!(
        replay.agrees_with(&expected),
        "zero-standard chain must replay to X' dlog z"
    );
    Ok(ZeroStandardized {
        cover,
        zero_standard: x_prime,
        chain,
        jordan: jf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;
    use crate::series::Series;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn cr(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::ratio(n, d)
    }

    fn e(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    #[test]
    fn cocharacter_parity_for_sl2() {
        // h = (n/2, -n/2): m = 2 with f = (n, -n) for odd n, m = 1 with
        // f = (n/2, -n/2) for even n.
        for n in 1..=5i64 {
            let h = [cr(n, 2), cr(-n, 2)];
            let c = find_cocharacter(&h, GroupTag::Sl);
            if n % 2 == 1 {
                assert_eq!(c.multiplier, 2, "n = {n}");
                assert_eq!(c.exponents, vec![n, -n]);
            } else {
                assert_eq!(c.multiplier, 1, "n = {n}");
                assert_eq!(c.exponents, vec![n / 2, -n / 2]);
            }
        }
    }

    #[test]
    fn sl_multiplier_is_minimal() {
        // No m' < m admits a lattice solution: the constraint
        // sum n_c g_c = -m' S is solvable over Z iff gcd(n_c) | m' S.
        let cases: Vec<Vec<Cyclotomic>> = alloc::vec![
            alloc::vec![cr(3, 2), cr(-3, 2)],
            alloc::vec![cr(1, 2), cr(1, 2), ci(-1)],
            alloc::vec![cr(5, 2), cr(-1, 2), ci(-2)],
        ];
        for h in cases {
            let c = find_cocharacter(&h, GroupTag::Sl);
            // recompute class sizes and offset sum independently
            let mut classes: Vec<Vec<usize>> = Vec::new();
            'outer: for i in 0..h.len() {
                for class in classes.iter_mut() {
                    let d = h[i].sub_ref(&h[class[0]]);
                    if d.rational_part().map(|q| q.is_integer()).unwrap_or(false) {
                        class.push(i);
                        continue 'outer;
                    }
                }
                classes.push(alloc::vec![i]);
            }
            let g: i64 = classes
                .iter()
                .fold(0i64, |acc, c| acc.gcd(&(c.len() as i64)));
            let s: i64 = classes
                .iter()
                .flat_map(|c| {
                    c.iter().map(|&i| {
                        let q = h[i].sub_ref(&h[c[0]]).rational_part().unwrap();
                        i64::try_from(q.numer()).unwrap()
                    })
                })
                .sum();
            for m_smaller in 1..c.multiplier {
                assert_ne!(
                    (m_smaller as i64 * s).rem_euclid(g),
                    0,
                    "m' = {m_smaller} would already be solvable"
                );
            }
        }
    }

    #[test]
    fn gl_lattice_needs_no_cover() {
        for h in [
            vec![cr(1, 2), cr(-1, 2)],
            vec![cr(1, 3), ci(0), cr(-1, 3)],
            vec![ci(2), Cyclotomic::root_of_unity(3, 1), ci(0)],
        ] {
            let c = find_cocharacter(&h, GroupTag::Gl);
            assert_eq!(c.multiplier, 1);
        }
    }

    #[test]
    fn balanced_exponent_choice() {
        // h = (1, 0, -1), gl: the balanced solution is f = (1, 0, -1).
        let h = [ci(1), ci(0), ci(-1)];
        let c = find_cocharacter(&h, GroupTag::Gl);
        assert_eq!(c.exponents, vec![1, 0, -1]);
    }

    #[test]
    fn torus_transforms_check() {
        // Y = z d/dz (t) t^-1 is the constant diag(-f_i), and
        // Ad(t)(B z^{m r}) = B for B in the integer eigenspaces.
        let h = [cr(3, 2), cr(-1, 2), ci(5)];
        let c = find_cocharacter(&h, GroupTag::Sl);
        let t = c.torus();
        let zero = Connection::zero(3, GroupTag::Sl);
        let out = t.apply(&zero).unwrap();
        let y = Connection::from_constant(&c.derivative_term(), GroupTag::Sl).unwrap();
        assert_eq!(out, y);
        let m = c.multiplier as i64;
        for (i, j) in [(0usize, 1usize), (1, 0)] {
            // h_i - h_j integral here: r = h_i - h_j.
            let r = h[i].sub_ref(&h[j]).rational_part().unwrap().to_integer();
            let r: i64 = i64::try_from(&r).unwrap();
            let mut b = Matrix::<Series>::zero(3, 3);
            b.set(i, j, Series::monomial(ci(1), e(m * r)));
            let conj = t.matrix().mul(&b).mul(t.inverse_matrix());
            let mut expected = Matrix::<Series>::zero(3, 3);
            expected.set(i, j, Series::one());
            assert_eq!(conj, expected);
        }
    }

    fn sl2_family(n: i64) -> Connection {
        let mut m = Matrix::<Series>::zero(2, 2);
        m.set(0, 0, Series::constant(cr(n, 2)));
        m.set(1, 1, Series::constant(cr(-n, 2)));
        m.set(0, 1, Series::monomial(ci(1), e(n)));
        Connection::new(m, GroupTag::Sl).unwrap()
    }

    #[test]
    fn standardize_sl2_family() {
        // Minimal multiplier 2, 1, 2, 1 for n = 1..4; for n = 2 the standard
        // form is the nilpotent [[0, 1], [0, 0]].
        for n in 1..=4i64 {
            let a = sl2_family(n);
            let st = standardize(&a, GroupTag::Sl, e(4 * n + 6)).unwrap();
            assert_eq!(st.multiplier, if n % 2 == 1 { 2 } else { 1 }, "n = {n}");
            assert!(st.standard.trace().is_zero());
        }
        // For n = 2 the standard form is the regular nilpotent (a single
        // 2-block at eigenvalue 0, up to the frame ordering).
        let st2 = standardize(&sl2_family(2), GroupTag::Sl, e(14)).unwrap();
        let jf = jordan_form(&st2.standard, GroupTag::Sl).unwrap();
        assert_eq!(jf.blocks(), &[(ci(0), 2)]);
    }

    #[test]
    fn standardize_constant_is_trivial() {
        let x = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 2), ci(0)],
            alloc::vec![ci(0), cr(-1, 2)],
        ]);
        let a = Connection::from_constant(&x, GroupTag::Gl).unwrap();
        let st = standardize(&a, GroupTag::Gl, e(8)).unwrap();
        assert_eq!(st.multiplier, 1);
        // X = sum + Y; for the gl lattice the balanced f may shift the
        // diagonal by a constant, but the ad-eigenvalues stay fixed.
        assert_eq!(st.standard.rows(), 2);
    }

    #[test]
    fn zero_standardize_examples() {
        // J(0,2) is already zero-standard.
        let j02 = jordan_block(&ci(0), 2);
        let z = zero_standardize(&j02, GroupTag::Sl).unwrap();
        assert_eq!(z.cover, 1);
        assert_eq!(z.zero_standard, j02);

        // diag(1/2, -1/2): l = 1, m' = 2, f = (1, -1), X' = 0.
        let half = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 2), ci(0)],
            alloc::vec![ci(0), cr(-1, 2)],
        ]);
        let z = zero_standardize(&half, GroupTag::Sl).unwrap();
        assert_eq!(z.cover, 2);
        assert!(z.zero_standard.is_zero_matrix());

        // diag(1/3, 0, -1/3), gl: l = 3, m' = 1, f = (1, 0, -1), X' = 0.
        let thirds = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 3), ci(0), ci(0)],
            alloc::vec![ci(0), ci(0), ci(0)],
            alloc::vec![ci(0), ci(0), cr(-1, 3)],
        ]);
        let z = zero_standardize(&thirds, GroupTag::Gl).unwrap();
        assert_eq!(z.cover, 3);
        assert!(z.zero_standard.is_zero_matrix());
    }

    #[test]
    fn zero_standard_output_is_zero_class() {
        let x = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(5, 6), ci(1)],
            alloc::vec![ci(0), cr(-5, 6)],
        ]);
        let z = zero_standardize(&x, GroupTag::Sl).unwrap();
        assert!(is_zero_class(&z.zero_standard).unwrap());
        // replay identity is asserted inside; also check the cover divides
        // predictable data: l = 3 here (difference 5/3), with parity forcing
        // m' = 2 or 1 depending on the scaled datum.
        assert!(z.cover % 3 == 0);
    }
}
