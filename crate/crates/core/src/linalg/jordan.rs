//! Jordan normal forms over the cyclotomic scalars, with exact transition
//! matrices, Jordan decompositions, and ad-eigenvalue analysis.
//!
//! The eigenvalue search factors the characteristic polynomial by probing
//! supplied candidates and diagonal entries, extracting rational roots, and
//! solving rational-discriminant quadratics.  Everything found is verified
//! by exact substitution; anything beyond that search is reported as
//! [`Error::EigenvaluesNotFound`] rather than approximated.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;
use super::poly;
use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Rational};
use crate::GroupTag;

/// The `a x a` Jordan block with diagonal entries `x` and a unit
/// superdiagonal.
pub fn jordan_block(x: &Cyclotomic, a: usize) -> Matrix<Cyclotomic> {
    Matrix::from_fn(a, a, |r, c| {
        if r == c {
            x.clone()
        } else if c == r + 1 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    })
}

/// A matrix brought to Jordan normal form: the block data together with an
/// exact transition matrix `P` satisfying `P^-1 X P = blockdiag(J(x, a))`.
///
/// Blocks are kept in the canonical order: eigenvalues sorted by their
/// coordinate order, sizes descending within an eigenvalue, which makes the
/// block list a deterministic classification key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanForm {
    blocks: Vec<(Cyclotomic, usize)>,
    transition: Matrix<Cyclotomic>,
    tag: GroupTag,
}

impl JordanForm {
    /// Build directly from block data (the matrix is the block diagonal
    /// itself, the transition is the identity).  Blocks are sorted into the
    /// canonical order.
    pub fn from_blocks(blocks: Vec<(Cyclotomic, usize)>, tag: GroupTag) -> Result<Self> {
        let mut blocks = blocks;
        sort_blocks(&mut blocks);
        let n: usize = blocks.iter().map(|(_, a)| a).sum();
        let jf = JordanForm {
            blocks,
            transition: Matrix::identity(n),
            tag,
        };
        if tag == GroupTag::Sl && !jf.trace().is_zero() {
            return Err(Error::TraceNonzero);
        }
        Ok(jf)
    }

    pub fn blocks(&self) -> &[(Cyclotomic, usize)] {
        &self.blocks
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn transition(&self) -> &Matrix<Cyclotomic> {
        &self.transition
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, a)| a).sum()
    }

    /// The block-diagonal Jordan matrix.
    pub fn reconstruct(&self) -> Matrix<Cyclotomic> {
        let mats: Vec<Matrix<Cyclotomic>> = self
            .blocks
            .iter()
            .map(|(x, a)| jordan_block(x, *a))
            .collect();
        Matrix::block_diag(&mats)
    }

    /// Eigenvalues listed with algebraic multiplicity, in block order.
    pub fn eigenvalues(&self) -> Vec<Cyclotomic> {
        let mut out = Vec::with_capacity(self.dim());
        for (x, a) in &self.blocks {
            for _ in 0..*a {
                out.push(x.clone());
            }
        }
        out
    }

    /// Sum of `eigenvalue * size` over the blocks.
    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for (x, a) in &self.blocks {
            t = t.add_ref(&x.scale(&Rational::from_integer(BigInt::from(*a as i64))));
        }
        t
    }

    /// Start offsets of the blocks inside the Jordan matrix.
    pub fn block_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut off = 0;
        for (_, a) in &self.blocks {
            out.push(off);
            off += a;
        }
        out
    }
}

pub(crate) fn sort_blocks(blocks: &mut [(Cyclotomic, usize)]) {
    blocks.sort_by(|(x, a), (y, b)| x.canonical_cmp(y).then(b.cmp(a)));
}

/// Structural detection: block data of a matrix that already is in Jordan
/// normal form (any block order), `None` otherwise.
pub fn jordan_blocks_of(x: &Matrix<Cyclotomic>) -> Option<Vec<(Cyclotomic, usize)>> {
    if !x.is_square() {
        return None;
    }
    let n = x.rows();
    let mut super_one = vec![false; n.saturating_sub(1)];
    for r in 0..n {
        for c in 0..n {
            let e = x.at(r, c);
            if r == c {
                continue;
            }
            if c == r + 1 {
                if e.is_one() {
                    super_one[r] = true;
                } else if !e.is_zero() {
                    return None;
                }
            } else if !e.is_zero() {
                return None;
            }
        }
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 0..n {
        let continues = i + 1 < n && super_one[i];
        if continues {
            if x.at(i, i) != x.at(i + 1, i + 1) {
                return None; // unit superdiagonal across distinct eigenvalues
            }
        } else {
            blocks.push((x.at(start, start).clone(), i - start + 1));
            start = i + 1;
        }
    }
    Some(blocks)
}

/// Find the eigenvalues of `x` with multiplicity.
///
/// `extra` contains user-supplied candidates which are peeled first (each is
/// verified by exact substitution into the characteristic polynomial).
pub(crate) fn eigenvalue_multiset(
    x: &Matrix<Cyclotomic>,
    extra: &[Cyclotomic],
) -> Result<Vec<Cyclotomic>> {
    assert!(x.is_square());
    let n = x.rows();
    let mut p = x.char_poly();
    let mut found: Vec<Cyclotomic> = Vec::with_capacity(n);
    let mut candidates: Vec<Cyclotomic> = Vec::new();
    for c in extra {
        if !candidates.contains(c) {
            candidates.push(c.clone());
        }
    }
    for i in 0..n {
        let c = x.at(i, i).clone();
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    for c in &candidates {
        while poly::degree(&p) >= 1 && poly::eval(&p, c).is_zero() {
            found.push(c.clone());
            p = poly::divide_by_linear(&p, c);
        }
    }
    loop {
        let d = poly::degree(&p);
        if d == 0 {
            break;
        }
        if d == 1 {
            let root = p[0].neg_ref().mul_ref(&p[1].inv()?);
            found.push(root);
            break;
        }
        if let Some(rc) = poly::rational_coefficients(&p) {
            let roots = poly::rational_roots(&rc);
            let mut progressed = false;
            for r in roots {
                let c = Cyclotomic::from_rational(r);
                while poly::degree(&p) >= 1 && poly::eval(&p, &c).is_zero() {
                    found.push(c.clone());
                    p = poly::divide_by_linear(&p, &c);
                    progressed = true;
                }
            }
            if progressed {
                continue;
            }
            if poly::degree(&p) == 2 {
                if let Some((r1, r2)) = poly::quadratic_roots(&p) {
                    found.push(r1);
                    found.push(r2);
                    break;
                }
            }
        }
        return Err(Error::EigenvaluesNotFound);
    }
    debug_assert_eq!(found.len(), n);
    Ok(found)
}

/// Compute the Jordan normal form of `x` with an exact transition matrix.
pub fn jordan_form(x: &Matrix<Cyclotomic>, tag: GroupTag) -> Result<JordanForm> {
    let eigen = eigenvalue_multiset(x, &[])?;
    build_jordan(x, tag, eigen)
}

/// As [`jordan_form`], with a caller-supplied eigenvalue list (with
/// multiplicity) that is verified against the characteristic polynomial.
pub fn jordan_form_with_eigenvalues(
    x: &Matrix<Cyclotomic>,
    tag: GroupTag,
    supplied: &[Cyclotomic],
) -> Result<JordanForm> {
    if supplied.len() != x.rows() {
        return Err(Error::EigenvalueVerification);
    }
    // Verify: the product of (X - c) over the list must be the
    // characteristic polynomial.
    let mut prod = vec![Cyclotomic::one()];
    for c in supplied {
        // multiply by (X - c)
        let mut next = vec![Cyclotomic::zero(); prod.len() + 1];
        for (i, a) in prod.iter().enumerate() {
            next[i + 1] = next[i + 1].add_ref(a);
            next[i] = next[i].sub_ref(&a.mul_ref(c));
        }
        prod = next;
    }
    if prod != x.char_poly() {
        return Err(Error::EigenvalueVerification);
    }
    build_jordan(x, tag, supplied.to_vec())
}

fn in_span(vectors: &[Vec<Cyclotomic>], v: &[Cyclotomic], n: usize) -> bool {
    if vectors.is_empty() {
        return v.iter().all(|c| c.is_zero());
    }
    let m = Matrix::from_fn(n, vectors.len(), |r, c| vectors[c][r].clone());
    m.solve(v).is_some()
}

fn build_jordan(
    x: &Matrix<Cyclotomic>,
    tag: GroupTag,
    eigen: Vec<Cyclotomic>,
) -> Result<JordanForm> {
    let n = x.rows();
    if tag == GroupTag::Sl {
        if !x.trace().is_zero() {
            return Err(Error::TraceNonzero);
        }
    }
    // Group eigenvalues with multiplicity.
    let mut distinct: Vec<(Cyclotomic, usize)> = Vec::new();
    for e in eigen {
        match distinct.iter_mut().find(|(x0, _)| *x0 == e) {
            Some((_, m)) => *m += 1,
            None => distinct.push((e, 1)),
        }
    }
    // Jordan chains per eigenvalue (Gantmacher's construction).
    let mut all_chains: Vec<(Cyclotomic, Vec<Vec<Vec<Cyclotomic>>>)> = Vec::new();
    for (lambda, mult) in &distinct {
        let m = x.sub(&Matrix::from_fn(n, n, |r, c| {
            if r == c {
                lambda.clone()
            } else {
                Cyclotomic::zero()
            }
        }));
        // kernels[i] = basis of ker (X - lambda)^i
        let mut kernels: Vec<Vec<Vec<Cyclotomic>>> = vec![Vec::new()];
        let mut power = Matrix::<Cyclotomic>::identity(n);
        let top_height = loop {
            power = power.mul(&m);
            let k = power.kernel_basis();
            let dim = k.len();
            kernels.push(k);
            if dim >= *mult {
                break kernels.len() - 1;
            }
            assert!(kernels.len() <= n + 1, "kernel chain must stabilize");
        };
        let mut chains: Vec<Vec<Vec<Cyclotomic>>> = Vec::new();
        for height in (1..=top_height).rev() {
            let mut covered: Vec<Vec<Cyclotomic>> = kernels[height - 1].clone();
            for ch in &chains {
                if ch.len() > height {
                    covered.push(ch[height - 1].clone());
                }
            }
            for v in &kernels[height] {
                if !in_span(&covered, v, n) {
                    let mut chain = vec![v.clone()];
                    let mut cur = v.clone();
                    for _ in 1..height {
                        cur = m.apply_vec(&cur);
                        chain.push(cur.clone());
                    }
                    chain.reverse(); // eigenvector first
                    covered.push(v.clone());
                    chains.push(chain);
                }
            }
        }
        let total: usize = chains.iter().map(|c| c.len()).sum();
        assert_eq!(total, *mult, "chain lengths must exhaust the multiplicity");
        all_chains.push((lambda.clone(), chains));
    }
    // Canonical block order, then assemble columns.
    let mut keyed: Vec<(Cyclotomic, Vec<Vec<Cyclotomic>>)> = Vec::new();
    for (lambda, chains) in all_chains {
        for chain in chains {
            keyed.push((lambda.clone(), chain));
        }
    }
    keyed.sort_by(|(x0, c0), (x1, c1)| x0.canonical_cmp(x1).then(c1.len().cmp(&c0.len())));
    let blocks: Vec<(Cyclotomic, usize)> =
        keyed.iter().map(|(x0, c)| (x0.clone(), c.len())).collect();
    let mut columns: Vec<Vec<Cyclotomic>> = Vec::with_capacity(n);
    for (_, chain) in &keyed {
        for v in chain {
            columns.push(v.clone());
        }
    }
    let mut transition = Matrix::from_fn(n, n, |r, c| columns[c][r].clone());

    if tag == GroupTag::Sl {
        normalize_transition_det(&mut transition, &blocks);
    }

    let jf = JordanForm {
        blocks,
        transition,
        tag,
    };
    debug_assert!({
        let p_inv = jf.transition.inverse().expect("transition is invertible");
        p_inv.mul(x).mul(&jf.transition) == jf.reconstruct()
    });
    Ok(jf)
}

/// Scale a whole Jordan chain so that the transition has determinant one.
/// Scaling every column of one block by `u` keeps `P^-1 X P` in Jordan form
/// and multiplies the determinant by `u^size`.  When no suitable root of the
/// determinant exists in a cyclotomic field the transition is left as
/// computed.
fn normalize_transition_det(p: &mut Matrix<Cyclotomic>, blocks: &[(Cyclotomic, usize)]) {
    let d = p.det();
    if d.is_one() {
        return;
    }
    let Ok(d_inv) = d.inv() else { return };
    let mut start = 0;
    // Prefer a size-1 block: scaling a single eigenvector column is exact.
    for (_, a) in blocks {
        if *a == 1 {
            for r in 0..p.rows() {
                p.set(r, start, p.at(r, start).mul_ref(&d_inv));
            }
            return;
        }
        start += a;
    }
    start = 0;
    for (_, a) in blocks {
        if let Some(u) = nth_root_scalar(&d_inv, *a as u64) {
            for col in start..start + a {
                for r in 0..p.rows() {
                    p.set(r, col, p.at(r, col).mul_ref(&u));
                }
            }
            return;
        }
        start += a;
    }
}

/// An `a`-th root of a scalar, when one exists among rationals
/// times roots of unity.
fn nth_root_scalar(c: &Cyclotomic, a: u64) -> Option<Cyclotomic> {
    if let Some(r) = c.rational_part() {
        if r.is_zero() {
            return Some(Cyclotomic::zero());
        }
        let num = r.numer().abs();
        let den = r.denom().clone();
        let rn = num.nth_root(a as u32);
        let rd = den.nth_root(a as u32);
        if num != rn.clone().pow(a as u32) || den != rd.clone().pow(a as u32) {
            return None;
        }
        let base = Cyclotomic::from_rational(Rational::new(rn, rd));
        if r.is_negative() {
            // (base * zeta_{2a})^a = -base^a when a is even; for odd a use -base.
            if a % 2 == 1 {
                return Some(base.neg_ref());
            }
            return Some(base.mul_ref(&Cyclotomic::root_of_unity(2 * a, 1)));
        }
        return Some(base);
    }
    // Root of unity: find the order and take the index up.
    let mut power = c.clone();
    let mut order = 1u64;
    while !power.is_one() {
        power = power.mul_ref(c);
        order += 1;
        if order > 512 {
            return None;
        }
    }
    for j in 0..order {
        if Cyclotomic::root_of_unity(order, j as i64) == *c {
            return Some(Cyclotomic::root_of_unity(order * a, j as i64));
        }
    }
    None
}

/// The Jordan decomposition `X = X_s + X_n` with `X_s` semisimple, `X_n`
/// nilpotent, and `[X_s, X_n] = 0`, computed by conjugating the
/// diagonal/strictly-upper split of the Jordan form back.
pub fn jordan_decomposition(
    x: &Matrix<Cyclotomic>,
) -> Result<(Matrix<Cyclotomic>, Matrix<Cyclotomic>)> {
    let jf = jordan_form(x, GroupTag::Gl)?;
    let n = x.rows();
    let j = jf.reconstruct();
    let d = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            j.at(r, c).clone()
        } else {
            Cyclotomic::zero()
        }
    });
    let nil = j.sub(&d);
    let p = jf.transition();
    let p_inv = p.inverse().expect("transition is invertible");
    let xs = p.mul(&d).mul(&p_inv);
    let xn = p.mul(&nil).mul(&p_inv);
    Ok((xs, xn))
}

/// The eigenvalue multiset of `ad X` acting on `gl_n`: all pairwise
/// differences `x_i - x_j` of the eigenvalues of `X`, canonically sorted.
pub fn ad_eigenvalues(x: &Matrix<Cyclotomic>) -> Result<Vec<Cyclotomic>> {
    let eigen = eigenvalue_multiset(x, &[])?;
    let mut out = Vec::with_capacity(eigen.len() * eigen.len());
    for a in &eigen {
        for b in &eigen {
            out.push(a.sub_ref(b));
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// True when zero is the only rational eigenvalue of `ad X`, i.e.
/// `x_i - x_j` rational forces `x_i = x_j`.
pub fn is_zero_class(x: &Matrix<Cyclotomic>) -> Result<bool> {
    for d in ad_eigenvalues(x)? {
        if let Some(q) = d.rational_part() {
            if !q.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn cr(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::ratio(n, d)
    }

    #[test]
    fn diagonal_matrix() {
        let x = Matrix::from_i64_rows(&[&[1, 0], &[0, 2]]);
        let jf = jordan_form(&x, GroupTag::Gl).unwrap();
        assert_eq!(jf.blocks(), &[(ci(1), 1), (ci(2), 1)]);
        let p = jf.transition();
        let p_inv = p.inverse().unwrap();
        assert_eq!(p_inv.mul(&x).mul(p), jf.reconstruct());
    }

    #[test]
    fn nilpotent_block_is_recognized() {
        let x = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let jf = jordan_form(&x, GroupTag::Sl).unwrap();
        assert_eq!(jf.blocks(), &[(ci(0), 2)]);
    }

    #[test]
    fn defective_matrix_with_double_eigenvalue() {
        // [[5, 1], [-4, 1]] has characteristic polynomial (t - 3)^2 and a
        // single 2-block.
        let x = Matrix::from_i64_rows(&[&[5, 1], &[-4, 1]]);
        let jf = jordan_form(&x, GroupTag::Gl).unwrap();
        assert_eq!(jf.blocks(), &[(ci(3), 2)]);
        let p = jf.transition();
        let p_inv = p.inverse().unwrap();
        assert_eq!(p_inv.mul(&x).mul(p), jf.reconstruct());
    }

    #[test]
    fn jordan_decomposition_identities() {
        let x = Matrix::from_i64_rows(&[&[5, 1], &[-4, 1]]);
        let (xs, xn) = jordan_decomposition(&x).unwrap();
        assert_eq!(xs.add(&xn), x);
        assert!(xs.commutator(&xn).is_zero_matrix());
        assert!(xn.mul(&xn).is_zero_matrix());
        // X_s is semisimple: here it must be diagonalizable with eigenvalue 3,
        // i.e. equal to 3I.
        assert_eq!(xs, Matrix::<Cyclotomic>::identity(2).scale(&ci(3)));
    }

    #[test]
    fn decomposition_of_jordan_block() {
        let j = jordan_block(&ci(3), 2);
        let (xs, xn) = jordan_decomposition(&j).unwrap();
        assert_eq!(xs, Matrix::<Cyclotomic>::identity(2).scale(&ci(3)));
        assert_eq!(xn, Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn diagonalizable_has_zero_nilpotent_part() {
        let x = Matrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        let (_, xn) = jordan_decomposition(&x).unwrap();
        assert!(xn.is_zero_matrix());
    }

    #[test]
    fn ad_eigenvalue_multiset() {
        let x = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 2), ci(0)],
            alloc::vec![ci(0), cr(-1, 2)],
        ]);
        let mut ad = ad_eigenvalues(&x).unwrap();
        ad.sort_by(|a, b| a.canonical_cmp(b));
        let mut expected = alloc::vec![ci(0), ci(0), ci(1), ci(-1)];
        expected.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(ad, expected);
    }

    #[test]
    fn zero_class_membership() {
        // diag(1/2, -1/2) has ad-eigenvalue 1, so it is not in the zero class.
        let x = Matrix::from_rows(alloc::vec![
            alloc::vec![cr(1, 2), ci(0)],
            alloc::vec![ci(0), cr(-1, 2)],
        ]);
        assert!(!is_zero_class(&x).unwrap());
        // J(0, 2) is nilpotent: all ad-eigenvalues vanish.
        assert!(is_zero_class(&jordan_block(&ci(0), 2)).unwrap());
        // diag(zeta_3, 0, -zeta_3): differences are irrational or zero.
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let y = Matrix::from_rows(alloc::vec![
            alloc::vec![z3.clone(), ci(0), ci(0)],
            alloc::vec![ci(0), ci(0), ci(0)],
            alloc::vec![ci(0), ci(0), z3.neg_ref()],
        ]);
        assert!(is_zero_class(&y).unwrap());
    }

    #[test]
    fn ad_eigenvalues_match_the_operator_spectrum() {
        // Oracle: the eigenvalue multiset of B -> XB - BX on the n^2-dim
        // matrix space, with algebraic multiplicities from kernel ranks of
        // high powers.
        let cases = [
            Matrix::from_i64_rows(&[&[5, 1], &[-4, 1]]),
            Matrix::from_rows(alloc::vec![
                alloc::vec![cr(1, 2), ci(1), ci(0)],
                alloc::vec![ci(0), cr(-1, 2), ci(2)],
                alloc::vec![ci(0), ci(0), ci(0)],
            ]),
            jordan_block(&ci(0), 3),
        ];
        for x in cases {
            let n = x.rows();
            let op = Matrix::from_fn(n * n, n * n, |p, q| {
                let (i, j) = (p / n, p % n);
                let (k, m) = (q / n, q % n);
                let mut v = Cyclotomic::zero();
                if j == m {
                    v = v.add_ref(x.at(i, k));
                }
                if i == k {
                    v = v.sub_ref(x.at(m, j));
                }
                v
            });
            let claimed = ad_eigenvalues(&x).unwrap();
            let mut distinct: Vec<(Cyclotomic, usize)> = Vec::new();
            for c in &claimed {
                match distinct.iter_mut().find(|(v, _)| v == c) {
                    Some((_, k)) => *k += 1,
                    None => distinct.push((c.clone(), 1)),
                }
            }
            let mut total = 0usize;
            for (lambda, mult) in &distinct {
                let shifted = op.sub(&Matrix::<Cyclotomic>::identity(n * n).scale(lambda));
                let algebraic = n * n - shifted.pow(n * n).rank();
                assert_eq!(algebraic, *mult, "multiplicity of {lambda}");
                total += algebraic;
            }
            assert_eq!(total, n * n, "claimed values exhaust the spectrum");
        }
    }

    #[test]
    fn supplied_eigenvalues_are_verified() {
        let x = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert!(jordan_form_with_eigenvalues(&x, GroupTag::Gl, &[ci(0), ci(0)]).is_ok());
        assert_eq!(
            jordan_form_with_eigenvalues(&x, GroupTag::Gl, &[ci(0), ci(1)]),
            Err(Error::EigenvalueVerification)
        );
    }

    #[test]
    fn sl_transition_is_unimodular() {
        let x = Matrix::from_i64_rows(&[&[0, 4], &[0, 0]]);
        let jf = jordan_form(&x, GroupTag::Sl).unwrap();
        assert!(jf.transition().det().is_one());
        let p_inv = jf.transition().inverse().unwrap();
        assert_eq!(p_inv.mul(&x).mul(jf.transition()), jf.reconstruct());
    }

    #[test]
    fn structural_jordan_detection() {
        let j = Matrix::block_diag(&[jordan_block(&ci(0), 2), jordan_block(&cr(1, 2), 1)]);
        let blocks = jordan_blocks_of(&j).unwrap();
        assert_eq!(blocks, alloc::vec![(ci(0), 2), (cr(1, 2), 1)]);
        let not_j = Matrix::from_i64_rows(&[&[0, 2], &[0, 0]]);
        assert!(jordan_blocks_of(&not_j).is_none());
        let mixed = Matrix::from_i64_rows(&[&[0, 1], &[0, 1]]);
        assert!(jordan_blocks_of(&mixed).is_none());
    }

    #[test]
    fn mixed_block_sizes_sorted_canonically() {
        // blockdiag(J(1,1), J(0,2), J(0,1)) scrambled by conjugation.
        let j = Matrix::block_diag(&[
            jordan_block(&ci(1), 1),
            jordan_block(&ci(0), 2),
            jordan_block(&ci(0), 1),
        ]);
        let p =
            Matrix::from_i64_rows(&[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 0, 1]]);
        let p_inv = p.inverse().unwrap();
        let x = p.mul(&j).mul(&p_inv);
        let jf = jordan_form(&x, GroupTag::Gl).unwrap();
        assert_eq!(jf.blocks(), &[(ci(0), 2), (ci(0), 1), (ci(1), 1)]);
        let t_inv = jf.transition().inverse().unwrap();
        assert_eq!(t_inv.mul(&x).mul(jf.transition()), jf.reconstruct());
    }
}
