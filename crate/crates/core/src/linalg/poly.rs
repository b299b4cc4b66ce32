//! Polynomials over the cyclotomic scalars, little-endian, used for
//! characteristic polynomials and the eigenvalue search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{sqrt_rational, Cyclotomic, Rational};

/// Drop trailing zero coefficients.
pub fn trim(p: &mut Vec<Cyclotomic>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub fn degree(p: &[Cyclotomic]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

/// Exact evaluation by Horner's rule.
pub fn eval(p: &[Cyclotomic], x: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for c in p.iter().rev() {
        acc = acc.mul_ref(x).add_ref(c);
    }
    acc
}

/// Synthetic division by `(X - root)`; the remainder must vanish.
pub fn divide_by_linear(p: &[Cyclotomic], root: &Cyclotomic) -> Vec<Cyclotomic> {
    let d = degree(p);
    assert!(d >= 1);
    let mut quotient = vec![Cyclotomic::zero(); d];
    let mut carry = Cyclotomic::zero();
    for i in (0..=d).rev() {
        let c = p[i].add_ref(&carry);
        if i == 0 {
            debug_assert!(c.is_zero(), "division by (X - root) must be exact");
            break;
        }
        quotient[i - 1] = c.clone();
        carry = c.mul_ref(root);
    }
    quotient
}

/// The coefficients as rationals, when the whole polynomial is rational.
pub fn rational_coefficients(p: &[Cyclotomic]) -> Option<Vec<Rational>> {
    p.iter().map(|c| c.rational_part()).collect()
}

fn divisors_bounded(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(1_000_000_000_000_u64) {
        return None;
    }
    let n_u = u64::try_from(&n).ok()?;
    if n_u == 0 {
        return Some(vec![]);
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while (d as u128) * (d as u128) <= n_u as u128 {
        if n_u % d == 0 {
            out.push(BigInt::from(d));
            if d != n_u / d {
                out.push(BigInt::from(n_u / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// All rational roots of a rational-coefficient polynomial, by clearing
/// denominators and testing divisor candidates `p/q` of the trailing and
/// leading coefficients.  Returns distinct roots; multiplicities are found
/// by repeated deflation at the caller.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c = coeffs.to_vec();
    while c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // Strip powers of X: zero roots.
    let mut low = 0;
    while low < c.len() && c[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rational::zero());
        c.drain(0..low);
    }
    if c.len() <= 1 {
        return roots;
    }
    // Clear denominators.
    let mut denom_lcm = BigInt::one();
    for x in &c {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let trailing = &ints[0];
    let leading = ints.last().unwrap();
    let (Some(ps), Some(qs)) = (divisors_bounded(trailing), divisors_bounded(leading)) else {
        return roots;
    };
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone());
                if roots.contains(&cand) {
                    continue;
                }
                let val = eval_rational(&c, &cand);
                if val.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn eval_rational(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Roots of a monic-or-not quadratic with rational coefficients, provided
/// the discriminant has a square root among the cyclotomics we construct.
pub fn quadratic_roots(p: &[Cyclotomic]) -> Option<(Cyclotomic, Cyclotomic)> {
    if degree(p) != 2 {
        return None;
    }
    let a = p[2].rational_part()?;
    let b = p[1].rational_part()?;
    let c = p[0].rational_part()?;
    let disc = &b * &b - Rational::from_integer(BigInt::from(4)) * &a * &c;
    let root = sqrt_rational(&disc)?;
    let two_a_inv =
        Cyclotomic::from_rational((Rational::from_integer(BigInt::from(2)) * &a).recip());
    let minus_b = Cyclotomic::from_rational(-b);
    let r1 = minus_b.add_ref(&root).mul_ref(&two_a_inv);
    let r2 = minus_b.sub_ref(&root).mul_ref(&two_a_inv);
    Some((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i64;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn eval_and_deflate() {
        // (x - 1)(x - 2) = x^2 - 3x + 2
        let p = vec![ci(2), ci(-3), ci(1)];
        assert!(eval(&p, &ci(1)).is_zero());
        assert!(eval(&p, &ci(2)).is_zero());
        assert!(!eval(&p, &ci(3)).is_zero());
        let q = divide_by_linear(&p, &ci(1));
        assert_eq!(q, vec![ci(-2), ci(1)]);
    }

    #[test]
    fn rational_root_search() {
        // 6x^3 - 5x^2 - 2x + 1 has roots 1, 1/3, -1/2
        let p = [rat_i64(1, 1), rat_i64(-2, 1), rat_i64(-5, 1), rat_i64(6, 1)];
        let mut roots = rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![rat_i64(-1, 2), rat_i64(1, 3), rat_i64(1, 1)]);
    }

    #[test]
    fn quadratic_with_cyclotomic_roots() {
        // x^2 + x + 1 has roots zeta_3, zeta_3^2
        let p = vec![ci(1), ci(1), ci(1)];
        let (r1, r2) = quadratic_roots(&p).unwrap();
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert!((r1 == z3 && r2 == z3.mul_ref(&z3)) || (r2 == z3 && r1 == z3.mul_ref(&z3)));
    }
}
