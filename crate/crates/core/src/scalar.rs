//! Exact arithmetic in the cyclotomic fields `Q(zeta_N)`.
//!
//! The base field of every computation in this crate is the union of the
//! cyclotomic fields: rationals plus roots of unity are all that the
//! constructions over GL_n and SL_n ever need.  An element is stored as a
//! conductor `N` together with its coordinates in the power basis
//! `1, zeta_N, ..., zeta_N^(phi(N)-1)` modulo the `N`-th cyclotomic
//! polynomial.  Arithmetic results are canonicalized: reduced modulo the
//! cyclotomic polynomial and descended to the smallest conductor containing
//! the element, so equality is a coordinate comparison.
//!
//! Conductors congruent to 2 mod 4 are never stored (`Q(zeta_{2m}) =
//! Q(zeta_m)` for odd `m`), which makes the minimal conductor unique.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational numbers; the coordinate domain.
pub type Rational = num_rational::Ratio<BigInt>;

/// An element of a cyclotomic field `Q(zeta_N)`.
///
/// The stored representation is always valid (coordinate vector of length
/// `phi(N)`, reduced modulo the cyclotomic polynomial) but only the results
/// of arithmetic are conductor-minimal.  [`Cyclotomic::embed`] deliberately
/// returns a non-minimal representation; equality and ordering embed both
/// sides into the least common conductor first.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

pub(crate) fn rat_i64(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers for cyclotomic polynomials (little-endian).
// ---------------------------------------------------------------------------

fn zpoly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Exact division of integer polynomials; the divisor must be monic and the
/// division must be exact (both hold for cyclotomic factors of `x^n - 1`).
fn zpoly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                let t = &c * d;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    zpoly_trim(&mut quot);
    quot
}

/// The `n`-th cyclotomic polynomial, little-endian integer coefficients.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d(x)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            let phi_d = cyclotomic_polynomial(d);
            poly = zpoly_div_exact(&poly, &phi_d);
        }
    }
    poly
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers (little-endian).
// ---------------------------------------------------------------------------

fn qpoly_trim(p: &mut Vec<Rational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    qpoly_trim(&mut out);
    out
}

/// Remainder of `num` modulo `den`; `den` need not be monic.
fn qpoly_rem(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem: Vec<Rational> = num.to_vec();
    qpoly_trim(&mut rem);
    let dn = den.len() - 1;
    let lead = &den[dn];
    while rem.len() > dn {
        let k = rem.len() - 1 - dn;
        let c = rem.last().unwrap() / lead;
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                let t = &c * d;
                rem[k + i] -= t;
            }
        }
        rem.pop();
        qpoly_trim(&mut rem);
    }
    rem
}

impl Cyclotomic {
    // -- construction -------------------------------------------------------

    /// The zero element (conductor 1).
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    /// The unit element (conductor 1).
    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::one()],
        }
    }

    /// Inject a rational number.
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// Inject an integer.
    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// Shorthand for the rational `n/d`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat_i64(n, d))
    }

    /// The root of unity `omega_l^j = exp(2 pi i j / l)`, where `omega_l` is
    /// the canonical primitive `l`-th root `zeta_l`.  The result has order
    /// `l / gcd(l, j)` and is stored at its minimal conductor.
    pub fn root_of_unity(l: u64, j: i64) -> Self {
        assert!(l >= 1, "root of unity needs a positive order");
        let j = j.rem_euclid(l as i64) as u64;
        if j == 0 {
            return Self::one();
        }
        let g = j.gcd(&l);
        let (mut num, mut ord) = (j / g, l / g); // exp(2 pi i * num / ord), gcd(num, ord) = 1
        let mut negate = false;
        if ord % 2 == 0 && (ord / 2) % 2 == 1 {
            // zeta_{2m}^num = -zeta_m^((num - m)/2 mod m) for odd m, odd num.
            let m = ord / 2;
            num = ((num + m) / 2) % m;
            ord = m;
            negate = true;
            if num == 0 {
                let one = Self::one();
                return if negate { -&one } else { one };
            }
        }
        let dim = euler_phi(ord) as usize;
        let mut raw = vec![Rational::zero(); num as usize + 1];
        raw[num as usize] = if negate {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut out = Cyclotomic {
            conductor: ord,
            coeffs: reduce_mod_cyclo(raw, ord, dim),
        };
        out.minimize();
        out
    }

    /// Check validity of the stored representation (used by tests).
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The coordinate vector in the power basis at the stored conductor.
    pub fn coordinates(&self) -> &[Rational] {
        &self.coeffs
    }

    // -- predicates ----------------------------------------------------------

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.rational_part().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The rational value of this element, if it lies in `Q`.
    ///
    /// In the power basis a rational element has all non-constant
    /// coordinates zero, at any conductor, so no descent is needed.
    pub fn rational_part(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True when the element is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.rational_part()
            .map(|r| r.is_integer())
            .unwrap_or(false)
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.rational_part().is_some()
    }

    // -- arithmetic ----------------------------------------------------------

    fn unify(&self, other: &Self) -> (Vec<Rational>, Vec<Rational>, u64) {
        let n = self.conductor.lcm(&other.conductor);
        (self.raw_embed(n), other.raw_embed(n), n)
    }

    /// Coordinates of this element at conductor `m` (which the stored
    /// conductor must divide), reduced but not minimized.
    fn raw_embed(&self, m: u64) -> Vec<Rational> {
        debug_assert!(m % self.conductor == 0);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        reduce_mod_cyclo(raw, m, euler_phi(m) as usize)
    }

    fn from_raw(conductor: u64, raw: Vec<Rational>) -> Self {
        let dim = euler_phi(conductor) as usize;
        let mut out = Cyclotomic {
            conductor,
            coeffs: reduce_mod_cyclo(raw, conductor, dim),
        };
        out.minimize();
        out
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (mut a, b, n) = self.unify(other);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Self::from_raw(n, a)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let (mut a, b, n) = self.unify(other);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= y;
        }
        Self::from_raw(n, a)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let (a, b, n) = self.unify(other);
        Self::from_raw(n, qpoly_mul(&a, &b))
    }

    pub fn neg_ref(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The multiplicative inverse, by the extended Euclidean algorithm
    /// against the (irreducible) cyclotomic polynomial.
    pub fn inv(&self) -> crate::Result<Self> {
        if self.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        if let Some(r) = self.rational_part() {
            return Ok(Self::from_rational(r.recip()));
        }
        let n = self.conductor;
        let modulus: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        // Extended Euclid: maintain t with t * self = r (mod Phi_n).
        let mut r0: Vec<Rational> = modulus.clone();
        let mut r1: Vec<Rational> = self.coeffs.clone();
        qpoly_trim(&mut r1);
        let mut t0: Vec<Rational> = Vec::new();
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            // Divide r0 by r1.
            let mut rem = r0.clone();
            let dn = r1.len() - 1;
            let lead = r1.last().unwrap().clone();
            let mut q = vec![Rational::zero(); rem.len().saturating_sub(dn)];
            while rem.len() > dn {
                let k = rem.len() - 1 - dn;
                let c = rem.last().unwrap() / &lead;
                q[k] = c.clone();
                for (i, d) in r1.iter().enumerate() {
                    let t = &c * d;
                    rem[k + i] -= t;
                }
                rem.pop();
                qpoly_trim(&mut rem);
            }
            let qt1 = qpoly_mul(&q, &t1);
            let mut tnext = t0.clone();
            tnext.resize(tnext.len().max(qt1.len()), Rational::zero());
            for (i, c) in qt1.iter().enumerate() {
                tnext[i] -= c;
            }
            qpoly_trim(&mut tnext);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = tnext;
        }
        // r1 is a nonzero constant: gcd(self, Phi_n) = 1 since Phi_n is
        // irreducible over Q and self is nonzero.
        assert!(
            !r1.is_empty(),
            "cyclotomic polynomial must be coprime to a nonzero element"
        );
        let c = r1[0].recip();
        let inv: Vec<Rational> = t1.iter().map(|t| t * &c).collect();
        Ok(Self::from_raw(n, inv))
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> crate::Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(acc)
    }

    // -- conductor management ------------------------------------------------

    /// Re-represent the element at conductor `m`; `m` must be a multiple of
    /// the stored conductor.  The result is intentionally *not* descended,
    /// so that towers `Q(zeta_N)` in `Q(zeta_M)` can be worked in directly;
    /// canonicalization through arithmetic is the identity on the value.
    pub fn embed(&self, m: u64) -> crate::Result<Self> {
        if m == 0 || m % self.conductor != 0 {
            return Err(crate::Error::NotASubfield {
                from: self.conductor,
                to: m,
            });
        }
        Ok(Cyclotomic {
            conductor: m,
            coeffs: self.raw_embed(m),
        })
    }

    /// Apply the Galois automorphism `zeta_N -> zeta_N^t`; `t` must be
    /// coprime to the conductor.
    fn automorphism(&self, t: u64) -> Self {
        debug_assert!(t.gcd(&self.conductor) == 1);
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((j as u64 * t) % n) as usize;
                raw[idx] += c;
            }
        }
        let dim = euler_phi(n) as usize;
        Cyclotomic {
            conductor: n,
            coeffs: reduce_mod_cyclo(raw, n, dim),
        }
    }

    /// Descend to the minimal conductor containing this element.
    fn minimize(&mut self) {
        loop {
            let n = self.conductor;
            if n == 1 {
                return;
            }
            let mut descended = false;
            for p in prime_divisors(n) {
                let target = n / p;
                if self.try_descend(target) {
                    descended = true;
                    break;
                }
            }
            if !descended {
                return;
            }
        }
    }

    /// Attempt to re-express the element at conductor `target` (a divisor of
    /// the current conductor).  Uses the Galois criterion: the element lies
    /// in `Q(zeta_target)` iff it is fixed by every automorphism
    /// `zeta -> zeta^t` with `t = 1 mod target`.
    fn try_descend(&mut self, target: u64) -> bool {
        let n = self.conductor;
        debug_assert!(n % target == 0 && target < n);
        let mut t = 1 + target;
        while t < n {
            if t.gcd(&n) == 1 && self.automorphism(t).coeffs != self.coeffs {
                return false;
            }
            t += target;
        }
        // Fixed: solve for the coordinates in the smaller power basis.
        let dim_small = euler_phi(target) as usize;
        let dim_big = euler_phi(n) as usize;
        let step = (n / target) as usize;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(dim_small);
        for i in 0..dim_small {
            let mut raw = vec![Rational::zero(); i * step + 1];
            raw[i * step] = Rational::one();
            cols.push(reduce_mod_cyclo(raw, n, dim_big));
        }
        let solution = solve_columns(&cols, &self.coeffs, dim_big)
            .expect("Galois-fixed element must lie in the subfield");
        self.conductor = target;
        self.coeffs = solution;
        true
    }

    /// Deterministic total order: compare coordinates lexicographically at
    /// the least common conductor.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.unify(other);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Reduce a raw little-endian coordinate vector modulo the `n`-th cyclotomic
/// polynomial and pad to length `phi(n)`.
fn reduce_mod_cyclo(raw: Vec<Rational>, n: u64, dim: usize) -> Vec<Rational> {
    let mut out = if raw.len() > dim {
        let modulus: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        qpoly_rem(&raw, &modulus)
    } else {
        raw
    };
    out.resize(dim, Rational::zero());
    out
}

/// Solve `sum_i x_i cols[i] = rhs` exactly; `None` when inconsistent.
fn solve_columns(cols: &[Vec<Rational>], rhs: &[Rational], rows: usize) -> Option<Vec<Rational>> {
    let ncols = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = vec![usize::MAX; ncols];
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].clone().recip();
        for c in col..=ncols {
            aug[pivot_row][c] = &aug[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=ncols {
                    let t = &f * &aug[pivot_row][c];
                    aug[r][c] -= t;
                }
            }
        }
        pivots[col] = pivot_row;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for r in pivot_row..rows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rational::zero(); ncols];
    for col in 0..ncols {
        if pivots[col] != usize::MAX {
            sol[col] = aug[pivots[col]][ncols].clone();
        }
    }
    Some(sol)
}

/// A square root of the rational `r` inside a cyclotomic field, when the
/// squarefree part is small enough to factor: `sqrt(2) = zeta_8 + zeta_8^-1`,
/// `sqrt(-1) = zeta_4`, and Gauss sums for odd primes.
pub fn sqrt_rational(r: &Rational) -> Option<Cyclotomic> {
    if r.is_zero() {
        return Some(Cyclotomic::zero());
    }
    // sqrt(p/q) = sqrt(p*q) / q.
    let m = r.numer() * r.denom();
    let negative = m.is_negative();
    let mut m_abs = m.abs();
    let limit = BigInt::from(1_000_000_000_u64);
    let mut square = BigInt::one();
    let mut squarefree: Vec<u64> = Vec::new();
    let mut p = BigInt::from(2_u64);
    while &p * &p <= m_abs {
        let mut e = 0u32;
        while (&m_abs % &p).is_zero() {
            m_abs /= &p;
            e += 1;
        }
        if e > 0 {
            for _ in 0..e / 2 {
                square *= &p;
            }
            if e % 2 == 1 {
                squarefree.push(u64::try_from(&p).ok()?);
            }
        }
        p += 1;
        if p > limit {
            return None;
        }
    }
    if m_abs > BigInt::one() {
        squarefree.push(u64::try_from(&m_abs).ok()?);
    }
    if squarefree.iter().product::<u64>() > 100_000 {
        return None;
    }
    let mut root = Cyclotomic::from_rational(Rational::new(square, r.denom().clone()));
    if negative {
        root = root.mul_ref(&Cyclotomic::root_of_unity(4, 1));
    }
    for q in squarefree {
        root = root.mul_ref(&sqrt_prime(q));
    }
    debug_assert!(root.mul_ref(&root) == Cyclotomic::from_rational(r.clone()));
    Some(root)
}

/// A square root of the prime `p` as a cyclotomic number.
fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        // (zeta_8 - zeta_8^3)^2 = 2.
        return Cyclotomic::root_of_unity(8, 1).sub_ref(&Cyclotomic::root_of_unity(8, 3));
    }
    // Gauss sum g = sum_a (a|p) zeta_p^a with g^2 = (-1)^((p-1)/2) p.
    let mut raw = vec![Rational::zero(); p as usize];
    for a in 1..p {
        let sym = legendre(a, p);
        raw[a as usize] = rat_int(sym);
    }
    let g = Cyclotomic::from_raw(p, raw);
    if p % 4 == 1 {
        g
    } else {
        // g^2 = -p, and (zeta_4 g)^2 = p.
        Cyclotomic::root_of_unity(4, 1).mul_ref(&g)
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    // Euler's criterion by fast modular exponentiation.
    let mut result: u128 = 1;
    let mut base = (a % p) as u128;
    let mut e = (p - 1) / 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if result == 1 {
        1
    } else if result == m - 1 {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Trait plumbing
// ---------------------------------------------------------------------------

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.unify(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.canonical_cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.sub_ref(rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self.add_ref(&rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self.sub_ref(&rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.mul_ref(&rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

fn fmt_rational(r: &Rational) -> String {
    use alloc::string::ToString;
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Renders in the expression syntax understood by the CLI parser:
    /// rationals `p/q` and terms `c*zeta(N)^j` joined by `+`/`-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut me = self.clone();
        me.minimize();
        if let Some(r) = me.rational_part() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let n = me.conductor;
        let mut first = true;
        for (j, c) in me.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rational(&mag))?;
                }
                write!(f, "zeta({n})")?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        Ok(())
    }
}
