//! Dense rectangular matrices, generic over the entry ring.
//!
//! Two entry modes are used throughout the crate: exact cyclotomic scalars
//! (a field, so full elimination is available) and ramified series (division
//! goes through `invert_to_precision`, so inversion is done through the
//! adjugate, whose cofactors need no division at all).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Rational};
use crate::series::{Exponent, Series};

/// Ring operations needed by the generic matrix code.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl Entry for Series {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::one()
    }
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Series::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
}

/// A dense `rows x cols` matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Entry> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must match the dimensions"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn map<U: Entry>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    /// Fallible entrywise map, short-circuiting on the first error.
    pub fn try_map<U: Entry>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
            }
            acc
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|e| e.mul(s))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && Matrix::from_fn(self.rows, self.cols, |r, c| {
                if r == c {
                    T::one()
                } else {
                    T::zero()
                }
            }) == *self
    }

    /// Stack square matrices along the diagonal.
    pub fn block_diag(blocks: &[Matrix<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zero(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(off + r, off + c, b.at(r, c).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    /// The commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Matrix power by repeated multiplication (small exponents only).
    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by subset dynamic programming over rows; needs no
    /// division, so it is exact for both scalar and series entries.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        // f[S] = determinant-like accumulation of columns 0..|S| using row set S.
        let mut f = vec![None::<T>; 1 << n];
        f[0] = Some(T::one());
        for mask in 0usize..(1 << n) {
            let Some(val) = f[mask].clone() else { continue };
            if val.is_zero() && mask != 0 {
                continue;
            }
            let col = mask.count_ones() as usize;
            if col == n {
                continue;
            }
            for r in 0..n {
                if mask & (1 << r) != 0 {
                    continue;
                }
                // sign flips once per unused row above r
                let used_above = (mask & ((1 << r) - 1)).count_ones() as usize;
                let parity = (r - used_above) % 2;
                let factor = self.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let mut term = val.mul(&factor);
                if parity == 1 {
                    term = term.neg();
                }
                let slot = &mut f[mask | (1 << r)];
                *slot = Some(match slot.take() {
                    Some(prev) => prev.add(&term),
                    None => term,
                });
            }
        }
        f[(1 << n) - 1].take().unwrap_or_else(T::zero)
    }

    /// The adjugate (transposed cofactor matrix), computed without division:
    /// `self * adjugate = det * I` exactly.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return self.clone();
        }
        if n == 1 {
            return Matrix::identity(1);
        }
        Matrix::from_fn(n, n, |r, c| {
            // adj[r][c] = (-1)^(r+c) * det(minor with row c and column r removed)
            let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
                let ii = if i < c { i } else { i + 1 };
                let jj = if j < r { j } else { j + 1 };
                self.at(ii, jj).clone()
            });
            let d = minor.det();
            if (r + c) % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
    }
}

impl<T: Entry + fmt::Display> fmt::Display for Matrix<T> {
    /// Bracketed row format, e.g. `[[1/2, z], [0, -1/2]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Entry + fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Field linear algebra over Cyclotomic entries.
// ---------------------------------------------------------------------------

impl Matrix<Cyclotomic> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyclotomic::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|e| e.scale(r))
    }

    /// View over the series ring (exact constant entries).
    pub fn to_series(&self) -> Matrix<Series> {
        self.map(|e| Series::constant(e.clone()))
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (Matrix<Cyclotomic>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                let tmp = m.at(row, c).clone();
                m.set(row, c, m.at(p, c).clone());
                m.set(p, c, tmp);
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, m.at(row, c).mul_ref(&inv));
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c).sub_ref(&factor.mul_ref(m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyclotomic>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Cyclotomic::zero(); self.cols];
            v[free] = Cyclotomic::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = rref.at(r, free).neg_ref();
            }
            basis.push(v);
        }
        basis
    }

    /// A basis of the column space, as column vectors.
    pub fn column_space_basis(&self) -> Vec<Vec<Cyclotomic>> {
        let (_, pivots) = self.rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.at(r, c).clone()).collect())
            .collect()
    }

    /// Solve `self * x = rhs` for a single solution; `None` if inconsistent.
    pub fn solve(&self, rhs: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix over the field.
    pub fn inverse(&self) -> Result<Matrix<Cyclotomic>> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| reduced.at(r, n + c).clone()))
    }

    /// Apply to a column vector.
    pub fn apply_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyclotomic::zero();
                for c in 0..self.cols {
                    acc = acc.add_ref(&self.at(r, c).mul_ref(&v[c]));
                }
                acc
            })
            .collect()
    }

    /// Coefficients of the characteristic polynomial `det(xI - A)`,
    /// little-endian and monic, by the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Cyclotomic> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Cyclotomic::zero(); n + 1];
        coeffs[n] = Cyclotomic::one();
        let mut m = Matrix::<Cyclotomic>::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = m
                .trace()
                .scale(&Rational::new((-1i64).into(), (k as i64).into()));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                m.set(i, i, m.at(i, i).add_ref(&c));
            }
        }
        coeffs
    }
}

// ---------------------------------------------------------------------------
// Series matrices: inversion at a precision through the adjugate.
// ---------------------------------------------------------------------------

impl Matrix<Series> {
    /// The constant part of each entry, when every entry is provably a
    /// constant (no visible non-constant term and known constant term).
    pub fn constant_part(&self) -> Result<Matrix<Cyclotomic>> {
        self.try_map(|s| {
            if !s.is_constant_up_to_precision() {
                return Err(Error::NotConstant);
            }
            s.constant_coefficient().ok_or(Error::NotConstant)
        })
    }

    /// Smallest valuation bound over all entries; `None` if all entries are
    /// exactly zero.
    pub fn valuation(&self) -> Option<Exponent> {
        let mut best: Option<Exponent> = None;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if let Some(v) = self.at(r, c).valuation() {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        best
    }

    /// Inverse with `self * inverse = I + O(z^p)` guaranteed: the adjugate
    /// identity `self * adj = det * I` is exact, so only the determinant is
    /// inverted at the requested product precision.
    pub fn inverse_at_precision(&self, p: Exponent) -> Result<Matrix<Series>> {
        assert!(self.is_square());
        let det = self.det();
        let det_inv = det.invert_to_precision(p)?;
        Ok(self.adjugate().map(|e| e.mul(&det_inv)))
    }

    /// Entrywise derivation `z d/dz`.
    pub fn z_ddz(&self) -> Matrix<Series> {
        self.map(|e| e.z_ddz())
    }

    /// Entrywise substitution `z -> z^m`.
    pub fn substitute_power(&self, m: u64) -> Matrix<Series> {
        self.map(|e| e.substitute_power(m))
    }

    /// Entrywise exponent scaling (coordinate relabeling between coverings).
    pub fn scale_exponents(&self, factor: Exponent) -> Matrix<Series> {
        self.map(|e| e.scale_exponents(factor))
    }

    /// Entrywise Galois action of the covering group at level `l`.
    pub fn galois_act(&self, l: u64, t: i64) -> Result<Matrix<Series>> {
        self.try_map(|e| e.galois_act(l, t))
    }

    /// All entries exact polynomials.
    pub fn is_exact(&self) -> bool {
        let mut all = true;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                all &= self.at(r, c).is_exact();
            }
        }
        all
    }

    /// No visible terms anywhere: zero as far as precision can see.
    pub fn has_no_terms(&self) -> bool {
        let mut none = true;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                none &= self.at(r, c).has_no_terms();
            }
        }
        none
    }

    /// Least precision over truncated entries, `None` when all are exact.
    pub fn precision(&self) -> Option<Exponent> {
        let mut best: Option<Exponent> = None;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if let Some(p) = self.at(r, c).precision() {
                    best = Some(best.map_or(p, |b| b.min(p)));
                }
            }
        }
        best
    }
}
