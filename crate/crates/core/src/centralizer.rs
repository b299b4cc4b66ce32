//! Structure of the centralizer `Z(X)` of a matrix in Jordan normal form:
//! the filtration spaces `E_lambda^i = ker(X - lambda) ∩ im(X - lambda)^i`,
//! the maximal torus of per-block scalars, the Weyl group permuting equal
//! blocks, and the canonicalization of semisimple (torsion) conjugacy
//! classes as torus orbits.
//!
//! Every `g` centralizing `X` stabilizes each `E_lambda^i` and induces a
//! map on the quotient `E_lambda^i / E_lambda^{i+1}`, whose dimension is
//! the number of Jordan blocks with eigenvalue `lambda` and size exactly
//! `i + 1`.  Reading off the eigenvalues of these induced maps and sorting
//! within the block groups turns a semisimple class into a canonical
//! per-block exponent vector.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{jordan_blocks_of, Matrix};
use crate::scalar::Cyclotomic;
use crate::GroupTag;

/// Cap on `level ^ #blocks` when enumerating torsion elements.
const ENUMERATION_BOUND: u64 = 1_000_000;

/// Bound on the order detection loop for torsion elements.
const ORDER_BOUND: u64 = 1024;

/// A Weyl-group orbit of a finite-order element of the block-scalar torus:
/// one root-of-unity exponent (mod `level`) per Jordan block, sorted within
/// each group of equal blocks.
///
/// Classes are comparable only over the same base Jordan datum; equality
/// reduces both sides to their minimal level first.
#[derive(Debug, Clone, Eq)]
pub struct TorsionClass {
    level: u64,
    exponents: Vec<u64>,
}

impl TorsionClass {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Exponents `j_b` per block: the torus element is
    /// `blockdiag(omega_level^{j_b} E_{a_b})`.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|j| *j == 0)
    }

    /// Reinterpret at a multiple of the level (exponent scaling); the class
    /// is unchanged.
    pub fn push_to_level(&self, m: u64) -> Result<TorsionClass> {
        if m == 0 || m % self.level != 0 {
            return Err(Error::NotDivisible {
                from: self.level,
                to: m,
            });
        }
        let k = m / self.level;
        Ok(TorsionClass {
            level: m,
            exponents: self.exponents.iter().map(|j| j * k).collect(),
        })
    }

    /// The minimal-level representative (divide out the gcd of the level
    /// and all exponents).
    pub fn normalized(&self) -> TorsionClass {
        let mut g = self.level;
        for j in &self.exponents {
            g = num_integer::gcd(g, *j);
        }
        if g <= 1 {
            return self.clone();
        }
        TorsionClass {
            level: self.level / g,
            exponents: self.exponents.iter().map(|j| j / g).collect(),
        }
    }
}

impl PartialEq for TorsionClass {
    fn eq(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.level == b.level && a.exponents == b.exponents
    }
}

/// The combinatorial structure of `Z(X)` for `X` in Jordan normal form.
#[derive(Debug, Clone)]
pub struct CentralizerData {
    /// Jordan blocks `(eigenvalue, size)` in matrix order.
    blocks: Vec<(Cyclotomic, usize)>,
    /// Start offset of each block.
    starts: Vec<usize>,
    /// Weyl-group orbits: indices of blocks with equal eigenvalue and size.
    groups: Vec<Vec<usize>>,
    /// Per distinct eigenvalue: bases of `E_lambda^i` for `i = 0, 1, ...`
    /// until the space vanishes (computed by kernel/image linear algebra).
    filtration: Vec<(Cyclotomic, Vec<Vec<Vec<Cyclotomic>>>)>,
    dim: usize,
}

impl CentralizerData {
    /// Analyze `x`, which must be in Jordan normal form.
    pub fn new(x: &Matrix<Cyclotomic>) -> Result<Self> {
        let blocks = jordan_blocks_of(x).ok_or(Error::NotJordanForm)?;
        let n = x.rows();
        let mut starts = Vec::with_capacity(blocks.len());
        let mut off = 0;
        for (_, a) in &blocks {
            starts.push(off);
            off += a;
        }
        // Weyl groups: blocks of equal (eigenvalue, size).
        let mut groups: Vec<Vec<usize>> = Vec::new();
        'blocks: for (b, (x0, a0)) in blocks.iter().enumerate() {
            for g in groups.iter_mut() {
                let (x1, a1) = &blocks[g[0]];
                if x1 == x0 && a1 == a0 {
                    g.push(b);
                    continue 'blocks;
                }
            }
            groups.push(vec![b]);
        }
        // Filtration by exact kernel/image computations.
        let mut filtration: Vec<(Cyclotomic, Vec<Vec<Vec<Cyclotomic>>>)> = Vec::new();
        let mut seen: Vec<Cyclotomic> = Vec::new();
        for (lambda, _) in &blocks {
            if seen.contains(lambda) {
                continue;
            }
            seen.push(lambda.clone());
            let shifted = x.sub(&Matrix::from_fn(n, n, |r, c| {
                if r == c {
                    lambda.clone()
                } else {
                    Cyclotomic::zero()
                }
            }));
            let kernel = shifted.kernel_basis();
            let mut spaces = Vec::new();
            let mut power = Matrix::<Cyclotomic>::identity(n);
            for i in 0.. {
                // E_lambda^i = ker(X - lambda) ∩ im(X - lambda)^i.
                let image = power.column_space_basis();
                let e_i = intersect(&kernel, &image, n);
                let dim = e_i.len();
                spaces.push(e_i);
                if dim == 0 {
                    break;
                }
                power = power.mul(&shifted);
                let _ = i;
            }
            filtration.push((lambda.clone(), spaces));
        }
        let data = CentralizerData {
            blocks,
            starts,
            groups,
            filtration,
            dim: n,
        };
        data.check_dimensions();
        Ok(data)
    }

    /// Cross-check the filtration dimensions against the block data:
    /// `dim(E^i/E^{i+1})` counts blocks of size exactly `i+1`, and the
    /// weighted sum recovers the algebraic multiplicity.
    fn check_dimensions(&self) {
        for (lambda, spaces) in &self.filtration {
            let mut weighted = 0usize;
            for i in 0..spaces.len().saturating_sub(1) {
                let q = spaces[i].len() - spaces[i + 1].len();
                let expected = self
                    .blocks
                    .iter()
                    .filter(|(x0, a)| x0 == lambda && *a == i + 1)
                    .count();
                assert_eq!(q, expected, "quotient dimension must count blocks");
                weighted += q * (i + 1);
            }
            let mult: usize = self
                .blocks
                .iter()
                .filter(|(x0, _)| x0 == lambda)
                .map(|(_, a)| *a)
                .sum();
            assert_eq!(weighted, mult, "filtration must exhaust the multiplicity");
        }
    }

    pub fn blocks(&self) -> &[(Cyclotomic, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the torus of per-block scalars.
    pub fn torus_rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn weyl_groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// `dim E_lambda^i` for the given eigenvalue.
    pub fn filtration_dims(&self, lambda: &Cyclotomic) -> Vec<usize> {
        self.filtration
            .iter()
            .find(|(x0, _)| x0 == lambda)
            .map(|(_, spaces)| spaces.iter().map(|b| b.len()).collect())
            .unwrap_or_default()
    }

    pub fn eigenvalues(&self) -> Vec<Cyclotomic> {
        self.filtration.iter().map(|(x0, _)| x0.clone()).collect()
    }

    /// Sort exponents within each Weyl group: the canonical orbit
    /// representative.
    fn canonicalize(&self, mut exponents: Vec<u64>) -> Vec<u64> {
        for g in &self.groups {
            let mut vals: Vec<u64> = g.iter().map(|b| exponents[*b]).collect();
            vals.sort_unstable();
            for (b, v) in g.iter().zip(vals) {
                exponents[*b] = v;
            }
        }
        exponents
    }

    /// Build a torsion class from raw per-block exponents at a level.
    pub fn class_from_exponents(&self, level: u64, exponents: Vec<u64>) -> TorsionClass {
        assert_eq!(exponents.len(), self.blocks.len());
        let exponents = self.canonicalize(exponents.into_iter().map(|j| j % level).collect());
        TorsionClass { level, exponents }
    }

    /// The diagonal realization `blockdiag(omega_level^{j_b} E_{a_b})` of a
    /// torsion class.
    pub fn realize_torus_element(&self, class: &TorsionClass) -> Matrix<Cyclotomic> {
        let mats: Vec<Matrix<Cyclotomic>> = self
            .blocks
            .iter()
            .zip(class.exponents())
            .map(|((_, a), j)| {
                Matrix::<Cyclotomic>::identity(*a)
                    .scale(&Cyclotomic::root_of_unity(class.level(), *j as i64))
            })
            .collect();
        Matrix::block_diag(&mats)
    }

    /// Enumerate all `level`-torsion classes of the torus modulo the Weyl
    /// group; for the `sl` tag only exponents with
    /// `sum j_b a_b = 0 (mod level)` (determinant one) are kept.
    pub fn torsion_elements(&self, level: u64, tag: GroupTag) -> Result<Vec<TorsionClass>> {
        assert!(level >= 1);
        let r = self.blocks.len();
        let count = (level as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if count > ENUMERATION_BOUND as u128 {
            return Err(Error::EnumerationBound {
                count: count.min(u64::MAX as u128) as u64,
            });
        }
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut exps = vec![0u64; r];
        loop {
            let det_ok = match tag {
                GroupTag::Gl => true,
                GroupTag::Sl => {
                    let total: u64 = exps
                        .iter()
                        .zip(self.blocks.iter())
                        .map(|(j, (_, a))| j * (*a as u64))
                        .sum();
                    total % level == 0
                }
            };
            if det_ok {
                let canonical = self.canonicalize(exps.clone());
                if seen.insert(canonical.clone()) {
                    out.push(TorsionClass {
                        level,
                        exponents: canonical,
                    });
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == r {
                    return Ok(out);
                }
                exps[k] += 1;
                if exps[k] < level {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    /// Canonicalize a semisimple torsion element `d` of `Z(X)` into its
    /// torus class: compute the induced map on each filtration quotient,
    /// read off its root-of-unity eigenvalue multiset by exact rank
    /// computations, and reassemble per-block exponents.
    ///
    /// The order of `d` is detected when not supplied.
    pub fn torus_class_of(
        &self,
        d: &Matrix<Cyclotomic>,
        level: Option<u64>,
    ) -> Result<TorsionClass> {
        let n = self.dim;
        if d.rows() != n || d.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                found: (d.rows(), d.cols()),
            });
        }
        let x = self.reconstruct();
        if !d.commutator(&x).is_zero_matrix() {
            return Err(Error::NotInCentralizer);
        }
        let l = match level {
            Some(l) => {
                if !d.pow(l as usize).is_identity() {
                    return Err(Error::NotTorsion);
                }
                l
            }
            None => {
                let mut power = d.clone();
                let mut k = 1u64;
                while !power.is_identity() {
                    power = power.mul(d);
                    k += 1;
                    if k > ORDER_BOUND {
                        return Err(Error::NotTorsion);
                    }
                }
                k
            }
        };
        // Induced maps on the quotients: in Jordan coordinates the first
        // vectors of the lambda-blocks span E_lambda^i as coordinate
        // subspaces, so the quotient matrix of d is read off entrywise.
        let mut exponents = vec![0u64; self.blocks.len()];
        for (lambda, spaces) in &self.filtration {
            for i in 0..spaces.len().saturating_sub(1) {
                // blocks of eigenvalue lambda and size exactly i+1
                let members: Vec<usize> = (0..self.blocks.len())
                    .filter(|b| &self.blocks[*b].0 == lambda && self.blocks[*b].1 == i + 1)
                    .collect();
                if members.is_empty() {
                    continue;
                }
                let q = members.len();
                let quotient = Matrix::from_fn(q, q, |r, c| {
                    d.at(self.starts[members[r]], self.starts[members[c]])
                        .clone()
                });
                // Eigenvalue multiplicities by exact rank computations.
                let mut mults: Vec<(u64, usize)> = Vec::new();
                let mut total = 0usize;
                for j in 0..l {
                    let omega = Cyclotomic::root_of_unity(l, j as i64);
                    let shifted = quotient.sub(&Matrix::<Cyclotomic>::identity(q).scale(&omega));
                    let mult = q - shifted.rank();
                    if mult > 0 {
                        mults.push((j, mult));
                        total += mult;
                    }
                }
                assert_eq!(
                    total, q,
                    "a torsion element acts semisimply with root-of-unity eigenvalues"
                );
                // Assign sorted exponents to the member blocks (canonical
                // within the Weyl group anyway).
                let mut js: Vec<u64> = Vec::with_capacity(q);
                for (j, m) in mults {
                    for _ in 0..m {
                        js.push(j);
                    }
                }
                js.sort_unstable();
                for (b, j) in members.iter().zip(js) {
                    exponents[*b] = j;
                }
            }
        }
        Ok(self.class_from_exponents(l, exponents))
    }

    /// The Jordan matrix described by the block data.
    pub fn reconstruct(&self) -> Matrix<Cyclotomic> {
        let mats: Vec<Matrix<Cyclotomic>> = self
            .blocks
            .iter()
            .map(|(x0, a)| crate::linalg::jordan_block(x0, *a))
            .collect();
        Matrix::block_diag(&mats)
    }
}

/// Intersection of two subspaces given by spanning vectors.
fn intersect(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>], n: usize) -> Vec<Vec<Cyclotomic>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve [A | -B] (x; y) = 0; the intersection is spanned by A x.
    let cols = a.len() + b.len();
    let m = Matrix::from_fn(n, cols, |r, c| {
        if c < a.len() {
            a[c][r].clone()
        } else {
            b[c - a.len()][r].neg_ref()
        }
    });
    let mut out: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut span: Vec<Vec<Cyclotomic>> = Vec::new();
    for k in m.kernel_basis() {
        let mut v = vec![Cyclotomic::zero(); n];
        for (c, basis_vec) in a.iter().enumerate() {
            for r in 0..n {
                v[r] = v[r].add_ref(&basis_vec[r].mul_ref(&k[c]));
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        // Keep only an independent set.
        span.push(v.clone());
        let mat = Matrix::from_fn(n, span.len(), |r, c| span[c][r].clone());
        if mat.rank() == span.len() {
            out.push(v);
        } else {
            span.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;

    fn ci(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn filtration_of_a_2_block() {
        // X = J(0,2): E_0^0 and E_0^1 are 1-dimensional, E_0^2 = 0.
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        assert_eq!(data.filtration_dims(&ci(0)), vec![1, 1, 0]);
        assert_eq!(data.torus_rank(), 1);
        assert_eq!(data.weyl_groups(), &[vec![0]]);
    }

    #[test]
    fn filtration_of_zero_matrix() {
        // X = 0 in gl_2: E_0^0 = k^2, W = Sym_2, full diagonal torus.
        let x = Matrix::<Cyclotomic>::zero(2, 2);
        let data = CentralizerData::new(&x).unwrap();
        assert_eq!(data.filtration_dims(&ci(0)), vec![2, 0]);
        assert_eq!(data.torus_rank(), 2);
        assert_eq!(data.weyl_groups(), &[vec![0, 1]]);
    }

    #[test]
    fn distinct_eigenvalues_have_trivial_weyl_group() {
        let x = Matrix::from_i64_rows(&[&[0, 0], &[0, 1]]);
        let data = CentralizerData::new(&x).unwrap();
        assert_eq!(data.torus_rank(), 2);
        assert_eq!(data.weyl_groups().len(), 2);
    }

    #[test]
    fn rejects_non_jordan_input() {
        let x = Matrix::from_i64_rows(&[&[0, 2], &[0, 0]]);
        assert!(matches!(
            CentralizerData::new(&x),
            Err(Error::NotJordanForm)
        ));
    }

    #[test]
    fn torsion_enumeration_sl2_nilpotent() {
        // X = J(0,2), l = 2, sl: 2j = 0 mod 2 always, so j in {0, 1}.
        let data = CentralizerData::new(&jordan_block(&ci(0), 2)).unwrap();
        let classes = data.torsion_elements(2, GroupTag::Sl).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().any(|c| c.is_trivial()));
        assert!(classes.iter().any(|c| c.exponents() == [1]));
    }

    #[test]
    fn torsion_enumeration_zero_matrix() {
        // X = 0 in sl_2, l = 2: j_1 + j_2 = 0 mod 2 gives (0,0) and (1,1).
        let data = CentralizerData::new(&Matrix::<Cyclotomic>::zero(2, 2)).unwrap();
        let classes = data.torsion_elements(2, GroupTag::Sl).unwrap();
        assert_eq!(classes.len(), 2);
        // and at level 1 only the trivial class exists
        let trivial = data.torsion_elements(1, GroupTag::Sl).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_trivial());
    }

    #[test]
    fn weyl_action_identifies_permuted_exponents() {
        // X = 0 in gl_2: (0,1) and (1,0) are the same class.
        let data = CentralizerData::new(&Matrix::<Cyclotomic>::zero(2, 2)).unwrap();
        let a = data.class_from_exponents(2, vec![0, 1]);
        let b = data.class_from_exponents(2, vec![1, 0]);
        assert_eq!(a, b);
        let classes = data.torsion_elements(2, GroupTag::Gl).unwrap();
        assert_eq!(classes.len(), 3); // (0,0), (0,1)~(1,0), (1,1)
    }

    #[test]
    fn torus_class_of_diagonal_realizations() {
        // Round trip: realize a class, extract it back.
        let x = Matrix::block_diag(&[
            jordan_block(&ci(0), 2),
            jordan_block(&ci(0), 1),
            jordan_block(&ci(1), 1),
        ]);
        let data = CentralizerData::new(&x).unwrap();
        for l in 1..=4u64 {
            for class in data.torsion_elements(l, GroupTag::Gl).unwrap() {
                let d = data.realize_torus_element(&class);
                let back = data.torus_class_of(&d, Some(l)).unwrap();
                assert_eq!(back, class);
            }
        }
    }

    #[test]
    fn minus_identity_on_a_2_block() {
        // X = J(0,2), d = -I: the single size-2 block gets exponent 1 at
        // level 2.
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let d = Matrix::<Cyclotomic>::identity(2).scale(&ci(-1));
        let class = data.torus_class_of(&d, None).unwrap();
        assert_eq!(class.level(), 2);
        assert_eq!(class.exponents(), [1]);
    }

    #[test]
    fn non_central_and_non_torsion_are_rejected() {
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let not_central = Matrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        assert!(matches!(
            data.torus_class_of(&not_central, None),
            Err(Error::NotInCentralizer)
        ));
        let not_torsion = Matrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert!(matches!(
            data.torus_class_of(&not_torsion, None),
            Err(Error::NotTorsion)
        ));
        assert!(matches!(
            data.torus_class_of(&not_torsion, Some(4)),
            Err(Error::NotTorsion)
        ));
    }

    #[test]
    fn conjugation_invariance_inside_the_centralizer() {
        // X = 0 (n = 2): Z(X) = GL_2; a class must be invariant under
        // conjugation by any invertible matrix.
        let data = CentralizerData::new(&Matrix::<Cyclotomic>::zero(2, 2)).unwrap();
        let d = Matrix::from_rows(alloc::vec![
            alloc::vec![ci(1), ci(0)],
            alloc::vec![ci(0), ci(-1)],
        ]);
        let class = data.torus_class_of(&d, None).unwrap();
        let y = Matrix::from_i64_rows(&[&[1, 2], &[1, 3]]);
        let conj = y.mul(&d).mul(&y.inverse().unwrap());
        let class2 = data.torus_class_of(&conj, None).unwrap();
        assert_eq!(class, class2);
        // Toeplitz centralizer elements for J(0,2).
        let x = jordan_block(&ci(0), 2);
        let data = CentralizerData::new(&x).unwrap();
        let d = Matrix::<Cyclotomic>::identity(2).scale(&ci(-1));
        let y = Matrix::from_i64_rows(&[&[2, 5], &[0, 2]]); // a + b N
        let conj = y.mul(&d).mul(&y.inverse().unwrap());
        assert_eq!(
            data.torus_class_of(&conj, None).unwrap(),
            data.torus_class_of(&d, None).unwrap()
        );
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let data = CentralizerData::new(&Matrix::<Cyclotomic>::zero(6, 6)).unwrap();
        assert!(matches!(
            data.torsion_elements(11, GroupTag::Gl),
            Err(Error::EnumerationBound { .. })
        ));
    }

    #[test]
    fn conjugation_invariance_with_structured_generators() {
        // Z(blockdiag(J(0,2), J(0,1))) = { [[a, b, c], [0, a, 0], [0, d, e]] }:
        // classes must be stable under conjugation by such elements.
        let x = Matrix::block_diag(&[jordan_block(&ci(0), 2), jordan_block(&ci(0), 1)]);
        let data = CentralizerData::new(&x).unwrap();
        let gens = [
            (1i64, 2, 3, 0, 1),
            (2, 0, 1, 5, 1),
            (1, -1, 0, 2, 3),
            (3, 4, -2, 1, 2),
        ];
        for class in data.torsion_elements(2, GroupTag::Gl).unwrap() {
            let d = data.realize_torus_element(&class);
            for (a, b, c, dd, e) in gens {
                let y = Matrix::from_rows(alloc::vec![
                    alloc::vec![ci(a), ci(b), ci(c)],
                    alloc::vec![ci(0), ci(a), ci(0)],
                    alloc::vec![ci(0), ci(dd), ci(e)],
                ]);
                assert!(y.commutator(&x).is_zero_matrix(), "generator centralizes X");
                let conj = y.mul(&d).mul(&y.inverse().unwrap());
                let back = data.torus_class_of(&conj, Some(2)).unwrap();
                assert_eq!(back, class, "class is conjugation invariant");
            }
        }
    }

    #[test]
    fn level_embedding_is_compatible() {
        // Classes at level l embed into level 2l by exponent doubling.
        let data = CentralizerData::new(&jordan_block(&ci(0), 2)).unwrap();
        let low = data.torsion_elements(2, GroupTag::Sl).unwrap();
        let high = data.torsion_elements(4, GroupTag::Sl).unwrap();
        for c in &low {
            let pushed = c.push_to_level(4).unwrap();
            assert!(high.iter().any(|h| *h == pushed));
        }
        assert!(matches!(
            low[0].push_to_level(3),
            Err(Error::NotDivisible { from: 2, to: 3 })
        ));
    }
}
