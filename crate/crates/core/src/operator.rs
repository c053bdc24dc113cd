//! Dense operators on `q` qubits, multi-indices over Majorana generators and
//! signed Pauli monomials.
//!
//! Basis convention: qubit 0 is the leftmost tensor factor, so it maps to the
//! most significant bit of a computational-basis index.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FerroError, Result};
use crate::tol;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of dimension `2^qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    qubits: usize,
    mat: DMatrix<C64>,
}

impl DenseOperator {
    pub fn new(qubits: usize, mat: DMatrix<C64>) -> Result<Self> {
        let dim = 1usize << qubits;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(FerroError::DimensionMismatch {
                expected: dim,
                found: mat.nrows().max(mat.ncols()),
            });
        }
        Ok(Self { qubits, mat })
    }

    /// Wraps a square matrix, inferring the qubit count.
    pub fn from_matrix(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(FerroError::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let q = qubits_for_dim(mat.nrows())?;
        Ok(Self { qubits: q, mat })
    }

    pub fn identity(qubits: usize) -> Self {
        let d = 1 << qubits;
        Self {
            qubits,
            mat: DMatrix::identity(d, d),
        }
    }

    pub fn zeros(qubits: usize) -> Self {
        let d = 1 << qubits;
        Self {
            qubits,
            mat: DMatrix::zeros(d, d),
        }
    }

    /// `I / 2^qubits`.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let mut out = Self::identity(qubits);
        out.mat /= C64::from((1u64 << qubits) as f64);
        out
    }

    /// `|psi><psi|` for a normalized (or not) vector; the result is normalized.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let q = qubits_for_dim(psi.len())?;
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if norm <= 0.0 {
            return Err(FerroError::NotAState("zero vector".into()));
        }
        let d = psi.len();
        let mat = DMatrix::from_fn(d, d, |r, c| psi[r] * psi[c].conj() / norm);
        Ok(Self { qubits: q, mat })
    }

    /// Diagonal projector `|index><index|`.
    pub fn basis_projector(qubits: usize, index: usize) -> Self {
        let mut out = Self::zeros(qubits);
        out.mat[(index, index)] = ONE;
        out
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.mat[(r, c)]
    }

    pub fn dagger(&self) -> Self {
        Self {
            qubits: self.qubits,
            mat: self.mat.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            qubits: self.qubits,
            mat: &self.mat * &other.mat,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            qubits: self.qubits,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            qubits: self.qubits,
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            qubits: self.qubits,
            mat: &self.mat * s,
        }
    }

    /// `self ⊗ other`, `self` on the leading qubits.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            qubits: self.qubits + other.qubits,
            mat: self.mat.kronecker(&other.mat),
        }
    }

    /// `U A U^dag`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        self.same_dim(u)?;
        Ok(Self {
            qubits: self.qubits,
            mat: &u.mat * &self.mat * u.mat.adjoint(),
        })
    }

    /// `Tr(A^dag B)` without forming the product.
    pub fn trace_inner(&self, other: &Self) -> Result<C64> {
        self.same_dim(other)?;
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Normalized Frobenius norm `sqrt(2^-q Tr(A^dag A))`.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.mat.iter().map(|c| c.norm_sqr()).sum();
        (s / self.dim() as f64).sqrt()
    }

    /// Normalized L2 distance `||A - B||_2`.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        let s: f64 = self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s / self.dim() as f64).sqrt())
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // Tr(A A) = sum_{rc} A_rc A_cr; for Hermitian A this is sum |A_rc|^2.
        let d = self.dim();
        let mut s = ZERO;
        for r in 0..d {
            for c in 0..d {
                s += self.mat[(r, c)] * self.mat[(c, r)];
            }
        }
        s.re
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let s: f64 = self
            .mat
            .iter()
            .zip(self.mat.adjoint().iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (s / self.dim() as f64).sqrt()
    }

    /// `(A + A^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            qubits: self.qubits,
            mat: (&self.mat + self.mat.adjoint()) * C64::from(0.5),
        }
    }

    /// Hermitian, unit trace, eigenvalues no lower than `-EPS_PSD`.
    pub fn check_state(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm > tol::EPS_STATE {
            return Err(FerroError::NotAState(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > tol::EPS_STATE {
            return Err(FerroError::NotAState(format!("trace {tr} != 1")));
        }
        let min = crate::linalg::hermitian_eigenvalues(&self.mat)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -tol::EPS_PSD {
            return Err(FerroError::NotAState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// `||U^dag U - I||_2` (normalized).
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim();
        let prod = self.mat.adjoint() * &self.mat;
        let s: f64 = (prod - DMatrix::<C64>::identity(d, d))
            .iter()
            .map(|c| c.norm_sqr())
            .sum();
        (s / d as f64).sqrt()
    }

    pub fn check_unitary(&self) -> Result<()> {
        let r = self.unitarity_residual();
        if r > tol::EPS_UNITARY {
            return Err(FerroError::NotUnitary(r));
        }
        Ok(())
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(FerroError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(FerroError::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Ordered subset of `{1, ..., width}` stored as a bitmask; bit `j - 1` stands
/// for generator `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    mask: usize,
    width: usize,
}

impl MultiIndex {
    pub fn new(mask: usize, width: usize) -> Result<Self> {
        if width < usize::BITS as usize && mask >> width != 0 {
            return Err(FerroError::Malformed(format!(
                "mask {mask:#b} wider than {width} generators"
            )));
        }
        Ok(Self { mask, width })
    }

    pub fn empty(width: usize) -> Self {
        Self { mask: 0, width }
    }

    pub fn full(width: usize) -> Self {
        Self {
            mask: (1 << width) - 1,
            width,
        }
    }

    /// From 1-based generator labels, in any order.
    pub fn from_indices(indices: &[usize], width: usize) -> Result<Self> {
        let mut mask = 0;
        for &j in indices {
            if j == 0 || j > width {
                return Err(FerroError::IndexOutOfRange {
                    index: j,
                    max: width,
                });
            }
            mask |= 1 << (j - 1);
        }
        Ok(Self { mask, width })
    }

    pub fn mask(self) -> usize {
        self.mask
    }

    pub fn width(self) -> usize {
        self.width
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// 1-based labels in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..self.width)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }
}

/// Sign of reordering `eta_a eta_b` into ascending order, for disjoint masks.
/// Counts pairs `(i in a, j in b)` with `i > j`.
#[inline]
pub fn merge_sign(a: usize, b: usize) -> f64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    if inversions & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `phase * X^x Z^z` on `qubits` qubits, masks in basis-index bit positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMonomial {
    pub qubits: usize,
    pub x: usize,
    pub z: usize,
    pub phase: C64,
}

impl PauliMonomial {
    pub fn identity(qubits: usize) -> Self {
        Self {
            qubits,
            x: 0,
            z: 0,
            phase: ONE,
        }
    }

    /// Jordan-Wigner Majorana generator `gamma_j`, `j` 1-based, on `n` modes.
    pub fn majorana(j: usize, n: usize) -> Result<Self> {
        if j == 0 || j > 2 * n {
            return Err(FerroError::IndexOutOfRange {
                index: j,
                max: 2 * n,
            });
        }
        let mode = (j - 1) / 2;
        let bit = n - 1 - mode;
        let string = ((1usize << mode) - 1) << (n - mode);
        if j % 2 == 1 {
            Ok(Self {
                qubits: n,
                x: 1 << bit,
                z: string,
                phase: ONE,
            })
        } else {
            // Y = i X Z
            Ok(Self {
                qubits: n,
                x: 1 << bit,
                z: string | 1 << bit,
                phase: I,
            })
        }
    }

    /// Ordered product `gamma_J` for a mask over `2n` generators.
    pub fn majorana_product(mask: usize, n: usize) -> Self {
        let mut out = Self::identity(n);
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            let g = Self::majorana(b + 1, n).expect("bit within 2n");
            out = out.mul(&g);
            rest &= rest - 1;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let sign = if (self.z & other.x).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        Self {
            qubits: self.qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: self.phase * other.phase * sign,
        }
    }

    pub fn dagger(&self) -> Self {
        let sign = if (self.x & self.z).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        Self {
            phase: self.phase.conj() * sign,
            ..*self
        }
    }

    /// Matrix entry at `(col ^ x, col)`.
    #[inline]
    pub fn column_entry(&self, col: usize) -> C64 {
        if (self.z & col).count_ones().is_multiple_of(2) {
            self.phase
        } else {
            -self.phase
        }
    }

    pub fn to_operator(&self) -> DenseOperator {
        let d = 1 << self.qubits;
        let mut out = DenseOperator::zeros(self.qubits);
        for c in 0..d {
            out.mat[(c ^ self.x, c)] = self.column_entry(c);
        }
        out
    }

    /// `Tr(P^dag A)`.
    pub fn overlap(&self, a: &DenseOperator) -> C64 {
        let d = 1 << self.qubits;
        let mut s = ZERO;
        for c in 0..d {
            s += self.column_entry(c).conj() * a.mat[(c ^ self.x, c)];
        }
        s
    }

    /// Adds `coef * P` into `acc`.
    pub fn accumulate_into(&self, coef: C64, acc: &mut DenseOperator) {
        let d = 1 << self.qubits;
        for c in 0..d {
            acc.mat[(c ^ self.x, c)] += coef * self.column_entry(c);
        }
    }

    /// `P M`.
    pub fn left_mul(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        let d = m.nrows();
        let mut out = DMatrix::zeros(d, d);
        for r in 0..d {
            let src = r ^ self.x;
            let e = self.column_entry(src);
            for c in 0..d {
                out[(r, c)] = e * m[(src, c)];
            }
        }
        out
    }

    /// `M P^dag`.
    pub fn right_mul_dagger(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        let d = m.nrows();
        let mut out = DMatrix::zeros(d, d);
        for c in 0..d {
            let src = c ^ self.x;
            let e = self.column_entry(src).conj();
            for r in 0..d {
                out[(r, c)] = m[(r, src)] * e;
            }
        }
        out
    }

    /// `M <- (a + b P) M (a + b P)^dag` without temporaries.
    pub fn conjugate_affine_in_place(&self, a: C64, b: C64, m: &mut DMatrix<C64>) {
        let d = m.nrows();
        let x = self.x;
        // Rows: (a + bP) M, with (P M)[r, .] = P[r, r^x] M[r^x, .].
        for c in 0..d {
            for r in 0..d {
                let r2 = r ^ x;
                if r2 < r {
                    continue;
                }
                let (u, v) = (m[(r, c)], m[(r2, c)]);
                if r2 == r {
                    m[(r, c)] = (a + b * self.column_entry(r)) * u;
                } else {
                    m[(r, c)] = a * u + b * self.column_entry(r2) * v;
                    m[(r2, c)] = a * v + b * self.column_entry(r) * u;
                }
            }
        }
        // Columns: N (a + bP)^dag, with (N P^dag)[., c] = N[., c^x] conj(P[c, c^x]).
        let (ac, bc) = (a.conj(), b.conj());
        for c in 0..d {
            let c2 = c ^ x;
            if c2 < c {
                continue;
            }
            let ec = self.column_entry(c2).conj();
            let ec2 = self.column_entry(c).conj();
            for r in 0..d {
                let (u, v) = (m[(r, c)], m[(r, c2)]);
                if c2 == c {
                    m[(r, c)] = u * (ac + bc * self.column_entry(c).conj());
                } else {
                    m[(r, c)] = ac * u + bc * ec * v;
                    m[(r, c2)] = ac * v + bc * ec2 * u;
                }
            }
        }
    }

    /// `(a + b P) M (a + b P)^dag`.
    pub fn conjugate_affine(&self, a: C64, b: C64, m: &DMatrix<C64>) -> DMatrix<C64> {
        let pm = self.left_mul(m);
        let mp = self.right_mul_dagger(m);
        let pmp = self.right_mul_dagger(&pm);
        m * C64::from(a.norm_sqr())
            + mp * (a * b.conj())
            + pm * (b * a.conj())
            + pmp * C64::from(b.norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_sign_matches_bubble_count() {
        // eta_2 eta_1 = -eta_12
        assert_eq!(merge_sign(0b10, 0b01), -1.0);
        assert_eq!(merge_sign(0b01, 0b10), 1.0);
        // eta_3 eta_{12}: moving eta_3 past two generators
        assert_eq!(merge_sign(0b100, 0b011), 1.0);
        assert_eq!(merge_sign(0b110, 0b001), 1.0);
        assert_eq!(merge_sign(0b010, 0b101), -1.0);
    }

    #[test]
    fn in_place_conjugation_matches_allocating_version() {
        let n = 3;
        let d = 1 << n;
        let m = DMatrix::from_fn(d, d, |r, c| {
            C64::new((r * 7 + c) as f64 * 0.1, (r as f64 - c as f64).sin())
        });
        for mask in [0b000011usize, 0b100100, 0b010000, 0b110110] {
            let p = PauliMonomial::majorana_product(mask, n);
            let (a, b) = (C64::new(0.8, 0.1), C64::new(-0.3, 0.5));
            let expected = p.conjugate_affine(a, b, &m);
            let mut got = m.clone();
            p.conjugate_affine_in_place(a, b, &mut got);
            assert!((expected - got).camax() < 1e-12);
        }
    }

    #[test]
    fn monomial_product_matches_dense_product() {
        let n = 3;
        for a in 1..=2 * n {
            for b in 1..=2 * n {
                let pa = PauliMonomial::majorana(a, n).unwrap();
                let pb = PauliMonomial::majorana(b, n).unwrap();
                let dense = pa.to_operator().mul(&pb.to_operator()).unwrap();
                let sym = pa.mul(&pb).to_operator();
                assert!(dense.l2_distance(&sym).unwrap() < 1e-14);
                let dag = pa.mul(&pb).dagger().to_operator();
                assert!(dag.l2_distance(&sym.dagger()).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn multi_index_rejects_bad_labels() {
        assert!(MultiIndex::from_indices(&[0], 4).is_err());
        assert!(MultiIndex::from_indices(&[5], 4).is_err());
        let j = MultiIndex::from_indices(&[3, 1], 4).unwrap();
        assert_eq!(j.indices(), vec![1, 3]);
        assert_eq!(j.len(), 2);
        assert!(MultiIndex::new(0b10000, 4).is_err());
    }

    #[test]
    fn dimension_checks() {
        assert!(DenseOperator::new(2, DMatrix::zeros(3, 3)).is_err());
        assert!(DenseOperator::from_matrix(DMatrix::zeros(6, 6)).is_err());
        assert!(qubits_for_dim(8).unwrap() == 3);
    }
}
