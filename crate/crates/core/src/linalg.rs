//! Thin wrappers over nalgebra's Hermitian eigensolver.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// Eigenvalues of a Hermitian matrix (the Hermitian part is used).
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let h = (m + m.adjoint()) * C64::from(0.5);
    h.symmetric_eigenvalues().iter().copied().collect()
}

/// Eigenpairs of a Hermitian matrix; columns of the second entry are eigenvectors.
pub fn hermitian_eigh(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let h = (m + m.adjoint()) * C64::from(0.5);
    let eig = h.symmetric_eigen();
    (eig.eigenvalues, eig.eigenvectors)
}

/// `exp(-i K)` for Hermitian `K`.
pub fn exp_minus_i_hermitian(k: &DMatrix<C64>) -> DMatrix<C64> {
    let (vals, vecs) = hermitian_eigh(k);
    let phases = DMatrix::from_diagonal(&vals.map(|v| C64::new(0.0, -v).exp()));
    &vecs * phases * vecs.adjoint()
}

/// `exp(A)` for a real antisymmetric `A`, via the Hermitian matrix `iA`.
pub fn exp_real_antisymmetric(a: &DMatrix<f64>) -> DMatrix<f64> {
    // exp(A) = exp(-i (iA)) with iA Hermitian.
    let ia = a.map(|v| C64::new(0.0, v));
    exp_minus_i_hermitian(&ia).map(|c| c.re)
}

pub fn frobenius(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_rotation_generator() {
        let t = 0.7;
        let a = DMatrix::from_row_slice(2, 2, &[0.0, t, -t, 0.0]);
        let e = exp_real_antisymmetric(&a);
        let expected = DMatrix::from_row_slice(2, 2, &[t.cos(), t.sin(), -t.sin(), t.cos()]);
        assert!(frobenius(&(e - expected)) < 1e-12);
    }

    #[test]
    fn eigenvalues_of_pauli_y() {
        let y = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        );
        let mut ev = hermitian_eigenvalues(&y);
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
