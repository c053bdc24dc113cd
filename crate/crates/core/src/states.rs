//! Named states and seeded random generators for states and unitaries.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::gaussian::{self, CanonicalForm, CovarianceMatrix};
use crate::linalg;
use crate::operator::{DenseOperator, C64, ZERO};

/// `(|0000> + |0011> + |1100> + e^{i phi}|1111>) / 2`, an even 4-mode state.
pub fn psi_phi_vector(phi: f64) -> Vec<C64> {
    let mut v = vec![ZERO; 16];
    v[0b0000] = C64::from(0.5);
    v[0b0011] = C64::from(0.5);
    v[0b1100] = C64::from(0.5);
    v[0b1111] = C64::from_polar(0.5, phi);
    v
}

pub fn psi_phi(phi: f64) -> DenseOperator {
    DenseOperator::from_pure(&psi_phi_vector(phi)).expect("16-dimensional vector")
}

/// `points` uniform samples of `[0, 2 pi]`, both endpoints included.
pub fn phi_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| TAU * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

fn normal_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-like random pure state supported on even-parity basis vectors.
pub fn random_even_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let v: Vec<C64> = (0..1usize << n)
        .map(|i| {
            if i.count_ones() % 2 == 0 {
                normal_c64(rng)
            } else {
                ZERO
            }
        })
        .collect();
    DenseOperator::from_pure(&v).expect("nonzero Gaussian vector")
}

/// Full-rank random even mixed state `G G^dag / Tr`, with `G` Ginibre on each
/// parity block.
pub fn random_even_mixed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let d = 1usize << n;
    let g = DMatrix::from_fn(d, d, |r: usize, c: usize| {
        if (r ^ c).count_ones().is_multiple_of(2) {
            normal_c64(rng)
        } else {
            ZERO
        }
    });
    let m = &g * g.adjoint();
    let tr = m.trace();
    DenseOperator::new(n, m / tr)
        .expect("square power-of-two matrix")
        .hermitian_part()
}

pub fn random_antisymmetric<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for k in j + 1..dim {
            let v: f64 = rng.sample::<f64, _>(StandardNormal) * scale;
            h[(j, k)] = v;
            h[(k, j)] = -v;
        }
    }
    h
}

/// Random rotation in `SO(dim)` as the exponential of a random antisymmetric matrix.
pub fn random_rotation<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    linalg::exp_real_antisymmetric(&random_antisymmetric(dim, 1.0, rng))
}

/// Random covariance `R blockdiag(lambda) R^T` with `lambda_j` uniform in
/// `[-1, 1]`, or `+-1` when `pure`.
pub fn random_covariance<R: Rng + ?Sized>(n: usize, pure: bool, rng: &mut R) -> CovarianceMatrix {
    let lambdas = (0..n)
        .map(|_| {
            if pure {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            } else {
                rng.random_range(-1.0..=1.0)
            }
        })
        .collect();
    CovarianceMatrix::from_canonical(&CanonicalForm {
        rotation: random_rotation(2 * n, rng),
        lambdas,
    })
}

pub fn random_gaussian_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    gaussian::gaussian_from_covariance(&random_covariance(n, false, rng))
        .expect("physical covariance")
}

pub fn random_pure_gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    gaussian::gaussian_from_covariance(&random_covariance(n, true, rng))
        .expect("physical covariance")
}

/// `exp(1/2 gamma^T h gamma)` for a random antisymmetric `h`, with its rotation.
pub fn random_gaussian_unitary<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<(DenseOperator, DMatrix<f64>)> {
    gaussian::gaussian_unitary(&random_antisymmetric(2 * n, 1.0, rng))
}

/// Random parity-preserving unitary `exp(-iH)` with `H` block-diagonal in parity.
pub fn random_even_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let d = 1usize << n;
    let g = DMatrix::from_fn(d, d, |r: usize, c: usize| {
        if (r ^ c).count_ones().is_multiple_of(2) {
            normal_c64(rng)
        } else {
            ZERO
        }
    });
    let h = (&g + g.adjoint()) * C64::from(0.5);
    DenseOperator::new(n, linalg::exp_minus_i_hermitian(&h)).expect("square power-of-two matrix")
}
