//! Covariance matrices, canonical forms, Wick synthesis of Gaussian states,
//! Gaussification and Gaussian unitaries.

use nalgebra::DMatrix;

use crate::clifford;
use crate::error::{FerroError, Result};
use crate::exec::Execution;
use crate::grassmann::GrassmannPoly;
use crate::linalg;
use crate::operator::{DenseOperator, PauliMonomial, C64, ZERO};
use crate::pfaffian::pfaffian;
use crate::tol;

pub use crate::pfaffian::pfaffian as pf;

/// Largest mode count accepted by the dense Gaussian-unitary builder.
pub const MAX_DENSE_MODES: usize = 10;

/// Real antisymmetric `2n x 2n` covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        check_antisymmetric(&entries)?;
        Ok(Self {
            n: entries.nrows() / 2,
            entries,
        })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: DMatrix::zeros(2 * n, 2 * n),
        }
    }

    /// `R blockdiag([0, l; -l, 0]) R^T`.
    pub fn from_canonical(form: &CanonicalForm) -> Self {
        let n = form.lambdas.len();
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (j, &l) in form.lambdas.iter().enumerate() {
            d[(2 * j, 2 * j + 1)] = l;
            d[(2 * j + 1, 2 * j)] = -l;
        }
        Self {
            n,
            entries: &form.rotation * d * form.rotation.transpose(),
        }
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// Largest eigenvalue of `Sigma^T Sigma`.
    pub fn max_singular_sq(&self) -> f64 {
        let sts = self.entries.transpose() * &self.entries;
        sts.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn check_physical(&self) -> Result<()> {
        let s = self.max_singular_sq();
        if s > 1.0 + tol::EPS_COV {
            return Err(FerroError::NotPhysicalCovariance(s));
        }
        Ok(())
    }

    /// Restriction to the rows and columns in `mask` (bit `j - 1` for index `j`).
    pub fn restrict(&self, mask: usize) -> DMatrix<f64> {
        let idx: Vec<usize> = (0..2 * self.n).filter(|b| mask >> b & 1 == 1).collect();
        DMatrix::from_fn(idx.len(), idx.len(), |a, b| self.entries[(idx[a], idx[b])])
    }

    /// `R^T Sigma R`: covariance after a Gaussian unitary with rotation `R`.
    pub fn rotated(&self, r: &DMatrix<f64>) -> Self {
        Self {
            n: self.n,
            entries: r.transpose() * &self.entries * r,
        }
    }
}

fn check_antisymmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(FerroError::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if !m.nrows().is_multiple_of(2) {
        return Err(FerroError::OddDimension(m.nrows()));
    }
    let residual = (m + m.transpose()).amax();
    if residual > tol::EPS_ANTISYM {
        return Err(FerroError::NotAntisymmetric(residual));
    }
    Ok(())
}

/// `Sigma = R blockdiag([0, l_j; -l_j, 0]) R^T` with `R` in `SO(2n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub rotation: DMatrix<f64>,
    pub lambdas: Vec<f64>,
}

/// `Sigma_jk = (i/2) Tr(rho [gamma_j, gamma_k])`.
pub fn covariance(rho: &DenseOperator) -> Result<CovarianceMatrix> {
    rho.check_state()?;
    let n = rho.qubits();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..2 * n {
        for k in j + 1..2 * n {
            let mono = PauliMonomial::majorana_product(1 << j | 1 << k, n);
            let v = (C64::new(0.0, -1.0) * mono.overlap(rho)).re;
            m[(j, k)] = v;
            m[(k, j)] = -v;
        }
    }
    Ok(CovarianceMatrix { n, entries: m })
}

/// Covariance read off the quadratic coefficients of a moment polynomial.
pub fn covariance_from_moments(xi: &GrassmannPoly) -> Result<CovarianceMatrix> {
    let g = xi.generators();
    if !g.is_multiple_of(2) {
        return Err(FerroError::OddDimension(g));
    }
    let mut m = DMatrix::zeros(g, g);
    for j in 0..g {
        for k in j + 1..g {
            let v = (C64::new(0.0, -1.0) * xi.coeff(1 << j | 1 << k)).re;
            m[(j, k)] = v;
            m[(k, j)] = -v;
        }
    }
    Ok(CovarianceMatrix {
        n: g / 2,
        entries: m,
    })
}

/// Block-diagonalizes `Sigma` by a real Schur decomposition.
///
/// Blocks carry `lambda_j >= 0`, sorted by `|lambda_j|` descending (stable).
/// If the resulting rotation has determinant `-1`, the columns of the last
/// pair are swapped, which negates the smallest `lambda`.
pub fn canonicalize(sigma: &CovarianceMatrix) -> Result<CanonicalForm> {
    let m = sigma.matrix();
    check_antisymmetric(m)?;
    let dim = m.nrows();
    if dim == 0 {
        return Ok(CanonicalForm {
            rotation: DMatrix::zeros(0, 0),
            lambdas: Vec::new(),
        });
    }
    let (q, t) = m.clone().schur().unpack();
    let scale = 1e-12 * (1.0 + m.amax());

    let mut blocks: Vec<(usize, usize, f64)> = Vec::new();
    let mut singles: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < dim {
        if i + 1 < dim && t[(i + 1, i)].abs() > scale {
            let l = 0.5 * (t[(i, i + 1)] - t[(i + 1, i)]);
            blocks.push((i, i + 1, l));
            i += 2;
        } else {
            singles.push(i);
            i += 1;
        }
    }
    for pair in singles.chunks(2) {
        blocks.push((pair[0], pair[1], 0.0));
    }
    for b in blocks.iter_mut() {
        if b.2 < 0.0 {
            *b = (b.1, b.0, -b.2);
        }
    }
    blocks.sort_by(|a, b| b.2.abs().total_cmp(&a.2.abs()));

    let mut rotation = DMatrix::zeros(dim, dim);
    for (j, &(a, b, _)) in blocks.iter().enumerate() {
        rotation.set_column(2 * j, &q.column(a));
        rotation.set_column(2 * j + 1, &q.column(b));
    }
    let mut lambdas: Vec<f64> = blocks.iter().map(|b| b.2).collect();
    if rotation.determinant() < 0.0 {
        let last = lambdas.len() - 1;
        rotation.swap_columns(2 * last, 2 * last + 1);
        lambdas[last] = -lambdas[last];
    }
    Ok(CanonicalForm { rotation, lambdas })
}

/// Wick moments `rho_J = i^{|J|/2} Pf(Sigma|_J)` (even `J`) as a polynomial.
///
/// The `i^{|J|/2}` phase follows from `Sigma_jk = -i rho_{jk}` for `j < k`.
pub fn gaussian_moments(sigma: &CovarianceMatrix) -> Result<GrassmannPoly> {
    gaussian_moments_with(sigma, Execution::Parallel)
}

pub fn gaussian_moments_with(sigma: &CovarianceMatrix, exec: Execution) -> Result<GrassmannPoly> {
    sigma.check_physical()?;
    let g = 2 * sigma.n;
    let coeffs = exec.map_range(1usize << g, |mask| {
        let k = mask.count_ones() as usize;
        if k % 2 == 1 {
            return ZERO;
        }
        let pf = pfaffian(&sigma.restrict(mask)).expect("restriction of an antisymmetric matrix");
        C64::new(0.0, 1.0).powu((k / 2) as u32) * pf
    });
    GrassmannPoly::from_coeffs(g, coeffs)
}

/// Gaussian state with covariance `Sigma`, synthesized from Wick moments.
pub fn gaussian_from_covariance(sigma: &CovarianceMatrix) -> Result<DenseOperator> {
    gaussian_from_covariance_with(sigma, Execution::Parallel)
}

pub fn gaussian_from_covariance_with(
    sigma: &CovarianceMatrix,
    exec: Execution,
) -> Result<DenseOperator> {
    let xi = gaussian_moments_with(sigma, exec)?;
    let rho = clifford::from_majorana_coefficients(sigma.n, xi.coeffs())?;
    Ok(rho.hermitian_part())
}

/// Gaussian state sharing the covariance of an even state.
pub fn gaussification(rho: &DenseOperator) -> Result<DenseOperator> {
    clifford::require_even(rho)?;
    let sigma = covariance(rho)?;
    gaussian_from_covariance(&sigma)
}

/// `U = exp(1/2 gamma^T h gamma)` and the rotation `R` defined by
/// `U gamma_j U^dag = sum_k R_jk gamma_k`, which is `exp(-2h)`.
pub fn gaussian_unitary(h: &DMatrix<f64>) -> Result<(DenseOperator, DMatrix<f64>)> {
    check_antisymmetric(h)?;
    let n = h.nrows() / 2;
    if n > MAX_DENSE_MODES {
        return Err(FerroError::TooLarge {
            what: format!("{n} modes"),
            limit: MAX_DENSE_MODES,
        });
    }
    // 1/2 gamma^T h gamma = sum_{j<k} h_jk gamma_j gamma_k, anti-Hermitian;
    // K = i * that is Hermitian and U = exp(-iK).
    let mut k = DenseOperator::zeros(n);
    for j in 0..2 * n {
        for l in j + 1..2 * n {
            if h[(j, l)] != 0.0 {
                PauliMonomial::majorana_product(1 << j | 1 << l, n)
                    .accumulate_into(C64::new(0.0, h[(j, l)]), &mut k);
            }
        }
    }
    let u = DenseOperator::new(n, linalg::exp_minus_i_hermitian(k.matrix()))?;
    let r = linalg::exp_real_antisymmetric(&(h * -2.0));
    Ok((u, r))
}

/// `sum_j h((1 + lambda_j) / 2)` with the binary entropy `h` in nats.
pub fn gaussian_spectrum_entropy(lambdas: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in lambdas {
        if l.abs() > 1.0 + tol::EPS_COV {
            return Err(FerroError::NotPhysicalCovariance(l * l));
        }
        let p = ((1.0 + l) / 2.0).clamp(0.0, 1.0);
        s += binary_entropy(p);
    }
    Ok(s)
}

fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Entropy of the Gaussian state with covariance `Sigma`.
pub fn gaussian_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    gaussian_spectrum_entropy(&canonicalize(sigma)?.lambdas)
}

/// Renyi entropy of a Gaussian state directly from its `lambda` spectrum:
/// the eigenvalues are `prod_j (1 +- lambda_j) / 2`.
pub fn gaussian_renyi_entropy(lambdas: &[f64], alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return gaussian_spectrum_entropy(lambdas);
    }
    let mut eigs = vec![1.0];
    for &l in lambdas {
        if l.abs() > 1.0 + tol::EPS_COV {
            return Err(FerroError::NotPhysicalCovariance(l * l));
        }
        let p = ((1.0 + l) / 2.0).clamp(0.0, 1.0);
        eigs = eigs.iter().flat_map(|&e| [e * p, e * (1.0 - p)]).collect();
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(FerroError::Malformed(format!(
            "Renyi order {alpha} outside [0, inf]"
        )));
    }
    Ok(clifford::entropy_of_spectrum(&eigs, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::ONE;

    fn rot2(t: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()])
    }

    #[test]
    fn covariance_of_vacuum() {
        let rho = DenseOperator::basis_projector(1, 0);
        let s = covariance(&rho).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!((s.matrix() - expected).amax() < 1e-14);
        assert!(
            covariance(&DenseOperator::maximally_mixed(2))
                .unwrap()
                .matrix()
                .amax()
                < 1e-15
        );
    }

    #[test]
    fn vacuum_from_covariance() {
        let s =
            CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])).unwrap();
        let rho = gaussian_from_covariance(&s).unwrap();
        let vac = DenseOperator::basis_projector(1, 0);
        assert!(rho.l2_distance(&vac).unwrap() < 1e-14);
        let zero = gaussian_from_covariance(&CovarianceMatrix::zeros(2)).unwrap();
        assert!(
            zero.l2_distance(&DenseOperator::maximally_mixed(2))
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn canonical_inputs_return_identity_rotation() {
        let f = canonicalize(&CovarianceMatrix::zeros(3)).unwrap();
        assert_eq!(f.lambdas, vec![0.0; 3]);
        assert!((f.rotation - DMatrix::<f64>::identity(6, 6)).amax() < 1e-14);

        for l in [0.5, -0.5, 1.0, -1.0] {
            let m = DMatrix::from_row_slice(2, 2, &[0.0, l, -l, 0.0]);
            let f = canonicalize(&CovarianceMatrix::new(m).unwrap()).unwrap();
            assert!((f.lambdas[0] - l).abs() < 1e-14, "{l} -> {:?}", f.lambdas);
            assert!((f.rotation - DMatrix::<f64>::identity(2, 2)).amax() < 1e-14);
        }
    }

    #[test]
    fn canonicalize_rejects_non_antisymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(
            CovarianceMatrix::new(m),
            Err(FerroError::NotAntisymmetric(_))
        ));
    }

    #[test]
    fn canonicalize_reconstructs_rotated_blocks() {
        let mut r = DMatrix::<f64>::identity(4, 4);
        r.view_mut((0, 0), (2, 2)).copy_from(&rot2(0.3));
        let mut second = DMatrix::<f64>::identity(4, 4);
        second.view_mut((1, 1), (2, 2)).copy_from(&rot2(1.1));
        let r = second * r;
        let form = CanonicalForm {
            rotation: r,
            lambdas: vec![0.8, -0.3],
        };
        let s = CovarianceMatrix::from_canonical(&form);
        let f = canonicalize(&s).unwrap();
        let back = CovarianceMatrix::from_canonical(&f);
        assert!((back.matrix() - s.matrix()).amax() < 1e-12);
        assert!((f.rotation.determinant() - 1.0).abs() < 1e-12);
        assert!((f.lambdas[0].abs() - 0.8).abs() < 1e-12);
        assert!((f.lambdas[1].abs() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn trivial_unitary() {
        let (u, r) = gaussian_unitary(&DMatrix::zeros(4, 4)).unwrap();
        assert!(u.l2_distance(&DenseOperator::identity(2)).unwrap() < 1e-14);
        assert!((r - DMatrix::<f64>::identity(4, 4)).amax() < 1e-14);
    }

    #[test]
    fn single_mode_rotation_sign() {
        let t = 0.37;
        let h = DMatrix::from_row_slice(2, 2, &[0.0, t, -t, 0.0]);
        let (u, r) = gaussian_unitary(&h).unwrap();
        let g1 = clifford::majorana(1, 1).unwrap();
        let g2 = clifford::majorana(2, 1).unwrap();
        let lhs = g1.conjugate_by(&u).unwrap();
        let rhs = g1
            .scale(C64::from(r[(0, 0)]))
            .add(&g2.scale(C64::from(r[(0, 1)])))
            .unwrap();
        assert!(lhs.l2_distance(&rhs).unwrap() < 1e-12);
        assert!((r[(0, 1)] + (2.0 * t).sin()).abs() < 1e-12);
    }

    #[test]
    fn spectrum_entropy_examples() {
        assert_eq!(gaussian_spectrum_entropy(&[1.0, -1.0]).unwrap(), 0.0);
        let s = gaussian_spectrum_entropy(&[0.0; 3]).unwrap();
        assert!((s - 3.0 * 2f64.ln()).abs() < 1e-14);
        assert!(gaussian_spectrum_entropy(&[1.1]).is_err());
        let r = gaussian_renyi_entropy(&[0.0, 0.0], 2.0).unwrap();
        assert!((r - 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn pure_covariance_gives_pure_state() {
        let form = CanonicalForm {
            rotation: DMatrix::identity(4, 4),
            lambdas: vec![1.0, -1.0],
        };
        let rho = gaussian_from_covariance(&CovarianceMatrix::from_canonical(&form)).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.trace() - ONE).norm() < 1e-14);
    }
}
