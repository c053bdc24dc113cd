//! Jordan-Wigner representation of the Majorana (Clifford) algebra and the
//! basic state functionals built on it.

use nalgebra::DMatrix;

use crate::error::{FerroError, Result};
use crate::exec::Execution;
use crate::linalg;
use crate::operator::{DenseOperator, MultiIndex, PauliMonomial, C64, ZERO};
use crate::tol;

/// `gamma_j` (1-based) on `n` modes as a dense Pauli-string matrix.
pub fn majorana(j: usize, n: usize) -> Result<DenseOperator> {
    Ok(PauliMonomial::majorana(j, n)?.to_operator())
}

/// Ordered product `gamma_J = gamma_{J_1} ... gamma_{J_|J|}`.
pub fn majorana_product(index: MultiIndex, n: usize) -> Result<DenseOperator> {
    if index.width() != 2 * n {
        return Err(FerroError::DimensionMismatch {
            expected: 2 * n,
            found: index.width(),
        });
    }
    Ok(PauliMonomial::majorana_product(index.mask(), n).to_operator())
}

/// `Z^{⊗n}`.
pub fn parity_operator(n: usize) -> DenseOperator {
    PauliMonomial {
        qubits: n,
        x: 0,
        z: (1 << n) - 1,
        phase: C64::new(1.0, 0.0),
    }
    .to_operator()
}

/// Expansion coefficients `A_J = Tr(gamma_J^dag A)` for all `4^n` masks, of
/// any operator.
pub fn majorana_coefficients(a: &DenseOperator) -> Vec<C64> {
    let n = a.qubits();
    Execution::Parallel.map_range(1usize << (2 * n), |mask| {
        PauliMonomial::majorana_product(mask, n).overlap(a)
    })
}

/// Moments `rho_J = Tr(gamma_J^dag rho)` of a state, indexed by mask.
pub fn moments(rho: &DenseOperator) -> Result<Vec<C64>> {
    rho.check_state()?;
    Ok(majorana_coefficients(rho))
}

/// `A = 2^-n sum_J A_J gamma_J`.
pub fn from_majorana_coefficients(n: usize, coeffs: &[C64]) -> Result<DenseOperator> {
    if coeffs.len() != 1 << (2 * n) {
        return Err(FerroError::DimensionMismatch {
            expected: 1 << (2 * n),
            found: coeffs.len(),
        });
    }
    let norm = 1.0 / (1u64 << n) as f64;
    let mut out = DenseOperator::zeros(n);
    for (mask, &c) in coeffs.iter().enumerate() {
        if c != ZERO {
            PauliMonomial::majorana_product(mask, n).accumulate_into(c * norm, &mut out);
        }
    }
    Ok(out)
}

/// Hilbert-Schmidt inner product `2^-n Tr(A^dag B)`.
pub fn hs_inner(a: &DenseOperator, b: &DenseOperator) -> Result<C64> {
    Ok(a.trace_inner(b)? / a.dim() as f64)
}

/// Traces out the trailing half of the qubits.
pub fn partial_trace_second(a: &DenseOperator) -> Result<DenseOperator> {
    let q = a.qubits();
    if !q.is_multiple_of(2) {
        return Err(FerroError::OddQubitCount(q));
    }
    let d = 1usize << (q / 2);
    let m = a.matrix();
    let out = DMatrix::from_fn(d, d, |i, k| (0..d).map(|j| m[(i * d + j, k * d + j)]).sum());
    DenseOperator::new(q / 2, out)
}

/// Traces out the leading half of the qubits.
pub fn partial_trace_first(a: &DenseOperator) -> Result<DenseOperator> {
    let q = a.qubits();
    if !q.is_multiple_of(2) {
        return Err(FerroError::OddQubitCount(q));
    }
    let d = 1usize << (q / 2);
    let m = a.matrix();
    let out = DMatrix::from_fn(d, d, |j, l| (0..d).map(|i| m[(i * d + j, i * d + l)]).sum());
    DenseOperator::new(q / 2, out)
}

/// Eigenvalues of a state, clamped to `[0, 1]`.
pub fn spectrum(rho: &DenseOperator) -> Result<Vec<f64>> {
    let ev = linalg::hermitian_eigenvalues(rho.matrix());
    let mut out = Vec::with_capacity(ev.len());
    for v in ev {
        if v < -tol::EPS_PSD {
            return Err(FerroError::NotAState(format!("negative eigenvalue {v:e}")));
        }
        out.push(v.clamp(0.0, 1.0));
    }
    Ok(out)
}

/// Renyi entropy (nats) of a clamped spectrum. `alpha = 1` is von Neumann,
/// `0` is log-rank and `f64::INFINITY` is min-entropy.
pub fn entropy_of_spectrum(eigs: &[f64], alpha: f64) -> f64 {
    if alpha == 0.0 {
        let rank = eigs.iter().filter(|&&v| v > tol::EPS_RANK).count();
        return (rank.max(1) as f64).ln();
    }
    if alpha == f64::INFINITY {
        let max = eigs.iter().copied().fold(0.0, f64::max);
        return -max.ln();
    }
    if alpha == 1.0 {
        return eigs
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| -v * v.ln())
            .sum();
    }
    let s: f64 = eigs
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v.powf(alpha))
        .sum();
    s.ln() / (1.0 - alpha)
}

pub fn entropy(rho: &DenseOperator, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(FerroError::Malformed(format!(
            "Renyi order {alpha} outside [0, inf]"
        )));
    }
    Ok(entropy_of_spectrum(&spectrum(rho)?, alpha))
}

pub fn von_neumann_entropy(rho: &DenseOperator) -> Result<f64> {
    entropy(rho, 1.0)
}

/// `||[A, Z^n]||_2` (normalized L2 norm).
pub fn parity_commutator_norm(a: &DenseOperator) -> f64 {
    // Z^n is diagonal with entries (-1)^popcount(index), so the commutator
    // only survives between basis states of different parity.
    let d = a.dim();
    let m = a.matrix();
    let mut s = 0.0;
    for c in 0..d {
        for r in 0..d {
            if (r ^ c).count_ones() % 2 == 1 {
                s += 4.0 * m[(r, c)].norm_sqr();
            }
        }
    }
    (s / d as f64).sqrt()
}

pub fn is_even(a: &DenseOperator) -> bool {
    parity_commutator_norm(a) <= tol::EPS_EVEN
}

pub(crate) fn require_even(a: &DenseOperator) -> Result<()> {
    let r = parity_commutator_norm(a);
    if r > tol::EPS_EVEN {
        return Err(FerroError::NotEven(r));
    }
    Ok(())
}

/// `D(rho || sigma)` in nats; `+inf` when the support of `rho` leaks outside
/// the support of `sigma`.
pub fn relative_entropy(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    rho.same_dim(sigma)?;
    rho.check_state()?;
    sigma.check_state()?;
    let rv = linalg::hermitian_eigenvalues(rho.matrix());
    let (sv, svec) = linalg::hermitian_eigh(sigma.matrix());
    let rho_term: f64 = rv
        .iter()
        .map(|&v| v.clamp(0.0, 1.0))
        .filter(|&v| v > 0.0)
        .map(|v| v * v.ln())
        .sum();
    // Tr(rho log sigma) = sum_k s_k-log * <s_k| rho |s_k>
    let rho_in_sigma = svec.adjoint() * rho.matrix() * &svec;
    let mut cross = 0.0;
    for (k, &s) in sv.iter().enumerate() {
        let w = rho_in_sigma[(k, k)].re;
        if s <= tol::EPS_RANK {
            if w > tol::EPS_PSD {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += w * s.ln();
    }
    Ok((rho_term - cross).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{I, ONE};

    fn pauli(name: char) -> DMatrix<C64> {
        let z = ZERO;
        match name {
            'X' => DMatrix::from_row_slice(2, 2, &[z, ONE, ONE, z]),
            'Y' => DMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
            'Z' => DMatrix::from_row_slice(2, 2, &[ONE, z, z, -ONE]),
            _ => DMatrix::identity(2, 2),
        }
    }

    #[test]
    fn single_mode_generators_are_x_and_y() {
        assert_eq!(majorana(1, 1).unwrap().matrix(), &pauli('X'));
        assert_eq!(majorana(2, 1).unwrap().matrix(), &pauli('Y'));
        let zx = pauli('Z').kronecker(&pauli('X'));
        assert_eq!(majorana(3, 2).unwrap().matrix(), &zx);
        assert!(matches!(
            majorana(5, 2),
            Err(FerroError::IndexOutOfRange { .. })
        ));
        assert!(majorana(0, 2).is_err());
    }

    #[test]
    fn clifford_relation() {
        for n in 1..=3 {
            for j in 1..=2 * n {
                for k in 1..=2 * n {
                    let gj = majorana(j, n).unwrap();
                    let gk = majorana(k, n).unwrap();
                    let anti = gj.mul(&gk).unwrap().add(&gk.mul(&gj).unwrap()).unwrap();
                    let expect = if j == k {
                        DenseOperator::identity(n).scale(C64::from(2.0))
                    } else {
                        DenseOperator::zeros(n)
                    };
                    assert!(anti.l2_distance(&expect).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let empty = majorana_product(MultiIndex::empty(4), 2).unwrap();
        assert_eq!(empty, DenseOperator::identity(2));
        let xy = majorana_product(MultiIndex::full(2), 1).unwrap();
        let iz = DenseOperator::new(1, pauli('Z') * I).unwrap();
        assert!(xy.l2_distance(&iz).unwrap() < 1e-15);
        for n in 1..=3 {
            let full = majorana_product(MultiIndex::full(2 * n), n).unwrap();
            let parity = parity_operator(n).scale(I.powu(n as u32));
            assert!(full.l2_distance(&parity).unwrap() < 1e-12);
        }
        assert!(majorana_product(MultiIndex::full(4), 1).is_err());
    }

    #[test]
    fn product_hermiticity_follows_degree() {
        let n = 2;
        for mask in 0..16usize {
            let g = majorana_product(MultiIndex::new(mask, 4).unwrap(), n).unwrap();
            let k = mask.count_ones() as usize;
            let hermitian = g.hermiticity_residual() < 1e-14;
            assert_eq!(
                hermitian,
                (k * (k.saturating_sub(1)) / 2).is_multiple_of(2),
                "mask {mask:b}"
            );
            assert!(g.unitarity_residual() < 1e-14);
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        for n in 1..=3usize {
            let all: Vec<_> = (0..1usize << (2 * n))
                .map(|m| PauliMonomial::majorana_product(m, n).to_operator())
                .collect();
            for (a, ga) in all.iter().enumerate() {
                for (b, gb) in all.iter().enumerate().skip(a) {
                    let ip = hs_inner(ga, gb).unwrap();
                    let expect = if a == b { ONE } else { ZERO };
                    assert!((ip - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn moments_of_simple_states() {
        let mixed = DenseOperator::maximally_mixed(2);
        let m = moments(&mixed).unwrap();
        assert!((m[0] - ONE).norm() < 1e-15);
        assert!(m[1..].iter().all(|c| c.norm() < 1e-15));

        let ket0 = DenseOperator::basis_projector(1, 0);
        let m = moments(&ket0).unwrap();
        assert!((m[0b11] - C64::new(0.0, -1.0)).norm() < 1e-15);

        assert!(moments(&DenseOperator::zeros(1)).is_err());
    }

    #[test]
    fn parity_is_full_product_times_phase() {
        for n in 1..=3 {
            let z = parity_operator(n);
            let g = majorana_product(MultiIndex::full(2 * n), n).unwrap();
            let phase = C64::new(0.0, -1.0).powu(n as u32);
            assert!(z.l2_distance(&g.scale(phase)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product() {
        let a = DenseOperator::basis_projector(1, 1);
        let b = DenseOperator::maximally_mixed(1);
        let ab = a.kron(&b);
        assert_eq!(partial_trace_second(&ab).unwrap(), a);
        assert_eq!(partial_trace_first(&ab).unwrap(), b);
        assert!(partial_trace_second(&DenseOperator::identity(3)).is_err());
    }

    #[test]
    fn entropy_examples() {
        let ln2 = std::f64::consts::LN_2;
        let s = entropy(&DenseOperator::maximally_mixed(2), 1.0).unwrap();
        assert!((s - 2.0 * ln2).abs() < 1e-12);
        let s2 = entropy(&DenseOperator::maximally_mixed(1), 2.0).unwrap();
        assert!((s2 - ln2).abs() < 1e-12);
        let pure = DenseOperator::basis_projector(2, 3);
        for alpha in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            assert!(entropy(&pure, alpha).unwrap().abs() < 1e-12);
        }
        assert!(entropy(&pure, -1.0).is_err());
    }

    #[test]
    fn evenness_examples() {
        assert!(is_even(&DenseOperator::basis_projector(1, 1)));
        let mut m = DenseOperator::zeros(1).into_matrix();
        m[(0, 1)] = ONE;
        let off = DenseOperator::from_matrix(m).unwrap();
        assert!(!is_even(&off));
        let plus = DenseOperator::from_pure(&[ONE, ONE]).unwrap();
        assert!(!is_even(&plus));
    }

    #[test]
    fn relative_entropy_examples() {
        let ln2 = std::f64::consts::LN_2;
        let ket0 = DenseOperator::basis_projector(1, 0);
        let mixed = DenseOperator::maximally_mixed(1);
        assert!((relative_entropy(&ket0, &mixed).unwrap() - ln2).abs() < 1e-12);
        assert!(relative_entropy(&mixed, &mixed).unwrap().abs() < 1e-12);
        let ket1 = DenseOperator::basis_projector(1, 1);
        assert_eq!(relative_entropy(&ket0, &ket1).unwrap(), f64::INFINITY);
    }
}
