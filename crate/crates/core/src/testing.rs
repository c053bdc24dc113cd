//! Gaussianity tests for pure states and unitaries, built on the three-copy
//! swap-test protocol.

use std::f64::consts::FRAC_PI_4;

use crate::convolution::{self, convolve_moments};
use crate::error::{FerroError, Result};
use crate::exec::Execution;
use crate::grassmann;
use crate::measures;
use crate::operator::{DenseOperator, PauliMonomial, C64, ONE};
use crate::tol;

/// How the self-convolution `psi ⊠ psi` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Dense channel when it fits, moment-domain product otherwise.
    #[default]
    Auto,
    Dense,
    Moment,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateTestReport {
    /// `|<psi| Z^n |psi>|^2`.
    pub parity_fidelity: f64,
    /// `<psi| psi ⊠ psi |psi>`.
    pub overlap: f64,
    /// `(1 + overlap) / 2`.
    pub p_accept: f64,
    pub gaussian: bool,
}

/// `|<psi| Z^n |psi>|^2` for a pure state given as a density matrix.
pub fn parity_fidelity(psi: &DenseOperator) -> f64 {
    let z = PauliMonomial {
        qubits: psi.qubits(),
        x: 0,
        z: psi.dim() - 1,
        phase: ONE,
    };
    z.overlap(psi).norm_sqr()
}

pub fn even_state_test(psi: &DenseOperator) -> bool {
    parity_fidelity(psi) >= 1.0 - tol::EPS_EVEN
}

fn plus_state(qubits: usize) -> Vec<C64> {
    let d = 1usize << qubits;
    vec![C64::from(1.0 / (d as f64).sqrt()); d]
}

fn apply(u: &DenseOperator, v: &[C64]) -> Vec<C64> {
    let d = v.len();
    let m = u.matrix();
    (0..d)
        .map(|r| (0..d).map(|c| m[(r, c)] * v[c]).sum())
        .collect()
}

fn apply_parity(v: &mut [C64]) {
    for (i, a) in v.iter_mut().enumerate() {
        if i.count_ones() % 2 == 1 {
            *a = -*a;
        }
    }
}

/// `||Z^n U |+>^n - U Z^n |+>^n||`. A global phase of `U` appears on both
/// sides, so the vectors are compared directly.
pub fn even_unitary_residual(u: &DenseOperator) -> f64 {
    let plus = plus_state(u.qubits());
    let mut lhs = apply(u, &plus);
    apply_parity(&mut lhs);
    let mut zplus = plus;
    apply_parity(&mut zplus);
    let rhs = apply(u, &zplus);
    lhs.iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn even_unitary_test(u: &DenseOperator) -> bool {
    even_unitary_residual(u) <= tol::EPS_EVEN
}

fn require_pure(psi: &DenseOperator) -> Result<()> {
    psi.check_state()?;
    let p = psi.purity();
    if (p - 1.0).abs() > tol::EPS_PURE {
        return Err(FerroError::NotPure(p));
    }
    Ok(())
}

/// `Tr(psi (psi ⊠ psi))`.
fn self_convolution_overlap(psi: &DenseOperator, route: Route) -> Result<f64> {
    let dense = match route {
        Route::Dense => true,
        Route::Moment => false,
        Route::Auto => psi.qubits() <= 4,
    };
    if dense {
        let out = convolution::convolve(psi, psi, FRAC_PI_4)?;
        return Ok(psi.trace_inner(&out)?.re);
    }
    // Tr(rho tau) = 2^-n sum_J conj(rho_J) tau_J for Hermitian rho.
    let xi = grassmann::fourier(psi)?;
    let tau = convolve_moments(&xi, &xi, FRAC_PI_4)?;
    let s: C64 = xi
        .coeffs()
        .iter()
        .zip(tau.coeffs())
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(s.re / psi.dim() as f64)
}

/// Three-copy Gaussian test for a pure state. Evenness is checked first and an
/// odd state is an error.
pub fn gaussian_state_test(psi: &DenseOperator) -> Result<StateTestReport> {
    gaussian_state_test_with(psi, Route::Auto)
}

pub fn gaussian_state_test_with(psi: &DenseOperator, route: Route) -> Result<StateTestReport> {
    require_pure(psi)?;
    let parity_fidelity = parity_fidelity(psi);
    if parity_fidelity < 1.0 - tol::EPS_EVEN {
        return Err(FerroError::NotEven(1.0 - parity_fidelity));
    }
    let overlap = self_convolution_overlap(psi, route)?;
    let p_accept = 0.5 * (1.0 + overlap);
    Ok(StateTestReport {
        parity_fidelity,
        overlap,
        p_accept,
        gaussian: p_accept >= 1.0 - tol::EPS_TEST,
    })
}

/// `2^{-2n} prod_{j=1}^{2n} (1 + i gamma_j gamma_{2n+j})` on `2n` modes.
pub fn max_entangled_fermionic(n: usize) -> DenseOperator {
    let mut m = DenseOperator::identity(2 * n).into_matrix();
    for j in 1..=2 * n {
        let p = PauliMonomial::majorana_product(1 << (j - 1) | 1 << (2 * n + j - 1), 2 * n);
        let pm = p.left_mul(&m);
        m += pm * C64::new(0.0, 1.0);
    }
    m /= C64::from((1u64 << (2 * n)) as f64);
    DenseOperator::new(2 * n, m).expect("square power-of-two matrix")
}

/// `(U ⊗ I) rho_I (U ⊗ I)^dag`.
pub fn choi_state(u: &DenseOperator) -> Result<DenseOperator> {
    u.check_unitary()?;
    let n = u.qubits();
    let big = u.kron(&DenseOperator::identity(n));
    max_entangled_fermionic(n).conjugate_by(&big)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotGaussianReason {
    ChoiNotGaussian,
    NotEven,
}

impl NotGaussianReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotGaussianReason::ChoiNotGaussian => "choi-not-gaussian",
            NotGaussianReason::NotEven => "not-even",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitaryVerdict {
    Gaussian,
    NotGaussian(NotGaussianReason),
}

/// How the Choi-state Gaussianity is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitaryRoute {
    /// Three-copy test on the Choi state with the dense channel.
    #[default]
    Dense,
    /// `K_M(choi) <= EPS_TEST` from the Choi cumulants.
    Cumulant,
}

/// Largest qubit count accepted by the dense unitary route.
pub const MAX_DENSE_UNITARY_QUBITS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryTestReport {
    /// Acceptance probability of the Choi state (dense route), if computed.
    pub choi_p_accept: Option<f64>,
    /// Non-Gaussian cumulant weight of the Choi state (cumulant route), if computed.
    pub choi_non_gaussian_weight: Option<f64>,
    pub choi_gaussian: bool,
    pub even_residual: f64,
    pub even: bool,
    pub verdict: UnitaryVerdict,
}

pub fn gaussian_unitary_test(u: &DenseOperator) -> Result<UnitaryTestReport> {
    gaussian_unitary_test_with(u, UnitaryRoute::Dense)
}

/// A Choi state without definite parity is reported as not Gaussian.
pub fn gaussian_unitary_test_with(
    u: &DenseOperator,
    route: UnitaryRoute,
) -> Result<UnitaryTestReport> {
    u.check_unitary()?;
    let choi = choi_state(u)?;
    let (choi_p_accept, choi_non_gaussian_weight, choi_gaussian) = match route {
        UnitaryRoute::Dense => {
            if u.qubits() > MAX_DENSE_UNITARY_QUBITS {
                return Err(FerroError::TooLarge {
                    what: format!("dense Choi test on {} qubits", u.qubits()),
                    limit: MAX_DENSE_UNITARY_QUBITS,
                });
            }
            match gaussian_state_test_with(&choi, Route::Dense) {
                Ok(r) => (Some(r.p_accept), None, r.gaussian),
                Err(FerroError::NotEven(_)) => (None, None, false),
                Err(e) => return Err(e),
            }
        }
        UnitaryRoute::Cumulant => {
            if parity_fidelity(&choi) < 1.0 - tol::EPS_EVEN {
                (None, None, false)
            } else {
                let km = measures::cumulant_weights(&choi)?.non_gaussian;
                (None, Some(km), km <= tol::EPS_TEST)
            }
        }
    };
    let even_residual = even_unitary_residual(u);
    let even = even_residual <= tol::EPS_EVEN;
    let verdict = if !choi_gaussian {
        UnitaryVerdict::NotGaussian(NotGaussianReason::ChoiNotGaussian)
    } else if !even {
        UnitaryVerdict::NotGaussian(NotGaussianReason::NotEven)
    } else {
        UnitaryVerdict::Gaussian
    };
    Ok(UnitaryTestReport {
        choi_p_accept,
        choi_non_gaussian_weight,
        choi_gaussian,
        even_residual,
        even,
        verdict,
    })
}

/// Runs `gaussian_unitary_test` over a corpus.
pub fn gaussian_unitary_corpus(
    us: Vec<DenseOperator>,
    route: UnitaryRoute,
    exec: Execution,
) -> Vec<Result<UnitaryTestReport>> {
    exec.map(us, |u| gaussian_unitary_test_with(&u, route))
}

/// Controlled-Z on two qubits.
pub fn cz() -> DenseOperator {
    let mut m = DenseOperator::identity(2).into_matrix();
    m[(3, 3)] = -ONE;
    DenseOperator::new(2, m).expect("4x4")
}

/// Two-qubit SWAP.
pub fn swap() -> DenseOperator {
    let mut m = DenseOperator::zeros(2).into_matrix();
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[(r, c)] = ONE;
    }
    DenseOperator::new(2, m).expect("4x4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{clifford, gaussian};

    #[test]
    fn vacuum_passes() {
        let r = gaussian_state_test(&DenseOperator::basis_projector(3, 0)).unwrap();
        assert!((r.p_accept - 1.0).abs() < 1e-12);
        assert!(r.gaussian);
    }

    #[test]
    fn odd_and_mixed_states_are_errors() {
        let h = C64::from(1.0);
        let mixed_parity =
            DenseOperator::from_pure(&[h, h, C64::from(0.0), C64::from(0.0)]).unwrap();
        assert!(!even_state_test(&mixed_parity));
        assert!(matches!(
            gaussian_state_test(&mixed_parity),
            Err(FerroError::NotEven(_))
        ));
        assert!(even_state_test(&DenseOperator::basis_projector(2, 1)));
        let mixed = DenseOperator::maximally_mixed(2);
        assert!(matches!(
            gaussian_state_test(&mixed),
            Err(FerroError::NotPure(_))
        ));
    }

    #[test]
    fn routes_agree() {
        let psi = crate::states::psi_phi(2.0);
        let a = gaussian_state_test_with(&psi, Route::Dense).unwrap();
        let b = gaussian_state_test_with(&psi, Route::Moment).unwrap();
        assert!((a.p_accept - b.p_accept).abs() < 1e-12);
    }

    #[test]
    fn max_entangled_state() {
        let rho = max_entangled_fermionic(2);
        assert!((rho.trace() - ONE).norm() < 1e-14);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let s = gaussian::covariance(&rho).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((s.matrix()[(j, 4 + k)] - expected).abs() < 1e-12);
                assert!((s.matrix()[(4 + j, k)] + expected).abs() < 1e-12);
            }
        }
        let half = clifford::partial_trace_second(&rho).unwrap();
        assert!(
            half.l2_distance(&DenseOperator::maximally_mixed(2))
                .unwrap()
                < 1e-14
        );
        let other = clifford::partial_trace_first(&rho).unwrap();
        assert!(
            other
                .l2_distance(&DenseOperator::maximally_mixed(2))
                .unwrap()
                < 1e-14
        );
    }

    #[test]
    fn identity_choi_is_max_entangled() {
        let c = choi_state(&DenseOperator::identity(2)).unwrap();
        assert!(c.l2_distance(&max_entangled_fermionic(2)).unwrap() < 1e-15);
    }

    #[test]
    fn even_unitary_examples() {
        assert!(even_unitary_test(&cz()));
        let z = crate::clifford::parity_operator(2);
        assert!(even_unitary_test(&z));
        let g1 = crate::clifford::majorana(1, 2).unwrap();
        assert!(!even_unitary_test(&g1));
        for theta in [0.3, 1.2, 2.9] {
            assert!(even_unitary_test(&convolution::conv_unitary(theta, 1)));
        }
    }

    #[test]
    fn unitary_verdicts() {
        let r = gaussian_unitary_test(&convolution::conv_unitary(FRAC_PI_4, 1)).unwrap();
        assert_eq!(r.verdict, UnitaryVerdict::Gaussian);
        let r = gaussian_unitary_test(&cz()).unwrap();
        assert_eq!(
            r.verdict,
            UnitaryVerdict::NotGaussian(NotGaussianReason::ChoiNotGaussian)
        );
        let g1 = crate::clifford::majorana(1, 2).unwrap();
        let r = gaussian_unitary_test(&g1).unwrap();
        assert!(r.choi_gaussian);
        assert_eq!(
            r.verdict,
            UnitaryVerdict::NotGaussian(NotGaussianReason::NotEven)
        );
        let r = gaussian_unitary_test_with(&cz(), UnitaryRoute::Cumulant).unwrap();
        assert_eq!(
            r.verdict,
            UnitaryVerdict::NotGaussian(NotGaussianReason::ChoiNotGaussian)
        );
    }
}
