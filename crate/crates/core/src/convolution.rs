//! The fermionic beam splitter `W_theta` and the convolution channel, in a
//! dense engine and a cumulant-domain engine.

use crate::clifford;
use crate::error::{FerroError, Result};
use crate::grassmann::{self, contract_real, g_exp, g_mul, GrassmannPoly};
use crate::operator::{DenseOperator, PauliMonomial, C64};

/// Largest mode count for the dense channel (`2n` qubits).
pub const MAX_DENSE_MODES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    Dense,
    #[default]
    Cumulant,
}

impl std::str::FromStr for Engine {
    type Err = FerroError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Engine::Dense),
            "cumulant" => Ok(Engine::Cumulant),
            other => Err(FerroError::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

/// `gamma_j gamma_{2n+j}` on `2n` modes, the generator of the `j`-th factor.
fn pair_monomial(j: usize, n: usize) -> PauliMonomial {
    PauliMonomial::majorana_product(1 << (j - 1) | 1 << (2 * n + j - 1), 2 * n)
}

/// `W_theta = prod_j (cos(theta/2) + sin(theta/2) gamma_j gamma_{2n+j})`,
/// `j = 1..=2n`, acting on `2n` qubits.
pub fn conv_unitary(theta: f64, n: usize) -> DenseOperator {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut u = DenseOperator::identity(2 * n).into_matrix();
    for j in 1..=2 * n {
        let pu = pair_monomial(j, n).left_mul(&u);
        u = u * C64::from(c) + pu * C64::from(s);
    }
    DenseOperator::new(2 * n, u).expect("square power-of-two matrix")
}

fn check_pair(rho: &DenseOperator, sigma: &DenseOperator) -> Result<()> {
    rho.same_dim(sigma)?;
    if rho.qubits() > MAX_DENSE_MODES {
        return Err(FerroError::TooLarge {
            what: format!("dense convolution of {} modes", rho.qubits()),
            limit: MAX_DENSE_MODES,
        });
    }
    rho.check_state()?;
    sigma.check_state()?;
    clifford::require_even(rho)?;
    clifford::require_even(sigma)
}

/// `W_theta (rho ⊗ sigma) W_theta^dag`.
pub fn joint_output(
    rho: &DenseOperator,
    sigma: &DenseOperator,
    theta: f64,
) -> Result<DenseOperator> {
    check_pair(rho, sigma)?;
    let n = rho.qubits();
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut m = rho.kron(sigma).into_matrix();
    for j in 1..=2 * n {
        pair_monomial(j, n).conjugate_affine_in_place(C64::from(c), C64::from(s), &mut m);
    }
    DenseOperator::new(2 * n, m)
}

/// `rho ⊠_theta sigma = Tr_2[W_theta (rho ⊗ sigma) W_theta^dag]`.
pub fn convolve(rho: &DenseOperator, sigma: &DenseOperator, theta: f64) -> Result<DenseOperator> {
    Ok(clifford::partial_trace_second(&joint_output(rho, sigma, theta)?)?.hermitian_part())
}

/// `Tr_1[W_theta (rho ⊗ sigma) W_theta^dag]`, which equals `sigma ⊠_theta rho`.
pub fn complementary_convolve(
    rho: &DenseOperator,
    sigma: &DenseOperator,
    theta: f64,
) -> Result<DenseOperator> {
    Ok(clifford::partial_trace_first(&joint_output(rho, sigma, theta)?)?.hermitian_part())
}

/// Moment form: `Xi_out = (xi_cos Xi_rho)(xi_sin Xi_sigma)`.
pub fn convolve_moments(
    xi_rho: &GrassmannPoly,
    xi_sigma: &GrassmannPoly,
    theta: f64,
) -> Result<GrassmannPoly> {
    g_mul(
        &contract_real(xi_rho, theta.cos()),
        &contract_real(xi_sigma, theta.sin()),
    )
}

/// Cumulant form: `Psi_out = xi_cos Psi_rho + xi_sin Psi_sigma`.
pub fn convolve_cumulant(
    psi_rho: &GrassmannPoly,
    psi_sigma: &GrassmannPoly,
    theta: f64,
) -> Result<GrassmannPoly> {
    contract_real(psi_rho, theta.cos()).add(&contract_real(psi_sigma, theta.sin()))
}

/// State with cumulant polynomial `psi`.
pub fn state_from_cumulants(psi: &GrassmannPoly) -> Result<DenseOperator> {
    Ok(grassmann::inverse_fourier(&g_exp(psi)?)?.hermitian_part())
}

/// Convolution through the cumulant domain.
pub fn convolve_via_cumulants(
    rho: &DenseOperator,
    sigma: &DenseOperator,
    theta: f64,
) -> Result<DenseOperator> {
    let psi = convolve_cumulant(
        &grassmann::cumulants(rho)?,
        &grassmann::cumulants(sigma)?,
        theta,
    )?;
    state_from_cumulants(&psi)
}

/// `kappa_J -> 2^{k(1 - |J|/2)} kappa_J`, the cumulants of the `k`-fold
/// doubling self-convolution.
pub fn iterate_cumulants(psi: &GrassmannPoly, k: u32) -> GrassmannPoly {
    scale_by_degree(psi, |deg| 2f64.powf(k as f64 * (1.0 - deg as f64 / 2.0)))
}

/// `kappa_J -> m^{1 - |J|/2} kappa_J`, the cumulants of the `m`-copy linear
/// average.
pub fn linear_cumulants(psi: &GrassmannPoly, m: u32) -> GrassmannPoly {
    scale_by_degree(psi, |deg| (m as f64).powf(1.0 - deg as f64 / 2.0))
}

fn scale_by_degree(psi: &GrassmannPoly, f: impl Fn(usize) -> f64) -> GrassmannPoly {
    let factors: Vec<f64> = (0..=psi.generators()).map(&f).collect();
    let coeffs = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(mask, &c)| c * factors[mask.count_ones() as usize])
        .collect();
    GrassmannPoly::from_coeffs(psi.generators(), coeffs).expect("same length")
}

/// Doubling recursion `⊠^k rho = (⊠^{k-1} rho) ⊠ (⊠^{k-1} rho)` at `pi/4`.
pub fn iterate_conv(rho: &DenseOperator, k: u32, engine: Engine) -> Result<DenseOperator> {
    match engine {
        Engine::Dense => {
            rho.check_state()?;
            clifford::require_even(rho)?;
            let mut cur = rho.clone();
            for _ in 0..k {
                cur = convolve(&cur, &cur, std::f64::consts::FRAC_PI_4)?;
            }
            Ok(cur)
        }
        Engine::Cumulant => {
            if k == 0 {
                rho.check_state()?;
                clifford::require_even(rho)?;
                return Ok(rho.clone());
            }
            state_from_cumulants(&iterate_cumulants(&grassmann::cumulants(rho)?, k))
        }
    }
}

/// `⊠^k rho` for every `k` in `0..=kmax`, sharing one cumulant logarithm.
pub fn iterate_conv_series(rho: &DenseOperator, kmax: u32) -> Result<Vec<DenseOperator>> {
    let psi = grassmann::cumulants(rho)?;
    let mut out = vec![rho.clone()];
    for k in 1..=kmax {
        out.push(state_from_cumulants(&iterate_cumulants(&psi, k))?);
    }
    Ok(out)
}

/// Linear-copy average: `⊠^{(1)} rho = rho`,
/// `⊠^{(m+1)} rho = (⊠^{(m)} rho) ⊠_{theta_m} rho` with `cos^2 theta_m = m/(m+1)`.
pub fn iterate_conv_linear(rho: &DenseOperator, m: u32, engine: Engine) -> Result<DenseOperator> {
    if m == 0 {
        return Err(FerroError::Malformed("copy count must be positive".into()));
    }
    match engine {
        Engine::Dense => {
            rho.check_state()?;
            clifford::require_even(rho)?;
            let mut cur = rho.clone();
            for step in 1..m {
                cur = convolve(&cur, rho, linear_angle(step))?;
            }
            Ok(cur)
        }
        Engine::Cumulant => {
            let psi = grassmann::cumulants(rho)?;
            if m == 1 {
                return Ok(rho.clone());
            }
            state_from_cumulants(&linear_cumulants(&psi, m))
        }
    }
}

/// `theta_m` with `cos^2 theta_m = m / (m + 1)`.
pub fn linear_angle(m: u32) -> f64 {
    (m as f64 / (m as f64 + 1.0)).sqrt().acos()
}
