//! Moment and cumulant weights, non-Gaussian entropies, the relative entropy
//! of non-Gaussianity and central-limit bounds.

use crate::clifford;
use crate::convolution::{self, Engine};
use crate::error::{FerroError, Result};
use crate::exec::Execution;
use crate::gaussian;
use crate::grassmann::{self, GrassmannPoly};
use crate::operator::DenseOperator;
use crate::states;
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentWeights {
    /// `W_k = sum_{|J| = k} |rho_J|^2`, `k = 0..=2n`.
    pub by_degree: Vec<f64>,
    /// `I_M = sum_k k W_k`.
    pub sensitivity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CumulantWeights {
    /// `K_j = sum_{|J| = j} |kappa_J|^2`, `j = 0..=2n`.
    pub by_degree: Vec<f64>,
    /// `K_G = K_2`.
    pub gaussian: f64,
    /// `K_M = sum_{j >= 4} K_j`.
    pub non_gaussian: f64,
    /// `K = sum_j j K_j`.
    pub total: f64,
}

pub fn moment_weights(rho: &DenseOperator) -> Result<MomentWeights> {
    Ok(moment_weights_of(&grassmann::fourier(rho)?))
}

pub fn moment_weights_of(xi: &GrassmannPoly) -> MomentWeights {
    let by_degree = xi.degree_weights();
    let sensitivity = by_degree
        .iter()
        .enumerate()
        .map(|(k, w)| k as f64 * w)
        .sum();
    MomentWeights {
        by_degree,
        sensitivity,
    }
}

pub fn cumulant_weights(rho: &DenseOperator) -> Result<CumulantWeights> {
    Ok(cumulant_weights_of(&grassmann::cumulants(rho)?))
}

pub fn cumulant_weights_of(psi: &GrassmannPoly) -> CumulantWeights {
    let by_degree = psi.degree_weights();
    let gaussian = by_degree.get(2).copied().unwrap_or(0.0);
    let non_gaussian = by_degree.iter().skip(4).sum();
    let total = by_degree
        .iter()
        .enumerate()
        .map(|(j, w)| j as f64 * w)
        .sum();
    CumulantWeights {
        by_degree,
        gaussian,
        non_gaussian,
        total,
    }
}

/// `NG_R(rho) = S(G(rho)) - S(rho)`, with `S(G(rho))` from the covariance spectrum.
pub fn ng_relative_entropy(rho: &DenseOperator) -> Result<f64> {
    clifford::require_even(rho)?;
    let s_g = gaussian::gaussian_entropy(&gaussian::covariance(rho)?)?;
    Ok(s_g - clifford::von_neumann_entropy(rho)?)
}

fn require_pure_even(psi: &DenseOperator) -> Result<()> {
    psi.check_state()?;
    let p = psi.purity();
    if (p - 1.0).abs() > tol::EPS_PURE {
        return Err(FerroError::NotPure(p));
    }
    clifford::require_even(psi)
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        return Err(FerroError::Malformed(
            "non-Gaussian entropy order must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `NG^(k)_alpha(psi) = S_alpha(⊠^k psi)` for a pure even state.
pub fn ng_entropy(psi: &DenseOperator, k: u32, alpha: f64, engine: Engine) -> Result<f64> {
    check_order(k)?;
    require_pure_even(psi)?;
    clifford::entropy(&convolution::iterate_conv(psi, k, engine)?, alpha)
}

/// `S_alpha(G(psi))`, the `k -> infinity` limit of `ng_entropy`.
pub fn ng_entropy_limit(psi: &DenseOperator, alpha: f64) -> Result<f64> {
    require_pure_even(psi)?;
    let form = gaussian::canonicalize(&gaussian::covariance(psi)?)?;
    gaussian::gaussian_renyi_entropy(&form.lambdas, alpha)
}

/// `NG^(k)_alpha(psi)` for `k = 1..=kmax` from a single cumulant logarithm.
pub fn ng_entropy_series(
    psi: &DenseOperator,
    kmax: u32,
    alpha: f64,
    engine: Engine,
) -> Result<Vec<f64>> {
    require_pure_even(psi)?;
    match engine {
        Engine::Cumulant => convolution::iterate_conv_series(psi, kmax)?
            .iter()
            .skip(1)
            .map(|s| clifford::entropy(s, alpha))
            .collect(),
        Engine::Dense => {
            let mut out = Vec::with_capacity(kmax as usize);
            let mut cur = psi.clone();
            for _ in 0..kmax {
                cur = convolution::convolve(&cur, &cur, std::f64::consts::FRAC_PI_4)?;
                out.push(clifford::entropy(&cur, alpha)?);
            }
            Ok(out)
        }
    }
}

/// `S(⊠^k rho) - S(rho)`.
pub fn ng_entropy_mixed(rho: &DenseOperator, k: u32, engine: Engine) -> Result<f64> {
    check_order(k)?;
    let out = convolution::iterate_conv(rho, k, engine)?;
    Ok(clifford::von_neumann_entropy(&out)? - clifford::von_neumann_entropy(rho)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CltVariant {
    /// `k` doubling steps, `2^k` copies.
    #[default]
    Doubling,
    /// `k` copies averaged linearly.
    Linear,
}

/// `(sqrt(K_M) / N) exp(sqrt(K_G) + sqrt(K_M) / N)` with `N = 2^k` (doubling)
/// or `N = k` (linear).
pub fn clt_bound(rho: &DenseOperator, k: u32, variant: CltVariant) -> Result<f64> {
    let w = cumulant_weights(rho)?;
    clt_bound_from_weights(&w, k, variant)
}

pub fn clt_bound_from_weights(w: &CumulantWeights, k: u32, variant: CltVariant) -> Result<f64> {
    let copies = match variant {
        CltVariant::Doubling => 2f64.powi(k as i32),
        CltVariant::Linear => {
            if k == 0 {
                return Err(FerroError::Malformed(
                    "linear copy count must be positive".into(),
                ));
            }
            k as f64
        }
    };
    let km = w.non_gaussian.max(0.0).sqrt();
    let kg = w.gaussian.max(0.0).sqrt();
    Ok(km / copies * (kg + km / copies).exp())
}

/// `||⊠^k rho - G(rho)||_2` for `k = 0..=kmax`.
pub fn clt_distances(rho: &DenseOperator, kmax: u32, engine: Engine) -> Result<Vec<f64>> {
    let g = gaussian::gaussification(rho)?;
    let iterates = match engine {
        Engine::Cumulant => convolution::iterate_conv_series(rho, kmax)?,
        Engine::Dense => {
            let mut v = vec![rho.clone()];
            for _ in 0..kmax {
                let last = v.last().expect("nonempty");
                v.push(convolution::convolve(
                    last,
                    last,
                    std::f64::consts::FRAC_PI_4,
                )?);
            }
            v
        }
    };
    iterates.iter().map(|s| s.l2_distance(&g)).collect()
}

/// One row of a `psi_phi` sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct NgRow {
    pub phi: f64,
    /// `NG^(k)_alpha(psi_phi)` for `k = 1..=kmax`.
    pub by_order: Vec<f64>,
    /// `S_alpha(G(psi_phi))`; for `alpha = 1` this is `NG_R`.
    pub limit: f64,
}

/// Non-Gaussian entropies of `psi_phi` over a uniform grid on `[0, 2 pi]`.
pub fn ng_sweep(
    grid: usize,
    kmax: u32,
    alpha: f64,
    engine: Engine,
    exec: Execution,
) -> Result<Vec<NgRow>> {
    exec.map(states::phi_grid(grid), |phi| {
        let psi = states::psi_phi(phi);
        Ok(NgRow {
            phi,
            by_order: ng_entropy_series(&psi, kmax, alpha, engine)?,
            limit: ng_entropy_limit(&psi, alpha)?,
        })
    })
    .into_iter()
    .collect()
}

/// `(phi, K_G, K_M, K)` for `psi_phi` over a uniform grid on `[0, 2 pi]`.
pub fn weight_sweep(grid: usize, exec: Execution) -> Result<Vec<(f64, CumulantWeights)>> {
    exec.map(states::phi_grid(grid), |phi| {
        cumulant_weights(&states::psi_phi(phi)).map(|w| (phi, w))
    })
    .into_iter()
    .collect()
}
