//! Grassmann polynomials over `2n` generators and the Grassmann-Clifford
//! Fourier transform.
//!
//! A polynomial is a dense coefficient array of length `2^{2n}`; entry `J`
//! (a bitmask, bit `j - 1` for `eta_j`) is the coefficient of the ordered
//! monomial `eta_J`.

use nalgebra::DMatrix;

use crate::clifford;
use crate::error::{FerroError, Result};
use crate::exec::Execution;
use crate::operator::{merge_sign, DenseOperator, C64, ONE, ZERO};

const CONSTANT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoly {
    generators: usize,
    coeffs: Vec<C64>,
}

impl GrassmannPoly {
    pub fn zero(generators: usize) -> Self {
        Self {
            generators,
            coeffs: vec![ZERO; 1 << generators],
        }
    }

    pub fn one(generators: usize) -> Self {
        Self::monomial(generators, 0, ONE)
    }

    pub fn monomial(generators: usize, mask: usize, coef: C64) -> Self {
        let mut out = Self::zero(generators);
        out.coeffs[mask] = coef;
        out
    }

    /// `eta_j`, 1-based.
    pub fn generator(j: usize, generators: usize) -> Result<Self> {
        if j == 0 || j > generators {
            return Err(FerroError::IndexOutOfRange {
                index: j,
                max: generators,
            });
        }
        Ok(Self::monomial(generators, 1 << (j - 1), ONE))
    }

    pub fn from_coeffs(generators: usize, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != 1 << generators {
            return Err(FerroError::DimensionMismatch {
                expected: 1 << generators,
                found: coeffs.len(),
            });
        }
        Ok(Self { generators, coeffs })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> C64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: C64) {
        self.coeffs[mask] = value;
    }

    pub fn constant(&self) -> C64 {
        self.coeffs[0]
    }

    /// All odd-degree coefficients vanish to 1e-12.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| m.count_ones() % 2 == 0 || c.norm() <= 1e-12)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_generators(other)?;
        Ok(Self {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_generators(other)?;
        Ok(Self {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            generators: self.generators,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Plain coefficient 2-norm `sqrt(sum_J |c_J|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `sum_{|J| = k} |c_J|^2` for `k = 0..=generators`.
    pub fn degree_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.generators + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            w[m.count_ones() as usize] += c.norm_sqr();
        }
        w
    }

    /// Keeps only the degree-`k` part.
    pub fn degree_part(&self, k: usize) -> Self {
        Self {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, &c)| {
                    if m.count_ones() as usize == k {
                        c
                    } else {
                        ZERO
                    }
                })
                .collect(),
        }
    }

    fn min_degree(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(m, _)| m.count_ones())
            .min()
    }

    /// Places the generators at positions `offset + 1 ..` of a larger algebra.
    pub fn embed(&self, offset: usize, generators: usize) -> Result<Self> {
        if offset + self.generators > generators {
            return Err(FerroError::DimensionMismatch {
                expected: generators,
                found: offset + self.generators,
            });
        }
        let mut out = Self::zero(generators);
        for (m, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[m << offset] = c;
        }
        Ok(out)
    }

    fn same_generators(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(FerroError::DimensionMismatch {
                expected: self.generators,
                found: other.generators,
            });
        }
        Ok(())
    }
}

/// Grassmann product.
pub fn g_mul(p: &GrassmannPoly, q: &GrassmannPoly) -> Result<GrassmannPoly> {
    g_mul_with(p, q, Execution::Parallel)
}

/// Grassmann product with an explicit execution strategy.
///
/// Computed output-major as a subset convolution: `out[c] = sum_{a ⊆ c}
/// sign(a, c\a) p[a] q[c\a]`, so each output coefficient is independent.
pub fn g_mul_with(p: &GrassmannPoly, q: &GrassmannPoly, exec: Execution) -> Result<GrassmannPoly> {
    p.same_generators(q)?;
    let size = p.coeffs.len();
    let pc = &p.coeffs;
    let qc = &q.coeffs;
    let left: Vec<usize> = (0..size).filter(|&m| pc[m] != ZERO).collect();
    let right_nonzero = qc.iter().any(|c| *c != ZERO);
    if left.is_empty() || !right_nonzero {
        return Ok(GrassmannPoly::zero(p.generators));
    }
    // Dense subset enumeration pays off only when p is dense; otherwise loop
    // over the nonzero left factors directly.
    let coeffs = if left.len() * 4 < size {
        let mut out = vec![ZERO; size];
        let full = size - 1;
        for &a in &left {
            let pa = pc[a];
            let free = full & !a;
            let mut b = free;
            loop {
                let qb = qc[b];
                if qb != ZERO {
                    out[a | b] += pa * qb * merge_sign(a, b);
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & free;
            }
        }
        out
    } else {
        exec.map_range(size, |c| {
            let mut acc = ZERO;
            let mut a = c;
            loop {
                let pa = pc[a];
                if pa != ZERO {
                    let b = c & !a;
                    let qb = qc[b];
                    if qb != ZERO {
                        acc += pa * qb * merge_sign(a, b);
                    }
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & c;
            }
            acc
        })
    };
    Ok(GrassmannPoly {
        generators: p.generators,
        coeffs,
    })
}

/// `exp(p)` for `p` with zero constant term; the series terminates by nilpotency.
pub fn g_exp(p: &GrassmannPoly) -> Result<GrassmannPoly> {
    if p.constant().norm() > CONSTANT_TOL {
        return Err(FerroError::ConstantTerm {
            expected: 0.0,
            found: p.constant().norm(),
        });
    }
    let mut x = p.clone();
    x.coeffs[0] = ZERO;
    let mut out = GrassmannPoly::one(p.generators);
    let mut term = GrassmannPoly::one(p.generators);
    let Some(min_deg) = x.min_degree() else {
        return Ok(out);
    };
    let terms = p.generators / min_deg as usize;
    for k in 1..=terms {
        term = g_mul(&term, &x)?.scale(C64::from(1.0 / k as f64));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `log(p)` for `p` with unit constant term: `sum_k (-1)^{k+1} (p - 1)^k / k`.
pub fn g_log(p: &GrassmannPoly) -> Result<GrassmannPoly> {
    if (p.constant() - ONE).norm() > CONSTANT_TOL {
        return Err(FerroError::ConstantTerm {
            expected: 1.0,
            found: p.constant().norm(),
        });
    }
    let mut x = p.clone();
    x.coeffs[0] = ZERO;
    let mut out = GrassmannPoly::zero(p.generators);
    let Some(min_deg) = x.min_degree() else {
        return Ok(out);
    };
    let terms = p.generators / min_deg as usize;
    let mut power = x.clone();
    for k in 1..=terms {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out = out.add(&power.scale(C64::from(sign / k as f64)))?;
        if k < terms {
            power = g_mul(&power, &x)?;
        }
    }
    Ok(out)
}

/// Contraction isomorphism: scales every generator by `alpha`.
pub fn contract(p: &GrassmannPoly, alpha: C64) -> GrassmannPoly {
    let powers: Vec<C64> = (0..=p.generators).map(|k| alpha.powu(k as u32)).collect();
    GrassmannPoly {
        generators: p.generators,
        coeffs: p
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| c * powers[m.count_ones() as usize])
            .collect(),
    }
}

/// Real-scalar contraction.
pub fn contract_real(p: &GrassmannPoly, alpha: f64) -> GrassmannPoly {
    contract(p, C64::from(alpha))
}

/// Linear substitution `eta_j -> sum_k r[(j, k)] eta_k`, applied degree by
/// degree: the degree-`k` block transforms by the `k`-th exterior power of
/// `r`, whose entries are the `k x k` minors `det r[J, K]`.
pub fn substitute(p: &GrassmannPoly, r: &DMatrix<f64>) -> Result<GrassmannPoly> {
    let g = p.generators;
    if r.nrows() != g || r.ncols() != g {
        return Err(FerroError::DimensionMismatch {
            expected: g,
            found: r.nrows(),
        });
    }
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); g + 1];
    for m in 0..1usize << g {
        by_degree[m.count_ones() as usize].push(m);
    }
    let mut out = GrassmannPoly::zero(g);
    out.coeffs[0] = p.coeffs[0];
    for (k, masks) in by_degree.iter().enumerate().skip(1) {
        let sources: Vec<usize> = masks
            .iter()
            .copied()
            .filter(|&m| p.coeffs[m] != ZERO)
            .collect();
        if sources.is_empty() {
            continue;
        }
        for &target in masks {
            let cols = bits(target);
            let mut acc = ZERO;
            for &src in &sources {
                let rows = bits(src);
                let minor = DMatrix::from_fn(k, k, |a, b| r[(rows[a], cols[b])]);
                acc += p.coeffs[src] * minor.determinant();
            }
            out.coeffs[target] = acc;
        }
    }
    Ok(out)
}

fn bits(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .collect()
}

/// Moment-generating polynomial `Xi_rho = sum_J rho_J eta_J`.
pub fn fourier(rho: &DenseOperator) -> Result<GrassmannPoly> {
    let m = clifford::moments(rho)?;
    GrassmannPoly::from_coeffs(2 * rho.qubits(), m)
}

/// Fourier transform of an arbitrary operator (no state check).
pub fn fourier_operator(a: &DenseOperator) -> GrassmannPoly {
    GrassmannPoly {
        generators: 2 * a.qubits(),
        coeffs: clifford::majorana_coefficients(a),
    }
}

/// `rho = 2^-n sum_J Xi_J gamma_J`.
pub fn inverse_fourier(xi: &GrassmannPoly) -> Result<DenseOperator> {
    if !xi.generators.is_multiple_of(2) {
        return Err(FerroError::OddDimension(xi.generators));
    }
    clifford::from_majorana_coefficients(xi.generators / 2, &xi.coeffs)
}

/// Cumulant-generating polynomial `Psi_rho = log Xi_rho` of an even state.
pub fn cumulants(rho: &DenseOperator) -> Result<GrassmannPoly> {
    rho.check_state()?;
    clifford::require_even(rho)?;
    g_log(&fourier(rho)?)
}

/// Cumulants from a moment polynomial without going through a dense operator.
pub fn cumulants_from_moments(xi: &GrassmannPoly) -> Result<GrassmannPoly> {
    g_log(xi)
}
