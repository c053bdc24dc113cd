//! Pfaffians of real antisymmetric matrices.

use nalgebra::DMatrix;

use crate::error::{FerroError, Result};
use crate::tol;

/// Pfaffian. Sizes up to 6 use the matching sum, larger sizes use a pivoted
/// Parlett-Reid reduction.
pub fn pfaffian(m: &DMatrix<f64>) -> Result<f64> {
    check(m)?;
    if m.nrows() <= 6 {
        Ok(pfaffian_matching(m))
    } else {
        Ok(pfaffian_parlett_reid(m.clone()))
    }
}

fn check(m: &DMatrix<f64>) -> Result<()> {
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
    if residual > tol::EPS_ANTISYM * (1.0 + m.amax()) {
        return Err(FerroError::NotAntisymmetric(residual));
    }
    Ok(())
}

/// Sum over perfect matchings, expanded along the first row.
pub fn pfaffian_matching(m: &DMatrix<f64>) -> f64 {
    let idx: Vec<usize> = (0..m.nrows()).collect();
    matching_rec(m, &idx)
}

fn matching_rec(m: &DMatrix<f64>, idx: &[usize]) -> f64 {
    if idx.is_empty() {
        return 1.0;
    }
    let first = idx[0];
    let mut acc = 0.0;
    for k in 1..idx.len() {
        let a = m[(first, idx[k])];
        if a == 0.0 {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != k)
            .map(|(_, &v)| v)
            .collect();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * a * matching_rec(m, &rest);
    }
    acc
}

/// Parlett-Reid: Gaussian elimination by congruence with symmetric pivoting.
pub fn pfaffian_parlett_reid(mut a: DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        // Pivot: largest entry in column k below the diagonal.
        let (mut p, mut best) = (k + 1, a[(k + 1, k)].abs());
        for i in k + 2..n {
            if a[(i, k)].abs() > best {
                best = a[(i, k)].abs();
                p = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_columns(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        pf *= piv;
        if k + 2 < n {
            // Eliminate rows/columns k+2.. against the (k, k+1) pair.
            let tau: Vec<f64> = (k + 2..n).map(|i| a[(k, i)] / piv).collect();
            for (ti, i) in (k + 2..n).enumerate() {
                let t = tau[ti];
                if t == 0.0 {
                    continue;
                }
                for j in k + 2..n {
                    let v = a[(k + 1, j)];
                    a[(i, j)] -= t * v;
                }
                for j in k + 2..n {
                    let v = a[(j, k + 1)];
                    a[(j, i)] -= t * v;
                }
            }
        }
        k += 2;
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn antisym(n: usize, vals: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        let mut it = vals.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        m
    }

    #[test]
    fn small_examples() {
        let m = antisym(2, &[2.5]);
        assert_eq!(pfaffian(&m).unwrap(), 2.5);
        let v = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let m = antisym(4, &v);
        // m12 m34 - m13 m24 + m14 m23
        let expected = 1.0 * 6.0 - 2.0 * 5.0 + 3.0 * 4.0;
        assert!((pfaffian(&m).unwrap() - expected).abs() < 1e-14);
        assert!((pfaffian_parlett_reid(m) - expected).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            pfaffian(&DMatrix::zeros(3, 3)),
            Err(FerroError::OddDimension(3))
        ));
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        assert!(matches!(pfaffian(&m), Err(FerroError::NotAntisymmetric(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn methods_agree_and_square_to_det(vals in prop::collection::vec(-1.0f64..1.0, 15)) {
            let m = antisym(6, &vals);
            let a = pfaffian_matching(&m);
            let b = pfaffian_parlett_reid(m.clone());
            prop_assert!((a - b).abs() < 1e-12);
            let det = m.determinant();
            prop_assert!((a * a - det).abs() <= 1e-8 * det.abs().max(1e-12));
        }

        #[test]
        fn congruence_scales_by_det(
            vals in prop::collection::vec(-1.0f64..1.0, 28),
            a in prop::collection::vec(-1.0f64..1.0, 64),
        ) {
            let m = antisym(8, &vals);
            let a = DMatrix::from_vec(8, 8, a);
            let lhs = pfaffian(&(a.transpose() * &m * &a)).unwrap();
            let rhs = a.determinant() * pfaffian(&m).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            let pf = pfaffian(&m).unwrap();
            let det = m.determinant();
            prop_assert!((pf * pf - det).abs() <= 1e-8 * det.abs().max(1e-12));
        }
    }
}
