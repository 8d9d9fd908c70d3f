//! Cyclic Jacobi rotations for real symmetric matrices.

use super::operator::OperatorMatrix;
use super::{EIGEN_CLUSTER_TOL, JACOBI_OFF_DIAGONAL_STOP};
use crate::error::{CdError, Result};

const MAX_SWEEPS: usize = 100;

/// Full spectrum of a symmetric matrix in double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSpectrum {
    /// All eigenvalues, ascending, repeated by multiplicity.
    pub eigenvalues: Vec<f64>,
    /// `max |Mv - λv|` over the unit eigenvectors.
    pub residual_bound: f64,
}

impl FloatSpectrum {
    /// Distinct eigenvalues (cluster means) with multiplicities; neighbours
    /// closer than [`EIGEN_CLUSTER_TOL`] are merged.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &v in &self.eigenvalues {
            match out.last_mut() {
                Some((_, count, sum)) if v - last < EIGEN_CLUSTER_TOL => {
                    *count += 1;
                    *sum += v;
                }
                _ => out.push((v, 1, v)),
            }
            last = v;
        }
        out.into_iter()
            .map(|(_, count, sum)| (sum / count as f64, count))
            .collect()
    }

    /// Number of eigenvalues within `tol` of `mu`.
    pub fn multiplicity_near(&self, mu: f64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|v| (*v - mu).abs() <= tol)
            .count()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }
}

/// Spectrum of an exactly symmetric operator.
pub fn symmetric_eigen_float(m: &OperatorMatrix) -> Result<FloatSpectrum> {
    if !m.is_symmetric() {
        return Err(CdError::NotSymmetric);
    }
    symmetric_eigen_f64(&m.matrix().to_f64(), m.dim())
}

/// Jacobi on a row-major `d x d` symmetric array.
pub fn symmetric_eigen_f64(matrix: &[f64], d: usize) -> Result<FloatSpectrum> {
    assert_eq!(matrix.len(), d * d, "matrix must be d x d");
    let mut a = matrix.to_vec();
    let mut v = vec![0.0f64; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }

    let off_mass = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += a[i * d + j] * a[i * d + j];
                }
            }
        }
        s
    };

    let mut sweeps = 0;
    loop {
        let off = off_mass(&a);
        if off < JACOBI_OFF_DIAGONAL_STOP {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(CdError::NotConverged { sweeps, off });
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
                for k in 0..d {
                    let vkp = v[k * d + p];
                    let vkq = v[k * d + q];
                    v[k * d + p] = c * vkp - s * vkq;
                    v[k * d + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut residual_bound = 0.0f64;
    for j in 0..d {
        let lambda = a[j * d + j];
        let mut r2 = 0.0;
        for i in 0..d {
            let mv: f64 = (0..d).map(|k| matrix[i * d + k] * v[k * d + j]).sum();
            let diff = mv - lambda * v[i * d + j];
            r2 += diff * diff;
        }
        residual_bound = residual_bound.max(r2.sqrt());
    }

    let mut eigenvalues: Vec<f64> = (0..d).map(|i| a[i * d + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(FloatSpectrum {
        eigenvalues,
        residual_bound,
    })
}
