//! Dense linear algebra over exact rationals, plus a floating-point symmetric
//! eigensolver used only to enumerate spectra.

mod exact;
mod jacobi;
mod matrix;
mod operator;
mod subspace;

pub use exact::{determinant, nullspace_vectors, rank, row_reduce, Echelon};
pub use jacobi::{symmetric_eigen_f64, symmetric_eigen_float, FloatSpectrum};
pub use matrix::Matrix;
pub use operator::{
    agree_on, eigen_kernel, left_mult_matrix, nullspace, right_mult_matrix, OperatorMatrix,
};
pub use subspace::SubspaceBasis;

/// Off-diagonal squared Frobenius mass at which Jacobi sweeps stop.
pub const JACOBI_OFF_DIAGONAL_STOP: f64 = 1e-24;
/// Eigenvalues closer than this are counted as one eigenvalue.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-9;
