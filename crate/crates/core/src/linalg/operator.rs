use super::exact::row_reduce;
use super::matrix::Matrix;
use super::subspace::SubspaceBasis;
use crate::basis;
use crate::element::CdElement;
use crate::error::{CdError, Result};
use crate::rational::Rat;

/// A linear map `A_n -> A_n` as a dense `2^n x 2^n` matrix whose column `j` is
/// the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorMatrix {
    level: u32,
    matrix: Matrix,
}

impl OperatorMatrix {
    pub fn new(level: u32, matrix: Matrix) -> Result<Self> {
        let d = 1usize << level;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(CdError::Precondition(format!(
                "operator at level {level} must be {d}x{d}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(OperatorMatrix { level, matrix })
    }

    pub fn identity(level: u32) -> Self {
        OperatorMatrix {
            level,
            matrix: Matrix::identity(1 << level),
        }
    }

    /// Tabulates a linear map from its action on the canonical basis.
    pub fn from_fn(level: u32, f: impl Fn(&CdElement) -> CdElement) -> Self {
        let d = 1usize << level;
        let columns: Vec<Vec<Rat>> = (0..d)
            .map(|j| {
                let img = f(&CdElement::basis(level, j));
                assert_eq!(img.level(), level);
                img.into_coords()
            })
            .collect();
        OperatorMatrix {
            level,
            matrix: Matrix::from_columns(d, &columns),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        1 << self.level
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &CdElement) -> Result<CdElement> {
        if x.level() != self.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: x.level(),
            });
        }
        CdElement::from_coords(self.level, self.matrix.mul_vec(x.coords()))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.level, other.level);
        OperatorMatrix {
            level: self.level,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn square(&self) -> OperatorMatrix {
        self.compose(self)
    }

    pub fn add(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.level, other.level);
        OperatorMatrix {
            level: self.level,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.level, other.level);
        OperatorMatrix {
            level: self.level,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, r: &Rat) -> OperatorMatrix {
        OperatorMatrix {
            level: self.level,
            matrix: self.matrix.scale(r),
        }
    }

    pub fn transpose(&self) -> OperatorMatrix {
        OperatorMatrix {
            level: self.level,
            matrix: self.matrix.transpose(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.matrix.is_skew_symmetric()
    }

    pub fn rank(&self) -> usize {
        row_reduce(&self.matrix).rank()
    }

    pub fn determinant(&self) -> Rat {
        super::exact::determinant(&self.matrix)
    }

    pub fn to_tsv(&self) -> String {
        self.matrix.to_tsv()
    }
}

/// `L_a`: column `j` is `a e_j`.
pub fn left_mult_matrix(a: &CdElement) -> OperatorMatrix {
    let level = a.level();
    let d = a.dim();
    let mut m = Matrix::zeros(d, d);
    let table = basis::table(level);
    for i in a.support() {
        let ai = a.coord(i);
        for j in 0..d {
            let s = table
                .as_ref()
                .map_or_else(|| basis::basis_product_sign(level, i, j), |t| t.sign(i, j));
            m.set(i ^ j, j, if s > 0 { ai.clone() } else { -ai.clone() });
        }
    }
    OperatorMatrix { level, matrix: m }
}

/// `R_a`: column `j` is `e_j a`.
pub fn right_mult_matrix(a: &CdElement) -> OperatorMatrix {
    let level = a.level();
    let d = a.dim();
    let mut m = Matrix::zeros(d, d);
    let table = basis::table(level);
    for i in a.support() {
        let ai = a.coord(i);
        for j in 0..d {
            let s = table
                .as_ref()
                .map_or_else(|| basis::basis_product_sign(level, j, i), |t| t.sign(j, i));
            m.set(i ^ j, j, if s > 0 { ai.clone() } else { -ai.clone() });
        }
    }
    OperatorMatrix { level, matrix: m }
}

/// Exact kernel with the canonical RREF basis.
pub fn nullspace(m: &OperatorMatrix) -> SubspaceBasis {
    let vectors = row_reduce(m.matrix())
        .nullspace()
        .into_iter()
        .map(|v| CdElement::from_coords(m.level(), v).expect("kernel vector length"))
        .collect();
    SubspaceBasis::from_independent(m.level(), vectors)
}

/// `Ker(M - mu I)`.
pub fn eigen_kernel(m: &OperatorMatrix, mu: &Rat) -> SubspaceBasis {
    let shifted = OperatorMatrix {
        level: m.level(),
        matrix: m.matrix().shift(mu),
    };
    nullspace(&shifted)
}

impl OperatorMatrix {
    /// Columns as elements, i.e. the images of the basis vectors.
    pub fn images(&self) -> Vec<CdElement> {
        (0..self.dim())
            .map(|j| CdElement::from_coords(self.level, self.matrix.column(j)).expect("column"))
            .collect()
    }

    /// Whether the map vanishes on every vector of `basis`.
    pub fn annihilates(&self, basis: &SubspaceBasis) -> bool {
        basis
            .vectors()
            .iter()
            .all(|v| self.apply(v).map(|w| w.is_zero()).unwrap_or(false))
    }
}

/// Agreement of two operators on a subspace.
pub fn agree_on(a: &OperatorMatrix, b: &OperatorMatrix, on: &SubspaceBasis) -> bool {
    on.vectors().iter().all(|v| {
        let (x, y) = (a.apply(v), b.apply(v));
        matches!((x, y), (Ok(x), Ok(y)) if x == y)
    })
}
