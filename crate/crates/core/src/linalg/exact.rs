//! Fraction-free Gauss-Jordan elimination.
//!
//! Each row is scaled to integers by the lcm of its denominators, then reduced
//! with Bareiss-style exact divisions by the previous pivot, which keeps every
//! intermediate entry a minor of the integer matrix. Pivots are the first
//! nonzero entry in the current column, scanning rows top-down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::rational::{common_denominator, Rat};

/// Reduced row-echelon form with pivot bookkeeping.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the RREF, in pivot order.
    pub rows: Vec<Vec<Rat>>,
    /// Pivot column of each row, strictly ascending.
    pub pivots: Vec<usize>,
    pub cols: usize,
    /// Determinant of the input when it is square.
    pub determinant: Option<Rat>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical nullspace basis: one vector per free column `f`, with a 1 in
    /// slot `f` and `-rref[r][f]` in each pivot slot.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn row_reduce(m: &Matrix) -> Echelon {
    let (nr, nc) = (m.rows(), m.cols());
    let mut scale_product = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..nr)
        .map(|i| {
            let row = m.row(i);
            let den = common_denominator(row);
            scale_product *= &den;
            row.iter().map(|v| v.numer() * (&den / v.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0usize;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let pivot_row = a[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (entry, pv) in row.iter_mut().zip(&pivot_row) {
                let num = &piv * &*entry - &f * pv;
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                *entry = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    let determinant = (nr == nc).then(|| {
        if pivots.len() < nr {
            Rat::zero()
        } else {
            let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
            Rat::new(&prev * BigInt::from(sign), scale_product)
        }
    });

    let rows = a
        .into_iter()
        .take(pivots.len())
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|v| Rat::new(v, lead.clone())).collect()
        })
        .collect();

    Echelon {
        rows,
        pivots,
        cols: nc,
        determinant,
    }
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(m).rank()
}

pub fn nullspace_vectors(m: &Matrix) -> Vec<Vec<Rat>> {
    row_reduce(m).nullspace()
}

/// Determinant of a square matrix.
pub fn determinant(m: &Matrix) -> Rat {
    assert!(m.is_square(), "determinant of a non-square matrix");
    row_reduce(m).determinant.expect("square")
}
