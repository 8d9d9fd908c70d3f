//! Basis-level structure of the doubling product.
//!
//! In every `A_n` the product of two canonical basis vectors is a signed basis
//! vector, `e_i e_j = s(i, j) e_{i xor j}`. The sign is derived by walking the
//! doubling formula from the top level down; per-level tables memoize it and
//! are checked against the dense recursive product when first built.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

/// Levels above this are not tabulated; signs are then derived on the fly.
pub const MAX_TABLE_LEVEL: u32 = 10;

/// Levels up to this one are validated exhaustively against the recursion.
const FULL_VALIDATION_LEVEL: u32 = 5;

/// Sign of `e_i e_j` at `level`, walking the doubling formula.
pub fn basis_product_sign(level: u32, mut i: usize, mut j: usize) -> i8 {
    debug_assert!(i < 1 << level && j < 1 << level);
    let mut sign = 1i8;
    for l in (1..=level).rev() {
        let h = 1usize << (l - 1);
        match (i >= h, j >= h) {
            (false, false) => {}
            // (e_i, 0)(0, e_j') = (0, e_j' e_i)
            (false, true) => {
                j -= h;
                std::mem::swap(&mut i, &mut j);
            }
            // (0, e_i')(e_j, 0) = (0, e_i' conj(e_j))
            (true, false) => {
                i -= h;
                if j != 0 {
                    sign = -sign;
                }
            }
            // (0, e_i')(0, e_j') = (-conj(e_j') e_i', 0)
            (true, true) => {
                i -= h;
                j -= h;
                if j == 0 {
                    sign = -sign;
                }
                std::mem::swap(&mut i, &mut j);
            }
        }
    }
    sign
}

/// Memoized product signs for one level.
#[derive(Debug)]
pub struct BasisTable {
    level: u32,
    signs: Vec<i8>,
}

impl BasisTable {
    fn build(level: u32) -> Self {
        let d = 1usize << level;
        let mut signs = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                signs.push(basis_product_sign(level, i, j));
            }
        }
        let table = BasisTable { level, signs };
        table.validate();
        table
    }

    /// Compares tabulated products with the dense recursive product on
    /// integer basis vectors: all pairs for small levels, a fixed sample above.
    fn validate(&self) {
        let d = 1usize << self.level;
        let pairs: Vec<(usize, usize)> = if self.level <= FULL_VALIDATION_LEVEL {
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect()
        } else {
            let step = (d / 16).max(1);
            (0..d)
                .step_by(step)
                .flat_map(|i| [(i, d - 1 - i), (i, (i * 7 + 3) % d), (d - 1, i)])
                .collect()
        };
        for (i, j) in pairs {
            let mut x = vec![0i64; d];
            let mut y = vec![0i64; d];
            x[i] = 1;
            y[j] = 1;
            let z = multiply_recursive(&x, &y);
            let k = i ^ j;
            assert!(
                z.iter().enumerate().all(|(t, v)| if t == k {
                    *v == i64::from(self.sign(i, j))
                } else {
                    *v == 0
                }),
                "basis table mismatch at level {} for e{} e{}",
                self.level,
                i,
                j
            );
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    #[inline]
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        self.signs[(i << self.level) | j]
    }
}

static TABLES: [OnceLock<Arc<BasisTable>>; MAX_TABLE_LEVEL as usize + 1] =
    [const { OnceLock::new() }; MAX_TABLE_LEVEL as usize + 1];

/// Shared table for `level`, or `None` above [`MAX_TABLE_LEVEL`].
pub fn table(level: u32) -> Option<Arc<BasisTable>> {
    let slot = TABLES.get(level as usize)?;
    Some(
        slot.get_or_init(|| Arc::new(BasisTable::build(level)))
            .clone(),
    )
}

/// Sign of `e_i e_j`, from the table when one exists.
pub fn sign(level: u32, i: usize, j: usize) -> i8 {
    match table(level) {
        Some(t) => t.sign(i, j),
        None => basis_product_sign(level, i, j),
    }
}

/// Dense recursive conjugate `(x1, x2) -> (conj(x1), -x2)`.
pub fn conjugate_recursive<T>(x: &[T]) -> Vec<T>
where
    T: Clone + Neg<Output = T>,
{
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conjugate_recursive(&x[..h]);
    out.extend(x[h..].iter().cloned().map(|v| -v));
    out
}

/// Dense recursive doubling product
/// `(x1, x2)(y1, y2) = (x1 y1 - conj(y2) x2, y2 x1 + x2 conj(y1))`.
///
/// This is the normative definition; the table-driven product in
/// [`crate::CdElement`] must agree with it.
pub fn multiply_recursive<T>(x: &[T], y: &[T]) -> Vec<T>
where
    T: Clone + Zero + Neg<Output = T> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    assert_eq!(x.len(), y.len());
    assert!(x.len().is_power_of_two());
    if x.len() == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = x.len() / 2;
    let (x1, x2) = x.split_at(h);
    let (y1, y2) = y.split_at(h);
    let a = multiply_recursive(x1, y1);
    let b = multiply_recursive(&conjugate_recursive(y2), x2);
    let c = multiply_recursive(y2, x1);
    let d = multiply_recursive(x2, &conjugate_recursive(y1));
    a.into_iter()
        .zip(b)
        .map(|(p, q)| p - q)
        .chain(c.into_iter().zip(d).map(|(p, q)| p + q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_signs() {
        // i j = k, j i = -k at level 2
        assert_eq!(basis_product_sign(2, 1, 2), 1);
        assert_eq!(basis_product_sign(2, 2, 1), -1);
        assert_eq!(basis_product_sign(2, 3, 3), -1);
        assert_eq!(basis_product_sign(1, 1, 1), -1);
    }

    #[test]
    fn tables_validate_through_level_six() {
        for level in 0..=6 {
            let t = table(level).unwrap();
            assert_eq!(t.level(), level);
        }
    }

    #[test]
    fn untabulated_levels_fall_back() {
        assert!(table(MAX_TABLE_LEVEL + 1).is_none());
        let lvl = MAX_TABLE_LEVEL + 1;
        // e0 is the unit and pure basis vectors square to -e0
        assert_eq!(sign(lvl, 0, 1234), 1);
        assert_eq!(sign(lvl, 1234, 1234), -1);
    }

    #[test]
    fn recursive_conjugate_negates_pure_part() {
        let x: Vec<i64> = (1..=8).collect();
        let c = conjugate_recursive(&x);
        assert_eq!(c[0], 1);
        assert!(c[1..].iter().zip(&x[1..]).all(|(a, b)| *a == -*b));
    }
}
