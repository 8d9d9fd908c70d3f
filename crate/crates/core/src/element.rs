//! Elements of the Cayley-Dickson algebra `A_n = R^(2^n)` with exact rational
//! coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::basis;
use crate::error::{CdError, Result};
use crate::rational::Rat;

/// A point of `A_n`: the level `n` plus `2^n` coordinates, slot `i` holding the
/// coefficient of `e_i`. The first `2^(n-1)` slots form the first doubling
/// factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CdElement {
    level: u32,
    coords: Vec<Rat>,
}

impl CdElement {
    pub fn zero(level: u32) -> Self {
        CdElement {
            level,
            coords: vec![Rat::zero(); 1 << level],
        }
    }

    pub fn one(level: u32) -> Self {
        Self::basis(level, 0)
    }

    /// Canonical basis vector `e_index`. Panics when out of range; use
    /// [`CdElement::try_basis`] for untrusted input.
    pub fn basis(level: u32, index: usize) -> Self {
        Self::try_basis(level, index).expect("basis index in range")
    }

    pub fn try_basis(level: u32, index: usize) -> Result<Self> {
        if index >= 1 << level {
            return Err(CdError::IndexOutOfRange { index, level });
        }
        let mut e = Self::zero(level);
        e.coords[index] = Rat::one();
        Ok(e)
    }

    /// `ẽ0 = e_{2^(n-1)}`, the unit of the second doubling factor.
    pub fn e0_tilde(level: u32) -> Result<Self> {
        require_level("e0_tilde", level, 1)?;
        Ok(Self::basis(level, 1 << (level - 1)))
    }

    /// Builds an element from exactly `2^level` coordinates.
    pub fn from_coords(level: u32, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != 1 << level {
            return Err(CdError::Precondition(format!(
                "expected {} coordinates for level {level}, got {}",
                1usize << level,
                coords.len()
            )));
        }
        Ok(CdElement { level, coords })
    }

    /// Infers the level from the coordinate count, which must be a power of two.
    pub fn from_vec(coords: Vec<Rat>) -> Result<Self> {
        if !coords.len().is_power_of_two() {
            return Err(CdError::Precondition(format!(
                "coordinate count {} is not a power of two",
                coords.len()
            )));
        }
        let level = coords.len().trailing_zeros();
        Ok(CdElement { level, coords })
    }

    pub fn from_ints(level: u32, coords: &[i64]) -> Result<Self> {
        Self::from_coords(
            level,
            coords.iter().map(|&c| crate::rational::int(c)).collect(),
        )
    }

    /// Sum of `coeff * e_index` terms.
    pub fn from_terms(level: u32, terms: &[(usize, Rat)]) -> Result<Self> {
        let mut e = Self::zero(level);
        for (idx, c) in terms {
            if *idx >= e.dim() {
                return Err(CdError::IndexOutOfRange { index: *idx, level });
            }
            e.coords[*idx] += c;
        }
        Ok(e)
    }

    /// The element `(x1, x2)` of the next level.
    pub fn pair(x1: &CdElement, x2: &CdElement) -> Result<Self> {
        same_level(x1, x2)?;
        let mut coords = x1.coords.clone();
        coords.extend(x2.coords.iter().cloned());
        Ok(CdElement {
            level: x1.level + 1,
            coords,
        })
    }

    /// Splits `(x1, x2)` into its doubling halves.
    pub fn halves(&self) -> Result<(CdElement, CdElement)> {
        require_level("halves", self.level, 1)?;
        let h = self.dim() / 2;
        Ok((
            CdElement {
                level: self.level - 1,
                coords: self.coords[..h].to_vec(),
            },
            CdElement {
                level: self.level - 1,
                coords: self.coords[h..].to_vec(),
            },
        ))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn scale(&self, r: &Rat) -> CdElement {
        CdElement {
            level: self.level,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Doubling product `xy = (x1 y1 - conj(y2) x2, y2 x1 + x2 conj(y1))`,
    /// evaluated through the validated basis sign table.
    pub fn multiply(&self, other: &CdElement) -> Result<CdElement> {
        same_level(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &CdElement) -> CdElement {
        let level = self.level;
        let mut out = vec![Rat::zero(); self.dim()];
        let ys: Vec<(usize, &Rat)> = other
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let table = basis::table(level);
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, yj) in &ys {
                let s = match &table {
                    Some(t) => t.sign(i, j),
                    None => basis::basis_product_sign(level, i, j),
                };
                let p = xi * yj;
                if s > 0 {
                    out[i ^ j] += p;
                } else {
                    out[i ^ j] -= p;
                }
            }
        }
        CdElement { level, coords: out }
    }

    /// Product through the dense doubling recursion, bypassing the table.
    pub fn multiply_recursive(&self, other: &CdElement) -> Result<CdElement> {
        same_level(self, other)?;
        Ok(CdElement {
            level: self.level,
            coords: basis::multiply_recursive(&self.coords, &other.coords),
        })
    }

    /// `conj(x1, x2) = (conj(x1), -x2)`; the real coordinate is kept and every
    /// other coordinate negated.
    pub fn conjugate(&self) -> CdElement {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut().skip(1) {
            *c = -c.clone();
        }
        CdElement {
            level: self.level,
            coords,
        }
    }

    /// `t(x) = x + conj(x)`, twice the real coordinate.
    pub fn trace(&self) -> Rat {
        &self.coords[0] * Rat::from_integer(2.into())
    }

    /// Euclidean inner product, equal to `(x conj(y) + y conj(x)) / 2`.
    pub fn inner(&self, other: &CdElement) -> Result<Rat> {
        same_level(self, other)?;
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &CdElement) -> Rat {
        self.coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `|x|^2 = x conj(x)`.
    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    /// `x~ = x ẽ0 = (-x2, x1)`.
    pub fn tilde(&self) -> Result<CdElement> {
        require_level("tilde", self.level, 1)?;
        let h = self.dim() / 2;
        let coords = self.coords[h..]
            .iter()
            .map(|c| -c.clone())
            .chain(self.coords[..h].iter().cloned())
            .collect();
        Ok(CdElement {
            level: self.level,
            coords,
        })
    }

    /// Half swap `(x1, x2) -> (x2, x1)`.
    pub fn check(&self) -> Result<CdElement> {
        require_level("check", self.level, 1)?;
        let h = self.dim() / 2;
        let mut coords = self.coords[h..].to_vec();
        coords.extend_from_slice(&self.coords[..h]);
        Ok(CdElement {
            level: self.level,
            coords,
        })
    }

    /// Both doubling halves have zero trace: the `e0` and `ẽ0` coordinates vanish.
    pub fn is_doubly_pure(&self) -> Result<bool> {
        require_level("is_doubly_pure", self.level, 1)?;
        Ok(self.coords[0].is_zero() && self.coords[self.dim() / 2].is_zero())
    }

    pub fn is_pure(&self) -> bool {
        self.coords[0].is_zero()
    }
}

pub fn same_level(x: &CdElement, y: &CdElement) -> Result<()> {
    if x.level != y.level {
        return Err(CdError::LevelMismatch {
            left: x.level,
            right: y.level,
        });
    }
    Ok(())
}

pub(crate) fn require_level(op: &'static str, level: u32, min: u32) -> Result<()> {
    if level < min {
        return Err(CdError::LevelTooSmall { op, level, min });
    }
    Ok(())
}

/// `(a, b, c) = (ab)c - a(bc)`.
pub fn associator(a: &CdElement, b: &CdElement, c: &CdElement) -> Result<CdElement> {
    same_level(a, b)?;
    same_level(b, c)?;
    let left = a.mul_unchecked(b).mul_unchecked(c);
    let right = a.mul_unchecked(&b.mul_unchecked(c));
    Ok(&left - &right)
}

/// `[x, y] = xy - yx`.
pub fn commutator(x: &CdElement, y: &CdElement) -> Result<CdElement> {
    same_level(x, y)?;
    Ok(&x.mul_unchecked(y) - &y.mul_unchecked(x))
}

/// `(a, a, x) = 0` for every `x`. By linearity in the last slot it suffices to
/// test the canonical basis.
pub fn is_alternative(a: &CdElement) -> bool {
    let aa = a.mul_unchecked(a);
    (0..a.dim()).all(|k| {
        let e = CdElement::basis(a.level, k);
        aa.mul_unchecked(&e) == a.mul_unchecked(&a.mul_unchecked(&e))
    })
}

/// Alternative, trace zero and norm one.
pub fn is_special(a: &CdElement) -> bool {
    a.is_pure() && a.norm_sq().is_one() && is_alternative(a)
}

/// Alternative, trace zero and nonzero; the norm is left free since unit
/// vectors with rational coordinates are scarce.
pub fn is_special_up_to_norm(a: &CdElement) -> bool {
    a.is_pure() && !a.is_zero() && is_alternative(a)
}

impl fmt::Debug for CdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}[{}]", self.level, crate::parse::format_element(self))
    }
}

impl fmt::Display for CdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_element(self))
    }
}

impl<'a> Add<&'a CdElement> for &'a CdElement {
    type Output = CdElement;

    fn add(self, rhs: &'a CdElement) -> CdElement {
        assert_eq!(self.level, rhs.level, "level mismatch in addition");
        CdElement {
            level: self.level,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CdElement> for &'a CdElement {
    type Output = CdElement;

    fn sub(self, rhs: &'a CdElement) -> CdElement {
        assert_eq!(self.level, rhs.level, "level mismatch in subtraction");
        CdElement {
            level: self.level,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CdElement {
    type Output = CdElement;

    fn neg(self) -> CdElement {
        CdElement {
            level: self.level,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Algebra product; panics on level mismatch like the other operators.
impl<'a> Mul<&'a CdElement> for &'a CdElement {
    type Output = CdElement;

    fn mul(self, rhs: &'a CdElement) -> CdElement {
        assert_eq!(self.level, rhs.level, "level mismatch in product");
        self.mul_unchecked(rhs)
    }
}
