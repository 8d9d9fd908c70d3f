//! Seed-deterministic element samplers.
//!
//! Coefficients are uniform integers in `[-coeff_bound, coeff_bound]` over a
//! support of at most `max_support` basis indices. ChaCha8 keeps streams
//! identical across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::CdElement;
use crate::linalg::{left_mult_matrix, nullspace};
use crate::rational::{int, Rat};
use num_traits::Zero;

pub const DEFAULT_MAX_SUPPORT: usize = 6;
pub const DEFAULT_COEFF_BOUND: i64 = 3;

#[derive(Clone, Debug)]
pub struct ElementSampler {
    rng: ChaCha8Rng,
    pub max_support: usize,
    pub coeff_bound: i64,
}

impl ElementSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_shape(seed, DEFAULT_MAX_SUPPORT, DEFAULT_COEFF_BOUND)
    }

    pub fn with_shape(seed: u64, max_support: usize, coeff_bound: i64) -> Self {
        assert!(max_support >= 1 && coeff_bound >= 1);
        ElementSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_support,
            coeff_bound,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        let v = self.rng.gen_range(1..=bound);
        if self.rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    pub fn index_below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Nonzero element supported on `candidates`.
    pub fn supported_on(&mut self, level: u32, candidates: &[usize]) -> CdElement {
        assert!(!candidates.is_empty());
        loop {
            let k = self
                .rng
                .gen_range(1..=self.max_support.min(candidates.len()));
            let picked: Vec<usize> = candidates
                .choose_multiple(&mut self.rng, k)
                .copied()
                .collect();
            let b = self.coeff_bound;
            let terms: Vec<(usize, Rat)> = picked
                .into_iter()
                .map(|i| (i, int(self.rng.gen_range(-b..=b))))
                .collect();
            let x = CdElement::from_terms(level, &terms).expect("indices in range");
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn element(&mut self, level: u32) -> CdElement {
        let all: Vec<usize> = (0..1usize << level).collect();
        self.supported_on(level, &all)
    }

    /// Trace-zero element; needs `level >= 1`.
    pub fn pure(&mut self, level: u32) -> CdElement {
        let idx: Vec<usize> = (1..1usize << level).collect();
        self.supported_on(level, &idx)
    }

    /// Element with vanishing `e0` and `ẽ0` coordinates; needs `level >= 2`.
    pub fn doubly_pure(&mut self, level: u32) -> CdElement {
        let h = 1usize << (level - 1);
        let idx: Vec<usize> = (1..1usize << level).filter(|&i| i != h).collect();
        self.supported_on(level, &idx)
    }

    /// `±e_i ± e_j` with distinct `i, j` taken from `candidates`.
    pub fn two_term(&mut self, level: u32, candidates: &[usize]) -> CdElement {
        let pick: Vec<usize> = candidates
            .choose_multiple(&mut self.rng, 2)
            .copied()
            .collect();
        let s1 = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let s2 = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        CdElement::from_terms(level, &[(pick[0], int(s1)), (pick[1], int(s2))]).expect("in range")
    }

    /// Random signed permutation of the pure coordinates; preserves the norm
    /// and the real part.
    pub fn signed_permutation(&mut self, a: &CdElement) -> CdElement {
        let mut idx: Vec<usize> = (1..a.dim()).collect();
        idx.shuffle(&mut self.rng);
        let mut coords = vec![Rat::default(); a.dim()];
        coords[0] = a.coord(0).clone();
        for (src, &dst) in (1..a.dim()).zip(&idx) {
            let c = a.coord(src).clone();
            coords[dst] = if self.rng.gen_bool(0.5) { c } else { -c };
        }
        CdElement::from_coords(a.level(), coords).expect("same length")
    }

    /// A pair `x, y` of nonzero elements with `xy = 0`, from doubly pure
    /// two-term elements with nontrivial annihilator. Needs `level >= 4`.
    pub fn zero_divisor_pair(&mut self, level: u32) -> (CdElement, CdElement) {
        assert!(level >= 4, "no zero divisors below level 4");
        let h = 1usize << (level - 1);
        let idx: Vec<usize> = (1..1usize << level).filter(|&i| i != h).collect();
        loop {
            let x = self
                .two_term(level, &idx)
                .scale(&int(self.nonzero_int(self.coeff_bound)));
            let ker = nullspace(&left_mult_matrix(&x));
            if ker.is_empty() {
                continue;
            }
            let coef: Vec<Rat> = (0..ker.dim())
                .map(|_| int(self.rng.gen_range(-self.coeff_bound..=self.coeff_bound)))
                .collect();
            let y = ker.combine(&coef);
            if !y.is_zero() {
                return (x, y);
            }
        }
    }
    /// Trace-zero element of the octonion subalgebra spanned by `e0..e7`
    /// (or all of `A_n` when `n < 3`), avoiding at least one pure index.
    pub fn octonion_pure(&mut self, level: u32) -> CdElement {
        let top = 1usize << level.min(3);
        let idx: Vec<usize> = (1..top).collect();
        let cap = self.max_support.min(idx.len().saturating_sub(1)).max(1);
        let saved = self.max_support;
        self.max_support = cap;
        let x = self.supported_on(level, &idx);
        self.max_support = saved;
        x
    }

    /// Nonzero trace-zero alternative element. Mixes octonion-subalgebra
    /// elements with scaled basis units and alternative two-term sums.
    pub fn alternative(&mut self, level: u32) -> CdElement {
        assert!(level >= 1);
        let d = 1usize << level;
        match self.index_below(3) {
            0 if level >= 2 => self.octonion_pure(level),
            1 if level >= 2 => {
                let idx: Vec<usize> = (1..d).collect();
                let x = self
                    .two_term(level, &idx)
                    .scale(&int(self.nonzero_int(self.coeff_bound)));
                if crate::element::is_alternative(&x) {
                    x
                } else {
                    let i = 1 + self.index_below(d - 1);
                    CdElement::basis(level, i).scale(&int(self.nonzero_int(self.coeff_bound)))
                }
            }
            _ => {
                let i = 1 + self.index_below(d - 1);
                CdElement::basis(level, i).scale(&int(self.nonzero_int(self.coeff_bound)))
            }
        }
    }

    /// Special couple `{a, b}` with `|a| = |b|`; needs `level >= 2`.
    ///
    /// Either `a` from the octonion subalgebra and `b = a e_k` for a unit
    /// `e_k` outside the support of `a`, or two distinct basis units with
    /// the same coefficient magnitude.
    pub fn equal_norm_couple(&mut self, level: u32) -> (CdElement, CdElement) {
        assert!(level >= 2, "special couples need level >= 2");
        let d = 1usize << level;
        if self.rng.gen_bool(0.5) {
            let a = self.octonion_pure(level);
            let top = 1usize << level.min(3);
            let free: Vec<usize> = (1..top).filter(|&k| a.coord(k).is_zero()).collect();
            let k = free[self.index_below(free.len())];
            let b = a.mul_unchecked(&CdElement::basis(level, k));
            (a, b)
        } else {
            let idx: Vec<usize> = (1..d).collect();
            let pick: Vec<usize> = idx.choose_multiple(&mut self.rng, 2).copied().collect();
            let c = self.nonzero_int(self.coeff_bound);
            let s = if self.rng.gen_bool(0.5) { c } else { -c };
            (
                CdElement::basis(level, pick[0]).scale(&int(c)),
                CdElement::basis(level, pick[1]).scale(&int(s)),
            )
        }
    }

    /// Special triple `{a, y, b}` inside the octonion subalgebra: an equal
    /// norm couple there and `y` the part of a random octonion orthogonal to
    /// `span{e0, a, b, ab}`. Needs `level >= 3`.
    pub fn octonion_triple(&mut self, level: u32) -> (CdElement, CdElement, CdElement) {
        assert!(level >= 3);
        loop {
            let a = self.octonion_pure(level);
            let free: Vec<usize> = (1..8).filter(|&k| a.coord(k).is_zero()).collect();
            let k = free[self.index_below(free.len())];
            let b = a.mul_unchecked(&CdElement::basis(level, k));
            let ab = a.mul_unchecked(&b);
            let mut y = self.octonion_pure(level);
            for g in [&a, &b, &ab] {
                let coef = y.dot(g) / g.norm_sq();
                y = &y - &g.scale(&coef);
            }
            if !y.is_zero() {
                return (a, y, b);
            }
        }
    }
}
