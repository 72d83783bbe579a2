//! Integer vectors of ℤ^ν, their shells and balls, and unitary characters.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest `r` with `r*r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice vectors need dimension >= 1");
        Self { coords }
    }

    pub fn zero(nu: usize) -> Self {
        Self::new(vec![0; nu])
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn squared_norm(&self) -> u64 {
        self.coords.iter().map(|&c| (c * c) as u64).sum()
    }

    pub fn norm(&self) -> f64 {
        (self.squared_norm() as f64).sqrt()
    }

    pub fn gcd(&self) -> Result<u64> {
        vec_gcd(&self.coords)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.gcd()? == 1)
    }

    /// Splits `v = d·u` with `d = gcd(v)` and `u` primitive.
    pub fn primitive_part(&self) -> Result<(u64, LatticeVector)> {
        let d = self.gcd()?;
        let u = self.coords.iter().map(|&c| c / d as i64).collect();
        Ok((d, LatticeVector::new(u)))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self::new(v)
    }
}

/// gcd of the absolute values of the coordinates (zero coordinates ignored).
pub fn vec_gcd(coords: &[i64]) -> Result<u64> {
    let g = coords
        .iter()
        .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()));
    if g == 0 {
        Err(Error::ZeroVector)
    } else {
        Ok(g)
    }
}

pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    v.is_primitive()
}

/// All vectors of squared norm `n` in lexicographic order (the zero vector for `n = 0`).
pub fn enumerate_shell(nu: usize, n: u64) -> Vec<LatticeVector> {
    assert!(nu >= 1);
    let mut out = Vec::new();
    let mut cur = vec![0i64; nu];
    shell_rec(&mut cur, 0, n, &mut out);
    out
}

fn shell_rec(cur: &mut [i64], j: usize, rem: u64, out: &mut Vec<LatticeVector>) {
    let nu = cur.len();
    if j + 1 == nu {
        let r = isqrt(rem);
        if r * r != rem {
            return;
        }
        if r == 0 {
            cur[j] = 0;
            out.push(LatticeVector::new(cur.to_vec()));
        } else {
            for c in [-(r as i64), r as i64] {
                cur[j] = c;
                out.push(LatticeVector::new(cur.to_vec()));
            }
        }
        return;
    }
    let b = isqrt(rem) as i64;
    for c in -b..=b {
        cur[j] = c;
        shell_rec(cur, j + 1, rem - (c * c) as u64, out);
    }
}

/// Lexicographic stream of the nonzero vectors with squared norm at most `r2`.
pub struct BallIter {
    r2: u64,
    cur: Vec<i64>,
    // prefix[j] = Σ_{i<j} cur[i]²
    prefix: Vec<u64>,
    done: bool,
}

impl BallIter {
    fn reset_from(&mut self, j: usize) {
        for k in j..self.cur.len() {
            let b = isqrt(self.r2 - self.prefix[k]) as i64;
            self.cur[k] = -b;
            self.prefix[k + 1] = self.prefix[k] + (b * b) as u64;
        }
    }

    fn advance(&mut self) {
        let nu = self.cur.len();
        for j in (0..nu).rev() {
            let b = isqrt(self.r2 - self.prefix[j]) as i64;
            if self.cur[j] < b {
                self.cur[j] += 1;
                self.prefix[j + 1] = self.prefix[j] + (self.cur[j] * self.cur[j]) as u64;
                self.reset_from(j + 1);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for BallIter {
    type Item = LatticeVector;

    fn next(&mut self) -> Option<LatticeVector> {
        loop {
            if self.done {
                return None;
            }
            let nonzero = self.cur.iter().any(|&c| c != 0);
            let v = nonzero.then(|| LatticeVector::new(self.cur.clone()));
            self.advance();
            if v.is_some() {
                return v;
            }
        }
    }
}

pub fn enumerate_ball(nu: usize, r2: u64) -> BallIter {
    assert!(nu >= 1);
    let mut it = BallIter {
        r2,
        cur: vec![0; nu],
        prefix: vec![0; nu + 1],
        done: false,
    };
    it.reset_from(0);
    it
}

/// Calls `f(coords, |v|²)` for every nonzero vector in the ball, in lexicographic order.
pub fn visit_ball<F: FnMut(&[i64], u64)>(nu: usize, r2: u64, mut f: F) {
    let mut cur = vec![0i64; nu];
    visit_rec(&mut cur, 0, 0, r2, &mut f);
}

fn visit_rec<F: FnMut(&[i64], u64)>(cur: &mut [i64], j: usize, acc: u64, r2: u64, f: &mut F) {
    if j == cur.len() {
        if acc != 0 {
            f(cur, acc);
        }
        return;
    }
    let b = isqrt(r2 - acc) as i64;
    for c in -b..=b {
        cur[j] = c;
        visit_rec(cur, j + 1, acc + (c * c) as u64, r2, f);
    }
}

/// Parallel fold over the ball, partitioned by the leading coordinate.
///
/// Each slab is folded sequentially and the partial results are combined in
/// ascending order of the leading coordinate, so the result does not depend
/// on the thread count.
pub fn fold_ball<T, I, F, C>(nu: usize, r2: u64, init: I, fold: F, combine: C) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[i64], u64) + Sync,
    C: Fn(T, T) -> T,
{
    let b = isqrt(r2) as i64;
    let parts: Vec<T> = (-b..=b)
        .into_par_iter()
        .map(|c0| {
            let mut acc = init();
            let mut cur = vec![0i64; nu];
            cur[0] = c0;
            let a0 = (c0 * c0) as u64;
            if nu == 1 {
                if a0 != 0 {
                    fold(&mut acc, &cur, a0);
                }
            } else {
                visit_rec(&mut cur, 1, a0, r2, &mut |v: &[i64], n| fold(&mut acc, v, n));
            }
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().unwrap_or_else(&init);
    it.fold(first, combine)
}

/// A unitary character of ℤ^ν, stored as α ∈ [0,1)^ν with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    alpha: Vec<Ratio<i64>>,
    // common denominator L and the numerators L·α_j
    den: i64,
    nums: Vec<i64>,
}

fn reduce_unit(q: Ratio<i64>) -> Ratio<i64> {
    let r = q - q.floor();
    debug_assert!(!r.is_negative() && r < Ratio::from_integer(1));
    r
}

impl Character {
    pub fn new(alpha: Vec<Ratio<i64>>) -> Self {
        assert!(!alpha.is_empty(), "characters need dimension >= 1");
        let alpha: Vec<_> = alpha.into_iter().map(reduce_unit).collect();
        let den = alpha.iter().fold(1i64, |l, q| l.lcm(q.denom()));
        let nums = alpha.iter().map(|q| q.numer() * (den / q.denom())).collect();
        Self { alpha, den, nums }
    }

    pub fn trivial(nu: usize) -> Self {
        Self::new(vec![Ratio::zero(); nu])
    }

    /// The character with every component equal to `num/den`.
    pub fn uniform(nu: usize, num: i64, den: i64) -> Self {
        Self::new(vec![Ratio::new(num, den); nu])
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(a, b)| Ratio::new(a, b)).collect())
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Ratio<i64>] {
        &self.alpha
    }

    pub fn alpha_f64(&self) -> Vec<f64> {
        self.nums.iter().map(|&a| a as f64 / self.den as f64).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.nums.iter().all(|&a| a == 0)
    }

    /// Common denominator of the components.
    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// ℓ·α reduced mod 1.
    pub fn scaled(&self, ell: i64) -> Self {
        Self::new(self.alpha.iter().map(|q| q * ell).collect())
    }

    /// −α reduced mod 1, i.e. the conjugate character.
    pub fn conj(&self) -> Self {
        self.scaled(-1)
    }

    /// Flips the sign of α_j wherever `signs[j]` is negative.
    pub fn sign_flip(&self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.dim());
        Self::new(
            self.alpha
                .iter()
                .zip(signs)
                .map(|(q, &e)| if e < 0 { -q } else { *q })
                .collect(),
        )
    }

    /// Σ n_j α_j mod 1 as the integer residue k with phase k/L.
    pub fn phase_residue(&self, coords: &[i64]) -> i64 {
        let l = self.den as i128;
        let s: i128 = coords
            .iter()
            .zip(&self.nums)
            .map(|(&c, &a)| c as i128 * a as i128)
            .sum();
        s.rem_euclid(l) as i64
    }

    /// e^{2πi n·α}, with the exponent reduced exactly before exponentiating.
    pub fn pair_coords(&self, coords: &[i64]) -> Complex64 {
        let k = self.phase_residue(coords);
        unit_root(k, self.den)
    }

    pub fn pairing_table(&self) -> PairingTable {
        PairingTable::new(self)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|q| q.to_string()).collect();
        write!(f, "α({})", parts.join(","))
    }
}

/// e^{2πi k/L} with exact values at the quarter turns.
pub fn unit_root(k: i64, l: i64) -> Complex64 {
    let k = k.rem_euclid(l);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * k % l == 0 {
        return match 4 * k / l {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let t = TAU * (k as f64 / l as f64);
    Complex64::new(t.cos(), t.sin())
}

/// Precomputed roots of unity for a character, for use in hot loops.
pub struct PairingTable {
    den: i64,
    nums: Vec<i64>,
    roots: Vec<Complex64>,
}

impl PairingTable {
    const MAX_TABLE: i64 = 1 << 16;

    fn new(chi: &Character) -> Self {
        let roots = if chi.den <= Self::MAX_TABLE {
            (0..chi.den).map(|k| unit_root(k, chi.den)).collect()
        } else {
            Vec::new()
        };
        Self {
            den: chi.den,
            nums: chi.nums.clone(),
            roots,
        }
    }

    #[inline]
    pub fn pair(&self, coords: &[i64]) -> Complex64 {
        if self.den == 1 {
            return Complex64::new(1.0, 0.0);
        }
        let s: i128 = coords
            .iter()
            .zip(&self.nums)
            .map(|(&c, &a)| c as i128 * a as i128)
            .sum();
        let k = s.rem_euclid(self.den as i128) as i64;
        if self.roots.is_empty() {
            unit_root(k, self.den)
        } else {
            self.roots[k as usize]
        }
    }
}

pub fn char_pairing(v: &LatticeVector, chi: &Character) -> Result<Complex64> {
    if v.dim() != chi.dim() {
        return Err(Error::DimensionMismatch {
            expected: chi.dim(),
            got: v.dim(),
        });
    }
    Ok(chi.pair_coords(v.coords()))
}
