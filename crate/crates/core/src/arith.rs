//! Multiplicative arithmetic: Möbius, γ(n) = Π_{p|n}(1−p), sums of squares
//! r_ν(n) and their twisted, primitive and gcd-weighted variants, Bernoulli
//! numbers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_shell, Character};

pub use num_rational::BigRational;

/// Linear sieve of μ, smallest prime factor and γ up to a fixed limit.
#[derive(Clone, Debug)]
pub struct SieveTable {
    limit: u32,
    mu: Vec<i8>,
    spf: Vec<u32>,
    gamma: Vec<i64>,
    primes: Vec<u32>,
}

impl SieveTable {
    pub const DEFAULT_LIMIT: u32 = 1_000_000;

    pub fn new(limit: u32) -> Self {
        let n = limit.max(1) as usize;
        let mut mu = vec![0i8; n + 1];
        let mut spf = vec![0u32; n + 1];
        let mut gamma = vec![0i64; n + 1];
        let mut primes = Vec::new();
        mu[1] = 1;
        gamma[1] = 1;
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                gamma[i] = 1 - i as i64;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                let ip = i * p;
                if p > spf[i] as usize || ip > n {
                    break;
                }
                spf[ip] = p as u32;
                if i % p == 0 {
                    mu[ip] = 0;
                    gamma[ip] = gamma[i];
                } else {
                    mu[ip] = -mu[i];
                    gamma[ip] = gamma[i] * (1 - p as i64);
                }
            }
        }
        Self {
            limit: n as u32,
            mu,
            spf,
            gamma,
            primes,
        }
    }

    pub fn limit(&self) -> u32 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn moebius(&self, n: u64) -> i8 {
        assert!(n >= 1);
        if n <= self.limit as u64 {
            self.mu[n as usize]
        } else {
            moebius(n)
        }
    }

    pub fn gamma_mult(&self, n: u64) -> i64 {
        assert!(n >= 1);
        if n <= self.limit as u64 {
            self.gamma[n as usize]
        } else {
            gamma_mult(n)
        }
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        if n <= self.limit as u64 {
            self.spf[n as usize] as u64
        } else {
            factorize(n)[0].0
        }
    }

    /// Prime factorization as (p, exponent) pairs in increasing p.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        if n > self.limit as u64 {
            return factorize(n);
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

/// Trial-division factorization; the slow path for integers above a sieve limit.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn moebius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gamma_mult(n: u64) -> i64 {
    factorize(n).iter().map(|&(p, _)| 1 - p as i64).product()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// The primitive character modulo 4.
pub fn chi4(n: u64) -> i64 {
    match n % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// r_ν(n) for all 0 ≤ n ≤ limit by repeated convolution with the one-dimensional count.
pub fn rep_table(nu: usize, limit: usize) -> Vec<u128> {
    assert!(nu >= 1);
    let squares: Vec<(usize, u128)> = (0..)
        .map(|k: usize| k * k)
        .take_while(|&q| q <= limit)
        .enumerate()
        .map(|(k, q)| (q, if k == 0 { 1 } else { 2 }))
        .collect();
    let mut cur = vec![0u128; limit + 1];
    for &(q, w) in &squares {
        cur[q] = w;
    }
    for _ in 1..nu {
        let mut next = vec![0u128; limit + 1];
        for (n, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(q, w) in &squares {
                if n + q > limit {
                    break;
                }
                next[n + q] += c * w;
            }
        }
        cur = next;
    }
    cur
}

/// r_ν(n) by counting, independent of any closed form.
pub fn r_count(nu: usize, n: u64) -> u128 {
    assert!(nu >= 1);
    rep_table(nu, n as usize)[n as usize]
}

fn sigma_twisted<F: Fn(u64) -> i128>(n: u64, f: F) -> i128 {
    divisors(n).into_iter().map(f).sum()
}

/// r_ν(n) from the divisor-sum closed forms, ν ∈ {2,4,6,8}.
pub fn r_closed(nu: usize, n: u64) -> Result<u128> {
    assert!(n >= 1);
    let v = match nu {
        2 => 4 * sigma_twisted(n, |d| chi4(d) as i128),
        4 => 8 * sigma_twisted(n, |d| if d % 4 == 0 { 0 } else { d as i128 }),
        6 => {
            16 * sigma_twisted(n, |d| chi4(n / d) as i128 * (d as i128).pow(2))
                - 4 * sigma_twisted(n, |d| chi4(d) as i128 * (d as i128).pow(2))
        }
        8 => {
            let mut prod: i128 = 16;
            for (p, k) in factorize(n) {
                let p = p as i128;
                let k = k as u32;
                prod *= if p == 2 {
                    (2i128.pow(3 * k + 3) - 15) / 7
                } else {
                    (p.pow(3 * (k + 1)) - 1) / (p.pow(3) - 1)
                };
            }
            prod
        }
        _ => return Err(Error::UnsupportedDimension(nu)),
    };
    debug_assert!(v >= 0);
    Ok(v as u128)
}

/// Closed-form r_ν table for ν ∈ {2,4,6,8} by a divisor sieve, O(N log N).
pub fn rep_table_closed(nu: usize, limit: usize) -> Result<Vec<u128>> {
    let mut t = vec![0i128; limit + 1];
    let mut t2 = vec![0i128; 0];
    match nu {
        2 | 4 | 6 => {
            if nu == 6 {
                t2 = vec![0i128; limit + 1];
            }
            for d in 1..=limit {
                let dd = d as i128;
                let mut m = d;
                while m <= limit {
                    let q = (m / d) as u64;
                    match nu {
                        2 => t[m] += chi4(d as u64) as i128,
                        4 => {
                            if d % 4 != 0 {
                                t[m] += dd
                            }
                        }
                        _ => {
                            t[m] += chi4(q) as i128 * dd * dd;
                            t2[m] += chi4(d as u64) as i128 * dd * dd;
                        }
                    }
                    m += d;
                }
            }
        }
        8 => {
            // r_8(n) = 16 (−1)^n Σ_{d|n} (−1)^d d³
            for d in 1..=limit {
                let c = (d as i128).pow(3) * if d % 2 == 0 { 1 } else { -1 };
                let mut m = d;
                while m <= limit {
                    t[m] += c;
                    m += d;
                }
            }
        }
        _ => return Err(Error::UnsupportedDimension(nu)),
    }
    let mut out = vec![0u128; limit + 1];
    out[0] = 1;
    for n in 1..=limit {
        let v = match nu {
            2 => 4 * t[n],
            4 => 8 * t[n],
            6 => 16 * t[n] - 4 * t2[n],
            _ => 16 * if n % 2 == 0 { t[n] } else { -t[n] },
        };
        out[n] = v as u128;
    }
    Ok(out)
}

/// Σ_{|m|²=n} e^{2πi m·α}.
pub fn r_twisted(nu: usize, n: u64, chi: &Character) -> Result<Complex64> {
    check_dim(nu, chi)?;
    let tab = chi.pairing_table();
    Ok(enumerate_shell(nu, n)
        .iter()
        .map(|v| tab.pair(v.coords()))
        .sum())
}

/// Σ over primitive m with |m|² = n of e^{2πi m·α}.
pub fn r_primitive(nu: usize, n: u64, chi: &Character) -> Result<Complex64> {
    check_dim(nu, chi)?;
    let tab = chi.pairing_table();
    Ok(enumerate_shell(nu, n)
        .iter()
        .filter(|v| !v.is_zero() && v.gcd() == Ok(1))
        .map(|v| tab.pair(v.coords()))
        .sum())
}

/// M_ν(n,α,x) = Σ_{|m|²=n} gcd(m)^{−x} e^{2πi m·α}, summed vector by vector.
pub fn m_value(nu: usize, n: u64, chi: &Character, x: f64) -> Result<Complex64> {
    check_dim(nu, chi)?;
    assert!(n >= 1);
    let tab = chi.pairing_table();
    Ok(enumerate_shell(nu, n)
        .iter()
        .map(|v| tab.pair(v.coords()) * (v.gcd().unwrap() as f64).powf(-x))
        .sum())
}

/// M_ν(n,α,x) = Σ_{k²|n} k^{−x} r̃_ν(n/k², kα).
pub fn m_value_convolution(nu: usize, n: u64, chi: &Character, x: f64) -> Result<Complex64> {
    check_dim(nu, chi)?;
    let mut acc = Complex64::zero();
    let mut k = 1u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            acc += r_primitive(nu, n / (k * k), &chi.scaled(k as i64))? * (k as f64).powf(-x);
        }
        k += 1;
    }
    Ok(acc)
}

fn check_dim(nu: usize, chi: &Character) -> Result<()> {
    if chi.dim() != nu {
        Err(Error::DimensionMismatch {
            expected: nu,
            got: chi.dim(),
        })
    } else {
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Exact Bernoulli number B_n with B_1 = −1/2.
pub fn bernoulli(n: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let m = b.len();
        let s: BigRational = b
            .iter()
            .enumerate()
            .map(|(k, bk)| bk * BigRational::from_integer(binomial(m as u64 + 1, k as u64)))
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b[n].clone()
}

pub fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // very large numerator or denominator: scale through logs
        let (n, d) = (q.numer(), q.denom());
        let bits = n.bits().max(d.bits()) as i64 - 900;
        let sh = bits.max(0) as usize;
        (n >> sh).to_f64().unwrap() / (d >> sh).to_f64().unwrap()
    })
}
