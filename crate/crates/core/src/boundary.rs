//! Exact certificates that the coefficients R_ν(m̃/ñ) do not vanish, for
//! ν ∈ {2,4,8}, where r_ν/(2ν) is multiplicative.
//!
//! With ρ = p^{−(ν+1)}, every local quantity reduces to
//! S(e) = Σ_{n≥1} r_ν(p^{2(n+e)}) ρ^n. For k ≥ 1 the prime-power counts are
//! quasi-polynomials r_ν(p^{2k}) = Σ_j (a_j + b_j k) λ_j^k, so S(e) sums in
//! closed form:
//!
//!   S(e) = Σ_j λ_j^e [(a_j + b_j e) q_j/(1−q_j) + b_j q_j/(1−q_j)²],  q_j = λ_j ρ.
//!
//! Then E = 2ν + S(0), F(e) = r_ν(p^{2e}) − (p−1)S(e), G = 1 − (p−1)S(0)/(2ν), and
//!
//!   ñ^{ν+1} R_ν(m̃/ñ) = 2ν · Π_{q|ñ} ((1−q)/2ν) E_q · Π_{p^e‖m̃} F_p(e)/2ν · Π_{p∤m̃ñ} G_p.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{chi4, factorize, is_prime, ratio_to_f64, BigRational, SieveTable};
use crate::error::{Error, Result};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn big(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_nu(nu: usize) -> Result<()> {
    match nu {
        2 | 4 | 8 => Ok(()),
        _ => Err(Error::UnsupportedDimension(nu)),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// One quasi-polynomial component (a + b k) λ^k.
#[derive(Clone, Debug)]
struct Component {
    a: BigRational,
    b: BigRational,
    lambda: BigRational,
}

fn components(nu: usize, p: u64) -> Vec<Component> {
    let c = |a: BigRational, b: BigRational, lambda: BigRational| Component { a, b, lambda };
    let pq = big(p);
    match (nu, p) {
        (2, 2) => vec![c(int(4), int(0), int(1))],
        (2, _) if p % 4 == 1 => vec![c(int(4), int(8), int(1))],
        (2, _) => vec![c(int(4), int(0), int(1))],
        (4, 2) => vec![c(int(24), int(0), int(1))],
        (4, _) => {
            let pm1 = &pq - int(1);
            vec![
                c(int(8) * &pq / &pm1, int(0), &pq * &pq),
                c(int(-8) / &pm1, int(0), int(1)),
            ]
        }
        (8, 2) => vec![
            c(BigRational::new(128.into(), 7.into()), int(0), int(64)),
            c(BigRational::new((-240).into(), 7.into()), int(0), int(1)),
        ],
        (8, _) => {
            let p3 = &pq * &pq * &pq;
            let p3m1 = &p3 - int(1);
            vec![
                c(int(16) * &p3 / &p3m1, int(0), &p3 * &p3),
                c(int(-16) / &p3m1, int(0), int(1)),
            ]
        }
        _ => unreachable!("dimension checked by caller"),
    }
}

fn pow(q: &BigRational, e: u32) -> BigRational {
    num_traits::pow(q.clone(), e as usize)
}

/// r_ν(p^{2e}) from the quasi-polynomial closed forms (e = 0 gives r_ν(1) = 2ν).
pub fn r_prime_square_power(nu: usize, p: u64, e: u32) -> Result<BigRational> {
    check_nu(nu)?;
    check_prime(p)?;
    if e == 0 {
        return Ok(int(2 * nu as i64));
    }
    let k = big(e as u64);
    Ok(components(nu, p)
        .iter()
        .map(|c| (&c.a + &c.b * &k) * pow(&c.lambda, e))
        .sum())
}

/// r_ν(p^j) by divisor sums over p^i in exact integers, independent of the
/// quasi-polynomial forms.
pub fn r_prime_power_oracle(nu: usize, p: u64, j: u32) -> Result<BigInt> {
    check_nu(nu)?;
    check_prime(p)?;
    let pb = BigInt::from(p);
    let pows: Vec<BigInt> = (0..=j).map(|i| num_traits::pow(pb.clone(), i as usize)).collect();
    Ok(match nu {
        2 => {
            // χ₋₄ is completely multiplicative, so χ₋₄(p^i) = χ₋₄(p)^i
            let c = chi4(p);
            let s: i64 = (0..=j).map(|i| c.pow(i)).sum();
            BigInt::from(4 * s)
        }
        4 => {
            let s: BigInt = pows
                .iter()
                .filter(|d| !(*d % 4u32).is_zero())
                .cloned()
                .sum();
            s * 8
        }
        _ => {
            // r_8(n) = 16 (−1)^n Σ_{d|n} (−1)^d d³
            let n_even = p == 2 && j > 0;
            let s: BigInt = pows
                .iter()
                .map(|d| {
                    let c = d * d * d;
                    if d.is_even() {
                        c
                    } else {
                        -c
                    }
                })
                .sum();
            if n_even {
                s * 16
            } else {
                -s * 16
            }
        }
    })
}

/// S(e) = Σ_{n≥1} r_ν(p^{2(n+e)}) p^{−n(ν+1)} in closed form.
fn tail_sum(nu: usize, p: u64, e: u32) -> BigRational {
    let rho = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), nu + 1));
    let ee = big(e as u64);
    components(nu, p)
        .iter()
        .map(|c| {
            let q = &c.lambda * &rho;
            let om = int(1) - &q;
            let first = (&c.a + &c.b * &ee) * &q / &om;
            let second = &c.b * &q / (&om * &om);
            pow(&c.lambda, e) * (first + second)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KeyLemmaResult {
    pub nu: usize,
    pub p: u64,
    pub e: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: BigRational,
    pub distinct: bool,
}

fn ser_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Both sides of Σ_{n≥1} r_ν(p^{2(n+e)}) p^{−n(ν+1)} ≠ r_ν(p^{2e})/(p−1), exactly.
pub fn key_lemma_sides(nu: usize, p: u64, e: u32) -> Result<KeyLemmaResult> {
    check_nu(nu)?;
    check_prime(p)?;
    let lhs = tail_sum(nu, p, e);
    let rhs = r_prime_square_power(nu, p, e)? / big(p - 1);
    let distinct = lhs != rhs;
    Ok(KeyLemmaResult {
        nu,
        p,
        e,
        lhs,
        rhs,
        distinct,
    })
}

/// F_{ν,p}(e) = Σ_{n≥0} γ(p^n) r_ν(p^{2(n+e)}) p^{−n(ν+1)}.
pub fn local_f(nu: usize, p: u64, e: u32) -> Result<BigRational> {
    let k = key_lemma_sides(nu, p, e)?;
    let f = r_prime_square_power(nu, p, e)? - big(p - 1) * k.lhs;
    assert!(!f.is_zero(), "F vanishes although the key lemma sides differ");
    Ok(f)
}

/// E_{ν,q} = Σ_{m≥0} r_ν(q^{2m}) q^{−m(ν+1)}.
pub fn local_e(nu: usize, q: u64) -> Result<BigRational> {
    check_nu(nu)?;
    check_prime(q)?;
    Ok(int(2 * nu as i64) + tail_sum(nu, q, 0))
}

/// G_{ν,p} = 1 − ((p−1)/2ν) Σ_{ℓ≥1} r_ν(p^{2ℓ}) p^{−ℓ(ν+1)}.
pub fn local_g(nu: usize, p: u64) -> Result<BigRational> {
    check_nu(nu)?;
    check_prime(p)?;
    let g = int(1) - big(p - 1) / int(2 * nu as i64) * tail_sum(nu, p, 0);
    assert!(!g.is_zero(), "G vanishes although the key lemma holds at e = 0");
    Ok(g)
}

/// 1 − G_{ν,p} in binary64, accurate for large p (no cancellation).
pub fn one_minus_g_f64(nu: usize, p: u64) -> f64 {
    let pf = p as f64;
    let rho = pf.powi(-(nu as i32 + 1));
    let s0: f64 = match (nu, p) {
        (2, 2) => 4.0 * rho / (1.0 - rho),
        (2, _) if p % 4 == 1 => {
            let q = rho;
            4.0 * q / (1.0 - q) + 8.0 * q / ((1.0 - q) * (1.0 - q))
        }
        (2, _) => 4.0 * rho / (1.0 - rho),
        (4, 2) => 24.0 * rho / (1.0 - rho),
        (4, _) => {
            let q1 = pf * pf * rho;
            8.0 * pf / (pf - 1.0) * q1 / (1.0 - q1) - 8.0 / (pf - 1.0) * rho / (1.0 - rho)
        }
        (8, 2) => {
            let q1 = 64.0 * rho;
            128.0 / 7.0 * q1 / (1.0 - q1) - 240.0 / 7.0 * rho / (1.0 - rho)
        }
        _ => {
            let p3 = pf * pf * pf;
            let q1 = p3 * p3 * rho;
            16.0 * p3 / (p3 - 1.0) * q1 / (1.0 - q1) - 16.0 / (p3 - 1.0) * rho / (1.0 - rho)
        }
    };
    (pf - 1.0) / (2.0 * nu as f64) * s0
}

/// Explicit bound 0 < 1 − G_{ν,p} ≤ G_TAIL_C / p² for every ν ∈ {2,4,8}.
///
/// For ν = 2 and p ≡ 1 (mod 4), 1 − G = (3 + 2q/(1−q))/(p²+p+1) with q = p^{−3},
/// which is below 3/p²; the other cases are smaller (≈ 1/p², 2/p² at ν = 4, 8).
pub const G_TAIL_C: f64 = 3.0;

/// Lower bound L with L ≤ Π_{p>P} G_{ν,p} ≤ 1, from 1 − G_p ≤ 3/p² and Σ_{n>P} n^{−2} < 1/P.
pub fn g_tail_lower_bound(prime_limit: u64) -> f64 {
    let pl = prime_limit as f64;
    (-(G_TAIL_C / pl) / (1.0 - G_TAIL_C / (pl * pl))).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    E,
    F,
    G,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor {
    pub kind: FactorKind,
    pub p: u64,
    /// Exponent of p in m̃ for F factors, 0 otherwise.
    pub e: u32,
    pub value: BigRational,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub nu: usize,
    pub m_tilde: u64,
    pub n_tilde: u64,
    pub prime_limit: u64,
    pub e_factors: Vec<LocalFactor>,
    pub f_factors: Vec<LocalFactor>,
    pub g_factors: Vec<LocalFactor>,
    /// Π_{p≤P, p∤m̃ñ} G_{ν,p}.
    pub g_partial: BigRational,
    /// 2ν · Π ((1−q)/2ν)E · Π F/2ν · g_partial; equals ñ^{ν+1}R up to the G tail.
    pub exact_prefix: BigRational,
    /// Upper bound on 1 − Π_{p>P} G_{ν,p}.
    pub g_tail_bound: f64,
    /// R_ν(m̃/ñ) from the factorization, with the G tail multiplied in numerically up to `tail_primes_to`.
    pub factored_value: f64,
    pub tail_primes_to: u64,
    /// R_ν(m̃/ñ) from the truncated Dirichlet series.
    pub series_value: f64,
    pub series_terms: u64,
    pub series_tail: f64,
    pub verdict: bool,
}

#[derive(Debug, Serialize)]
pub struct FactorDoc {
    pub kind: FactorKind,
    pub p: u64,
    pub num: String,
    pub den: String,
}

/// Serialized certificate: {nu, m, n, factors, g_tail_bound, series_value, verdict}.
#[derive(Debug, Serialize)]
pub struct CertificateDoc {
    pub nu: usize,
    pub m: u64,
    pub n: u64,
    pub factors: Vec<FactorDoc>,
    pub g_tail_bound: f64,
    pub series_value: f64,
    pub verdict: bool,
}

impl Certificate {
    pub fn factors(&self) -> impl Iterator<Item = &LocalFactor> {
        self.e_factors
            .iter()
            .chain(&self.f_factors)
            .chain(&self.g_factors)
    }

    pub fn document(&self) -> CertificateDoc {
        CertificateDoc {
            nu: self.nu,
            m: self.m_tilde,
            n: self.n_tilde,
            factors: self
                .factors()
                .map(|f| FactorDoc {
                    kind: f.kind,
                    p: f.p,
                    num: f.value.numer().to_string(),
                    den: f.value.denom().to_string(),
                })
                .collect(),
            g_tail_bound: self.g_tail_bound,
            series_value: self.series_value,
            verdict: self.verdict,
        }
    }

    pub fn relative_discrepancy(&self) -> f64 {
        ((self.factored_value - self.series_value) / self.factored_value).abs()
    }
}

fn check_coprime(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        Err(Error::NotCoprime { m, n })
    } else {
        Ok(())
    }
}

fn shared_sieve(limit: u64) -> Option<&'static SieveTable> {
    static SIEVE: OnceLock<SieveTable> = OnceLock::new();
    const LIMIT: u64 = 2_000_000;
    (limit <= LIMIT).then(|| SIEVE.get_or_init(|| SieveTable::new(LIMIT as u32)))
}

/// r_ν(p^{2e})/(2ν) in binary64.
fn rho_f64(nu: usize, p: u64, e: u32) -> f64 {
    if e == 0 {
        return 1.0;
    }
    let pf = p as f64;
    let geo = |base: f64, terms: u32| -> f64 {
        let mut s = 0.0;
        let mut t = 1.0;
        for _ in 0..terms {
            s += t;
            t *= base;
        }
        s
    };
    match (nu, p) {
        (2, 2) => 1.0,
        (2, _) if p % 4 == 1 => (2 * e + 1) as f64,
        (2, _) => 1.0,
        (4, 2) => 3.0,
        (4, _) => geo(pf, 2 * e + 1),
        (8, 2) => (2f64.powi(6 * e as i32 + 3) - 15.0) / 7.0,
        _ => geo(pf * pf * pf, 2 * e + 1),
    }
}

/// R_ν(m̃/ñ) = ñ^{−(ν+1)} Σ_{k≤K} γ(kñ) r_ν(k²m̃²) k^{−(ν+1)} in binary64.
///
/// Returns (value, tail estimate), the estimate being |S_K − S_{K/2}|.
pub fn r_coeff_series(nu: usize, m_tilde: u64, n_tilde: u64, k_max: u64) -> Result<(f64, f64)> {
    check_nu(nu)?;
    check_coprime(m_tilde, n_tilde)?;
    assert!(k_max >= 1);
    let owned;
    let sieve = match shared_sieve(k_max) {
        Some(s) => s,
        None => {
            owned = SieveTable::new(k_max as u32);
            &owned
        }
    };
    let mf: HashMap<u64, u32> = factorize(m_tilde).into_iter().collect();
    let nf: Vec<u64> = factorize(n_tilde).into_iter().map(|(p, _)| p).collect();
    let base: f64 = mf.iter().map(|(&p, &e)| rho_f64(nu, p, e)).product::<f64>()
        * nf.iter().map(|&p| 1.0 - p as f64).product::<f64>();
    let exp = -(nu as i32 + 1);
    // Neumaier summation
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut half = 0.0;
    for k in 1..=k_max {
        let mut prod = base;
        let mut kk = k;
        while kk > 1 {
            let p = sieve.smallest_prime_factor(kk);
            let mut a = 0;
            while kk % p == 0 {
                kk /= p;
                a += 1;
            }
            let em = mf.get(&p).copied().unwrap_or(0);
            prod *= rho_f64(nu, p, a + em) / rho_f64(nu, p, em);
            if n_tilde % p != 0 {
                prod *= 1.0 - p as f64;
            }
        }
        let term = 2.0 * nu as f64 * prod * (k as f64).powi(exp);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if k == k_max / 2 {
            half = sum + comp;
        }
    }
    let scale = (n_tilde as f64).powi(exp);
    let total = (sum + comp) * scale;
    let tail = if k_max >= 2 {
        (total - half * scale).abs()
    } else {
        f64::NAN
    };
    Ok((total, tail))
}

/// Π_{P<p≤Q} G_{ν,p} in binary64 (log-sum), cached per (ν, P, Q).
fn g_tail_product(nu: usize, lo: u64, hi: u64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64, u64), f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(nu, lo, hi)) {
        return *v;
    }
    let sieve = shared_sieve(hi).expect("tail prime range within the shared sieve");
    let log: f64 = sieve
        .primes()
        .iter()
        .map(|&p| p as u64)
        .filter(|&p| p > lo && p <= hi)
        .map(|p| (-one_minus_g_f64(nu, p)).ln_1p())
        .sum();
    let v = log.exp();
    cache.lock().unwrap().insert((nu, lo, hi), v);
    v
}

pub const DEFAULT_SERIES_TERMS: u64 = 100_000;
pub const DEFAULT_TAIL_PRIMES: u64 = 2_000_000;

/// Exact factorization of R_ν(m̃/ñ) with local factors for every p ≤ P,
/// cross-checked against the truncated series.
pub fn certify_nonvanishing(nu: usize, m_tilde: u64, n_tilde: u64, prime_limit: u64) -> Result<Certificate> {
    certify_with(nu, m_tilde, n_tilde, prime_limit, DEFAULT_SERIES_TERMS)
}

pub fn certify_with(
    nu: usize,
    m_tilde: u64,
    n_tilde: u64,
    prime_limit: u64,
    series_terms: u64,
) -> Result<Certificate> {
    check_nu(nu)?;
    check_coprime(m_tilde, n_tilde)?;
    let mf = factorize(m_tilde);
    let nf = factorize(n_tilde);
    let largest = mf.iter().chain(&nf).map(|&(p, _)| p).max().unwrap_or(1);
    if prime_limit < largest.max(2) {
        return Err(Error::DomainError(format!(
            "prime limit {prime_limit} below the largest prime factor {largest} of m*n"
        )));
    }
    let two_nu = int(2 * nu as i64);
    let mut prefix = two_nu.clone();
    let mut e_factors = Vec::new();
    for &(q, _) in &nf {
        let v = local_e(nu, q)?;
        prefix = prefix * (int(1) - big(q)) / &two_nu * &v;
        e_factors.push(LocalFactor {
            kind: FactorKind::E,
            p: q,
            e: 0,
            value: v,
        });
    }
    let mut f_factors = Vec::new();
    for &(p, e) in &mf {
        let v = local_f(nu, p, e)?;
        prefix = prefix * &v / &two_nu;
        f_factors.push(LocalFactor {
            kind: FactorKind::F,
            p,
            e,
            value: v,
        });
    }
    let mut g_factors = Vec::new();
    let mut g_partial = int(1);
    let sieve = SieveTable::new(prime_limit as u32);
    for &p in sieve.primes() {
        let p = p as u64;
        if m_tilde % p == 0 || n_tilde % p == 0 {
            continue;
        }
        let v = local_g(nu, p)?;
        g_partial *= &v;
        g_factors.push(LocalFactor {
            kind: FactorKind::G,
            p,
            e: 0,
            value: v,
        });
    }
    let exact_prefix = prefix * &g_partial;
    let lower = g_tail_lower_bound(prime_limit);
    let all_nonzero = e_factors
        .iter()
        .chain(&f_factors)
        .chain(&g_factors)
        .all(|f| !f.value.is_zero());
    let verdict = all_nonzero && lower > 0.0 && !exact_prefix.is_zero();

    let tail_to = DEFAULT_TAIL_PRIMES.max(prime_limit);
    let tail = g_tail_product(nu, prime_limit, tail_to);
    let scale = (n_tilde as f64).powi(-(nu as i32 + 1));
    let factored_value = ratio_to_f64(&exact_prefix) * tail * scale;
    let (series_value, series_tail) = r_coeff_series(nu, m_tilde, n_tilde, series_terms)?;
    Ok(Certificate {
        nu,
        m_tilde,
        n_tilde,
        prime_limit,
        e_factors,
        f_factors,
        g_factors,
        g_partial,
        exact_prefix,
        g_tail_bound: 1.0 - lower,
        factored_value,
        tail_primes_to: tail_to,
        series_value,
        series_terms,
        series_tail,
        verdict,
    })
}

/// Exact partial sum Σ_{n=n0}^{n1} r_ν(p^{2(n+e)}) p^{−n(ν+1)} from the divisor-sum oracle.
pub fn oracle_partial_sum(nu: usize, p: u64, e: u32, n0: u32, n1: u32) -> Result<BigRational> {
    let rho_den = num_traits::pow(BigInt::from(p), nu + 1);
    let mut acc = BigRational::zero();
    let mut den = num_traits::pow(rho_den.clone(), n0 as usize);
    for n in n0..=n1 {
        let r = r_prime_power_oracle(nu, p, 2 * (n + e))?;
        acc += BigRational::new(r, den.clone());
        den *= &rho_den;
    }
    Ok(acc)
}

impl KeyLemmaResult {
    pub fn lhs_f64(&self) -> f64 {
        ratio_to_f64(&self.lhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn anchor_values() {
        let k = key_lemma_sides(2, 2, 0).unwrap();
        assert_eq!((k.lhs, k.rhs, k.distinct), (q(4, 7), q(4, 1), true));
        let k = key_lemma_sides(2, 2, 3).unwrap();
        assert_eq!((k.lhs, k.rhs), (q(4, 7), q(4, 1)));
        let k = key_lemma_sides(4, 2, 0).unwrap();
        assert_eq!((k.lhs, k.rhs), (q(24, 31), q(8, 1)));
        let k = key_lemma_sides(2, 3, 0).unwrap();
        assert_eq!((k.lhs, k.rhs), (q(2, 13), q(2, 1)));
    }

    #[test]
    fn local_factor_examples() {
        assert_eq!(local_f(2, 2, 0).unwrap(), q(24, 7));
        assert_eq!(local_f(4, 2, 0).unwrap(), q(224, 31));
        assert_eq!(local_e(2, 2).unwrap(), q(32, 7));
        assert_eq!(local_e(2, 3).unwrap(), q(54, 13));
        assert_eq!(local_g(2, 2).unwrap(), q(6, 7));
        assert_eq!(local_g(4, 2).unwrap(), q(28, 31));
    }

    #[test]
    fn errors() {
        assert_eq!(key_lemma_sides(6, 2, 0).unwrap_err(), Error::UnsupportedDimension(6));
        assert_eq!(key_lemma_sides(2, 9, 0).unwrap_err(), Error::NotPrime(9));
        assert_eq!(
            certify_nonvanishing(4, 2, 4, 100).unwrap_err(),
            Error::NotCoprime { m: 2, n: 4 }
        );
        assert!(certify_nonvanishing(2, 1, 101, 100).is_err());
    }

    #[test]
    fn quasi_polynomials_match_oracle() {
        for nu in [2, 4, 8] {
            for p in [2u64, 3, 5, 7, 13, 101] {
                for e in 0..8 {
                    let exact = r_prime_square_power(nu, p, e).unwrap();
                    let oracle = BigRational::from_integer(r_prime_power_oracle(nu, p, 2 * e).unwrap());
                    assert_eq!(exact, oracle, "nu={nu} p={p} e={e}");
                }
            }
        }
    }

    #[test]
    fn oracle_matches_integer_counts() {
        let tabs: Vec<_> = [2, 4, 8]
            .iter()
            .map(|&nu| (nu, crate::arith::rep_table(nu, 2000)))
            .collect();
        for (nu, t) in &tabs {
            for p in [2u64, 3, 5, 7, 11, 43] {
                let mut j = 0;
                while p.pow(j) <= 2000 {
                    let o = r_prime_power_oracle(*nu, p, j).unwrap();
                    assert_eq!(o, BigInt::from(t[p.pow(j) as usize]), "nu={nu} p={p} j={j}");
                    j += 1;
                }
            }
        }
    }

    #[test]
    fn g_tail_constant() {
        for nu in [2, 4, 8] {
            for p in [2u64, 3, 5, 13, 97, 10_007] {
                let exact = int(1) - local_g(nu, p).unwrap();
                assert!((ratio_to_f64(&exact) - one_minus_g_f64(nu, p)).abs() < 1e-15 * ratio_to_f64(&exact).max(1e-300) + 1e-18);
            }
        }
    }

    #[test]
    fn small_certificate() {
        let c = certify_with(2, 1, 1, 100, 20_000).unwrap();
        assert!(c.verdict);
        assert!(c.e_factors.is_empty() && c.f_factors.is_empty());
        assert_eq!(c.g_factors.len(), 25);
        assert!(c.relative_discrepancy() < 1e-4, "{}", c.relative_discrepancy());
        let c = certify_with(8, 3, 5, 100, 20_000).unwrap();
        assert_eq!(c.f_factors[0].p, 3);
        assert_eq!(c.e_factors[0].p, 5);
        assert!(c.verdict);
        let (r, _) = r_coeff_series(4, 3, 2, 1).unwrap();
        // single term: γ(2) r_4(9) / 2^5
        assert!((r - (-1.0 * 104.0 / 32.0)).abs() < 1e-12);
    }
}
