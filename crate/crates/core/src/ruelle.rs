//! The Ruelle-type L-function L(s,α;ν) = Π_P (1 − e^{2πiP·α} e^{−s|P|})^{−1}
//! over primitive P ∈ ℤ^ν, the auxiliary G(s,α) over all nonzero vectors, its
//! Dirichlet-like companion g(s,α) = Σ_{n≠0} e^{2πin·α} e^{−s|n|}, the
//! Φ-series and the logarithmic derivative.
//!
//! log L is available by three independent routes: the Euler product, Möbius
//! inversion of log G, and the M-series Σ_n M_ν(n,α,1) e^{−s√n}.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::SieveTable;
use crate::error::{domain, Error, Result};
use crate::lattice::{fold_ball, vec_gcd, Character};
use crate::special::{gamma_half, sphere_area};
use crate::window::shifted_sum;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    pub radius: f64,
    pub mobius_limit: u32,
    pub ell_limit: u32,
    pub tol: f64,
}

impl Truncation {
    pub fn new(radius: f64, mobius_limit: u32, ell_limit: u32, tol: f64) -> Result<Self> {
        if !(radius >= 1.0) || mobius_limit == 0 || ell_limit == 0 || !(tol > 0.0) {
            return Err(domain("truncation needs radius >= 1, positive limits and tol > 0"));
        }
        Ok(Self {
            radius,
            mobius_limit,
            ell_limit,
            tol,
        })
    }

    /// Defaults keyed to Re(s): e^{−Re(s)·radius} < e^{−40}.
    pub fn for_s(s: Complex64) -> Self {
        let sigma = s.re.max(1e-3);
        Self {
            radius: (40.0 / sigma).max(8.0),
            mobius_limit: 60,
            ell_limit: (40.0 / sigma).ceil() as u32,
            tol: 1e-9,
        }
    }

    /// The truncation for an argument m·s: radius R/m, but never below min(8, R).
    fn scaled(&self, m: u32) -> Self {
        Self {
            radius: (self.radius / m as f64).max(self.radius.min(8.0)),
            ..*self
        }
    }

    fn r2(&self) -> u64 {
        (self.radius * self.radius).ceil() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    pub tail_estimate: f64,
}

impl SeriesValue {
    fn new(value: Complex64, terms: usize, tail_estimate: f64) -> Self {
        Self {
            value,
            terms,
            tail_estimate,
        }
    }
}

fn check(s: Complex64, chi: &Character, nu: usize) -> Result<()> {
    if chi.dim() != nu {
        return Err(Error::DimensionMismatch {
            expected: nu,
            got: chi.dim(),
        });
    }
    if !(s.re > 0.0) {
        return Err(domain(format!("need Re(s) > 0, got {s}")));
    }
    Ok(())
}

/// Σ_{|n|>R} e^{−σ|n|} bounded by counting lattice points in cube shells:
/// at most (2k+3)^ν vectors have k < |n| ≤ k+1.
pub(crate) fn lattice_tail(nu: usize, radius: f64, sigma: f64) -> f64 {
    let mut k = radius.floor();
    let mut sum = 0.0;
    loop {
        let t = (2.0 * k + 3.0).powi(nu as i32) * (-sigma * k).exp();
        sum += t;
        if t < 1e-20 * sum.max(1e-300) || k > radius + 1e6 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Per-shell sums S[n] = Σ_{|m|²=n} gcd(m)^{−x} e^{2πim·α} for 1 ≤ n ≤ r2
/// (x = 0 gives the plain twisted counts).
pub fn shell_sums(nu: usize, chi: &Character, r2: u64, x: f64) -> Vec<Complex64> {
    let tab = chi.pairing_table();
    let len = r2 as usize + 1;
    fold_ball(
        nu,
        r2,
        || vec![Complex64::zero(); len],
        |acc, c, n| {
            let w = if x == 0.0 {
                1.0
            } else {
                (vec_gcd(c).unwrap() as f64).powf(-x)
            };
            acc[n as usize] += tab.pair(c) * w;
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

fn exp_sqrt_sum(sums: &[Complex64], s: Complex64) -> Complex64 {
    sums.iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| !v.is_zero())
        .map(|(n, v)| v * (-s * (n as f64).sqrt()).exp())
        .sum()
}

/// g(s,α) = Σ_{n≠0} e^{2πin·α} e^{−s|n|} summed over the ball |n| ≤ radius.
pub fn g_direct(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let r2 = tr.r2();
    let sums = shell_sums(nu, chi, r2, 0.0);
    let terms = count_ball(nu, r2);
    Ok(SeriesValue::new(
        exp_sqrt_sum(&sums, s),
        terms,
        lattice_tail(nu, (r2 as f64).sqrt(), s.re),
    ))
}

fn count_ball(nu: usize, r2: u64) -> usize {
    fold_ball(nu, r2, || 0usize, |a, _, _| *a += 1, |a, b| a + b)
}

/// g(s,α) from the Poisson-dual side:
/// 1 + g = (2(2π)^ν s / Area(S^ν)) Σ_m (s² + (2π|m+α|)²)^{−(ν+1)/2}.
///
/// The dual sum is evaluated with a smooth radial window (see `window`), so
/// `tr.radius` does not enter; the tail estimate compares two window radii.
pub fn g_poisson(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let _ = tr;
    let t = -((nu + 1) as f64) / 2.0;
    let s2 = s * s;
    let c2 = 4.0 * PI * PI;
    let w = shifted_sum(nu, &chi.alpha_f64(), |r2| (s2 + c2 * r2).powf(t), true);
    let pref = s * (2.0 * (2.0 * PI).powi(nu as i32) / sphere_area(nu as u32));
    Ok(SeriesValue::new(
        pref * w.value - 1.0,
        w.terms,
        pref.norm() * w.est_error,
    ))
}

/// log G(s,α) = Σ_{ℓ≥1} g(ℓs, ℓα)/ℓ.
pub fn log_g(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let mut acc = Complex64::zero();
    let mut terms = 0;
    let mut tail = 0.0;
    let mut last = 0.0;
    for ell in 1..=tr.ell_limit {
        let ls = s * ell as f64;
        let g = g_direct(ls, &chi.scaled(ell as i64), nu, &tr.scaled(ell))?;
        acc += g.value / ell as f64;
        terms += g.terms;
        tail += g.tail_estimate / ell as f64;
        last = g.value.norm() / ell as f64;
    }
    // the ℓ-terms beyond the limit shrink at least by e^{−Re s} each
    let q = (-s.re).exp();
    tail += last * q / (1.0 - q);
    Ok(SeriesValue::new(acc, terms, tail))
}

/// log G(s,α) = −Σ_{n≠0} log(1 − e^{2πin·α} e^{−s|n|}) over the ball, vector by vector.
pub fn log_g_product(
    s: Complex64,
    chi: &Character,
    nu: usize,
    tr: &Truncation,
) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let r2 = tr.r2();
    let tab = chi.pairing_table();
    let (v, n) = fold_ball(
        nu,
        r2,
        || (Complex64::zero(), 0usize),
        |acc, c, n2| {
            let z = tab.pair(c) * (-s * (n2 as f64).sqrt()).exp();
            acc.0 -= (1.0 - z).ln();
            acc.1 += 1;
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(SeriesValue::new(v, n, 2.0 * lattice_tail(nu, (r2 as f64).sqrt(), s.re)))
}

/// log G(s,α) by the explicit double sum Σ_{n≠0} Σ_{ℓ≤L} e^{2πiℓn·α} e^{−ℓs|n|}/ℓ.
pub fn log_g_double_sum(
    s: Complex64,
    chi: &Character,
    nu: usize,
    tr: &Truncation,
) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let r2 = tr.r2();
    let tab = chi.pairing_table();
    let ell_max = tr.ell_limit as usize;
    let (v, n) = fold_ball(
        nu,
        r2,
        || (Complex64::zero(), 0usize),
        |acc, c, n2| {
            let z = tab.pair(c) * (-s * (n2 as f64).sqrt()).exp();
            let mut zl = z;
            for ell in 1..=ell_max {
                acc.0 += zl / ell as f64;
                if zl.norm() < 1e-18 {
                    break;
                }
                zl *= z;
            }
            acc.1 += 1;
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    let q = (-s.re).exp();
    let ell_tail = lattice_tail(nu, 1.0, s.re * (ell_max + 1) as f64) / (1.0 - q);
    Ok(SeriesValue::new(
        v,
        n,
        2.0 * lattice_tail(nu, (r2 as f64).sqrt(), s.re) + ell_tail,
    ))
}

/// The three routes to log L evaluated on a common truncation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogLRoutes {
    pub euler: SeriesValue,
    pub mobius: SeriesValue,
    pub series: SeriesValue,
}

impl LogLRoutes {
    pub fn max_delta(&self) -> f64 {
        let a = self.euler.value;
        let b = self.mobius.value;
        let c = self.series.value;
        (a - b).norm().max((a - c).norm()).max((b - c).norm())
    }
}

/// log L as Σ over primitive P of −log(1 − e^{2πiP·α} e^{−s|P|}).
pub fn log_l_euler(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let r2 = tr.r2();
    let tab = chi.pairing_table();
    let (v, n) = fold_ball(
        nu,
        r2,
        || (Complex64::zero(), 0usize),
        |acc, c, n2| {
            if vec_gcd(c).unwrap() == 1 {
                let z = tab.pair(c) * (-s * (n2 as f64).sqrt()).exp();
                acc.0 -= (1.0 - z).ln();
                acc.1 += 1;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(SeriesValue::new(v, n, 2.0 * lattice_tail(nu, (r2 as f64).sqrt(), s.re)))
}

/// log L = Σ_{m≥1} μ(m) log G(ms, mα).
pub fn log_l_mobius(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let sieve = SieveTable::new(tr.mobius_limit);
    let mut acc = Complex64::zero();
    let mut terms = 0;
    let mut tail = 0.0;
    for m in 1..=tr.mobius_limit as u64 {
        let mu = sieve.moebius(m);
        if mu == 0 {
            continue;
        }
        let ms = s * m as f64;
        if ms.re > 745.0 {
            break;
        }
        let lg = log_g_product(ms, &chi.scaled(m as i64), nu, &tr.scaled(m as u32))?;
        acc += lg.value * mu as f64;
        terms += lg.terms;
        tail += lg.tail_estimate;
    }
    let big_m = (tr.mobius_limit + 1) as f64;
    // nonzero vectors have |n| ≥ 1, and the k = 1 cube bound already counts the unit ones
    tail += 2.0 * lattice_tail(nu, 1.0, s.re * big_m);
    Ok(SeriesValue::new(acc, terms, tail))
}

/// log L = Σ_{n≥1} M_ν(n,α,1) e^{−s√n}.
pub fn log_l_series(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let r2 = tr.r2();
    let sums = shell_sums(nu, chi, r2, 1.0);
    let terms = sums.iter().filter(|v| !v.is_zero()).count();
    Ok(SeriesValue::new(
        exp_sqrt_sum(&sums, s),
        terms,
        lattice_tail(nu, (r2 as f64).sqrt(), s.re),
    ))
}

pub fn log_l_routes(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<LogLRoutes> {
    Ok(LogLRoutes {
        euler: log_l_euler(s, chi, nu, tr)?,
        mobius: log_l_mobius(s, chi, nu, tr)?,
        series: log_l_series(s, chi, nu, tr)?,
    })
}

/// log L(s,α;ν), by the M-series route.
pub fn log_l(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    log_l_series(s, chi, nu, tr)
}

/// C(ν) = 2(2√π)^{ν−1} Γ((ν+1)/2).
pub fn c_nu(nu: usize) -> f64 {
    2.0 * (2.0 * PI.sqrt()).powi(nu as i32 - 1) * gamma_half(nu as u32 + 1)
}

fn phi_inner<F>(nu: usize, chi: &Character, n: u64, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let beta = chi.scaled(n as i64).alpha_f64();
    shifted_sum(nu, &beta, f, false).value
}

/// Partial sums of Φ(s,α,t;ν) = Σ_{n≥1} γ(n)/n^{ν+1} Σ_m (s² + (2π|m/n+α|)²)^{−t}
/// over n ≤ mobius_limit.
///
/// Φ on its own is not absolutely convergent in n (each inner sum grows like
/// n^ν), so the returned value is the truncated partial sum and the tail
/// estimate is the size of its last term. The combination entering the
/// logarithmic derivative does converge; see [`log_deriv_l`].
pub fn phi(s: Complex64, chi: &Character, t: f64, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    if t < (nu + 1) as f64 / 2.0 {
        return Err(domain(format!("phi needs t >= (nu+1)/2, got {t}")));
    }
    let sieve = SieveTable::new(tr.mobius_limit);
    let s2 = s * s;
    let mut acc = Complex64::zero();
    let mut last = 0.0;
    for n in 1..=tr.mobius_limit as u64 {
        let c2 = (2.0 * PI / n as f64).powi(2);
        let inner = phi_inner(nu, chi, n, |r2| (s2 + c2 * r2).powf(-t));
        let term = inner * (sieve.gamma_mult(n) as f64 / (n as f64).powi(nu as i32 + 1));
        acc += term;
        last = term.norm();
    }
    Ok(SeriesValue::new(acc, tr.mobius_limit as usize, last))
}

/// (d/ds) log L = C(ν)(Φ(s,α,(ν+1)/2) − (ν+1)s²Φ(s,α,(ν+3)/2)), summed per n on
/// the combined integrand, whose inner sums decay like e^{−n Re s}.
pub fn log_deriv_l(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<SeriesValue> {
    check(s, chi, nu)?;
    let sieve = SieveTable::new(tr.mobius_limit);
    let s2 = s * s;
    let t1 = (nu + 1) as f64 / 2.0;
    let k = (nu + 1) as f64;
    let mut acc = Complex64::zero();
    let mut last = 0.0;
    let mut terms = 0;
    for n in 1..=tr.mobius_limit as u64 {
        if n as f64 * s.re > 45.0 && n > 1 {
            break;
        }
        let c2 = (2.0 * PI / n as f64).powi(2);
        let inner = phi_inner(nu, chi, n, |r2| {
            let base = s2 + c2 * r2;
            let p = base.powf(-t1);
            p - k * s2 * p / base
        });
        let term = inner * (sieve.gamma_mult(n) as f64 / (n as f64).powi(nu as i32 + 1));
        acc += term;
        last = term.norm();
        terms += 1;
    }
    let c = c_nu(nu);
    Ok(SeriesValue::new(acc * c, terms, c * last * (-s.re).exp()))
}

/// Five-point central difference of log L along the real direction.
pub fn log_l_fd(s: Complex64, chi: &Character, nu: usize, tr: &Truncation) -> Result<Complex64> {
    let h = 1e-3 * s.re.max(0.1);
    let f = |d: f64| log_l(s + d, chi, nu, tr).map(|v| v.value);
    Ok((f(-2.0 * h)? - f(-h)? * 8.0 + f(h)? * 8.0 - f(2.0 * h)?) / (12.0 * h))
}
