//! Dirichlet series built from squares and the average order of M_ν(n,x).
//!
//! ℒ_ν(s) = Σ r_ν(n) n^{−s} = ζ(2s) ℒ̃_ν(s), and the gcd-weighted series
//! D_ν(s;x) = Σ M_ν(n,x) n^{−s} = ζ(x+2s) ζ(2s)^{−1} ℒ_ν(s). The partial sums
//! Σ_{n≤X} M_ν(n,x) grow like X^{ν/2} (or X^{(1−x)/2}), with a constant read off
//! the rightmost pole of D_ν.
//!
//! Two normalizations of that constant are offered. [`Normalization::Printed`]
//! is the residue of D_ν at its pole, the form in which the constants are
//! usually quoted. [`Normalization::Perron`] divides by the pole location, which
//! is what Perron's formula actually gives and what the partial sums approach.
//! The two agree for ν = 2 when x ≥ −1.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{bernoulli, rep_table, rep_table_closed, ratio_to_f64, BigRational, SieveTable};
use crate::error::{domain, Error, Result};
use crate::lattice::{fold_ball, isqrt};
use crate::quad::tanh_sinh_real;
use crate::special::{ball_volume, gamma_half, l4_real, zeta_real, EvalResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Printed,
    Perron,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Leading-order prediction c·X^power·(log X)^{[log_factor]}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub constant: f64,
    pub power: f64,
    pub log_factor: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub nu: usize,
    pub x: f64,
    pub cutoff: u64,
    pub observed: f64,
    pub predicted_constant: f64,
    pub predicted_power: f64,
    pub log_factor: bool,
    pub normalization: Normalization,
    pub ratio: f64,
}

/// ζ(n) for integer n ≥ 2, exact Bernoulli form when n is even.
pub fn zeta_int(n: u32) -> f64 {
    assert!(n >= 2);
    if n % 2 == 1 {
        return zeta_real(n as f64);
    }
    // ζ(2k) = (−1)^{k+1} 2^{2k−1} B_{2k} π^{2k}/(2k)!
    let k = n / 2;
    let mut q = bernoulli(n as usize) * BigRational::from_integer(BigInt::from(2).pow(n - 1));
    q /= BigRational::from_integer(factorial_big(n));
    if k % 2 == 0 {
        q = -q;
    }
    ratio_to_f64(&q) * PI.powi(n as i32)
}

fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

fn check_abscissa(nu: usize, s: f64) -> Result<()> {
    if nu == 0 {
        return Err(domain("dimension must be positive"));
    }
    if !(s > nu as f64 / 2.0) {
        return Err(domain(format!("series for nu={nu} needs s > {}, got {s}", nu as f64 / 2.0)));
    }
    Ok(())
}

/// ℒ_ν(s) = Σ_{n≥1} r_ν(n) n^{−s}, s > ν/2.
///
/// Closed forms in ζ and L₋₄ for ν ∈ {1,2,4,6,8}; otherwise [`epstein_cubic`].
pub fn script_l(nu: usize, s: f64) -> Result<EvalResult> {
    check_abscissa(nu, s)?;
    let eps = 64.0 * f64::EPSILON;
    let v = match nu {
        1 => 2.0 * zeta_real(2.0 * s),
        2 => 4.0 * zeta_real(s) * l4_real(s),
        4 => 8.0 * (1.0 - 4f64.powf(1.0 - s)) * zeta_real(s) * zeta_real(s - 1.0),
        6 => 16.0 * zeta_real(s - 2.0) * l4_real(s) - 4.0 * zeta_real(s) * l4_real(s - 2.0),
        8 => 16.0 * (1.0 - 2f64.powf(1.0 - s) + 4f64.powf(2.0 - s)) * zeta_real(s) * zeta_real(s - 3.0),
        _ => return Ok(epstein_cubic(nu, s)),
    };
    Ok(EvalResult::real(v, eps * v.abs()))
}

/// Σ_{m∈ℤ^ν∖0} |m|^{−2s} through the Jacobi theta function θ(t) = Σ_n e^{−πn²t}:
///
///   π^{−s}Γ(s) Z(s) = ∫_1^∞ (θ(t)^ν − 1)(t^{s−1} + t^{ν/2−s−1}) dt + 1/(s−ν/2) − 1/s.
pub fn epstein_cubic(nu: usize, s: f64) -> EvalResult {
    let theta_m1 = |t: f64| -> f64 {
        let mut acc = 0.0;
        for n in (1..=8).rev() {
            acc += (-PI * (n * n) as f64 * t).exp();
        }
        2.0 * acc
    };
    let h = nu as f64 / 2.0;
    let f = |t: f64| (nu as f64 * theta_m1(t).ln_1p()).exp_m1() * (t.powf(s - 1.0) + t.powf(h - s - 1.0));
    // the integrand is below 1e-30 of its start beyond t = 1 + 25
    let (int, err) = tanh_sinh_real(f, 1.0, 26.0 + s.max(0.0), 1e-15);
    let lam = int + 1.0 / (s - h) - 1.0 / s;
    let pref = PI.powf(s) / statrs::function::gamma::gamma(s);
    let v = pref * lam;
    EvalResult::real(v, pref * err + 16.0 * f64::EPSILON * v.abs())
}

/// ℒ̃_ν(s) = Σ r̃_ν(n) n^{−s} over primitive vectors, = ℒ_ν(s)/ζ(2s).
pub fn script_l_tilde(nu: usize, s: f64) -> Result<EvalResult> {
    let l = script_l(nu, s)?;
    let z = zeta_real(2.0 * s);
    Ok(EvalResult::real(l.re() / z, l.est_error / z))
}

/// D_ν(s;x) = ζ(x+2s) ζ(2s)^{−1} ℒ_ν(s).
pub fn d_series(nu: usize, s: f64, x: f64) -> Result<EvalResult> {
    if !(x + 2.0 * s > 1.0) {
        return Err(domain(format!("D needs x + 2s > 1, got x={x}, s={s}")));
    }
    let lt = script_l_tilde(nu, s)?;
    let z = zeta_real(x + 2.0 * s);
    Ok(EvalResult::real(lt.re() * z, lt.est_error * z))
}

/// Σ_{n≥N} r_ν(n) n^{−s} ≈ (ν/2) V_ν N^{ν/2−s}/(s−ν/2), from the lattice-point count.
fn volume_tail(nu: usize, s: f64, n: f64) -> f64 {
    let h = nu as f64 / 2.0;
    h * ball_volume(nu as u32) * n.powf(h - s) / (s - h)
}

/// Direct partial sums of ℒ_ν, ℒ̃_ν and D_ν(·;x) up to n ≤ N from a counted
/// r_ν table, each with the volume estimate of its tail.
pub fn direct_series(nu: usize, s: f64, x: f64, n_max: usize) -> Result<[EvalResult; 3]> {
    check_abscissa(nu, s)?;
    let r = rep_table(nu, n_max);
    let sieve = SieveTable::new(isqrt(n_max as u64).max(1) as u32);
    // r̃(n) = Σ_{k²|n} μ(k) r(n/k²), M(n) = Σ_{k²|n} k^{−x} r̃(n/k²)
    let mut prim = vec![0f64; n_max + 1];
    let mut k = 1usize;
    while k * k <= n_max {
        let mu = sieve.moebius(k as u64) as f64;
        if mu != 0.0 {
            for m in 1..=n_max / (k * k) {
                prim[m * k * k] += mu * r[m] as f64;
            }
        }
        k += 1;
    }
    let mut mval = vec![0f64; n_max + 1];
    let mut k = 1usize;
    while k * k <= n_max {
        let w = (k as f64).powf(-x);
        for m in 1..=n_max / (k * k) {
            mval[m * k * k] += w * prim[m];
        }
        k += 1;
    }
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for n in (1..=n_max).rev() {
        let w = (n as f64).powf(-s);
        a += r[n] as f64 * w;
        b += prim[n] * w;
        c += mval[n] * w;
    }
    let tail = volume_tail(nu, s, n_max as f64 + 0.5);
    let zx = if x + 2.0 * s > 1.0 { zeta_real(x + 2.0 * s) } else { f64::INFINITY };
    Ok([
        EvalResult::real(a, tail),
        EvalResult::real(b, tail),
        EvalResult::real(c, tail * zx),
    ])
}

// ball sweeps beyond this many vectors switch to the sieved route
const BALL_SWEEP_LIMIT: f64 = 5e7;

/// Σ_{n≤X} M_ν(n,x) = Σ_{0<|m|²≤X} gcd(m)^{−x}.
///
/// Small balls are swept vector by vector. Larger ones use
/// Σ_{k≤√X} h_x(k) N_ν(⌊X/k²⌋), where N_ν counts nonzero vectors in the ball
/// and h_x = (k ↦ k^{−x}) ∗ μ strips the gcd grading.
pub fn partial_sum_m(nu: usize, cutoff: u64, x: f64) -> f64 {
    assert!(nu >= 1);
    if cutoff == 0 {
        return 0.0;
    }
    let est = ball_volume(nu as u32) * (cutoff as f64).powf(nu as f64 / 2.0);
    if est <= BALL_SWEEP_LIMIT {
        partial_sum_m_sweep(nu, cutoff, x)
    } else {
        partial_sum_m_sieved(nu, cutoff, x)
    }
}

/// The vector-by-vector route of [`partial_sum_m`].
pub fn partial_sum_m_sweep(nu: usize, cutoff: u64, x: f64) -> f64 {
    let b = isqrt(cutoff) as usize;
    let w: Vec<f64> = (0..=b).map(|k| if k == 0 { 0.0 } else { (k as f64).powf(-x) }).collect();
    fold_ball(
        nu,
        cutoff,
        || 0.0,
        |acc, v, _| {
            let g = v.iter().fold(0i64, |g, &c| g.gcd(&c));
            *acc += w[g as usize];
        },
        |a, b| a + b,
    )
}

/// The sieved route of [`partial_sum_m`]; memory is O(X).
pub fn partial_sum_m_sieved(nu: usize, cutoff: u64, x: f64) -> f64 {
    let limit = cutoff as usize;
    let r = match nu {
        2 | 4 | 6 | 8 => rep_table_closed(nu, limit).expect("supported dimension"),
        _ => rep_table(nu, limit),
    };
    let mut count = vec![0f64; limit + 1];
    let mut acc: u128 = 0;
    for n in 1..=limit {
        acc += r[n];
        count[n] = acc as f64;
    }
    let b = isqrt(cutoff) as usize;
    let sieve = SieveTable::new(b.max(1) as u32);
    let mut h = vec![0f64; b + 1];
    for d in 1..=b {
        let w = (d as f64).powf(-x);
        for e in 1..=b / d {
            h[d * e] += w * sieve.moebius(e as u64) as f64;
        }
    }
    (1..=b).rev().map(|k| h[k] * count[limit / (k * k)]).sum()
}

fn regime(nu: usize, x: f64) -> std::cmp::Ordering {
    let edge = 1.0 - nu as f64;
    if (x - edge).abs() <= 1e-12 {
        std::cmp::Ordering::Equal
    } else if x < edge {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Leading asymptotics of Σ_{n≤X} M_ν(n,x).
///
/// For x > 1−ν the constant is π^{ν/2}ζ(ν+x)/(ζ(ν)Γ(ν/2)), with log X
/// appearing at x = 1−ν and ℒ_ν((1−x)/2)/ζ(1−x) below it (printed form).
/// The Perron form is the residue of D_ν X^s/s at the pole s₀.
pub fn asymptotic_constant(nu: usize, x: f64, norm: Normalization) -> Result<Prediction> {
    if nu == 0 {
        return Err(domain("dimension must be positive"));
    }
    if nu == 1 {
        // D_1(s;x) = 2ζ(x+2s): a single pole at s = (1−x)/2
        if x >= 1.0 {
            return Err(Error::UnsupportedRegime("nu = 1 needs x < 1".into()));
        }
        let s0 = (1.0 - x) / 2.0;
        let c = match norm {
            Normalization::Printed => 2.0,
            Normalization::Perron => 2.0 / (1.0 - x),
        };
        return Ok(Prediction {
            constant: c,
            power: s0,
            log_factor: false,
        });
    }
    let h = nu as f64 / 2.0;
    let pi_h = PI.powf(h);
    let zeta_nu = zeta_int(nu as u32);
    use std::cmp::Ordering::*;
    let (constant, power, log_factor) = match regime(nu, x) {
        Greater => {
            let res = pi_h * zeta_real(nu as f64 + x) / (zeta_nu * gamma_half(nu as u32));
            (res, h, false)
        }
        Equal => {
            (pi_h / (2.0 * zeta_nu * gamma_half(nu as u32)), h, true)
        }
        Less => {
            if !matches!(nu, 2 | 4 | 6 | 8) {
                return Err(Error::UnsupportedRegime(format!(
                    "x < 1 - nu needs a closed form for L_nu, nu={nu}"
                )));
            }
            let s0 = (1.0 - x) / 2.0;
            (script_l(nu, s0)?.re() / zeta_real(1.0 - x), s0, false)
        }
    };
    // Perron divides the residue by s₀; below the edge the printed constant is
    // already twice the residue, as ζ(x+2s) has residue 1/2 in s
    let constant = match (norm, regime(nu, x)) {
        (Normalization::Printed, _) => constant,
        (Normalization::Perron, Less) => constant / (2.0 * power),
        (Normalization::Perron, _) => constant / power,
    };
    Ok(Prediction {
        constant,
        power,
        log_factor,
    })
}

/// Partial sum at `cutoff` compared with the predicted leading term.
pub fn asymptotic_report(nu: usize, x: f64, cutoff: u64, norm: Normalization) -> Result<AsymptoticReport> {
    if cutoff < 1 {
        return Err(domain("cutoff must be at least 1"));
    }
    let p = asymptotic_constant(nu, x, norm)?;
    let observed = partial_sum_m(nu, cutoff, x);
    let xf = cutoff as f64;
    let mut scale = p.constant * xf.powf(p.power);
    if p.log_factor {
        scale *= xf.ln();
    }
    Ok(AsymptoticReport {
        nu,
        x,
        cutoff,
        observed,
        predicted_constant: p.constant,
        predicted_power: p.power,
        log_factor: p.log_factor,
        normalization: norm,
        ratio: observed / scale,
    })
}

/// β_ℓ = (−1)^{ℓ+1}(2ℓ)!/((ℓ−1)! 2^{2ℓ−1} B_{2ℓ}).
pub fn beta_even(ell: u32) -> BigRational {
    assert!(ell >= 1);
    let num = factorial_big(2 * ell);
    let den = factorial_big(ell - 1) * BigInt::from(2).pow(2 * ell - 1);
    let mut q = BigRational::new(num, den) / bernoulli(2 * ell as usize);
    if ell % 2 == 0 {
        q = -q;
    }
    q
}

/// (−1)^ℓ 2^{3ℓ+1} B_{2ℓ+2}/((2ℓ−1)!! (2ℓ+2)!).
pub fn beta_odd(ell: u32) -> BigRational {
    assert!(ell >= 1);
    let dfact: BigInt = (1..=ell).fold(BigInt::from(1), |a, i| a * (2 * i - 1));
    let den = dfact * factorial_big(2 * ell + 2);
    let mut q = bernoulli(2 * ell as usize + 2) * BigRational::new(BigInt::from(2).pow(3 * ell + 1), den);
    if ell % 2 == 1 {
        q = -q;
    }
    q
}

/// The x = 1 constant in the Bernoulli form: β_ℓ ζ(2ℓ+1)/π^ℓ for ν = 2ℓ,
/// and the odd rational times π^{3ℓ+2}/ζ(2ℓ+1) for ν = 2ℓ+1.
pub fn bernoulli_constant(ell: u32, parity: Parity) -> f64 {
    let z = zeta_real(2.0 * ell as f64 + 1.0);
    match parity {
        Parity::Even => ratio_to_f64(&beta_even(ell)) * z / PI.powi(ell as i32),
        Parity::Odd => ratio_to_f64(&beta_odd(ell)) * PI.powi(3 * ell as i32 + 2) / z,
    }
}
