//! Zeta-regularized determinants det(Δ_{ν,α} + s²) on the flat torus, where
//! Δ_{ν,α} has eigenvalues |m+α|², m ∈ ℤ^ν.
//!
//! The determinants are returned as the canonical representatives of the
//! closed formulas; for ν ≥ 2 they are determined only up to a factor
//! exp(polynomial of degree ≤ 2ℓ), which the ladder operator annihilates.
//! Verification therefore goes through
//!
//!   (1/(2s) ∂_s)^{ℓ+1} log det = (−1)^ℓ ℓ! Σ_m (|m+α|² + s²)^{−ℓ−1},
//!
//! whose right side is the convergent [`spectral_sum`].

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{ratio_to_f64, BigRational};
use crate::error::{domain, Error, Result};
use crate::lattice::{fold_ball, Character};
use crate::ruelle::{lattice_tail, shell_sums, SeriesValue, Truncation};
use crate::special::bessel_k;
use crate::window::shifted_sum;

/// c_k^{(ℓ)} = (1/(2^k k!)) Π_{j=1−k}^{k} (ℓ+j).
pub fn c_coeff(ell: u32, k: u32) -> Result<BigRational> {
    if k > ell {
        return Err(Error::IndexError { ell, k });
    }
    let mut num = BigInt::one();
    for j in (1 - k as i64)..=(k as i64) {
        num *= BigInt::from(ell as i64 + j);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(2 * i);
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderCoeffs {
    pub ell: u32,
    pub c: Vec<BigRational>,
}

impl LadderCoeffs {
    pub fn new(ell: u32) -> Self {
        let c = (0..=ell).map(|k| c_coeff(ell, k).unwrap()).collect();
        Self { ell, c }
    }

    fn as_f64(&self) -> Vec<f64> {
        self.c.iter().map(ratio_to_f64).collect()
    }
}

fn double_factorial_odd(ell: u32) -> f64 {
    // (2ℓ+1)!!
    (0..=ell).map(|i| (2 * i + 1) as f64).product()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// P_ℓ(s,a): 2^{ℓ+1}s^{2ℓ+1}/(2ℓ+1)!! at a = 0, else (−2/a)^{ℓ+1} Σ_k c_k^{(ℓ)} a^{−k} s^{ℓ−k}.
pub fn p_poly(ell: u32, s: Complex64, a: f64) -> Complex64 {
    if a == 0.0 {
        return s.powu(2 * ell + 1) * (2f64.powi(ell as i32 + 1) / double_factorial_odd(ell));
    }
    let c = LadderCoeffs::new(ell).as_f64();
    let sum: Complex64 = (0..=ell)
        .map(|k| s.powu(ell - k) * (c[k as usize] * a.powi(-(k as i32))))
        .sum();
    sum * (-2.0 / a).powi(ell as i32 + 1)
}

/// Q_ℓ(s,a): s^{2ℓ} log s/ℓ! at a = 0, else (−1)^{ℓ+1}(2s/a)^ℓ K_ℓ(as).
pub fn q_func(ell: u32, s: f64, a: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("Q_l needs s > 0, got {s}")));
    }
    if a == 0.0 {
        return Ok(s.powi(2 * ell as i32) * s.ln() / factorial(ell));
    }
    let sign = if ell % 2 == 0 { -1.0 } else { 1.0 };
    Ok(sign * (2.0 * s / a).powi(ell as i32) * bessel_k(ell as i32, a * s)?)
}

fn det_radius(_s_re: f64, tr: &Truncation) -> f64 {
    (tr.radius / (2.0 * PI)).max(6.0)
}

fn check_chi(chi: &Character, nu: usize) -> Result<()> {
    if chi.dim() != nu {
        Err(Error::DimensionMismatch {
            expected: nu,
            got: chi.dim(),
        })
    } else {
        Ok(())
    }
}

/// Exponent of the odd-dimensional determinant, ν = 2ℓ+1:
/// −(−2π)^{ℓ+1}s^{2ℓ+1}/(2ℓ+1)!! − Σ_{n≠0} |n|^{−ℓ−1} Σ_k c_k (2π|n|)^{−k} s^{ℓ−k} e^{2πin·α} e^{−2π|n|s},
/// with the lattice sum grouped by shells.
pub fn log_det_odd(ell: u32, chi: &Character, s: Complex64, tr: &Truncation) -> Result<SeriesValue> {
    let nu = 2 * ell as usize + 1;
    check_chi(chi, nu)?;
    if !(s.re > 0.0) {
        return Err(domain(format!("det needs Re(s) > 0, got {s}")));
    }
    let radius = det_radius(s.re, tr);
    let r2 = (radius * radius).ceil() as u64;
    let sums = shell_sums(nu, chi, r2, 0.0);
    let c = LadderCoeffs::new(ell).as_f64();
    let mut acc = Complex64::zero();
    for (n2, v) in sums.iter().enumerate().skip(1) {
        if v.is_zero() {
            continue;
        }
        acc += v * odd_kernel(ell, &c, (n2 as f64).sqrt(), s);
    }
    let poly = s.powu(2 * ell + 1) * ((-2.0 * PI).powi(ell as i32 + 1) / double_factorial_odd(ell));
    Ok(SeriesValue {
        value: -poly - acc,
        terms: r2 as usize,
        tail_estimate: lattice_tail(nu, (r2 as f64).sqrt(), 2.0 * PI * s.re),
    })
}

fn odd_kernel(ell: u32, c: &[f64], r: f64, s: Complex64) -> Complex64 {
    let a = 2.0 * PI * r;
    let poly: Complex64 = (0..=ell)
        .map(|k| s.powu(ell - k) * (c[k as usize] * a.powi(-(k as i32))))
        .sum();
    poly * (-a * s).exp() * r.powi(-(ell as i32 + 1))
}

/// Same exponent summed vector by vector, for the regrouping check.
pub fn log_det_odd_vectorwise(ell: u32, chi: &Character, s: Complex64, tr: &Truncation) -> Result<Complex64> {
    let nu = 2 * ell as usize + 1;
    check_chi(chi, nu)?;
    let radius = det_radius(s.re, tr);
    let r2 = (radius * radius).ceil() as u64;
    let c = LadderCoeffs::new(ell).as_f64();
    let tab = chi.pairing_table();
    let acc = fold_ball(
        nu,
        r2,
        Complex64::zero,
        |acc, v, n2| *acc += tab.pair(v) * odd_kernel(ell, &c, (n2 as f64).sqrt(), s),
        |a, b| a + b,
    );
    let poly = s.powu(2 * ell + 1) * ((-2.0 * PI).powi(ell as i32 + 1) / double_factorial_odd(ell));
    Ok(-poly - acc)
}

/// det(Δ_{2ℓ+1,α} + s²), canonical representative.
pub fn det_odd(ell: u32, chi: &Character, s: Complex64, tr: &Truncation) -> Result<Complex64> {
    Ok(log_det_odd(ell, chi, s, tr)?.value.exp())
}

/// Exponent of the even-dimensional determinant, ν = 2ℓ:
/// 2(−1)^ℓ π^ℓ s^{2ℓ} log s/ℓ! − 2s^ℓ Σ_{n≠0} |n|^{−ℓ} e^{2πin·α} K_ℓ(2π|n|s).
pub fn log_det_even(ell: u32, chi: &Character, s: f64, tr: &Truncation) -> Result<SeriesValue> {
    if ell == 0 {
        return Err(domain("even dimension needs l >= 1"));
    }
    let nu = 2 * ell as usize;
    check_chi(chi, nu)?;
    if !(s > 0.0) {
        return Err(domain(format!("det_even needs real s > 0, got {s}")));
    }
    let radius = det_radius(s, tr);
    let r2 = (radius * radius).ceil() as u64;
    let sums = shell_sums(nu, chi, r2, 0.0);
    let mut acc = 0.0;
    for (n2, v) in sums.iter().enumerate().skip(1) {
        if v.is_zero() {
            continue;
        }
        acc += v.re * even_kernel(ell, (n2 as f64).sqrt(), s)?;
    }
    Ok(SeriesValue {
        value: Complex64::new(even_poly(ell, s) - 2.0 * s.powi(ell as i32) * acc, 0.0),
        terms: r2 as usize,
        tail_estimate: 2.0 * s.powi(ell as i32) * lattice_tail(nu, (r2 as f64).sqrt(), 2.0 * PI * s),
    })
}

fn even_poly(ell: u32, s: f64) -> f64 {
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * sign * PI.powi(ell as i32) * s.powi(2 * ell as i32) * s.ln() / factorial(ell)
}

fn even_kernel(ell: u32, r: f64, s: f64) -> Result<f64> {
    Ok(r.powi(-(ell as i32)) * bessel_k(ell as i32, 2.0 * PI * r * s)?)
}

/// Same exponent summed vector by vector.
pub fn log_det_even_vectorwise(ell: u32, chi: &Character, s: f64, tr: &Truncation) -> Result<f64> {
    let nu = 2 * ell as usize;
    check_chi(chi, nu)?;
    let radius = det_radius(s, tr);
    let r2 = (radius * radius).ceil() as u64;
    let tab = chi.pairing_table();
    let acc = fold_ball(
        nu,
        r2,
        || 0.0,
        |acc, v, n2| *acc += tab.pair(v).re * even_kernel(ell, (n2 as f64).sqrt(), s).unwrap(),
        |a, b| a + b,
    );
    Ok(even_poly(ell, s) - 2.0 * s.powi(ell as i32) * acc)
}

/// det(Δ_{2ℓ,α} + s²), canonical representative.
pub fn det_even(ell: u32, chi: &Character, s: f64, tr: &Truncation) -> Result<f64> {
    Ok(log_det_even(ell, chi, s, tr)?.value.re.exp())
}

/// ν = 1: e^{2πs}(1 − e^{2πiα}e^{−2πs})(1 − e^{−2πiα}e^{−2πs}), with the constant pinned to 1.
pub fn det_dim1_exact(alpha: Ratio<i64>, s: Complex64) -> Complex64 {
    let a = alpha.to_f64().unwrap();
    let z = Complex64::new(0.0, 2.0 * PI * a).exp();
    let e = (-2.0 * PI * s).exp();
    (2.0 * PI * s).exp() * (1.0 - z * e) * (1.0 - z.conj() * e)
}

/// 4 sin π(α+is) sin π(α−is).
pub fn det_dim1_sine(alpha: Ratio<i64>, s: Complex64) -> Complex64 {
    let a = alpha.to_f64().unwrap();
    let i = Complex64::i();
    ((a + i * s) * PI).sin() * ((a - i * s) * PI).sin() * 4.0
}

/// Σ_m (|m+α|² + s²)^{−j}, j > ν/2, by the smooth-window lattice sum.
pub fn spectral_sum(nu: usize, chi: &Character, s: f64, j: u32, tr: &Truncation) -> Result<SeriesValue> {
    check_chi(chi, nu)?;
    let _ = tr;
    if 2 * j as usize <= nu || !(s > 0.0) {
        return Err(domain(format!("spectral sum needs j > nu/2 and s > 0 (j={j}, s={s})")));
    }
    let s2 = s * s;
    let jj = j as i32;
    let w = shifted_sum(nu, &chi.alpha_f64(), |r2| Complex64::new((r2 + s2).powi(-jj), 0.0), true);
    Ok(SeriesValue {
        value: w.value,
        terms: w.terms,
        tail_estimate: w.est_error,
    })
}

/// Fourier weight in ℝ^{2ℓ}:
/// ∫ e^{2πix·R}(|x|²+s²)^{−ℓ−1} dx = 2π^{ℓ+1}|R| K_1(2π|R|s)/(ℓ! s).
pub fn fourier_weight_even(ell: u32, r: f64, s: f64) -> Result<f64> {
    Ok(2.0 * PI.powi(ell as i32 + 1) * r * bessel_k(1, 2.0 * PI * r * s)? / (factorial(ell) * s))
}

/// ∫₀^∞ J_λ(bx) x^{λ+1}/(x²+a²)^{μ+1} dx = a^{λ−μ} b^μ K_{λ−μ}(ab)/(2^μ Γ(μ+1)).
pub fn bessel_integral_closed(lambda: i32, mu: u32, a: f64, b: f64) -> Result<f64> {
    let l = lambda as f64;
    let m = mu as f64;
    Ok(a.powf(l - m) * b.powf(m) * bessel_k(lambda - mu as i32, a * b)? / (2f64.powf(m) * factorial(mu)))
}

/// Right side of the odd Poisson identity: 2(−1)^ℓ π^{ℓ+1} Σ_n e^{2πin·α} e^{−2π|n|s}.
pub fn psf_odd_rhs(ell: u32, chi: &Character, s: f64, tr: &Truncation) -> Result<f64> {
    let nu = 2 * ell as usize + 1;
    check_chi(chi, nu)?;
    let radius = det_radius(s, tr);
    let sums = shell_sums(nu, chi, (radius * radius).ceil() as u64, 0.0);
    let acc: f64 = 1.0
        + sums
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n2, v)| v.re * (-2.0 * PI * (n2 as f64).sqrt() * s).exp())
            .sum::<f64>();
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    Ok(2.0 * sign * PI.powi(ell as i32 + 1) * acc)
}

/// Right side of the even Poisson identity:
/// 2(−1)^ℓ π^ℓ (1/s + Σ_{n≠0} e^{2πin·α} 2π|n| K_1(2π|n|s)).
pub fn psf_even_rhs(ell: u32, chi: &Character, s: f64, tr: &Truncation) -> Result<f64> {
    let nu = 2 * ell as usize;
    check_chi(chi, nu)?;
    let radius = det_radius(s, tr);
    let sums = shell_sums(nu, chi, (radius * radius).ceil() as u64, 0.0);
    let mut acc = 1.0 / s;
    for (n2, v) in sums.iter().enumerate().skip(1) {
        if v.is_zero() {
            continue;
        }
        let a = 2.0 * PI * (n2 as f64).sqrt();
        acc += v.re * a * bessel_k(1, a * s)?;
    }
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    Ok(2.0 * sign * PI.powi(ell as i32) * acc)
}

/// ∂_t^m f(√t) at t = s² by central differences with two Richardson steps
/// (base step 1e-2·t, halved twice). m ≤ 3.
pub fn t_derivative_fd<F>(f: F, m: u32, s: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let t0 = s * s;
    let g = |t: f64| f(t.sqrt());
    let d = |h: f64| -> f64 {
        match m {
            0 => g(t0),
            1 => (g(t0 + h) - g(t0 - h)) / (2.0 * h),
            2 => (g(t0 + h) - 2.0 * g(t0) + g(t0 - h)) / (h * h),
            3 => (g(t0 + 2.0 * h) - 2.0 * g(t0 + h) + 2.0 * g(t0 - h) - g(t0 - 2.0 * h)) / (2.0 * h * h * h),
            _ => panic!("derivative order {m} not supported"),
        }
    };
    let h = 1e-2 * t0;
    let (d1, d2, d3) = (d(h), d(h / 2.0), d(h / 4.0));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// The ladder operator ∂_s (1/(2s) ∂_s)^ℓ = 2s ∂_t^{ℓ+1}, applied numerically.
pub fn ladder_fd<F>(f: F, ell: u32, s: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    2.0 * s * t_derivative_fd(f, ell + 1, s)
}
