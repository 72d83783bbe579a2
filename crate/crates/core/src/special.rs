//! Riemann ζ, the Dirichlet L-function of the character mod 4, Bessel J_n
//! and K_ℓ of integer order, half-integer Γ and sphere areas.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{bernoulli, ratio_to_f64};
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub est_error: f64,
}

impl EvalResult {
    pub fn real(value: f64, est_error: f64) -> Self {
        Self {
            value: Complex64::new(value, 0.0),
            est_error,
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }
}

const EM_TERMS: usize = 15;

fn em_coefficients() -> &'static [f64; EM_TERMS + 1] {
    static C: std::sync::OnceLock<[f64; EM_TERMS + 1]> = std::sync::OnceLock::new();
    C.get_or_init(|| {
        let mut c = [0.0; EM_TERMS + 1];
        let mut fact = 1.0f64;
        for k in 1..=EM_TERMS + 1 {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            c[k - 1] = ratio_to_f64(&bernoulli(2 * k)) / fact;
        }
        c
    })
}

/// ζ(s) for Re(s) > 1 by Euler–Maclaurin summation.
pub fn riemann_zeta(s: Complex64) -> Result<EvalResult> {
    if !(s.re > 1.0) {
        return Err(domain(format!("zeta needs Re(s) > 1, got {s}")));
    }
    let n = 20usize.max(s.im.abs().ceil() as usize);
    let nf = n as f64;
    let mut sum = Complex64::zero();
    // smallest terms first
    for k in (1..n).rev() {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_s = Complex64::new(nf, 0.0).powc(-s);
    sum += n_s * nf / (s - 1.0) + n_s * 0.5;
    let c = em_coefficients();
    // T_k = B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut poch = s;
    let mut npow = n_s / nf;
    let mut last = 0.0;
    for k in 1..=EM_TERMS + 1 {
        let term = poch * npow * c[k - 1];
        if k <= EM_TERMS {
            sum += term;
        } else {
            last = term.norm();
        }
        poch *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        npow /= nf * nf;
    }
    Ok(EvalResult {
        value: sum,
        est_error: last + sum.norm() * 4.0 * f64::EPSILON,
    })
}

pub fn zeta_real(s: f64) -> f64 {
    riemann_zeta(Complex64::new(s, 0.0)).expect("zeta domain").value.re
}

/// Σ χ₋₄(n) n^{−s} for Re(s) > 0 by Cohen–Villegas–Zagier acceleration.
pub fn dirichlet_l4(s: Complex64) -> Result<EvalResult> {
    if !(s.re > 0.0) {
        return Err(domain(format!("L_-4 needs Re(s) > 0, got {s}")));
    }
    let n = 48 + (2.0 * s.im.abs()).ceil() as usize;
    let r = 3.0 + 8f64.sqrt();
    let mut d = r.powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0f64;
    let mut c = -d;
    let mut acc = Complex64::zero();
    for k in 0..n {
        c = b - c;
        acc += Complex64::new((2 * k + 1) as f64, 0.0).powc(-s) * c;
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    let value = acc / d;
    let damp = (0.5 * PI * s.im.abs()).exp();
    Ok(EvalResult {
        value,
        est_error: 3.0 * damp / r.powi(n as i32) + value.norm() * 8.0 * f64::EPSILON,
    })
}

pub fn l4_real(s: f64) -> f64 {
    dirichlet_l4(Complex64::new(s, 0.0)).expect("L_-4 domain").value.re
}

/// Γ(k/2) for a positive integer k, from Γ(1/2) = √π, Γ(1) = 1 and Γ(x+1) = xΓ(x).
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1);
    let (mut g, mut x) = if k % 2 == 1 { (PI.sqrt(), 0.5) } else { (1.0, 1.0) };
    while 2.0 * x < k as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Area of the unit sphere S^ν ⊂ ℝ^{ν+1}: 2π^{(ν+1)/2}/Γ((ν+1)/2).
pub fn sphere_area(nu: u32) -> f64 {
    assert!(nu >= 1);
    2.0 * PI.powf((nu + 1) as f64 / 2.0) / gamma_half(nu + 1)
}

/// Volume of the unit ball in ℝ^ν: π^{ν/2}/Γ(ν/2+1).
pub fn ball_volume(nu: u32) -> f64 {
    PI.powf(nu as f64 / 2.0) / gamma_half(nu + 2)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// J_n(x) for integer n: power series for |x| ≤ 12, periodic trapezoid of
/// (1/π)∫₀^π cos(nθ − x sin θ) dθ above.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = bessel_j(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x.abs() <= 12.0 {
        let h = 0.5 * x;
        let mut term = h.powi(n) / factorial(n as u32);
        let mut sum = term;
        let q = -h * h;
        for k in 1..200 {
            term *= q / (k as f64 * (k + n as i32) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) && k > 4 {
                break;
            }
        }
        return sum;
    }
    // the integrand extends to a smooth 2π-periodic function of θ, so the
    // trapezoid rule converges geometrically once m exceeds |x| + n
    let m = 2 * ((x.abs() + n as f64) as usize / 2) + 64;
    let mut sum = 0.0;
    for k in 0..m {
        let th = PI * (k as f64 + 0.5) / m as f64;
        sum += (n as f64 * th - x * th.sin()).cos();
    }
    sum / m as f64
}

pub fn bessel_j0(x: f64) -> f64 {
    bessel_j(0, x)
}

/// K_ℓ(x) for integer ℓ and x > 0 via trapezoid on ∫₀^∞ e^{−x cosh t} cosh(ℓt) dt.
pub fn bessel_k(ell: i32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("K_l needs x > 0, got {x}")));
    }
    let l = ell.unsigned_abs() as f64;
    // the integrand is analytic in |Im t| < π/2, so the discretization error is about e^{−π²/h}
    let h = 1.0 / 16.0;
    let log_f = |t: f64| -x * t.cosh() + l * t;
    // the log-integrand peaks where x sinh t = ℓ
    let t_peak = if l > 0.0 { (l / x).asinh() } else { 0.0 };
    let peak = log_f(t_peak);
    let f = |t: f64| {
        let c = if l > 0.0 {
            0.5 * ((log_f(t) - peak).exp() + (-x * t.cosh() - l * t - peak).exp())
        } else {
            (-x * t.cosh() - peak).exp()
        };
        c
    };
    let mut sum = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let v = f(t);
        sum += v;
        if t > t_peak && v < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    Ok(sum * h * peak.exp())
}

pub fn bessel_k_unchecked(ell: i32, x: f64) -> f64 {
    bessel_k(ell, x).expect("K_l domain")
}

pub fn erfc(x: f64) -> f64 {
    statrs::function::erf::erfc(x)
}
