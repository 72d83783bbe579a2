//! Shifted lattice sums Σ_{m∈ℤ^ν} F(|m+β|) of slowly decaying radial functions.
//!
//! A sharp cutoff leaves an O(1/R) tail plus the lattice-point discrepancy of
//! the ball, which is far too large for cross-checks at 1e-8. Instead the
//! summand is split with a smooth radial window χ:
//!
//!   Σ F(|m+β|) = Σ F·χ + Σ F·(1−χ)  and  Σ F·(1−χ) ≈ ∫_{ℝ^ν} F·(1−χ),
//!
//! where the Poisson error of the second step is the Fourier transform of a
//! function that is smooth on scale R, hence negligible for R ≈ 20.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::quad::tanh_sinh;
use crate::special::{erfc, gamma_half};

const KAPPA: f64 = 6.0;
pub(crate) const DEFAULT_RADIUS: f64 = 20.0;
// χ(y) < 1e-18 beyond this multiple of R
const CUT: f64 = 1.45;

#[derive(Clone, Copy, Debug)]
pub(crate) struct WindowSum {
    pub value: Complex64,
    pub terms: usize,
    pub est_error: f64,
}

fn chi(r2: f64, rr: f64) -> f64 {
    0.5 * erfc(KAPPA * (r2 / (rr * rr) - 1.0))
}

fn windowed_lattice<F>(nu: usize, beta: &[f64], rr: f64, f: &F) -> (Complex64, usize)
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let y = CUT * rr;
    let y2 = y * y;
    let lo = (-y - beta[0]).ceil() as i64;
    let hi = (y - beta[0]).floor() as i64;
    let parts: Vec<(Complex64, usize)> = (lo..=hi)
        .into_par_iter()
        .map(|m0| {
            let d0 = m0 as f64 + beta[0];
            let mut acc = (Complex64::new(0.0, 0.0), 0usize);
            rec(nu, beta, 1, d0 * d0, y2, rr, f, &mut acc);
            acc
        })
        .collect();
    parts
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(
    nu: usize,
    beta: &[f64],
    j: usize,
    acc2: f64,
    y2: f64,
    rr: f64,
    f: &F,
    out: &mut (Complex64, usize),
) where
    F: Fn(f64) -> Complex64,
{
    if acc2 > y2 {
        return;
    }
    if j == nu {
        out.0 += f(acc2) * chi(acc2, rr);
        out.1 += 1;
        return;
    }
    let rem = (y2 - acc2).sqrt();
    let lo = (-rem - beta[j]).ceil() as i64;
    let hi = (rem - beta[j]).floor() as i64;
    for m in lo..=hi {
        let d = m as f64 + beta[j];
        rec(nu, beta, j + 1, acc2 + d * d, y2, rr, f, out);
    }
}

/// A_{ν−1} ∫₀^∞ r^{ν−1} F(r²) (1−χ(r)) dr.
fn radial_complement<F>(nu: usize, rr: f64, f: &F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let area = 2.0 * PI.powf(nu as f64 / 2.0) / gamma_half(nu as u32);
    let p = (nu - 1) as i32;
    let g = |r: f64| f(r * r) * (r.powi(p) * (1.0 - chi(r * r, rr)));
    let r0 = CUT * rr;
    let tol = 1e-15;
    let a = tanh_sinh(g, 0.0, 0.75 * rr, tol).value;
    let b = tanh_sinh(g, 0.75 * rr, r0, tol).value;
    // r = r0/u on the outer part
    let c = tanh_sinh(
        |u| {
            if u < 1e-60 {
                Complex64::new(0.0, 0.0)
            } else {
                g(r0 / u) * (r0 / (u * u))
            }
        },
        0.0,
        1.0,
        tol,
    )
    .value;
    (a + b + c) * area
}

/// Σ_{m∈ℤ^ν} F(|m+β|²), where `f` takes the squared radius.
///
/// `f` must be smooth, bounded near the origin and integrable at infinity.
pub(crate) fn shifted_sum<F>(nu: usize, beta: &[f64], f: F, with_error: bool) -> WindowSum
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let eval = |rr: f64| {
        let (s, n) = windowed_lattice(nu, beta, rr, &f);
        (s + radial_complement(nu, rr, &f), n)
    };
    let (value, terms) = eval(DEFAULT_RADIUS);
    let est_error = if with_error {
        let (coarse, _) = eval(0.8 * DEFAULT_RADIUS);
        (value - coarse).norm() + 16.0 * f64::EPSILON * value.norm()
    } else {
        f64::NAN
    };
    WindowSum {
        value,
        terms,
        est_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_partial_fractions() {
        // Σ_m 1/(m²+t²) = (π/t) coth(πt)
        for &t in &[0.3, 1.0, 2.5] {
            let s = shifted_sum(1, &[0.0], |r2| Complex64::new(1.0 / (r2 + t * t), 0.0), true);
            let exact = PI / t / (PI * t).tanh();
            assert!((s.value.re - exact).abs() < 1e-13 * exact, "t={t}");
            assert!(s.est_error < 1e-6);
        }
        // Σ_m 1/((m+1/2)²+t²) = (π/t) tanh(πt)
        let t = 1.0;
        let s = shifted_sum(1, &[0.5], |r2| Complex64::new(1.0 / (r2 + t * t), 0.0), false);
        assert!((s.value.re - PI * (PI * t).tanh()).abs() < 1e-13);
    }

    #[test]
    fn three_dimensional_against_poisson() {
        // Σ_m e^{−π|m|²} = θ(1)³ with θ(1) = π^{1/4}/Γ(3/4)
        let theta = PI.powf(0.25) / 1.225_416_702_465_177_6;
        let s = shifted_sum(3, &[0.0, 0.0, 0.0], |r2| Complex64::new((-PI * r2).exp(), 0.0), false);
        assert!((s.value.re - theta.powi(3)).abs() < 1e-13);
    }
}
