//! Known values checked against the public API.

use std::f64::consts::PI;

use latzeta::arith::r_closed;
use latzeta::boundary::{certify_nonvanishing, local_e, local_f, local_g, r_coeff_series};
use latzeta::detlap::{c_coeff, det_dim1_exact, det_even, det_odd, p_poly, q_func};
use latzeta::ruelle::{g_direct, log_deriv_l, log_l, phi};
use latzeta::special::{bessel_k, riemann_zeta, zeta_real};
use latzeta::tauber::{asymptotic_constant, partial_sum_m, script_l};
use latzeta::{BigRational, Character, Complex64, Error, Normalization, Truncation};
use num_rational::Ratio;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn representation_counts() {
    assert_eq!(r_closed(2, 25).unwrap(), 12);
    assert_eq!(r_closed(4, 2).unwrap(), 24);
    assert_eq!(r_closed(8, 1).unwrap(), 16);
    assert!(matches!(r_closed(5, 3), Err(Error::UnsupportedDimension(_))));
}

#[test]
fn local_factors() {
    assert_eq!(local_f(2, 2, 0).unwrap(), q(24, 7));
    assert_eq!(local_f(4, 2, 0).unwrap(), q(224, 31));
    assert_eq!(local_e(2, 2).unwrap(), q(32, 7));
    assert_eq!(local_e(2, 3).unwrap(), q(54, 13));
    assert_eq!(local_g(2, 2).unwrap(), q(6, 7));
    assert_eq!(local_g(4, 2).unwrap(), q(28, 31));
}

#[test]
fn certificates_and_series() {
    for (nu, m, n) in [(2, 1, 1), (4, 1, 2), (8, 3, 5)] {
        let cert = certify_nonvanishing(nu, m, n, 100).unwrap();
        assert!(cert.verdict);
        assert!(cert.relative_discrepancy() < 1e-6, "{nu} {m}/{n}");
    }
    // one term: γ(ñ) r_ν(m̃²)/ñ^{ν+1}
    let (v, _) = r_coeff_series(4, 3, 2, 1).unwrap();
    assert!(close(v, -(r_closed(4, 9).unwrap() as f64) / 32.0, 1e-15));
    assert!(matches!(certify_nonvanishing(2, 2, 4, 100), Err(Error::NotCoprime { .. })));
}

#[test]
fn ruelle_one_dimensional() {
    let z = Character::trivial(1);
    let tr = Truncation::for_s(c(1.0));
    let e = (-1.0f64).exp();
    let g = g_direct(c(1.0), &z, 1, &tr).unwrap().value.re;
    assert!(close(g, 1.163_953_413_738_653, 1e-13));
    let l = log_l(c(1.0), &z, 1, &tr).unwrap().value.re;
    assert!(close(l, -2.0 * (1.0 - e).ln(), 1e-12));
    let d = log_deriv_l(c(1.0), &z, 1, &tr).unwrap().value.re;
    assert!(close(d, -2.0 * e / (1.0 - e), 1e-10));
    let tr1 = Truncation::new(8.0, 1, 1, 1e-9).unwrap();
    let p = phi(c(1.0), &z, 1.0, 1, &tr1).unwrap().value.re;
    assert!(close(p, 0.5 / 0.5f64.tanh(), 1e-12));
}

#[test]
fn log_l_sign_flip_symmetry() {
    let chi = Character::from_pairs(&[(1, 3), (1, 5)]);
    let tr = Truncation::for_s(c(1.5));
    let a = log_l(c(1.5), &chi, 2, &tr).unwrap().value;
    for signs in [[-1, 1], [1, -1], [-1, -1]] {
        let b = log_l(c(1.5), &chi.sign_flip(&signs), 2, &tr).unwrap().value;
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn determinants() {
    let tr = Truncation::for_s(c(1.0));
    let z = Character::trivial(1);
    let d = det_odd(0, &z, c(1.0), &tr).unwrap();
    assert!(close(d.re, 533.493_522_967_496_3, 1e-12));
    let half = det_dim1_exact(Ratio::new(1, 2), c(1.0));
    assert!(close(half.re, 4.0 * (PI).cosh().powi(2), 1e-12));
    let even = det_even(1, &Character::trivial(2), 1.0, &tr).unwrap();
    assert!(even.is_finite() && even > 0.0);
}

#[test]
fn ladder_building_blocks() {
    assert_eq!(c_coeff(5, 0).unwrap(), q(1, 1));
    assert_eq!(c_coeff(1, 1).unwrap(), q(1, 1));
    assert_eq!(c_coeff(2, 2).unwrap(), q(3, 1));
    assert!(c_coeff(1, 2).is_err());
    let a = 2.0;
    assert!(close(p_poly(0, c(0.4), a).re, -2.0 / a, 1e-15));
    assert!(close(q_func(0, 0.7, a).unwrap(), -bessel_k(0, a * 0.7).unwrap(), 1e-14));
}

#[test]
fn zeta_values() {
    assert!(close(riemann_zeta(c(2.0)).unwrap().value.re, PI * PI / 6.0, 1e-14));
    assert!(close(zeta_real(3.0), 1.202_056_903_159_594_2, 1e-14));
    let l2 = script_l(2, 2.0).unwrap().re();
    assert!(close(l2, 4.0 * PI * PI / 6.0 * 0.915_965_594_177_219, 1e-13));
}

#[test]
fn tauberian_constants() {
    let p = asymptotic_constant(2, 1.0, Normalization::Printed).unwrap();
    assert!(close(p.constant, 6.0 * zeta_real(3.0) / PI, 1e-13));
    assert_eq!(p.power, 1.0);
    assert_eq!(partial_sum_m(2, 4, 1.0), 10.0);
    assert!(matches!(asymptotic_constant(1, 2.0, Normalization::Printed), Err(Error::UnsupportedRegime(_))));
}
