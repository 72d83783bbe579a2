//! One function per subcommand; each returns a [`Report`].

use anyhow::{bail, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use serde_json::json;

use latzeta::arith::{r_closed, rep_table, SieveTable};
use latzeta::boundary::{certify_with, DEFAULT_SERIES_TERMS};
use latzeta::detlap::{det_dim1_exact, det_dim1_sine, log_det_even, log_det_odd, spectral_sum, t_derivative_fd};
use latzeta::ruelle::{log_l_euler, log_l_mobius, log_l_series};
use latzeta::tauber::asymptotic_report;
use latzeta::{Character, Normalization, SeriesValue};

use crate::config::RunConfig;
use crate::output::{cjson, num, Report};

fn alpha_text(alpha: &[Ratio<i64>]) -> String {
    alpha.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

/// n, r_ν(n), r̃_ν(n), M_ν(n,x) for 1 ≤ n ≤ max.
pub fn arith(cfg: &RunConfig, nu: usize, max: u64, x: f64, check_closed: bool) -> Result<Report> {
    if nu == 0 || max == 0 {
        bail!(latzeta::Error::DomainError("nu and max must be positive".into()));
    }
    let n_max = max as usize;
    let r = rep_table(nu, n_max);
    let sieve = SieveTable::new(cfg.sieve_limit.unwrap_or(SieveTable::DEFAULT_LIMIT).min(max.max(1) as u32));
    let mut prim = vec![0i128; n_max + 1];
    let mut k = 1usize;
    while k * k <= n_max {
        let mu = sieve.moebius(k as u64) as i128;
        if mu != 0 {
            for m in 1..=n_max / (k * k) {
                prim[m * k * k] += mu * r[m] as i128;
            }
        }
        k += 1;
    }
    let mut mval = vec![0f64; n_max + 1];
    let mut k = 1usize;
    while k * k <= n_max {
        let w = (k as f64).powf(-x);
        for m in 1..=n_max / (k * k) {
            mval[m * k * k] += w * prim[m] as f64;
        }
        k += 1;
    }
    let mut mismatches = Vec::new();
    if check_closed {
        for n in 1..=max {
            if r_closed(nu, n)? != r[n as usize] {
                mismatches.push(n);
            }
        }
    }
    let rows_json: Vec<_> = (1..=n_max)
        .map(|n| json!({ "n": n, "r": r[n] as u64, "r_primitive": prim[n] as i64, "m": mval[n] }))
        .collect();
    let rows = (1..=n_max)
        .map(|n| vec![n.to_string(), r[n].to_string(), prim[n].to_string(), num(mval[n])])
        .collect();
    let mut doc = json!({ "nu": nu, "x": x, "rows": rows_json });
    if check_closed {
        doc["closed_form_mismatches"] = json!(mismatches);
    }
    Ok(Report {
        json: doc,
        header: vec!["n", "r", "r_primitive", "m"],
        rows,
        passed: mismatches.is_empty(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Euler,
    Mobius,
    Series,
    All,
}

pub fn lfun(cfg: &RunConfig, nu: usize, s: Complex64, alpha: &[Ratio<i64>], route: Route) -> Result<Report> {
    let chi = Character::new(alpha.to_vec());
    let tr = cfg.truncation(s)?;
    let mut values: Vec<(&'static str, SeriesValue)> = Vec::new();
    if matches!(route, Route::Euler | Route::All) {
        values.push(("euler", log_l_euler(s, &chi, nu, &tr)?));
    }
    if matches!(route, Route::Mobius | Route::All) {
        values.push(("mobius", log_l_mobius(s, &chi, nu, &tr)?));
    }
    if matches!(route, Route::Series | Route::All) {
        values.push(("series", log_l_series(s, &chi, nu, &tr)?));
    }
    let mut max_delta = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            max_delta = max_delta.max((a.1.value - b.1.value).norm());
        }
    }
    let routes: serde_json::Map<String, serde_json::Value> = values
        .iter()
        .map(|(name, v)| {
            (
                name.to_string(),
                json!({ "log_l": cjson(v.value), "terms": v.terms, "tail_estimate": v.tail_estimate }),
            )
        })
        .collect();
    let rows = values
        .iter()
        .map(|(name, v)| {
            vec![
                name.to_string(),
                num(v.value.re),
                num(v.value.im),
                v.terms.to_string(),
                num(v.tail_estimate),
            ]
        })
        .collect();
    let mut doc = json!({ "nu": nu, "s": cjson(s), "alpha": alpha_text(alpha), "routes": routes });
    if values.len() > 1 {
        doc["max_delta"] = json!(max_delta);
    }
    Ok(Report {
        json: doc,
        header: vec!["route", "re", "im", "terms", "tail_estimate"],
        rows,
        passed: true,
    })
}

pub fn boundary(nu: usize, m: u64, n: u64, prime_limit: u64, series_terms: Option<u64>) -> Result<Report> {
    let cert = certify_with(nu, m, n, prime_limit, series_terms.unwrap_or(DEFAULT_SERIES_TERMS))?;
    let doc = cert.document();
    let rows = doc
        .factors
        .iter()
        .map(|f| vec![format!("{:?}", f.kind), f.p.to_string(), f.num.clone(), f.den.clone()])
        .collect();
    let mut json = serde_json::to_value(&doc)?;
    json["factored_value"] = json!(cert.factored_value);
    json["relative_discrepancy"] = json!(cert.relative_discrepancy());
    Ok(Report {
        json,
        header: vec!["kind", "p", "num", "den"],
        rows,
        passed: cert.verdict,
    })
}

// relative tolerances of the --verify checks
const EXACT_TOL: f64 = 1e-12;
const LADDER_TOL: f64 = 1e-4;

pub fn detlap(cfg: &RunConfig, nu: usize, s: Complex64, alpha: &[Ratio<i64>], verify: bool) -> Result<Report> {
    if nu == 0 {
        bail!(latzeta::Error::DomainError("nu must be positive".into()));
    }
    let chi = Character::new(alpha.to_vec());
    let tr = cfg.truncation(s)?;
    let ell = (nu / 2) as u32;
    let odd = nu % 2 == 1;
    if !odd && s.im != 0.0 {
        bail!(latzeta::Error::DomainError("even dimensions need real s".into()));
    }
    let log_det = |s: Complex64| -> latzeta::Result<SeriesValue> {
        if odd {
            log_det_odd(ell, &chi, s, &tr)
        } else {
            log_det_even(ell, &chi, s.re, &tr)
        }
    };
    let v = log_det(s)?;
    let det = v.value.exp();
    let mut doc = json!({
        "nu": nu, "s": cjson(s), "alpha": alpha_text(alpha),
        "log_det": cjson(v.value), "det": cjson(det), "tail_estimate": v.tail_estimate,
    });
    let mut rows = vec![vec!["det".to_string(), num(det.re), num(det.im)]];
    let mut passed = true;
    if nu == 1 {
        let exact = det_dim1_exact(alpha[0], s);
        let sine = det_dim1_sine(alpha[0], s);
        let resid = ((det - exact).norm() / exact.norm()).max((sine - exact).norm() / exact.norm());
        doc["exact_residual"] = json!(resid);
        rows.push(vec!["exact_residual".into(), num(resid), num(0.0)]);
        passed &= resid < EXACT_TOL;
    }
    if verify {
        if s.im != 0.0 {
            bail!(latzeta::Error::DomainError("--verify needs real s".into()));
        }
        // (1/(2s) ∂_s)^{ℓ+1} log det = (−1)^ℓ ℓ! Σ (|m+α|²+s²)^{−ℓ−1}
        let fd = t_derivative_fd(|x| log_det(Complex64::new(x, 0.0)).map(|v| v.value.re).unwrap_or(f64::NAN), ell + 1, s.re);
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=ell).map(f64::from).product();
        let spec = sign * fact * spectral_sum(nu, &chi, s.re, ell + 1, &tr)?.value.re;
        let resid = (fd - spec).abs() / spec.abs();
        doc["ladder"] = json!({ "order": ell + 1, "finite_difference": fd, "spectral_sum": spec, "residual": resid });
        rows.push(vec!["ladder_residual".into(), num(resid), num(0.0)]);
        passed &= resid < LADDER_TOL;
    }
    Ok(Report {
        json: doc,
        header: vec!["quantity", "re", "im"],
        rows,
        passed,
    })
}

pub fn tauber(cfg: &RunConfig, nu: usize, x: f64, cutoff: u64, norm: Normalization) -> Result<Report> {
    let rep = asymptotic_report(nu, x, cutoff, norm)?;
    let band = cfg.band.unwrap_or(0.05);
    let passed = (rep.ratio - 1.0).abs() <= band;
    let mut json = serde_json::to_value(&rep)?;
    json["band"] = json!(band);
    let row = vec![
        nu.to_string(),
        x.to_string(),
        cutoff.to_string(),
        num(rep.observed),
        num(rep.predicted_constant),
        num(rep.ratio),
        rep.predicted_power.to_string(),
        rep.log_factor.to_string(),
    ];
    Ok(Report {
        json,
        header: vec!["nu", "x", "X", "observed", "predicted", "ratio", "power", "log_factor"],
        rows: vec![row],
        passed,
    })
}
