//! Run configuration: a TOML file whose keys are overridden by flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub radius: Option<f64>,
    pub ell_limit: Option<u32>,
    pub mobius_limit: Option<u32>,
    pub tol: Option<f64>,
    pub sieve_limit: Option<u32>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    /// Accepted |ratio − 1| for `tauber`.
    pub band: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: RunConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: Option<f64>| v.map_or(true, |x| x > 0.0);
        if !pos(self.radius) || !pos(self.tol) || !pos(self.band) {
            bail!("radius, tol and band must be positive");
        }
        if [self.ell_limit, self.mobius_limit, self.sieve_limit].contains(&Some(0)) || self.threads == Some(0) {
            bail!("limits and thread count must be positive");
        }
        Ok(())
    }

    /// Fields set in `over` win.
    pub fn merge(self, over: RunConfig) -> RunConfig {
        RunConfig {
            radius: over.radius.or(self.radius),
            ell_limit: over.ell_limit.or(self.ell_limit),
            mobius_limit: over.mobius_limit.or(self.mobius_limit),
            tol: over.tol.or(self.tol),
            sieve_limit: over.sieve_limit.or(self.sieve_limit),
            format: over.format.or(self.format),
            output: over.output.or(self.output),
            threads: over.threads.or(self.threads),
            band: over.band.or(self.band),
        }
    }

    pub fn truncation(&self, s: num_complex::Complex64) -> latzeta::Result<latzeta::Truncation> {
        let d = latzeta::Truncation::for_s(s);
        latzeta::Truncation::new(
            self.radius.unwrap_or(d.radius),
            self.mobius_limit.unwrap_or(d.mobius_limit),
            self.ell_limit.unwrap_or(d.ell_limit),
            self.tol.unwrap_or(d.tol),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: RunConfig = toml::from_str("radius = 12.0\nformat = \"csv\"\nthreads = 2").unwrap();
        let flags = RunConfig {
            format: Some(Format::Json),
            ..Default::default()
        };
        let cfg = file.merge(flags);
        assert_eq!(cfg.radius, Some(12.0));
        assert_eq!(cfg.format, Some(Format::Json));
        assert_eq!(cfg.threads, Some(2));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(toml::from_str::<RunConfig>("colour = 1").is_err());
        let cfg: RunConfig = toml::from_str("mobius_limit = 0").unwrap();
        assert!(cfg.validate().is_err());
    }
}
