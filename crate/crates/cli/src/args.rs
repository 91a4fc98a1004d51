//! Command-line flags. Every setting can also be given in the config file
//! under its snake_case name.

use std::path::PathBuf;

use clap::Parser;

use crate::config::{RunConfig, Source};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "darkbright",
    version,
    about = "Cross-cavity beam splitter for dark and bright light"
)]
pub struct Args {
    /// transfer, simulate, sweep or fock-check
    pub mode: Option<String>,

    /// Flat `key = value` file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub cooperativity: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa_r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa_t: Option<String>,
    /// Shorthand for --gamma-1
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_2: Option<String>,
    /// g1 or g2; shorthand for the lambdas
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_2: Option<String>,
    /// Port-a amplitude, e.g. 0.6 or 0.6-0.8i
    #[arg(long, allow_hyphen_values = true)]
    pub mu_a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu_b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa_tau_p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<String>,
    /// Comma-separated cooperativities
    #[arg(long, allow_hyphen_values = true)]
    pub c_values: Option<String>,
    /// lo:hi:N followed by log or lin, e.g. 0.1:100:40log
    #[arg(long, allow_hyphen_values = true)]
    pub c_range: Option<String>,
    /// lo:hi:N
    #[arg(long, allow_hyphen_values = true)]
    pub delta_range: Option<String>,
    /// CSV destination; stdout when absent
    #[arg(long)]
    pub output: Option<String>,
    /// Also write a gnuplot script here
    #[arg(long)]
    pub gnuplot: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt_factor: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub window_factor: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ring_down: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<String>,
}

impl Args {
    fn flags(&self) -> Result<Source, CliError> {
        let mut src = Source::new("command line");
        let pairs = [
            ("g", &self.g),
            ("cooperativity", &self.cooperativity),
            ("kappa_r", &self.kappa_r),
            ("kappa_t", &self.kappa_t),
            ("gamma", &self.gamma),
            ("gamma_1", &self.gamma_1),
            ("gamma_2", &self.gamma_2),
            ("branch", &self.branch),
            ("lambda_1", &self.lambda_1),
            ("lambda_2", &self.lambda_2),
            ("mu_a", &self.mu_a),
            ("mu_b", &self.mu_b),
            ("kappa_tau_p", &self.kappa_tau_p),
            ("t0", &self.t0),
            ("c_values", &self.c_values),
            ("c_range", &self.c_range),
            ("delta_range", &self.delta_range),
            ("output", &self.output),
            ("gnuplot", &self.gnuplot),
            ("dt_factor", &self.dt_factor),
            ("window_factor", &self.window_factor),
            ("ring_down", &self.ring_down),
            ("cutoff", &self.cutoff),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                src.set(key, v.clone())?;
            }
        }
        Ok(src)
    }

    /// Reads the config file (if any) and layers the flags on top.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut sources = Vec::new();
        if let Some(path) = &self.config {
            let text =
                std::fs::read_to_string(path).map_err(CliError::io(path.display().to_string()))?;
            sources.push(Source::parse_named(&path.display().to_string(), &text)?);
        }
        sources.push(self.flags()?);
        RunConfig::from_sources(self.mode.as_deref(), &sources)
    }
}
