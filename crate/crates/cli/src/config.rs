//! Run configuration: flat `key = value` files plus command-line overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use darkbright::{AtomBranch, Complex64, GridOptions, InputSuperposition, Pulse, SystemParams};

use crate::complex::{format_complex, parse_complex};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Transfer,
    Simulate,
    Sweep,
    FockCheck,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "transfer" => Some(Self::Transfer),
            "simulate" => Some(Self::Simulate),
            "sweep" => Some(Self::Sweep),
            "fock-check" | "fock_check" => Some(Self::FockCheck),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Transfer => "transfer",
            Self::Simulate => "simulate",
            Self::Sweep => "sweep",
            Self::FockCheck => "fock-check",
        }
    }
}

/// Atom-cavity coupling, either directly or through the cooperativity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    G(f64),
    Cooperativity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Lin,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CSpec {
    List(Vec<f64>),
    Range {
        lo: f64,
        hi: f64,
        n: usize,
        spacing: Spacing,
    },
}

impl CSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Self::List(v) => v.clone(),
            Self::Range { lo, hi, n, spacing } => (0..*n)
                .map(|i| {
                    if i + 1 == *n {
                        return *hi;
                    }
                    let f = i as f64 / (*n - 1) as f64;
                    match spacing {
                        Spacing::Log => lo * (hi / lo).powf(f),
                        Spacing::Lin => lo + (hi - lo) * f,
                    }
                })
                .collect(),
        }
    }
}

/// Linear detuning grid `lo..=hi` with `n` points, in units of κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl DeltaRange {
    pub fn values(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                if self.n == 1 {
                    self.lo
                } else if i + 1 == self.n {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub coupling: Coupling,
    pub kappa_r: f64,
    pub kappa_t: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
    pub lambda_1: Complex64,
    pub lambda_2: Complex64,
    pub mu_a: Complex64,
    pub mu_b: Complex64,
    pub kappa_tau_p: f64,
    pub t0: f64,
    pub c_values: CSpec,
    pub delta_range: DeltaRange,
    pub output: Option<PathBuf>,
    pub gnuplot: Option<PathBuf>,
    pub dt_factor: f64,
    pub window_factor: f64,
    pub ring_down: Option<f64>,
    pub cutoff: usize,
}

impl RunConfig {
    /// Defaults of the reference regime: `g = κ` (C = 20), `Γ = 0.1κ`,
    /// `κτ_p = 100`, photon in port `a`, atom in `|g1⟩`.
    pub fn defaults(mode: Mode) -> Self {
        let grid = GridOptions::default();
        Self {
            mode,
            coupling: Coupling::G(1.0),
            kappa_r: 0.5,
            kappa_t: 0.5,
            gamma_1: 0.1,
            gamma_2: 0.0,
            lambda_1: Complex64::new(1.0, 0.0),
            lambda_2: Complex64::new(0.0, 0.0),
            mu_a: Complex64::new(1.0, 0.0),
            mu_b: Complex64::new(0.0, 0.0),
            kappa_tau_p: 100.0,
            t0: 0.0,
            c_values: CSpec::Range {
                lo: 0.1,
                hi: 100.0,
                n: 40,
                spacing: Spacing::Log,
            },
            delta_range: DeltaRange {
                lo: -10.0,
                hi: 10.0,
                n: 1001,
            },
            output: None,
            gnuplot: None,
            dt_factor: grid.dt_factor,
            window_factor: grid.window_factor,
            ring_down: grid.ring_down,
            cutoff: darkbright::fock::DEFAULT_CUTOFF,
        }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa_r + self.kappa_t
    }

    pub fn gamma(&self) -> f64 {
        self.gamma_1 + self.gamma_2
    }

    pub fn g(&self) -> f64 {
        match self.coupling {
            Coupling::G(g) => g,
            Coupling::Cooperativity(c) => (c * self.kappa() * self.gamma() / 2.0).sqrt(),
        }
    }

    /// Two identical cavities sharing the configured rates.
    pub fn params(&self) -> darkbright::Result<SystemParams> {
        let g = self.g();
        SystemParams::new(
            g,
            g,
            self.kappa_r,
            self.kappa_t,
            self.kappa_r,
            self.kappa_t,
            self.gamma_1,
            self.gamma_2,
        )
    }

    pub fn input(&self) -> darkbright::Result<InputSuperposition> {
        InputSuperposition::new(self.lambda_1, self.lambda_2, self.mu_a, self.mu_b)
    }

    pub fn pulse(&self) -> darkbright::Result<Pulse> {
        Pulse::from_duration(self.t0, self.kappa_tau_p / self.kappa())
    }

    pub fn grid_options(&self) -> GridOptions {
        GridOptions {
            window_factor: self.window_factor,
            ring_down: self.ring_down,
            dt_factor: self.dt_factor,
        }
    }

    /// Branch used where a single one must be picked (transfer mode).
    pub fn dominant_branch(&self) -> AtomBranch {
        if self.lambda_1.norm_sqr() >= self.lambda_2.norm_sqr() {
            AtomBranch::G1
        } else {
            AtomBranch::G2
        }
    }

    /// Parses a config file body; every key is optional except `mode`.
    pub fn from_config_text(text: &str) -> Result<Self, CliError> {
        let source = Source::parse_text(text)?;
        Self::from_sources(None, &[source])
    }

    /// Serializes every field so that [`RunConfig::from_config_text`] returns
    /// an equal value.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("mode", self.mode.name().into());
        match self.coupling {
            Coupling::G(g) => kv("g", g.to_string()),
            Coupling::Cooperativity(c) => kv("cooperativity", c.to_string()),
        }
        kv("kappa_r", self.kappa_r.to_string());
        kv("kappa_t", self.kappa_t.to_string());
        kv("gamma_1", self.gamma_1.to_string());
        kv("gamma_2", self.gamma_2.to_string());
        kv("lambda_1", format_complex(self.lambda_1));
        kv("lambda_2", format_complex(self.lambda_2));
        kv("mu_a", format_complex(self.mu_a));
        kv("mu_b", format_complex(self.mu_b));
        kv("kappa_tau_p", self.kappa_tau_p.to_string());
        kv("t0", self.t0.to_string());
        match &self.c_values {
            CSpec::List(v) => kv(
                "c_values",
                v.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
            ),
            CSpec::Range { lo, hi, n, spacing } => {
                let sp = match spacing {
                    Spacing::Log => "log",
                    Spacing::Lin => "lin",
                };
                kv("c_range", format!("{lo}:{hi}:{n}{sp}"));
            }
        }
        let d = self.delta_range;
        kv("delta_range", format!("{}:{}:{}", d.lo, d.hi, d.n));
        if let Some(p) = &self.output {
            kv("output", p.display().to_string());
        }
        if let Some(p) = &self.gnuplot {
            kv("gnuplot", p.display().to_string());
        }
        kv("dt_factor", self.dt_factor.to_string());
        kv("window_factor", self.window_factor.to_string());
        if let Some(r) = self.ring_down {
            kv("ring_down", r.to_string());
        }
        kv("cutoff", self.cutoff.to_string());
        s
    }

    /// Merges sources in increasing priority, then validates.
    ///
    /// `mode` may come from the positional argument (highest priority) or
    /// from any source.
    pub fn from_sources(
        positional_mode: Option<&str>,
        sources: &[Source],
    ) -> Result<Self, CliError> {
        let mut merged: BTreeMap<&'static str, String> = BTreeMap::new();
        for src in sources {
            src.check_conflicts()?;
            for group in EXCLUSIVE {
                if group
                    .iter()
                    .flat_map(|alt| alt.iter())
                    .any(|k| src.values.contains_key(k))
                {
                    for k in group.iter().flat_map(|alt| alt.iter()) {
                        merged.remove(k);
                    }
                }
            }
            for (k, v) in &src.values {
                merged.insert(k, v.clone());
            }
        }

        let mode_str = positional_mode
            .map(str::to_owned)
            .or_else(|| merged.get("mode").cloned())
            .ok_or_else(|| {
                CliError::Config(
                    "missing required mode (transfer, simulate, sweep, fock-check)".into(),
                )
            })?;
        let mode = Mode::parse(&mode_str)
            .ok_or_else(|| CliError::Config(format!("mode: unknown mode '{mode_str}'")))?;

        let mut cfg = Self::defaults(mode);
        let get = |k: &str| merged.get(k).map(String::as_str);

        if let Some(v) = get("g") {
            cfg.coupling = Coupling::G(parse_f64("g", v)?);
        }
        if let Some(v) = get("cooperativity") {
            cfg.coupling = Coupling::Cooperativity(parse_f64("cooperativity", v)?);
        }
        if let Some(v) = get("kappa_r") {
            cfg.kappa_r = parse_f64("kappa_r", v)?;
        }
        if let Some(v) = get("kappa_t") {
            cfg.kappa_t = parse_f64("kappa_t", v)?;
        }
        if let Some(v) = get("gamma").or(get("gamma_1")) {
            cfg.gamma_1 = parse_f64("gamma_1", v)?;
        }
        if let Some(v) = get("gamma_2") {
            cfg.gamma_2 = parse_f64("gamma_2", v)?;
        }
        if let Some(v) = get("branch") {
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            (cfg.lambda_1, cfg.lambda_2) = match v {
                "g1" => (one, zero),
                "g2" => (zero, one),
                _ => {
                    return Err(CliError::Config(format!(
                        "branch: expected g1 or g2, got '{v}'"
                    )))
                }
            };
        }
        if get("lambda_1").is_some() || get("lambda_2").is_some() {
            cfg.lambda_1 =
                get("lambda_1").map_or(Ok(Complex64::new(0.0, 0.0)), |v| parse_c("lambda_1", v))?;
            cfg.lambda_2 =
                get("lambda_2").map_or(Ok(Complex64::new(0.0, 0.0)), |v| parse_c("lambda_2", v))?;
        }
        if get("mu_a").is_some() || get("mu_b").is_some() {
            cfg.mu_a = get("mu_a").map_or(Ok(Complex64::new(0.0, 0.0)), |v| parse_c("mu_a", v))?;
            cfg.mu_b = get("mu_b").map_or(Ok(Complex64::new(0.0, 0.0)), |v| parse_c("mu_b", v))?;
        }
        if let Some(v) = get("kappa_tau_p") {
            cfg.kappa_tau_p = parse_f64("kappa_tau_p", v)?;
        }
        if let Some(v) = get("t0") {
            cfg.t0 = parse_f64("t0", v)?;
        }
        if let Some(v) = get("c_values") {
            cfg.c_values = CSpec::List(
                v.split(',')
                    .map(|x| parse_f64("c_values", x.trim()))
                    .collect::<Result<_, _>>()?,
            );
        }
        if let Some(v) = get("c_range") {
            cfg.c_values = parse_c_range(v)?;
        }
        if let Some(v) = get("delta_range") {
            cfg.delta_range = parse_delta_range(v)?;
        }
        if let Some(v) = get("output") {
            cfg.output = Some(PathBuf::from(v));
        }
        if let Some(v) = get("gnuplot") {
            cfg.gnuplot = Some(PathBuf::from(v));
        }
        if let Some(v) = get("dt_factor") {
            cfg.dt_factor = parse_f64("dt_factor", v)?;
        }
        if let Some(v) = get("window_factor") {
            cfg.window_factor = parse_f64("window_factor", v)?;
        }
        if let Some(v) = get("ring_down") {
            cfg.ring_down = Some(parse_f64("ring_down", v)?);
        }
        if let Some(v) = get("cutoff") {
            cfg.cutoff = v.parse().map_err(|_| {
                CliError::Config(format!(
                    "cutoff: expected a non-negative integer, got '{v}'"
                ))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |k: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Config(format!("{k}: must be positive, got {v}")))
            }
        };
        let non_negative = |k: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(CliError::Config(format!(
                    "{k}: must be non-negative, got {v}"
                )))
            }
        };
        match self.coupling {
            Coupling::G(g) => non_negative("g", g)?,
            Coupling::Cooperativity(c) => {
                non_negative("cooperativity", c)?;
                if self.gamma() <= 0.0 {
                    return Err(CliError::Config(
                        "cooperativity: undefined for zero atomic decay (gamma_1 + gamma_2 = 0)"
                            .into(),
                    ));
                }
            }
        }
        positive("kappa_r", self.kappa_r)?;
        positive("kappa_t", self.kappa_t)?;
        non_negative("gamma_1", self.gamma_1)?;
        non_negative("gamma_2", self.gamma_2)?;
        positive("kappa_tau_p", self.kappa_tau_p)?;
        if !self.t0.is_finite() {
            return Err(CliError::Config(format!(
                "t0: must be finite, got {}",
                self.t0
            )));
        }
        positive("dt_factor", self.dt_factor)?;
        positive("window_factor", self.window_factor)?;
        if let Some(r) = self.ring_down {
            non_negative("ring_down", r)?;
        }
        if self.cutoff < 2 {
            return Err(CliError::Config(format!(
                "cutoff: must be at least 2, got {}",
                self.cutoff
            )));
        }

        let tol = 1e-12;
        let lam = self.lambda_1.norm_sqr() + self.lambda_2.norm_sqr();
        if (lam - 1.0).abs() > tol {
            return Err(CliError::Config(format!(
                "lambda_1, lambda_2: atomic state not normalized (|lambda_1|² + |lambda_2|² = {lam})"
            )));
        }
        let mu = self.mu_a.norm_sqr() + self.mu_b.norm_sqr();
        if (mu - 1.0).abs() > tol {
            return Err(CliError::Config(format!(
                "mu_a, mu_b: input not normalized (|mu_a|² + |mu_b|² = {mu})"
            )));
        }

        match &self.c_values {
            CSpec::List(v) => {
                if v.is_empty() {
                    return Err(CliError::Config("c_values: empty list".into()));
                }
                if let Some(c) = v.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
                    return Err(CliError::Config(format!(
                        "c_values: must be positive, got {c}"
                    )));
                }
                if v.windows(2).any(|w| w[1] < w[0]) {
                    return Err(CliError::Config(
                        "c_values: must be sorted ascending".into(),
                    ));
                }
            }
            CSpec::Range { lo, hi, n, .. } => {
                positive("c_range", *lo)?;
                if !(hi.is_finite() && hi >= lo) || *n == 0 {
                    return Err(CliError::Config(format!(
                        "c_range: need 0 < lo ≤ hi and N ≥ 1, got {lo}:{hi}:{n}"
                    )));
                }
            }
        }
        let d = self.delta_range;
        if !(d.lo.is_finite() && d.hi.is_finite() && d.hi >= d.lo) || d.n == 0 {
            return Err(CliError::Config(format!(
                "delta_range: need lo ≤ hi and N ≥ 1, got {}:{}:{}",
                d.lo, d.hi, d.n
            )));
        }
        if self.gnuplot.is_some() && self.output.is_none() {
            return Err(CliError::Config("gnuplot: requires an output path".into()));
        }
        if self.mode == Mode::Sweep && self.lambda_2.norm_sqr() > 0.0 {
            return Err(CliError::Config(
                "lambda_2: sweep mode needs the atom in g1 (lambda_2 = 0)".into(),
            ));
        }
        Ok(())
    }
}

/// All recognised keys.
pub const KEYS: &[&str] = &[
    "mode",
    "g",
    "cooperativity",
    "kappa_r",
    "kappa_t",
    "gamma",
    "gamma_1",
    "gamma_2",
    "branch",
    "lambda_1",
    "lambda_2",
    "mu_a",
    "mu_b",
    "kappa_tau_p",
    "t0",
    "c_values",
    "c_range",
    "delta_range",
    "output",
    "gnuplot",
    "dt_factor",
    "window_factor",
    "ring_down",
    "cutoff",
];

/// Alternative spellings of the same setting. A source may use at most one
/// alternative per group; a later source replaces the whole group.
const EXCLUSIVE: &[&[&[&str]]] = &[
    &[&["g"], &["cooperativity"]],
    &[&["gamma"], &["gamma_1"]],
    &[&["branch"], &["lambda_1", "lambda_2"]],
    &[&["mu_a", "mu_b"]],
    &[&["c_values"], &["c_range"]],
];

/// One layer of settings (a config file or the command line).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Source {
    pub name: String,
    pub values: BTreeMap<&'static str, String>,
}

impl Source {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), CliError> {
        let key = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| CliError::Config(format!("{}: unknown key '{key}'", self.name)))?;
        if self.values.insert(key, value.into()).is_some() {
            return Err(CliError::Config(format!(
                "{}: key '{key}' given twice",
                self.name
            )));
        }
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<Self, CliError> {
        Self::parse_named("config", text)
    }

    pub fn parse_named(name: &str, text: &str) -> Result<Self, CliError> {
        let mut src = Self::new(name);
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "{name}:{}: expected 'key = value', got '{line}'",
                    no + 1
                ))
            })?;
            src.set(k.trim(), v.trim())?;
        }
        Ok(src)
    }

    fn check_conflicts(&self) -> Result<(), CliError> {
        for group in EXCLUSIVE {
            let used: Vec<_> = group
                .iter()
                .filter(|alt| alt.iter().any(|k| self.values.contains_key(k)))
                .collect();
            if used.len() > 1 {
                let names: Vec<String> = used.iter().map(|a| a.join("/")).collect();
                return Err(CliError::Config(format!(
                    "{}: conflicting settings {}",
                    self.name,
                    names.join(" and ")
                )));
            }
        }
        Ok(())
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.parse::<f64>()
        .map_err(|_| CliError::Config(format!("{key}: expected a number, got '{v}'")))
}

fn parse_c(key: &str, v: &str) -> Result<Complex64, CliError> {
    parse_complex(v).ok_or_else(|| {
        CliError::Config(format!(
            "{key}: expected a complex number like 0.6 or 0.6-0.8i, got '{v}'"
        ))
    })
}

fn parse_c_range(v: &str) -> Result<CSpec, CliError> {
    let bad = || CliError::Config(format!("c_range: expected lo:hi:N(log|lin), got '{v}'"));
    let parts: Vec<&str> = v.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let (digits, spacing) = if let Some(d) = n.strip_suffix("log") {
        (d, Spacing::Log)
    } else if let Some(d) = n.strip_suffix("lin") {
        (d, Spacing::Lin)
    } else {
        return Err(bad());
    };
    Ok(CSpec::Range {
        lo: lo.trim().parse().map_err(|_| bad())?,
        hi: hi.trim().parse().map_err(|_| bad())?,
        n: digits.trim().parse().map_err(|_| bad())?,
        spacing,
    })
}

fn parse_delta_range(v: &str) -> Result<DeltaRange, CliError> {
    let bad = || CliError::Config(format!("delta_range: expected lo:hi:N, got '{v}'"));
    let parts: Vec<&str> = v.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    Ok(DeltaRange {
        lo: lo.trim().parse().map_err(|_| bad())?,
        hi: hi.trim().parse().map_err(|_| bad())?,
        n: n.trim().parse().map_err(|_| bad())?,
    })
}
