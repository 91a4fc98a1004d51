//! The four run modes. Each produces its CSV text in memory; [`run`] then
//! writes files and summaries.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use darkbright::fock::{
    build_collective_state, coherent_pair_coefficients, coupling_annihilates_dark,
    single_photon_split_oracle, CollectiveKind, FockSpace, PairPhase,
};
use darkbright::{
    coefficients_at, cooperativity, integrate, norm_budget, p_target_exact, p_target_hp,
    sweep_cooperativity, w_state_port_statistics, Complex64, TimeGrid,
};

use crate::config::{Mode, RunConfig};
use crate::csv::{fmt_g, Table};
use crate::error::CliError;

/// Residual ceiling for the Fock-space checks.
const FOCK_TOL: f64 = 1e-12;

pub const SWEEP_HEADER: &[&str] = &["C", "p_hp", "p_exact", "abs_diff", "atomic_loss"];
pub const TRANSFER_HEADER: &[&str] = &[
    "delta",
    "re_x_plus",
    "im_x_plus",
    "re_x_minus",
    "im_x_minus",
    "re_y_plus",
    "im_y_plus",
    "re_y_minus",
    "im_y_minus",
];
pub const SIMULATE_HEADER: &[&str] = &[
    "t",
    "abs_c_e",
    "abs_out_ar",
    "abs_out_br",
    "abs_out_at",
    "abs_out_bt",
];
pub const BUDGET_HEADER: &[&str] = &["reflected", "transmitted", "atomic_loss", "residual"];
pub const FOCK_HEADER: &[&str] = &["check", "residual"];

/// Everything a run produces before anything is written.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub csv: String,
    /// Norm-budget companion table (simulate mode).
    pub budget: Option<String>,
    /// Human-readable lines.
    pub summary: Vec<String>,
    /// Set when a check failed after the data was produced.
    pub failure: Option<String>,
}

pub fn compute(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    match cfg.mode {
        Mode::Transfer => transfer(cfg),
        Mode::Simulate => simulate(cfg),
        Mode::Sweep => sweep(cfg),
        Mode::FockCheck => fock_check(cfg),
    }
}

/// Runs `cfg`, writing the CSV to `cfg.output` (or `stdout`) and summary
/// lines to `stdout` (or `stderr` when the CSV takes `stdout`).
pub fn run(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let art = compute(cfg)?;
    let summary_to: &mut dyn Write = match &cfg.output {
        Some(path) => {
            write_file(path, &art.csv)?;
            if let Some(budget) = &art.budget {
                write_file(&budget_path(path), budget)?;
            }
            write_file(&meta_path(path), &metadata(cfg))?;
            if let Some(script) = &cfg.gnuplot {
                write_file(script, &gnuplot_script(cfg.mode, path))?;
            }
            stdout
        }
        None => {
            stdout
                .write_all(art.csv.as_bytes())
                .map_err(CliError::io("stdout"))?;
            stderr
        }
    };
    for line in &art.summary {
        writeln!(summary_to, "{line}").map_err(CliError::io("summary stream"))?;
    }
    match art.failure {
        Some(msg) => Err(CliError::Check(msg)),
        None => Ok(()),
    }
}

/// `<dir>/<stem>_budget.csv` next to the main output.
pub fn budget_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map_or("output".into(), |s| s.to_string_lossy().into_owned());
    output.with_file_name(format!("{stem}_budget.csv"))
}

/// `<output>.meta`, the provenance sidecar.
pub fn meta_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".meta");
    output.with_file_name(name)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(CliError::io(path.display().to_string()))
}

fn metadata(cfg: &RunConfig) -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    format!(
        "# darkbright {}\n# generated_unix = {secs}\n{}",
        env!("CARGO_PKG_VERSION"),
        cfg.to_config_text()
    )
}

fn transfer(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let params = cfg.params().map_err(CliError::numeric("parameters"))?;
    let branch = cfg.dominant_branch();
    let mut table = Table::new(TRANSFER_HEADER);
    let mut worst: f64 = 0.0;
    for delta in cfg.delta_range.values() {
        let x = coefficients_at(&params, branch, delta)
            .map_err(CliError::numeric(format!("delta = {delta}")))?;
        worst = worst.max((x.dark_flux() - 1.0).abs());
        table.row(&[
            delta,
            x.x_plus.re,
            x.x_plus.im,
            x.x_minus.re,
            x.x_minus.im,
            x.y_plus.re,
            x.y_plus.im,
            x.y_minus.re,
            x.y_minus.im,
        ]);
    }
    let res = coefficients_at(&params, branch, 0.0).map_err(CliError::numeric("delta = 0"))?;
    let summary = vec![
        format!(
            "transfer branch={} points={} resonant x_plus={} y_plus={} x_minus={} y_minus={}",
            branch_name(branch),
            cfg.delta_range.n,
            fmt_c(res.x_plus),
            fmt_c(res.y_plus),
            fmt_c(res.x_minus),
            fmt_c(res.y_minus),
        ),
        format!("transfer max_dark_flux_error={}", fmt_g(worst)),
    ];
    Ok(Artifacts {
        csv: table.into_string(),
        summary,
        ..Default::default()
    })
}

fn simulate(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let params = cfg.params().map_err(CliError::numeric("parameters"))?;
    let input = cfg.input().map_err(CliError::numeric("input"))?;
    let pulse = cfg.pulse().map_err(CliError::numeric("pulse"))?;
    let grid = TimeGrid::for_pulse_with(&params, &pulse, &cfg.grid_options())
        .map_err(CliError::numeric("time grid"))?;
    let traj =
        integrate(&params, &input, &pulse, &grid).map_err(CliError::numeric("integration"))?;
    let budget = norm_budget(&traj, &params).map_err(CliError::numeric("norm budget"))?;

    let mut table = Table::new(SIMULATE_HEADER);
    let w = &traj.branches[0];
    for (i, t) in grid.times().enumerate() {
        table.row(&[
            t,
            traj.c_e[i].norm(),
            w.out_a_r[i].norm(),
            w.out_b_r[i].norm(),
            w.out_a_t[i].norm(),
            w.out_b_t[i].norm(),
        ]);
    }
    let mut budget_table = Table::new(BUDGET_HEADER);
    budget_table.row(&[
        budget.reflected,
        budget.transmitted,
        budget.atomic_loss,
        budget.residual,
    ]);

    let mut head = format!(
        "simulate g={} steps={} dt={}",
        fmt_g(cfg.g()),
        grid.steps(),
        fmt_g(grid.dt())
    );
    if let Ok(c) = cooperativity(&params) {
        let _ = write!(head, " C={}", fmt_g(c));
        if (input.lambda_1.norm_sqr() - 1.0).abs() < 1e-12 {
            let p_exact = p_target_exact(&traj, input.mu_plus(), input.mu_minus())
                .map_err(CliError::numeric("target probability"))?;
            let p_hp = p_target_hp(input.mu_plus(), input.mu_minus(), c);
            let _ = write!(head, " p_hp={} p_exact={}", fmt_g(p_hp), fmt_g(p_exact));
        }
    }
    let ports = w_state_port_statistics(&traj);
    let summary = vec![
        head,
        format!(
            "ports n_ar={} n_br={} n_at={} n_bt={}",
            fmt_g(ports.n_ar),
            fmt_g(ports.n_br),
            fmt_g(ports.n_at),
            fmt_g(ports.n_bt)
        ),
        format!(
            "budget reflected={} transmitted={} atomic_loss={} residual={} step_halving={}",
            fmt_g(budget.reflected),
            fmt_g(budget.transmitted),
            fmt_g(budget.atomic_loss),
            fmt_g(budget.residual),
            fmt_g(traj.step_halving_error)
        ),
    ];
    Ok(Artifacts {
        csv: table.into_string(),
        budget: Some(budget_table.into_string()),
        summary,
        failure: None,
    })
}

fn sweep(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let template = cfg.params().map_err(CliError::numeric("parameters"))?;
    let pulse = cfg.pulse().map_err(CliError::numeric("pulse"))?;
    let cs = cfg.c_values.values();
    let rows = sweep_cooperativity(
        &template,
        cfg.mu_a,
        cfg.mu_b,
        &cs,
        &pulse,
        &cfg.grid_options(),
    )
    .map_err(CliError::numeric("sweep"))?;
    let mut table = Table::new(SWEEP_HEADER);
    let mut summary = Vec::with_capacity(rows.len());
    for r in &rows {
        table.row(&[r.c, r.p_hp, r.p_exact, r.abs_diff, r.atomic_loss]);
        summary.push(format!(
            "C={} p_hp={} p_exact={} abs_diff={} atomic_loss={}",
            fmt_g(r.c),
            fmt_g(r.p_hp),
            fmt_g(r.p_exact),
            fmt_g(r.abs_diff),
            fmt_g(r.atomic_loss)
        ));
    }
    Ok(Artifacts {
        csv: table.into_string(),
        summary,
        ..Default::default()
    })
}

fn fock_check(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let space = FockSpace::new(cfg.cutoff).map_err(CliError::numeric("Fock space"))?;
    let mut checks: Vec<(String, f64)> = Vec::new();

    for n in 1..=cfg.cutoff.saturating_sub(1).min(5) {
        let r = coupling_annihilates_dark(&space, n)
            .map_err(CliError::numeric(format!("dark N = {n}")))?;
        checks.push((format!("dark_coupling_N{n}"), r));
    }

    let n_max = cfg.cutoff / 2;
    let mut worst: f64 = 0.0;
    let kinds = [CollectiveKind::Bright, CollectiveKind::Dark];
    let mut states = Vec::new();
    for kind in kinds {
        for n in 0..=n_max {
            states.push((
                kind,
                n,
                build_collective_state(&space, kind, n)
                    .map_err(CliError::numeric("collective state"))?,
            ));
        }
    }
    for (k1, n1, s1) in &states {
        for (k2, n2, s2) in &states {
            let same = n1 == n2 && (k1 == k2 || *n1 == 0);
            let expect = if same { 1.0 } else { 0.0 };
            worst = worst.max((s1.inner(s2) - Complex64::new(expect, 0.0)).norm());
        }
    }
    checks.push(("orthonormality".into(), worst));

    let alpha = Complex64::new(0.5, 0.0);
    let pair = coherent_pair_coefficients(alpha, PairPhase::Opposite, n_max, &space)
        .map_err(CliError::numeric("coherent pair"))?;
    let bright_leak = pair
        .opposite
        .iter()
        .skip(1)
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    checks.push(("opposite_pair_bright_projection".into(), bright_leak));

    let split =
        single_photon_split_oracle(&space).map_err(CliError::numeric("single-photon split"))?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let split_err = [
        split.a_bright - h,
        split.a_dark - h,
        split.b_bright - h,
        split.b_dark + h,
        split.mutual,
    ]
    .iter()
    .map(|z| z.norm())
    .fold(0.0, f64::max);
    checks.push(("single_photon_split".into(), split_err));

    let mut table = Table::new(FOCK_HEADER);
    let mut summary = Vec::new();
    let mut failed = Vec::new();
    for (name, r) in &checks {
        table.text_row(name, &[*r]);
        let ok = *r < FOCK_TOL;
        summary.push(format!(
            "{} {name} residual={}",
            if ok { "ok  " } else { "FAIL" },
            fmt_g(*r)
        ));
        if !ok {
            failed.push(name.clone());
        }
    }
    let failure = (!failed.is_empty())
        .then(|| format!("Fock checks above {FOCK_TOL:e}: {}", failed.join(", ")));
    Ok(Artifacts {
        csv: table.into_string(),
        summary,
        failure,
        ..Default::default()
    })
}

fn gnuplot_script(mode: Mode, data: &Path) -> String {
    let file = data.display();
    let head =
        format!("set datafile separator ','\nset key autotitle columnhead\nfile = '{file}'\n");
    let body = match mode {
        Mode::Sweep => "set logscale x\nset xlabel 'C'\nset ylabel 'probability'\n\
             plot file using 1:2 with lines title 'p_hp', file using 1:3 with points pt 7 title 'p_exact'\n"
            .to_string(),
        Mode::Transfer => "set xlabel 'delta'\nset ylabel 'power'\n\
             plot file using 1:($2**2+$3**2) with lines title '|x+|^2', \
             file using 1:($6**2+$7**2) with lines title '|y+|^2', \
             file using 1:($4**2+$5**2) with lines title '|x-|^2', \
             file using 1:($8**2+$9**2) with lines title '|y-|^2'\n"
            .to_string(),
        Mode::Simulate => "set xlabel 't'\nset ylabel 'amplitude'\n\
             plot for [c=2:6] file using 1:c with lines\n"
            .to_string(),
        Mode::FockCheck => "set logscale y\nset style fill solid\nset ylabel 'residual'\n\
             plot file using 0:($2+1e-18):xtic(1) with boxes notitle\n"
            .to_string(),
    };
    head + &body
}

fn branch_name(b: darkbright::AtomBranch) -> &'static str {
    match b {
        darkbright::AtomBranch::G1 => "g1",
        darkbright::AtomBranch::G2 => "g2",
    }
}

fn fmt_c(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", fmt_g(z.re), sign, fmt_g(z.im.abs()))
}
