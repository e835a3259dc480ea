//! Experiment orchestration: synthesize a boundary output, estimate over a
//! window plan, reconstruct initial states, and write the run to disk.
//!
//! A run is fully determined by its [`ExperimentConfig`], so repeating one
//! reproduces every artifact byte for byte — parallelism is confined to
//! reductions with a fixed order. Artifacts per run directory:
//!
//! * `sweep.csv`    — one row per estimation window: `T1,q_hat,abs_err,f_bound,epsilon`
//! * `table.csv`    — noise study (when configured): median estimates over seeds
//! * `profile_T1=<v>.csv` — reconstructed spatial profiles
//! * `report.json`  — config echo plus everything measured, at full precision

use crate::error::{Error, Result};
use crate::identify::{
    epsilon_snr, error_bound_f, estimate_q, reconstruct_initial, SpatialProfile,
};
use crate::quad::simpson_real;
use crate::signal::{
    DisturbanceSpec, DisturbedSignal, GridSignal, ModalSignal, Signal, GRID_POINTS_PER_WINDOW,
};
use crate::spectral::{IndexKind, IndexWindow, SpectralSystem};
use crate::systems::{self, InitialData, TrigTerm, WaveBranch};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

fn default_n_syn() -> usize {
    5000
}
fn default_n_rec() -> usize {
    1000
}
fn default_seeds_per_noise() -> usize {
    20
}
fn default_profile_points() -> usize {
    crate::identify::DEFAULT_PROFILE_POINTS
}
fn default_disturbance() -> DisturbanceSpec {
    DisturbanceSpec::None
}

/// Which signal representation backs the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Closed-form mode sums; quadrature-free window norms.
    #[default]
    Exact,
    /// Uniform sampling at `period/2048` and Simpson quadrature, as with
    /// measured data. Window endpoints snap to the sample grid.
    Grid,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Engine::Exact),
            "grid" => Ok(Engine::Grid),
            other => Err(Error::InvalidInput(format!(
                "unknown engine '{other}' (expected 'exact' or 'grid')"
            ))),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Exact => "exact",
            Engine::Grid => "grid",
        })
    }
}

/// Estimation windows to evaluate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "plan", rename_all = "snake_case")]
pub enum WindowPlan {
    Fixed {
        t1: f64,
        t2: f64,
    },
    /// One window `(t1, t1 + delta)` per entry of `t1_list`.
    Sweep {
        t1_list: Vec<f64>,
        delta: f64,
    },
}

impl WindowPlan {
    pub fn windows(&self) -> Vec<(f64, f64)> {
        match self {
            WindowPlan::Fixed { t1, t2 } => vec![(*t1, *t2)],
            WindowPlan::Sweep { t1_list, delta } => {
                t1_list.iter().map(|&t1| (t1, t1 + delta)).collect()
            }
        }
    }
}

/// Everything one experiment run depends on.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    /// Family id: `wave`, `schrodinger`, or `strings`.
    pub system: String,
    pub q: f64,
    /// Wave prior-set branch when `q`'s sign/magnitude alone is ambiguous.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<WaveBranch>,
    pub initial_data: InitialData,
    #[serde(default = "default_disturbance")]
    pub disturbance: DisturbanceSpec,
    /// Relative sample-noise amplitudes for the noise study; `0` means a
    /// clean sampled record.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub noise_levels: Vec<f64>,
    /// Synthesis modes (per side for symmetric index sets).
    #[serde(default = "default_n_syn")]
    pub n_syn: usize,
    /// Reconstruction modes.
    #[serde(default = "default_n_rec")]
    pub n_rec: usize,
    pub window: WindowPlan,
    /// Start times of reconstruction windows `(t1, t1 + period)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub recon_t1_list: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_seeds_per_noise")]
    pub seeds_per_noise: usize,
    /// Cap on the explicit pair sum for non-arithmetic frequency sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_cap: Option<usize>,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default = "default_profile_points")]
    pub profile_points: usize,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Latest time any window in the plan touches.
    pub fn horizon(&self, period: f64) -> f64 {
        let plan_end = self
            .window
            .windows()
            .iter()
            .map(|&(_, t2)| t2)
            .fold(0.0_f64, f64::max);
        let recon_end = self
            .recon_t1_list
            .iter()
            .map(|&t1| t1 + period)
            .fold(0.0_f64, f64::max);
        plan_end.max(recon_end)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub t1: f64,
    pub t2: f64,
    pub q_hat: Option<f64>,
    pub f_hat: Option<f64>,
    pub abs_err: Option<f64>,
    pub f_abs_err: Option<f64>,
    /// A posteriori bound on `|f̂ − f|`, when a disturbance bound exists and
    /// the window is strong enough to support one.
    pub f_bound: Option<f64>,
    pub epsilon: Option<f64>,
    pub norm_window: Option<f64>,
    pub norm_shifted: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoiseRow {
    pub level: f64,
    pub seeds: usize,
    /// Median `q̂` across seeds.
    pub q_hat: f64,
    /// Median `|q̂ − q|` across seeds.
    pub q_err: f64,
    /// Reconstruction errors for the median-error seed.
    pub u0_err: Option<f64>,
    pub u1_err: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconRow {
    pub t1: f64,
    pub q_used: f64,
    pub u0_err: Option<f64>,
    pub u1_err: Option<f64>,
    /// `√(‖û₀′−u₀′‖² + ‖û₁−u₁‖²)` where the family supports it.
    pub energy_err: Option<f64>,
    pub profile_csv: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunEnvironment {
    pub package_version: String,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub engine: String,
    pub growth_true: f64,
    /// `sup|d|` estimate over the horizon, for deterministic disturbances.
    pub disturbance_bound: Option<f64>,
    pub horizon: f64,
    /// `q̂` from the latest window that produced one; reconstructions use it.
    pub q_hat_reference: Option<f64>,
    pub sweep: Vec<SweepRow>,
    pub noise_table: Vec<NoiseRow>,
    pub reconstructions: Vec<ReconRow>,
    pub warnings: Vec<String>,
    pub environment: RunEnvironment,
}

struct Runner<'a> {
    config: &'a ExperimentConfig,
    system: Arc<dyn SpectralSystem>,
    base: ModalSignal,
    signal: Signal,
    horizon: f64,
    m_bound: Option<f64>,
    dt: f64,
    warnings: Vec<String>,
}

fn synthesis_window(system: &dyn SpectralSystem, modes: usize) -> IndexWindow {
    match system.index_kind() {
        IndexKind::Symmetric => IndexWindow::symmetric(modes as i64),
        IndexKind::Natural => IndexWindow::natural(modes as i64),
    }
}

impl<'a> Runner<'a> {
    fn new(config: &'a ExperimentConfig) -> Result<Self> {
        if config.n_syn == 0 || config.n_rec == 0 {
            return Err(Error::InvalidInput(
                "n_syn and n_rec must be at least 1".into(),
            ));
        }
        if config.seeds_per_noise == 0 {
            return Err(Error::InvalidInput(
                "seeds_per_noise must be at least 1".into(),
            ));
        }
        if config
            .noise_levels
            .iter()
            .any(|&l| !(l >= 0.0) || !l.is_finite())
        {
            return Err(Error::InvalidInput(
                "noise levels must be finite and ≥ 0".into(),
            ));
        }
        if !config.noise_levels.is_empty() && !config.disturbance.is_deterministic() {
            return Err(Error::InvalidInput(
                "noise_levels already add sample noise; the disturbance must be deterministic"
                    .into(),
            ));
        }
        let mut warnings = Vec::new();
        if config.n_rec > config.n_syn {
            warnings.push(format!(
                "n_rec = {} exceeds n_syn = {}; the surplus modes reconstruct noise-floor zeros",
                config.n_rec, config.n_syn
            ));
        }
        let system: Arc<dyn SpectralSystem> =
            Arc::from(systems::build(&config.system, config.q, config.branch)?);
        let state = system.project(
            &config.initial_data,
            synthesis_window(system.as_ref(), config.n_syn),
        )?;
        let mut base = ModalSignal::new(system.clone(), state);
        if let Some(cap) = config.pair_cap {
            base = base.with_pair_cap(cap);
        }
        let period = system.period();
        let horizon = config.horizon(period);
        let m_bound = match &config.disturbance {
            DisturbanceSpec::None => None,
            spec => spec.estimate_bound(horizon),
        };
        let dt = period / GRID_POINTS_PER_WINDOW as f64;
        let signal = match config.engine {
            Engine::Exact => match &config.disturbance {
                DisturbanceSpec::None => Signal::Modal(base.clone()),
                spec if spec.is_deterministic() => {
                    Signal::Disturbed(DisturbedSignal::new(base.clone(), spec.clone())?)
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "multiplicative noise needs the grid engine (or use noise_levels)".into(),
                    ))
                }
            },
            Engine::Grid => {
                let t_end = (horizon / dt).ceil() * dt;
                let grid = base
                    .sample(0.0, t_end, dt)?
                    .with_disturbance(&config.disturbance)?;
                Signal::Grid(grid)
            }
        };
        Ok(Runner {
            config,
            system,
            base,
            signal,
            horizon,
            m_bound,
            dt,
            warnings,
        })
    }

    /// Grid runs can only integrate between sample nodes.
    fn snap(&self, t: f64) -> f64 {
        match self.config.engine {
            Engine::Exact => t,
            Engine::Grid => (t / self.dt).round() * self.dt,
        }
    }

    fn sweep_rows(&mut self) -> Vec<SweepRow> {
        let q_true = self.config.q;
        let f_true = self.system.growth();
        let period = self.system.period();
        let mut rows = Vec::new();
        for (t1_raw, t2_raw) in self.config.window.windows() {
            let (t1, t2) = (self.snap(t1_raw), self.snap(t2_raw));
            let row = match estimate_q(&self.signal, self.system.as_ref(), t1, t2) {
                Ok(r) => {
                    for w in &r.warnings {
                        self.warnings.push(format!("T1={t1}: {w}"));
                    }
                    let (f_bound, epsilon) = match self.m_bound {
                        Some(m) if m > 0.0 => {
                            let bound = error_bound_f(r.norm_shifted, m, t2 - t1, period);
                            if let Err(e) = &bound {
                                self.warnings.push(format!("T1={t1}: {e}"));
                            }
                            (
                                bound.ok(),
                                epsilon_snr(r.norm_shifted, m, t2 - t1)
                                    .ok()
                                    .map(|s| s.epsilon),
                            )
                        }
                        _ => (None, None),
                    };
                    SweepRow {
                        t1,
                        t2,
                        q_hat: Some(r.q_hat),
                        f_hat: Some(r.f_hat),
                        abs_err: Some((r.q_hat - q_true).abs()),
                        f_abs_err: Some((r.f_hat - f_true).abs()),
                        f_bound,
                        epsilon,
                        norm_window: Some(r.norm_window),
                        norm_shifted: Some(r.norm_shifted),
                        error: None,
                    }
                }
                Err(e) => {
                    self.warnings
                        .push(format!("estimation at T1={t1} failed: {e}"));
                    SweepRow {
                        t1,
                        t2,
                        q_hat: None,
                        f_hat: None,
                        abs_err: None,
                        f_abs_err: None,
                        f_bound: None,
                        epsilon: None,
                        norm_window: None,
                        norm_shifted: None,
                        error: Some(e.to_string()),
                    }
                }
            };
            rows.push(row);
        }
        rows
    }

    fn noise_table(&mut self) -> Result<Vec<NoiseRow>> {
        if self.config.noise_levels.is_empty() {
            return Ok(Vec::new());
        }
        let (t1_raw, t2_raw) = self.config.window.windows()[0];
        let period = self.system.period();
        let (t1, t2) = (
            (t1_raw / self.dt).round() * self.dt,
            (t2_raw / self.dt).round() * self.dt,
        );
        let recon_t1 =
            (self.config.recon_t1_list.first().copied().unwrap_or(0.0) / self.dt).round() * self.dt;
        let t_end = ((t2.max(recon_t1 + period)) / self.dt).ceil() * self.dt;
        let clean = self
            .base
            .sample(0.0, t_end, self.dt)?
            .with_disturbance(&self.config.disturbance)?;

        let mut rows = Vec::new();
        for &level in &self.config.noise_levels {
            let row = if level == 0.0 {
                self.noise_row_for(&clean, level, 1, t1, t2, recon_t1)?
            } else {
                self.noisy_row(&clean, level, t1, t2, recon_t1)?
            };
            match row {
                Some(r) => rows.push(r),
                None => self
                    .warnings
                    .push(format!("noise level {level}: no seed produced an estimate")),
            }
        }
        Ok(rows)
    }

    /// Single-record row (clean data): estimate and reconstruct from `grid`.
    fn noise_row_for(
        &mut self,
        grid: &GridSignal,
        level: f64,
        seeds: usize,
        t1: f64,
        t2: f64,
        recon_t1: f64,
    ) -> Result<Option<NoiseRow>> {
        let signal = Signal::Grid(grid.clone());
        let report = match estimate_q(&signal, self.system.as_ref(), t1, t2) {
            Ok(r) => r,
            Err(e) => {
                self.warnings.push(format!("noise level {level}: {e}"));
                return Ok(None);
            }
        };
        let (u0_err, u1_err) = self.grid_recon_errors(&signal, report.q_hat, recon_t1);
        Ok(Some(NoiseRow {
            level,
            seeds,
            q_hat: report.q_hat,
            q_err: (report.q_hat - self.config.q).abs(),
            u0_err,
            u1_err,
        }))
    }

    /// Median-of-seeds row: one noisy copy of `clean` per seed.
    fn noisy_row(
        &mut self,
        clean: &GridSignal,
        level: f64,
        t1: f64,
        t2: f64,
        recon_t1: f64,
    ) -> Result<Option<NoiseRow>> {
        let mut estimates: Vec<(f64, f64, u64)> = Vec::new(); // (|q̂−q|, q̂, seed)
        for i in 0..self.config.seeds_per_noise {
            let seed = self.config.seed.wrapping_add(i as u64);
            let noisy =
                clean.with_disturbance(&DisturbanceSpec::MultiplicativeNoise { level, seed })?;
            match estimate_q(&Signal::Grid(noisy), self.system.as_ref(), t1, t2) {
                Ok(r) => estimates.push(((r.q_hat - self.config.q).abs(), r.q_hat, seed)),
                Err(e) => self
                    .warnings
                    .push(format!("noise level {level}, seed {seed}: {e}")),
            }
        }
        if estimates.is_empty() {
            return Ok(None);
        }
        let q_hat = median(estimates.iter().map(|e| e.1).collect());
        let q_err = median(estimates.iter().map(|e| e.0).collect());
        // Reconstruct from the seed whose error is the upper median.
        estimates.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (_, q_med, seed_med) = estimates[estimates.len() / 2];
        let noisy = clean.with_disturbance(&DisturbanceSpec::MultiplicativeNoise {
            level,
            seed: seed_med,
        })?;
        let (u0_err, u1_err) = self.grid_recon_errors(&Signal::Grid(noisy), q_med, recon_t1);
        Ok(Some(NoiseRow {
            level,
            seeds: estimates.len(),
            q_hat,
            q_err,
            u0_err,
            u1_err,
        }))
    }

    fn grid_recon_errors(
        &mut self,
        signal: &Signal,
        q_hat: f64,
        recon_t1: f64,
    ) -> (Option<f64>, Option<f64>) {
        match reconstruct_initial(
            signal,
            self.system.as_ref(),
            q_hat,
            recon_t1,
            self.config.n_rec,
            self.config.profile_points,
        ) {
            Ok(rec) => {
                let errs = profile_l2_errors(&rec.profile, &self.config.initial_data);
                (Some(errs.u0), errs.u1)
            }
            Err(e) => {
                self.warnings
                    .push(format!("reconstruction at T1={recon_t1} failed: {e}"));
                (None, None)
            }
        }
    }

    fn reconstructions(&mut self, q_used: Option<f64>, out_dir: &Path) -> Result<Vec<ReconRow>> {
        if self.config.recon_t1_list.is_empty() {
            return Ok(Vec::new());
        }
        let Some(q_used) = q_used else {
            self.warnings
                .push("no window produced an estimate; skipping reconstructions".into());
            return Ok(Vec::new());
        };
        let mut rows = Vec::new();
        for &t1_raw in &self.config.recon_t1_list {
            let t1 = self.snap(t1_raw);
            match reconstruct_initial(
                &self.signal,
                self.system.as_ref(),
                q_used,
                t1,
                self.config.n_rec,
                self.config.profile_points,
            ) {
                Ok(rec) => {
                    let errs = profile_l2_errors(&rec.profile, &self.config.initial_data);
                    let energy = state_energy_error(&rec.profile, &self.config.initial_data).ok();
                    let name = format!("profile_T1={t1}.csv");
                    std::fs::write(out_dir.join(&name), rec.profile.to_csv())?;
                    rows.push(ReconRow {
                        t1,
                        q_used,
                        u0_err: Some(errs.u0),
                        u1_err: errs.u1,
                        energy_err: energy,
                        profile_csv: name,
                        error: None,
                    });
                }
                Err(e) => {
                    self.warnings
                        .push(format!("reconstruction at T1={t1} failed: {e}"));
                    rows.push(ReconRow {
                        t1,
                        q_used,
                        u0_err: None,
                        u1_err: None,
                        energy_err: None,
                        profile_csv: String::new(),
                        error: Some(e.to_string()),
                    });
                }
            }
        }
        Ok(rows)
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Runs one experiment and writes its artifacts into `out_dir`.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<ExperimentReport> {
    std::fs::create_dir_all(out_dir)?;
    let mut runner = Runner::new(config)?;
    let sweep = runner.sweep_rows();
    let reference = sweep
        .iter()
        .filter_map(|r| r.q_hat.map(|q| (r.t1, q)))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    let noise_table = runner.noise_table()?;
    let reconstructions = runner.reconstructions(reference.map(|(_, q)| q), out_dir)?;

    let report = ExperimentReport {
        config: config.clone(),
        engine: config.engine.to_string(),
        growth_true: runner.system.growth(),
        disturbance_bound: runner.m_bound,
        horizon: runner.horizon,
        q_hat_reference: reference.map(|(_, q)| q),
        sweep,
        noise_table,
        reconstructions,
        warnings: runner.warnings,
        environment: RunEnvironment {
            package_version: env!("CARGO_PKG_VERSION").into(),
            threads: rayon::current_num_threads(),
        },
    };
    write_sweep_csv(&report.sweep, &out_dir.join("sweep.csv"))?;
    if !report.noise_table.is_empty() {
        write_table_csv(&report.noise_table, &out_dir.join("table.csv"))?;
    }
    std::fs::write(
        out_dir.join("report.json"),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;
    Ok(report)
}

/// Synthesizes the configured output on a uniform grid, disturbance and all;
/// what `simulate` writes to CSV.
pub fn synthesize_grid(
    config: &ExperimentConfig,
    t_end: Option<f64>,
    dt: Option<f64>,
) -> Result<GridSignal> {
    let system: Arc<dyn SpectralSystem> =
        Arc::from(systems::build(&config.system, config.q, config.branch)?);
    let state = system.project(
        &config.initial_data,
        synthesis_window(system.as_ref(), config.n_syn),
    )?;
    let mut base = ModalSignal::new(system.clone(), state);
    if let Some(cap) = config.pair_cap {
        base = base.with_pair_cap(cap);
    }
    let period = system.period();
    let dt = dt.unwrap_or(period / GRID_POINTS_PER_WINDOW as f64);
    let t_end = t_end.unwrap_or_else(|| config.horizon(period)).max(dt);
    let t_end = (t_end / dt).ceil() * dt;
    base.sample(0.0, t_end, dt)?
        .with_disturbance(&config.disturbance)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.16e}"))
}

fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut out = String::from("T1,q_hat,abs_err,f_bound,epsilon\n");
    for r in rows {
        writeln!(
            out,
            "{:.16e},{},{},{},{}",
            r.t1,
            fmt_opt(r.q_hat),
            fmt_opt(r.abs_err),
            fmt_opt(r.f_bound),
            fmt_opt(r.epsilon)
        )
        .expect("write to string");
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn write_table_csv(rows: &[NoiseRow], path: &Path) -> Result<()> {
    let mut out = String::from("label,q_hat,q_err,u0_err,u1_err\n");
    for r in rows {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{},{}",
            r.level,
            r.q_hat,
            r.q_err,
            fmt_opt(r.u0_err),
            fmt_opt(r.u1_err)
        )
        .expect("write to string");
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Absolute L² errors of a reconstructed profile against reference data, by
/// Simpson on the profile's own spatial grid.
pub struct ProfileErrors {
    pub u0: f64,
    pub u1: Option<f64>,
}

pub fn profile_l2_errors(profile: &SpatialProfile, truth: &InitialData) -> ProfileErrors {
    let n = profile.x.len();
    let h = (profile.x[n - 1] - profile.x[0]) / (n - 1) as f64;
    let d0: Vec<f64> = profile
        .x
        .iter()
        .zip(&profile.u0)
        .map(|(&x, &v)| (v - truth.u0(x)).norm_sqr())
        .collect();
    let u0 = simpson_real(&d0, h).max(0.0).sqrt();
    let u1 = profile.u1.as_ref().map(|u1| {
        let d: Vec<f64> = profile
            .x
            .iter()
            .zip(u1)
            .map(|(&x, &v)| (v - truth.u1(x)).norm_sqr())
            .collect();
        simpson_real(&d, h).max(0.0).sqrt()
    });
    ProfileErrors { u0, u1 }
}

/// State-space (energy) error `√(‖û₀′ − u₀′‖² + ‖û₁ − u₁‖²)`.
///
/// Needs closed-form reference data (sampled references have no trustworthy
/// derivative) and a family that exposes displacement derivatives.
pub fn state_energy_error(profile: &SpatialProfile, truth: &InitialData) -> Result<f64> {
    let du = profile
        .u0_prime
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("profile carries no u₀′".into()))?;
    let n = profile.x.len();
    let h = (profile.x[n - 1] - profile.x[0]) / (n - 1) as f64;
    let d_prime: Vec<f64> = profile
        .x
        .iter()
        .zip(du)
        .map(|(&x, &v)| {
            truth
                .u0_prime(x)
                .map(|t| (v - t).norm_sqr())
                .ok_or_else(|| {
                    Error::InvalidInput("sampled reference data has no derivative".into())
                })
        })
        .collect::<Result<_>>()?;
    let mut err_sq = simpson_real(&d_prime, h).max(0.0);
    if let Some(u1) = &profile.u1 {
        let d: Vec<f64> = profile
            .x
            .iter()
            .zip(u1)
            .map(|(&x, &v)| (v - truth.u1(x)).norm_sqr())
            .collect();
        err_sq += simpson_real(&d, h).max(0.0);
    }
    Ok(err_sq.sqrt())
}

/// The four bundled benchmark experiments.
pub fn builtin_experiments() -> Vec<ExperimentConfig> {
    use crate::quad::linspace;
    use std::f64::consts::PI;
    vec![
        ExperimentConfig {
            name: "wave-noisy".into(),
            system: "wave".into(),
            q: -3.0,
            branch: None,
            initial_data: InitialData::trig(
                vec![TrigTerm::sin(PI, -3.0)],
                Some(vec![TrigTerm::cos(PI, PI)]),
            ),
            disturbance: DisturbanceSpec::None,
            noise_levels: vec![0.0, 0.01, 0.03],
            n_syn: 5000,
            n_rec: 1000,
            window: WindowPlan::Fixed { t1: 2.0, t2: 2.5 },
            recon_t1_list: vec![0.0],
            seed: 2026,
            seeds_per_noise: 20,
            pair_cap: None,
            engine: Engine::Exact,
            profile_points: 1025,
        },
        ExperimentConfig {
            name: "wave-disturbed".into(),
            system: "wave".into(),
            q: 3.0,
            branch: None,
            initial_data: InitialData::trig(
                vec![TrigTerm::sin(PI, 3.0)],
                Some(vec![TrigTerm::cos(PI, PI)]),
            ),
            disturbance: DisturbanceSpec::WaveExample,
            noise_levels: vec![],
            n_syn: 5000,
            n_rec: 1000,
            window: WindowPlan::Sweep {
                t1_list: linspace(2.0, 10.0, 17),
                delta: 3.0,
            },
            recon_t1_list: vec![0.0, 3.0, 7.0],
            seed: 2026,
            seeds_per_noise: 20,
            pair_cap: None,
            engine: Engine::Exact,
            profile_points: 1025,
        },
        ExperimentConfig {
            name: "schrodinger".into(),
            system: "schrodinger".into(),
            q: 0.7,
            branch: None,
            initial_data: InitialData::trig(
                vec![
                    TrigTerm::sin(PI, 1.0),
                    TrigTerm::cos(PI, 0.0).with_imag(1.0),
                ],
                None,
            ),
            disturbance: DisturbanceSpec::SchrodingerExample,
            noise_levels: vec![],
            n_syn: 5000,
            n_rec: 1000,
            window: WindowPlan::Sweep {
                t1_list: linspace(2.55, 10.0, 15),
                delta: 1.0,
            },
            recon_t1_list: vec![0.0, 3.0, 7.0],
            seed: 2026,
            seeds_per_noise: 20,
            pair_cap: Some(5000),
            engine: Engine::Exact,
            profile_points: 1025,
        },
        ExperimentConfig {
            name: "strings".into(),
            system: "strings".into(),
            q: 3.0,
            branch: None,
            initial_data: InitialData::trig(
                vec![TrigTerm::sin(1.0, 1.0)],
                Some(vec![TrigTerm::cos(1.0, 1.0)]),
            ),
            disturbance: DisturbanceSpec::StringsExample,
            noise_levels: vec![],
            n_syn: 5000,
            n_rec: 1000,
            window: WindowPlan::Sweep {
                t1_list: linspace(2.0, 8.0, 13),
                delta: 1.0,
            },
            recon_t1_list: vec![0.0, 3.0, 7.0],
            seed: 2026,
            seeds_per_noise: 20,
            pair_cap: None,
            engine: Engine::Exact,
            profile_points: 1025,
        },
    ]
}

pub fn builtin(name: &str) -> Option<ExperimentConfig> {
    builtin_experiments().into_iter().find(|c| c.name == name)
}
