//! `specid` — boundary-output parameter identification from the command line.
//!
//! Four stages, separable so identification can run on externally recorded
//! measurement files:
//!
//! * `list` — show the bundled experiment configurations
//! * `experiment` — run a bundled or JSON config, write CSV/JSON artifacts
//! * `simulate` — synthesize one output signal as a `t,re,im` CSV
//! * `identify` — estimate `q` (and optionally the initial state) from such
//!   a CSV

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use specid_core::harness::{self, Engine, ExperimentConfig};
use specid_core::identify::{epsilon_snr, error_bound_f, estimate_q, reconstruct_initial};
use specid_core::signal::{DisturbanceSpec, GridSignal, Signal};
use specid_core::spectral::SpectralSystem;
use specid_core::systems::{self, WaveBranch};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "specid",
    version,
    about = "Identify a boundary parameter and initial state from one output signal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the bundled experiment configurations.
    List,
    /// Run an experiment and write sweep.csv, table.csv, profiles, report.json.
    Experiment(ExperimentArgs),
    /// Synthesize an output signal and write it as a `t,re,im` CSV.
    Simulate(SimulateArgs),
    /// Estimate the parameter from a recorded `t,re,im` CSV.
    Identify(IdentifyArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Bundled config name (see `list`) or path to a JSON config.
    #[arg(long)]
    config: String,
    /// Output directory [default: runs/<config name>].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config's RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the synthesis truncation.
    #[arg(long)]
    n_syn: Option<usize>,
    /// Override the reconstruction truncation.
    #[arg(long)]
    n_rec: Option<usize>,
    /// Integration engine: exact closed-form sums or sampled grid.
    #[arg(long)]
    engine: Option<Engine>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Bundled config name or path to a JSON config.
    #[arg(long)]
    config: String,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
    /// Record up to this time [default: the config's window horizon].
    #[arg(long)]
    t_end: Option<f64>,
    /// Sample spacing [default: period/2048].
    #[arg(long)]
    dt: Option<f64>,
    /// Multiplicative noise level ρ: y(tₖ)(1 + ρξₖ), ξₖ uniform on [−1,1].
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Override the config's RNG seed (used only with --noise).
    #[arg(long)]
    seed: Option<u64>,
    /// Override the synthesis truncation.
    #[arg(long)]
    n_syn: Option<usize>,
}

#[derive(Args)]
struct IdentifyArgs {
    /// Recorded signal: CSV with header `t,re,im`.
    #[arg(long)]
    input: PathBuf,
    /// System family: wave, schrodinger, or strings.
    #[arg(long)]
    system: String,
    /// Wave prior set: above (q>1), below (q<−1), or inside (0<q<1).
    #[arg(long)]
    branch: Option<WaveBranch>,
    /// Estimation window start (must be at least one period).
    #[arg(long)]
    t1: f64,
    /// Estimation window end.
    #[arg(long)]
    t2: f64,
    /// Known sup-bound on an additive disturbance, for the error bound on f.
    #[arg(long)]
    bound: Option<f64>,
    /// Reconstruction truncation.
    #[arg(long, default_value_t = 1000)]
    n_rec: usize,
    /// Reconstruct the initial state from the window starting here
    /// (repeatable; each writes one profile CSV).
    #[arg(long = "recon-t1")]
    recon_t1: Vec<f64>,
    /// Spatial samples per reconstructed profile.
    #[arg(long, default_value_t = 1025)]
    profile_points: usize,
    /// Output directory for report.json and profile CSVs.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn main() -> Result<()> {
    // Die quietly when the consumer closes the pipe (e.g. `specid list | head`)
    // instead of panicking in println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match Cli::parse().command {
        Command::List => list(),
        Command::Experiment(args) => experiment(args),
        Command::Simulate(args) => simulate(args),
        Command::Identify(args) => identify(args),
    }
}

/// A bundled name wins over a file of the same name; use `./name` for files.
fn resolve_config(spec: &str) -> Result<ExperimentConfig> {
    if let Some(config) = harness::builtin(spec) {
        return Ok(config);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!(
            "'{spec}' is neither a bundled config ({}) nor a file",
            harness::builtin_experiments()
                .iter()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    ExperimentConfig::from_path(path).with_context(|| format!("reading config {spec}"))
}

fn list() -> Result<()> {
    for config in harness::builtin_experiments() {
        let windows = config.window.windows();
        let span = match (windows.first(), windows.last()) {
            (Some(a), Some(b)) if windows.len() > 1 => {
                format!("{} windows, T1 {} → {}", windows.len(), a.0, b.0)
            }
            (Some(a), _) => format!("window ({}, {})", a.0, a.1),
            _ => "no windows".into(),
        };
        println!(
            "{:<16} {:<12} q = {:<5} N_syn = {:<5} {}",
            config.name, config.system, config.q, config.n_syn, span
        );
    }
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let mut config = resolve_config(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(n) = args.n_syn {
        config.n_syn = n;
    }
    if let Some(n) = args.n_rec {
        config.n_rec = n;
    }
    if let Some(engine) = args.engine {
        config.engine = engine;
    }
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from("runs").join(&config.name));
    let report = harness::run_experiment(&config, &out)?;

    println!("wrote {}", out.display());
    if let Some(q_hat) = report.q_hat_reference {
        println!(
            "q_hat = {q_hat:.12} (true {}, |err| = {:.3e})",
            config.q,
            (q_hat - config.q).abs()
        );
    }
    println!(
        "{} sweep rows, {} noise rows, {} reconstructions",
        report.sweep.len(),
        report.noise_table.len(),
        report.reconstructions.len()
    );
    // Sweeps repeat per-window warnings; print a few, keep the rest in
    // report.json.
    for w in report.warnings.iter().take(5) {
        eprintln!("warning: {w}");
    }
    if report.warnings.len() > 5 {
        eprintln!(
            "warning: (+{} more, see report.json)",
            report.warnings.len() - 5
        );
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let mut config = resolve_config(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(n) = args.n_syn {
        config.n_syn = n;
    }
    if args.noise < 0.0 || args.noise.is_nan() {
        bail!("--noise must be nonnegative, got {}", args.noise);
    }
    let mut signal = harness::synthesize_grid(&config, args.t_end, args.dt)?;
    if args.noise > 0.0 {
        signal = signal.with_disturbance(&DisturbanceSpec::MultiplicativeNoise {
            level: args.noise,
            seed: config.seed,
        })?;
    }
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    signal.write_csv(&args.out)?;
    let (start, end) = signal.domain();
    println!(
        "wrote {} ({} samples on [{start}, {:.6}], dt = {:.6e})",
        args.out.display(),
        signal.len(),
        end,
        signal.dt()
    );
    Ok(())
}

/// Everything `identify` learned from one file, serialized as report.json.
#[derive(Serialize)]
struct IdentifyReport {
    input: String,
    system: String,
    branch: Option<WaveBranch>,
    t1: f64,
    t2: f64,
    q_hat: f64,
    f_hat: f64,
    norm_window: f64,
    norm_shifted: f64,
    /// A-posteriori bound on |f_hat − f|, when --bound was given and usable.
    f_bound: Option<f64>,
    epsilon: Option<f64>,
    snr: Option<f64>,
    profiles: Vec<String>,
    warnings: Vec<String>,
}

/// The growth-map inverse needs only the family and prior set, not a value
/// of `q`; any representative of the branch declares both.
fn reference_model(system: &str, branch: Option<WaveBranch>) -> Result<Box<dyn SpectralSystem>> {
    if branch.is_some() && system != "wave" {
        bail!("--branch applies to the wave family only");
    }
    let q = match (system, branch) {
        ("wave", Some(WaveBranch::Below)) => -3.0,
        ("wave", Some(WaveBranch::Inside)) => 0.5,
        ("wave", _) => 3.0,
        ("strings", _) => 3.0,
        _ => 1.0,
    };
    Ok(systems::build(
        system,
        q,
        branch.or(if system == "wave" {
            Some(WaveBranch::Above)
        } else {
            None
        }),
    )?)
}

fn identify(args: IdentifyArgs) -> Result<()> {
    let model = reference_model(&args.system, args.branch)?;
    let grid = GridSignal::read_csv(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let signal = Signal::Grid(grid);

    let est = estimate_q(&signal, model.as_ref(), args.t1, args.t2)?;
    let mut warnings = est.warnings.clone();

    let (f_bound, epsilon, snr) = match args.bound {
        Some(m) if m > 0.0 => {
            let eps = epsilon_snr(est.norm_shifted, m, args.t2 - args.t1)?;
            match error_bound_f(est.norm_shifted, m, args.t2 - args.t1, model.period()) {
                Ok(b) => (Some(b), Some(eps.epsilon), Some(eps.snr)),
                Err(e) => {
                    warnings.push(format!("error bound unavailable: {e}"));
                    (None, Some(eps.epsilon), Some(eps.snr))
                }
            }
        }
        Some(0.0) => (Some(0.0), Some(0.0), Some(f64::INFINITY)),
        Some(m) => bail!("--bound must be nonnegative, got {m}"),
        None => (None, None, None),
    };

    std::fs::create_dir_all(&args.out)?;
    let mut profiles = Vec::new();
    for &t1 in &args.recon_t1 {
        let rec = reconstruct_initial(
            &signal,
            model.as_ref(),
            est.q_hat,
            t1,
            args.n_rec,
            args.profile_points,
        );
        match rec {
            Ok(rec) => {
                let name = format!("profile_T1={t1}.csv");
                std::fs::write(args.out.join(&name), rec.profile.to_csv())?;
                profiles.push(name);
            }
            Err(e) => warnings.push(format!("reconstruction at T1 = {t1} failed: {e}")),
        }
    }

    let report = IdentifyReport {
        input: args.input.display().to_string(),
        system: args.system,
        branch: args.branch,
        t1: args.t1,
        t2: args.t2,
        q_hat: est.q_hat,
        f_hat: est.f_hat,
        norm_window: est.norm_window,
        norm_shifted: est.norm_shifted,
        f_bound,
        epsilon,
        snr,
        profiles,
        warnings,
    };
    let json = serde_json::to_string_pretty(&report)?;
    std::fs::write(args.out.join("report.json"), format!("{json}\n"))?;

    println!("q_hat = {:.12}", report.q_hat);
    println!("f_hat = {:.12}", report.f_hat);
    if let Some(b) = report.f_bound {
        println!("|f_hat − f| ≤ {b:.6e}");
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!("wrote {}", args.out.join("report.json").display());
    Ok(())
}
