//! End-to-end acceptance checks for the shipped guarantees, one per
//! criterion. Each prints a PASS/FAIL line (visible with `--nocapture`);
//! the suite fails if any criterion does.
//!
//! Reference values marked "frozen" were computed with an independent
//! quadrature/closed-form oracle, not with this library, and are written at
//! full precision.
#![allow(clippy::excessive_precision)]

use specid_core::harness::{self, profile_l2_errors, state_energy_error};
use specid_core::identify::{
    estimate_q, ingham_constants, ingham_lower_bound_check, reconstruct_initial,
};
use specid_core::signal::{
    exponential_harmonic_integral, DisturbanceSpec, DisturbedSignal, ModalSignal, Signal,
};
use specid_core::spectral::{IndexKind, IndexWindow, ModalState, SpectralSystem};
use specid_core::systems::{self, InitialData, TrigTerm};
use specid_core::C64;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

type Outcome = Result<String, String>;

fn wave_example(q: f64) -> (Arc<dyn SpectralSystem>, InitialData) {
    // u₀ = ±3 sin πx (sign of q), u₁ = π cos πx.
    let data = InitialData::trig(
        vec![TrigTerm::sin(PI, 3.0 * q.signum())],
        Some(vec![TrigTerm::cos(PI, PI)]),
    );
    let system: Arc<dyn SpectralSystem> = Arc::from(systems::build("wave", q, None).unwrap());
    (system, data)
}

fn synth_window(system: &dyn SpectralSystem, modes: i64) -> IndexWindow {
    match system.index_kind() {
        IndexKind::Symmetric => IndexWindow::symmetric(modes),
        IndexKind::Natural => IndexWindow::natural(modes),
    }
}

fn fit_log_slope(t: &[f64], e: &[f64]) -> f64 {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = e.iter().map(|v| v.ln()).sum::<f64>() / n;
    let num: f64 = t
        .iter()
        .zip(e)
        .map(|(&ti, &ei)| (ti - tm) * (ei.ln() - ym))
        .sum();
    let den: f64 = t.iter().map(|&ti| (ti - tm) * (ti - tm)).sum();
    num / den
}

fn random_state(window: IndexWindow, rng: &mut ChaCha12Rng) -> ModalState {
    let coeffs = window
        .iter()
        .map(|n| {
            let decay = 1.0 / ((n.abs() as f64) + 1.0).powi(2);
            C64::new(
                decay * rng.random_range(-1.0..1.0),
                decay * rng.random_range(-1.0..1.0),
            )
        })
        .collect();
    ModalState::new(window, coeffs)
}

/// Criteria 1 and 2 share one benchmark run: exact-engine estimate plus
/// reconstruction, then the sampled-noise study on the same configuration.
fn criterion_1_and_2() -> (Outcome, Outcome) {
    let config = harness::builtin("wave-noisy").expect("bundled benchmark");
    let dir = tempfile::tempdir().unwrap();
    let started = Instant::now();
    let report = match harness::run_experiment(&config, dir.path()) {
        Ok(r) => r,
        Err(e) => {
            let msg = format!("benchmark run failed: {e}");
            return (Err(msg.clone()), Err(msg));
        }
    };
    let elapsed = started.elapsed().as_secs_f64();

    let c1 = (|| -> Outcome {
        let row = &report.sweep[0];
        let q_err = row.abs_err.ok_or("estimation produced no value")?;
        if q_err >= 1e-9 {
            return Err(format!("|q_hat + 3| = {q_err:.3e} >= 1e-9"));
        }
        let rec = report.reconstructions.first().ok_or("no reconstruction")?;
        let u0_err = rec.u0_err.ok_or("no u0 error")?;
        if u0_err >= 1e-6 {
            return Err(format!("u0 error {u0_err:.3e} >= 1e-6"));
        }
        // Frozen grid-measured truncation at N_rec = 1000: 5.8909578146574e-8.
        let frozen = 5.8909578146573937e-8;
        if (u0_err - frozen).abs() > 1e-2 * frozen {
            return Err(format!(
                "u0 error {u0_err:.6e} drifted from frozen {frozen:.6e}"
            ));
        }
        if elapsed >= 60.0 {
            return Err(format!("runtime {elapsed:.1}s >= 60s"));
        }
        Ok(format!(
            "|q_hat+3| = {q_err:.2e}, u0 err = {u0_err:.3e}, {elapsed:.1}s"
        ))
    })();

    let c2 = (|| -> Outcome {
        let find = |level: f64| {
            report
                .noise_table
                .iter()
                .find(|r| r.level == level)
                .ok_or(format!("no noise row at level {level}"))
        };
        let one = find(0.01)?;
        let three = find(0.03)?;
        if one.seeds != 20 || three.seeds != 20 {
            return Err("noise medians not taken over 20 seeds".into());
        }
        if one.q_err >= 1e-2 {
            return Err(format!(
                "1% noise: median |q_hat+3| = {:.3e} >= 1e-2",
                one.q_err
            ));
        }
        if three.q_err >= 3e-2 {
            return Err(format!(
                "3% noise: median |q_hat+3| = {:.3e} >= 3e-2",
                three.q_err
            ));
        }
        Ok(format!(
            "medians {:.2e} (1%), {:.2e} (3%) over 20 seeds",
            one.q_err, three.q_err
        ))
    })();

    (c1, c2)
}

/// Velocity reconstruction error vs mode count: inside the stated band and
/// decreasing, matching the frozen 1025-point grid measurements.
fn criterion_3() -> Outcome {
    let (system, data) = wave_example(-3.0);
    let state = system
        .project(&data, IndexWindow::symmetric(5000))
        .map_err(|e| e.to_string())?;
    let signal = Signal::Modal(ModalSignal::new(system.clone(), state));
    let q_hat = estimate_q(&signal, system.as_ref(), 2.0, 2.5)
        .map_err(|e| e.to_string())?
        .q_hat;

    let frozen = [
        (250, 8.9296576145684814e-2),
        (500, 6.2425865952042317e-2),
        (1000, 6.1677324683441004e-2),
    ];
    let mut measured = Vec::new();
    for (n_rec, expect) in frozen {
        let rec = reconstruct_initial(&signal, system.as_ref(), q_hat, 0.0, n_rec, 1025)
            .map_err(|e| e.to_string())?;
        let u1_err = profile_l2_errors(&rec.profile, &data)
            .u1
            .ok_or("missing u1")?;
        if (u1_err - expect).abs() > 1e-3 * expect {
            return Err(format!(
                "u1 error at N_rec={n_rec} is {u1_err:.8e}, frozen {expect:.8e}"
            ));
        }
        measured.push(u1_err);
    }
    let at_1000 = measured[2];
    if !(0.05..=0.5).contains(&at_1000) {
        return Err(format!("u1 error {at_1000:.3e} outside [0.05, 0.5]"));
    }
    if !(measured[0] > measured[1] && measured[1] > measured[2]) {
        return Err(format!("errors not decreasing: {measured:?}"));
    }
    Ok(format!(
        "u1 err {:.4} → {:.4} → {:.4} over N_rec 250/500/1000",
        measured[0], measured[1], measured[2]
    ))
}

/// The window-shift identity: moving both endpoints by one period scales the
/// norm by exactly e^{fL}, whatever the modal content.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha12Rng::seed_from_u64(41);
    let mut worst: f64 = 0.0;
    for (name, q) in [
        ("wave", -3.0),
        ("wave", 3.0),
        ("schrodinger", 0.7),
        ("strings", 3.0),
    ] {
        let system: Arc<dyn SpectralSystem> =
            Arc::from(systems::build(name, q, None).map_err(|e| e.to_string())?);
        let period = system.period();
        let scale = (system.growth() * period).exp();
        for i in 0..20 {
            let state = random_state(synth_window(system.as_ref(), 40), &mut rng);
            let y = ModalSignal::new(system.clone(), state);
            let a = 0.2 + 0.13 * i as f64;
            let b = a + 0.6 + 0.07 * i as f64;
            let base = y.window_l2_norm(a, b).map_err(|e| e.to_string())?;
            let shifted = y
                .window_l2_norm(a + period, b + period)
                .map_err(|e| e.to_string())?;
            let dev = (shifted / base / scale - 1.0).abs();
            worst = worst.max(dev);
            if dev >= 1e-10 {
                return Err(format!(
                    "{name} q={q} window ({a:.2},{b:.2}): relative deviation {dev:.3e}"
                ));
            }
        }
    }
    Ok(format!(
        "80 random windows, worst relative deviation {worst:.2e}"
    ))
}

/// Disturbed wave benchmark: the estimate converges along the T1 sweep and
/// the a-posteriori growth-rate bound holds wherever it exists.
fn criterion_5() -> Outcome {
    let config = harness::builtin("wave-disturbed").expect("bundled benchmark");
    let dir = tempfile::tempdir().unwrap();
    let report = harness::run_experiment(&config, dir.path()).map_err(|e| e.to_string())?;

    let row_at = |t1: f64| {
        report
            .sweep
            .iter()
            .find(|r| (r.t1 - t1).abs() < 1e-9)
            .ok_or(format!("no sweep row at T1 = {t1}"))
    };
    let early = row_at(2.0)?.abs_err.ok_or("no estimate at T1 = 2")?;
    let late = row_at(10.0)?.abs_err.ok_or("no estimate at T1 = 10")?;
    if late * 10.0 > early {
        return Err(format!(
            "|q_hat−3|: {early:.3e} at T1=2 vs {late:.3e} at T1=10 (< 10x)"
        ));
    }
    let mut bounded = 0;
    for row in &report.sweep {
        if let Some(bound) = row.f_bound {
            bounded += 1;
            let f_err = row.f_abs_err.ok_or("row with bound but no estimate")?;
            if f_err > bound {
                return Err(format!(
                    "T1 = {}: |f_hat − f| = {f_err:.3e} exceeds bound {bound:.3e}",
                    row.t1
                ));
            }
        }
    }
    if bounded == 0 {
        return Err("growth-rate bound never available across the sweep".into());
    }
    Ok(format!(
        "err {early:.2e} → {late:.2e} over T1 2 → 10 ({:.0}x); bound held on {bounded}/17 windows",
        early / late
    ))
}

/// Quantum-family benchmark at the far end of its sweep.
fn criterion_6() -> Outcome {
    let system: Arc<dyn SpectralSystem> =
        Arc::from(systems::build("schrodinger", 0.7, None).map_err(|e| e.to_string())?);
    let data = InitialData::trig(
        vec![
            TrigTerm::sin(PI, 1.0),
            TrigTerm::cos(PI, 0.0).with_imag(1.0),
        ],
        None,
    );
    let state = system
        .project(&data, IndexWindow::natural(5000))
        .map_err(|e| e.to_string())?;
    let modal = ModalSignal::new(system.clone(), state).with_pair_cap(5000);
    let signal = Signal::Disturbed(
        DisturbedSignal::new(modal, DisturbanceSpec::SchrodingerExample)
            .map_err(|e| e.to_string())?,
    );
    let report = estimate_q(&signal, system.as_ref(), 10.0, 11.0).map_err(|e| e.to_string())?;
    let err = (report.q_hat - 0.7).abs();
    if err >= 0.02 {
        return Err(format!("|q_hat − 0.7| = {err:.3e} >= 0.02 at T1 = 10"));
    }
    Ok(format!("|q_hat − 0.7| = {err:.2e} at T1 = 10"))
}

/// Joined-strings benchmark at the far end of its sweep.
fn criterion_7() -> Outcome {
    let system: Arc<dyn SpectralSystem> =
        Arc::from(systems::build("strings", 3.0, None).map_err(|e| e.to_string())?);
    let data = InitialData::trig(
        vec![TrigTerm::sin(1.0, 1.0)],
        Some(vec![TrigTerm::cos(1.0, 1.0)]),
    );
    let state = system
        .project(&data, IndexWindow::symmetric(5000))
        .map_err(|e| e.to_string())?;
    let modal = ModalSignal::new(system.clone(), state);
    let signal = Signal::Disturbed(
        DisturbedSignal::new(modal, DisturbanceSpec::StringsExample).map_err(|e| e.to_string())?,
    );
    let report = estimate_q(&signal, system.as_ref(), 8.0, 9.0).map_err(|e| e.to_string())?;
    let err = (report.q_hat - 3.0).abs();
    if err >= 0.05 {
        return Err(format!("|q_hat − 3| = {err:.3e} >= 0.05 at T1 = 8"));
    }
    Ok(format!("|q_hat − 3| = {err:.2e} at T1 = 8"))
}

/// With the true parameter injected, the reconstruction error inherits the
/// disturbance's relative decay: log-slope vs T1 within ±25% of −f(q).
fn criterion_8() -> Outcome {
    let (system, data) = wave_example(3.0);
    let state = system
        .project(&data, IndexWindow::symmetric(5000))
        .map_err(|e| e.to_string())?;
    let modal = ModalSignal::new(system.clone(), state);
    let signal = Signal::Disturbed(
        DisturbedSignal::new(modal, DisturbanceSpec::WaveExample).map_err(|e| e.to_string())?,
    );

    let t1s = [0.0, 3.0, 7.0];
    // Frozen oracle: 1025-grid energy errors of the true-q reconstruction.
    let frozen = [1.9463586648854834, 0.54896166558447212, 0.14417759106931344];
    let mut errs = Vec::new();
    for (&t1, &expect) in t1s.iter().zip(&frozen) {
        let rec = reconstruct_initial(&signal, system.as_ref(), 3.0, t1, 1000, 1025)
            .map_err(|e| e.to_string())?;
        let e = state_energy_error(&rec.profile, &data).map_err(|e| e.to_string())?;
        if (e - expect).abs() > 1e-3 * expect {
            return Err(format!(
                "energy error at T1={t1} is {e:.8e}, frozen {expect:.8e}"
            ));
        }
        errs.push(e);
    }
    let slope = fit_log_slope(&t1s, &errs);
    let f = system.growth();
    let dev = (slope + f).abs() / f;
    if dev > 0.25 {
        return Err(format!(
            "log-slope {slope:.4} vs −f = {:.4} (dev {:.0}%)",
            -f,
            dev * 100.0
        ));
    }
    Ok(format!(
        "log-slope {slope:.4} vs −f = {:.4} (dev {:.1}%)",
        -f,
        dev * 100.0
    ))
}

/// Ingham lower bound across random states of every family, plus the frozen
/// constants of the two-sided inequality.
fn criterion_9() -> Outcome {
    let (c1, c2) = ingham_constants(PI, 3.0).map_err(|e| e.to_string())?;
    let frozen = (1.0610329539459689, 11.034742721038077);
    if (c1 - frozen.0).abs() > 1e-14 * frozen.0 || (c2 - frozen.1).abs() > 1e-14 * frozen.1 {
        return Err(format!(
            "constants ({c1:.17}, {c2:.17}) drifted from frozen {frozen:?}"
        ));
    }
    let (c1_4, _) = ingham_constants(PI, 4.0).map_err(|e| e.to_string())?;
    if (c1_4 - 1.909859317102744).abs() > 1e-14 * c1_4 {
        return Err(format!("C1(π, 4) = {c1_4:.17} drifted"));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(99);
    let mut checked = 0;
    for (name, q) in [("wave", -3.0), ("schrodinger", 0.7), ("strings", 3.0)] {
        let system: Arc<dyn SpectralSystem> =
            Arc::from(systems::build(name, q, None).map_err(|e| e.to_string())?);
        for i in 0..50 {
            let state = random_state(synth_window(system.as_ref(), 12), &mut rng);
            let t1 = 0.1 + 0.03 * i as f64;
            let check = ingham_lower_bound_check(system.as_ref(), &state, t1, 3.0)
                .map_err(|e| e.to_string())?;
            if !check.holds {
                return Err(format!(
                    "{name} state {i}: lhs {:.6e} outside [{:.6e}, {:.6e}]",
                    check.lhs,
                    check.c1 * check.energy,
                    check.c2 * check.energy
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} random states within the two-sided bound; constants frozen to 1e-14"
    ))
}

/// Modal exponentials are orthonormal over one period.
fn criterion_10() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, q) in [("wave", -3.0), ("schrodinger", 0.7), ("strings", 3.0)] {
        let system = systems::build(name, q, None).map_err(|e| e.to_string())?;
        let period = system.period();
        let indices: Vec<i64> = synth_window(system.as_ref(), 50).iter().collect();
        for &m in &indices {
            for &n in &indices {
                let k = system.harmonic(m) - system.harmonic(n);
                let integral = exponential_harmonic_integral(0.0, k, period, 0.0, period)
                    / C64::new(period, 0.0);
                let delta = if m == n { 1.0 } else { 0.0 };
                let dev = (integral - C64::new(delta, 0.0)).norm();
                worst = worst.max(dev);
                if dev >= 1e-12 {
                    return Err(format!("{name}: modes ({m}, {n}) deviate by {dev:.3e}"));
                }
            }
        }
    }
    Ok(format!(
        "all |m|,|n| ≤ 50 pairs per family, worst deviation {worst:.2e}"
    ))
}

#[test]
fn acceptance_criteria() {
    let (c1, c2) = criterion_1_and_2();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("exact identification + reconstruction", c1),
        ("noise medians over seeds", c2),
        ("velocity truncation band", criterion_3()),
        ("window-shift identity", criterion_4()),
        ("disturbed sweep convergence + bound", criterion_5()),
        ("quantum family far-window accuracy", criterion_6()),
        ("strings family far-window accuracy", criterion_7()),
        ("reconstruction error decay rate", criterion_8()),
        ("Ingham two-sided bound", criterion_9()),
        ("periodic orthogonality", criterion_10()),
    ];

    let mut failures = Vec::new();
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
                failures.push(format!("{}: {detail}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:#?}");
}
