//! Parameter sweeps averaged over repeated seeded trials.

use std::hint::black_box;
use std::time::Instant;

use ams_detect::seed::child_seed;
use ams_detect::simulator::{generate_traffic, trial_sketch_seed};
use ams_detect::{default_tau_sweep, run_trial, AmsSketch, HostMonitor, TrialConfig, TrialOutcome};
use rayon::prelude::*;

use crate::config::validate;
use crate::error::{HarnessError, Result};

/// Which knob an accuracy sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Tau,
    Depth,
}

impl Parameter {
    pub fn column(self) -> &'static str {
        match self {
            Parameter::Tau => "tau",
            Parameter::Depth => "d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyRow {
    /// 1-based sweep position.
    pub index: usize,
    pub value: f64,
    pub tp: f64,
    pub tn: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracySweep {
    pub parameter: Parameter,
    pub rows: Vec<AccuracyRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeRow {
    pub depth: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeSweep {
    pub rows: Vec<RuntimeRow>,
}

/// Seed of trial `run` under `master_seed`.
pub fn trial_seed(master_seed: u64, run: u64) -> u64 {
    child_seed(master_seed, run)
}

fn check_sweepable(config: &TrialConfig) -> Result<()> {
    validate(config)?;
    if config.num_attackers == 0 || config.num_attackers == config.num_hosts {
        return Err(HarnessError::Invalid(
            "accuracy sweeps need at least one attacker and one good host".into(),
        ));
    }
    Ok(())
}

/// Runs `config.runs` trials in parallel; results come back in run order.
pub fn run_trials(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    (0..config.runs)
        .into_par_iter()
        .map(|r| run_trial(config, trial_seed(config.master_seed, r)).map_err(HarnessError::from))
        .collect()
}

/// Mean of the per-trial TP and TN rates at threshold `tau`.
pub fn mean_rates(trials: &[TrialOutcome], tau: f64) -> Result<(f64, f64)> {
    let mut tp_sum = 0.0;
    let mut tn_sum = 0.0;
    for t in trials {
        let (tp, tn) = t.confusion_at(tau).rates()?;
        tp_sum += tp;
        tn_sum += tn;
    }
    let n = trials.len() as f64;
    Ok((tp_sum / n, tn_sum / n))
}

/// TP/TN rates for every τ in `M-5 ..= M+5`. Each trial is run once and its
/// fixed scores are re-thresholded, so all rows share the same streams.
pub fn sweep_tau(config: &TrialConfig) -> Result<AccuracySweep> {
    check_sweepable(config)?;
    let taus = default_tau_sweep(config.packets)?;
    let trials = run_trials(config)?;
    let rows = taus
        .iter()
        .enumerate()
        .map(|(i, &tau)| {
            let (tp, tn) = mean_rates(&trials, tau as f64)?;
            Ok(AccuracyRow {
                index: i + 1,
                value: tau as f64,
                tp,
                tn,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AccuracySweep {
        parameter: Parameter::Tau,
        rows,
    })
}

/// TP/TN rates at τ = M for each sketch depth in `depths`.
pub fn sweep_depth(config: &TrialConfig, depths: &[usize]) -> Result<AccuracySweep> {
    if depths.is_empty() {
        return Err(HarnessError::Invalid("depth range is empty".into()));
    }
    check_sweepable(config)?;
    let mut rows = Vec::with_capacity(depths.len());
    for (i, &d) in depths.iter().enumerate() {
        let cfg = TrialConfig {
            depth: d,
            tau: Some(config.packets as f64),
            ..config.clone()
        };
        validate(&cfg)?;
        let trials = run_trials(&cfg)?;
        let (tp, tn) = mean_rates(&trials, cfg.tau())?;
        rows.push(AccuracyRow {
            index: i + 1,
            value: d as f64,
            tp,
            tn,
        });
    }
    Ok(AccuracySweep {
        parameter: Parameter::Depth,
        rows,
    })
}

/// Wall-clock seconds to sketch one trial's worth of host traffic at each
/// depth, averaged over `config.runs` repetitions.
///
/// The workload (streams and hash seed) is fixed by `config.master_seed`
/// and shared across depths. Depths are timed one after another.
pub fn measure_runtime(config: &TrialConfig, depths: &[usize]) -> Result<RuntimeSweep> {
    if depths.is_empty() {
        return Err(HarnessError::Invalid("depth range is empty".into()));
    }
    if depths.contains(&0) {
        return Err(HarnessError::Invalid(
            "hash_functions must be at least 1".into(),
        ));
    }
    validate(config)?;
    let seed = trial_seed(config.master_seed, 0);
    let traffic = generate_traffic(config, seed)?;
    let sketch_seed = trial_sketch_seed(seed);
    let tau = config.tau();

    let process = |depth: usize| -> Result<()> {
        let sketch = AmsSketch::new(depth, sketch_seed)?;
        for host in &traffic {
            let mut monitor = HostMonitor::new(host.host, sketch.clone(), config.packets, tau)?;
            for &h in &host.stream {
                black_box(monitor.ingest(black_box(h)));
            }
        }
        Ok(())
    };

    // Warm caches and the allocator once before timing.
    process(depths[0])?;
    let mut rows = Vec::with_capacity(depths.len());
    for &d in depths {
        let start = Instant::now();
        for _ in 0..config.runs {
            process(d)?;
        }
        let seconds = start.elapsed().as_secs_f64() / config.runs as f64;
        rows.push(RuntimeRow { depth: d, seconds });
    }
    Ok(RuntimeSweep { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> TrialConfig {
        TrialConfig {
            runs: 5,
            ..Default::default()
        }
    }

    #[test]
    fn tau_rows_cover_the_window() {
        let s = sweep_tau(&small()).unwrap();
        assert_eq!(s.rows.len(), 11);
        assert_eq!(
            s.rows.iter().map(|r| r.value as u64).collect::<Vec<_>>(),
            (45..=55).collect::<Vec<_>>()
        );
        assert_eq!(
            s.rows.iter().map(|r| r.index).collect::<Vec<_>>(),
            (1..=11).collect::<Vec<_>>()
        );
        assert!(s
            .rows
            .iter()
            .all(|r| (0.0..=100.0).contains(&r.tp) && (0.0..=100.0).contains(&r.tn)));
    }

    #[test]
    fn rates_are_plain_means() {
        let cfg = small();
        let s = sweep_tau(&cfg).unwrap();
        let trials = run_trials(&cfg).unwrap();
        for row in &s.rows {
            let per: Vec<(f64, f64)> = trials
                .iter()
                .map(|t| t.confusion_at(row.value).rates().unwrap())
                .collect();
            let tp = per.iter().map(|p| p.0).sum::<f64>() / per.len() as f64;
            let tn = per.iter().map(|p| p.1).sum::<f64>() / per.len() as f64;
            assert!((row.tp - tp).abs() <= f64::EPSILON * tp.max(1.0));
            assert!((row.tn - tn).abs() <= f64::EPSILON * tn.max(1.0));
        }
    }

    #[test]
    fn separated_profiles_single_run() {
        let cfg = TrialConfig {
            runs: 1,
            p_unique: 1.0,
            pool_size: Some(2),
            ..Default::default()
        };
        let trials = run_trials(&cfg).unwrap();
        assert!(trials[0].records.iter().all(|r| r.oracle == r.actual));
        let s = sweep_tau(&cfg).unwrap();
        assert_eq!(s.rows.len(), 11);
        for w in s.rows.windows(2) {
            assert!(w[0].tp <= w[1].tp && w[0].tn >= w[1].tn);
        }
    }

    #[test]
    fn depth_sweep_shapes() {
        let cfg = small();
        let s = sweep_depth(&cfg, &[4]).unwrap();
        assert_eq!(s.rows.len(), 1);
        // d = 4 at tau = M is the default operating point.
        let trials = run_trials(&cfg).unwrap();
        let (tp, tn) = mean_rates(&trials, 50.0).unwrap();
        assert_eq!((s.rows[0].tp, s.rows[0].tn), (tp, tn));
        assert_eq!(
            sweep_depth(&cfg, &(1..=10).collect::<Vec<_>>())
                .unwrap()
                .rows
                .len(),
            10
        );
        assert!(sweep_depth(&cfg, &[]).is_err());
    }

    #[test]
    fn sweeps_need_both_classes() {
        let cfg = TrialConfig {
            num_attackers: 0,
            ..small()
        };
        assert_eq!(sweep_tau(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn runtime_rows() {
        let cfg = TrialConfig {
            runs: 2,
            ..Default::default()
        };
        let r = measure_runtime(&cfg, &[1, 2, 3]).unwrap();
        assert_eq!(
            r.rows.iter().map(|r| r.depth).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert!(r.rows.iter().all(|r| r.seconds >= 0.0));
        assert!(measure_runtime(&cfg, &[]).is_err());
        assert!(measure_runtime(&cfg, &[0]).is_err());
    }
}
