use std::time::Instant;

use rayon::prelude::*;

use super::{round_sig6, ExperimentRecord, HarnessError, SweepConfig, SweepKind};
use crate::hypergraph::Hypergraph;
use crate::offset::{
    find_offset_cycle, ln_expected_cycle_count, offset_threshold, verify_offset_cycle,
    SearchBudget, SearchOutcome, ThresholdMode,
};
use crate::rng::derive_seed;
use crate::trail::{is_t_connected, t_threshold, TConnectivity};

/// Result of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellOutcome {
    Success,
    Failure,
    Timeout,
}

/// Samples H(n, p, k) from `seed` and runs the kind's decision procedure.
/// Returns the outcome and the search time in milliseconds.
pub fn run_cell(
    kind: SweepKind,
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
    budget: u64,
    max_dominoes: usize,
) -> Result<(CellOutcome, f64), HarnessError> {
    let h = Hypergraph::sample(n, k, p, seed)
        .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
    let start = Instant::now();
    let outcome = match kind {
        SweepKind::OffsetCycle { l } => {
            let budget = SearchBudget::new(budget)?;
            match find_offset_cycle(&h, l, budget)? {
                SearchOutcome::Found(cert) => {
                    assert_eq!(
                        verify_offset_cycle(&h, &cert, l),
                        Ok(Ok(())),
                        "search emitted an invalid certificate"
                    );
                    CellOutcome::Success
                }
                SearchOutcome::NoCycle => CellOutcome::Failure,
                SearchOutcome::BudgetExceeded => CellOutcome::Timeout,
            }
        }
        SweepKind::TConnect => match is_t_connected(&h, max_dominoes).verdict {
            TConnectivity::Connected => CellOutcome::Success,
            TConnectivity::NotConnected { .. } => CellOutcome::Failure,
            TConnectivity::Undetermined { .. } => CellOutcome::Timeout,
        },
    };
    Ok((outcome, start.elapsed().as_secs_f64() * 1e3))
}

fn threshold(kind: SweepKind, n: usize, k: usize) -> Result<f64, HarnessError> {
    Ok(match kind {
        SweepKind::OffsetCycle { l } => offset_threshold(n, k, l, ThresholdMode::Sharp)?.value,
        SweepKind::TConnect => t_threshold(n, k),
    })
}

/// Runs every (n, multiplier) cell of the sweep.
///
/// Cell `i_n * multipliers.len() + i_m` draws trial `t` from
/// `derive_seed(seed, cell, t)`; the sampled probability is
/// `min(1, multiplier * threshold)` rounded to six significant digits.
/// Trials run in parallel and are tallied in (cell, trial) order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ExperimentRecord>, HarnessError> {
    config.validate()?;
    let k = config.k;
    struct Cell {
        n: usize,
        multiplier: f64,
        p: f64,
    }
    let mut cells = Vec::new();
    for &n in &config.n_list {
        let thr = threshold(config.kind, n, k)?;
        for &m in &config.multipliers {
            let multiplier = round_sig6(m);
            let p = round_sig6((multiplier * thr).min(1.0));
            cells.push(Cell { n, multiplier, p });
        }
    }
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
    let outcomes: Vec<Result<(CellOutcome, f64), HarnessError>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, t)| {
                let cell = &cells[c];
                run_cell(
                    config.kind,
                    cell.n,
                    k,
                    cell.p,
                    derive_seed(config.seed, c as u64, t),
                    config.budget,
                    config.max_dominoes.unwrap_or(cell.n),
                )
            })
            .collect()
    });

    let trials = config.trials as usize;
    let mut records = Vec::with_capacity(cells.len());
    for (c, cell) in cells.iter().enumerate() {
        let (mut successes, mut timeouts, mut ms) = (0, 0, 0.0);
        for r in &outcomes[c * trials..(c + 1) * trials] {
            let (outcome, elapsed) = r.clone()?;
            match outcome {
                CellOutcome::Success => successes += 1,
                CellOutcome::Timeout => timeouts += 1,
                CellOutcome::Failure => {}
            }
            ms += elapsed;
        }
        let ln_expected = match config.kind {
            SweepKind::OffsetCycle { l } => {
                Some(round_sig6(ln_expected_cycle_count(cell.n, k, l, cell.p)?))
            }
            SweepKind::TConnect => None,
        };
        records.push(ExperimentRecord {
            kind: config.kind.name(),
            k,
            l: config.kind.l(),
            n: cell.n,
            multiplier: cell.multiplier,
            p: cell.p,
            trials: config.trials,
            successes,
            timeouts,
            seed: config.seed,
            mean_ms: if config.record_timing {
                round_sig6(ms / config.trials as f64)
            } else {
                0.0
            },
            ln_expected,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::write_csv;

    fn small_offset() -> SweepConfig {
        let mut c = SweepConfig::new(
            SweepKind::OffsetCycle { l: 1 },
            3,
            vec![9, 12],
            vec![0.5, 3.0],
            6,
            11,
        );
        c.budget = 100_000;
        c
    }

    #[test]
    fn cell_layout_and_tallies() {
        let recs = run_sweep(&small_offset()).unwrap();
        assert_eq!(recs.len(), 4);
        let order: Vec<_> = recs.iter().map(|r| (r.n, r.multiplier)).collect();
        assert_eq!(order, vec![(9, 0.5), (9, 3.0), (12, 0.5), (12, 3.0)]);
        for r in &recs {
            assert!(r.successes + r.timeouts <= r.trials);
            assert_eq!(r.mean_ms, 0.0);
            let thr = offset_threshold(r.n, 3, 1, ThresholdMode::Sharp)
                .unwrap()
                .value;
            assert_eq!(r.p, round_sig6((r.multiplier * thr).min(1.0)));
            assert_eq!(
                r.ln_expected,
                Some(round_sig6(ln_expected_cycle_count(r.n, 3, 1, r.p).unwrap()))
            );
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let mut a = small_offset();
        a.threads = Some(1);
        let mut b = small_offset();
        b.threads = Some(4);
        assert_eq!(
            write_csv(&run_sweep(&a).unwrap()),
            write_csv(&run_sweep(&b).unwrap())
        );
    }

    #[test]
    fn clamped_cells_succeed() {
        for kind in [SweepKind::OffsetCycle { l: 1 }, SweepKind::TConnect] {
            let c = SweepConfig::new(kind, 3, vec![9], vec![1e9], 3, 5);
            let recs = run_sweep(&c).unwrap();
            assert!(recs[0].is_clamped());
            assert_eq!(recs[0].p, 1.0);
            assert_eq!(recs[0].successes, 3);
        }
    }

    #[test]
    fn zero_probability_never_succeeds() {
        for kind in [SweepKind::OffsetCycle { l: 1 }, SweepKind::TConnect] {
            for seed in 0..5 {
                let (o, _) = run_cell(kind, 9, 3, 0.0, seed, 1000, 9).unwrap();
                assert_eq!(o, CellOutcome::Failure);
            }
        }
    }

    #[test]
    fn invalid_configs() {
        let mut c = small_offset();
        c.trials = 0;
        assert!(run_sweep(&c).is_err());
        let mut c = small_offset();
        c.multipliers = vec![0.0];
        assert!(run_sweep(&c).is_err());
        let mut c = small_offset();
        c.n_list = vec![10];
        assert!(matches!(run_sweep(&c), Err(HarnessError::Offset(_))));
        let c = SweepConfig::new(SweepKind::TConnect, 3, vec![3], vec![1.0], 1, 0);
        assert!(run_sweep(&c).is_err());
    }
}
