//! Monte Carlo threshold sweeps with CSV and SVG output.

mod csv;
mod plot;
mod sweep;

pub use self::csv::{read_csv, write_csv, CSV_HEADER};
pub use plot::render_plot;
pub use sweep::{run_cell, run_sweep, CellOutcome};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::offset::{check_cycle_params, OffsetError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Offset(#[from] OffsetError),
    #[error("csv row {row}: {message}")]
    Csv { row: usize, message: String },
    #[error("records mix kinds {0} and {1}")]
    MixedKinds(SweepKindName, SweepKindName),
    #[error("no records to plot")]
    NoRecords,
}

/// Decision procedure run on each sampled hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// ℓ-offset Hamiltonicity, probed at multiples of the sharp threshold.
    OffsetCycle { l: usize },
    /// 𝒯-connectivity, probed at multiples of its threshold.
    TConnect,
}

impl SweepKind {
    pub fn name(&self) -> SweepKindName {
        match self {
            SweepKind::OffsetCycle { .. } => SweepKindName::Offset,
            SweepKind::TConnect => SweepKindName::TConnect,
        }
    }

    pub fn l(&self) -> Option<usize> {
        match self {
            SweepKind::OffsetCycle { l } => Some(*l),
            SweepKind::TConnect => None,
        }
    }
}

/// The `kind` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepKindName {
    Offset,
    TConnect,
}

impl fmt::Display for SweepKindName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepKindName::Offset => "offset",
            SweepKindName::TConnect => "tconnect",
        })
    }
}

impl FromStr for SweepKindName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "offset" => Ok(Self::Offset),
            "tconnect" => Ok(Self::TConnect),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub k: usize,
    pub n_list: Vec<usize>,
    /// Scalars applied to the kind's threshold formula.
    pub multipliers: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    /// Search-node budget per offset-cycle trial.
    pub budget: u64,
    /// Domino bound per pair for 𝒯-connectivity; `None` means n.
    pub max_dominoes: Option<usize>,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Fill `mean_ms` with wall-clock search time. Off keeps records a pure
    /// function of the configuration.
    pub record_timing: bool,
}

impl SweepConfig {
    pub const DEFAULT_BUDGET: u64 = 10_000_000;

    pub fn new(
        kind: SweepKind,
        k: usize,
        n_list: Vec<usize>,
        multipliers: Vec<f64>,
        trials: u64,
        seed: u64,
    ) -> Self {
        Self {
            kind,
            k,
            n_list,
            multipliers,
            trials,
            seed,
            budget: Self::DEFAULT_BUDGET,
            max_dominoes: None,
            threads: None,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_list.is_empty() || self.multipliers.is_empty() {
            return bad("n list and multiplier list must be nonempty".into());
        }
        if let Some(m) = self
            .multipliers
            .iter()
            .find(|m| !(m.is_finite() && **m > 0.0))
        {
            return bad(format!("multiplier {m} is not a positive number"));
        }
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        if self.max_dominoes == Some(0) {
            return bad("max dominoes must be positive".into());
        }
        if self.threads == Some(0) {
            return bad("thread count must be positive".into());
        }
        for &n in &self.n_list {
            match self.kind {
                SweepKind::OffsetCycle { l } => check_cycle_params(n, self.k, l)?,
                SweepKind::TConnect => {
                    if self.k < 2 || n <= self.k || n < 3 {
                        return bad(format!(
                            "t-connectivity needs k >= 2 and n > max(k, 2), got n = {n}, k = {}",
                            self.k
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One (n, multiplier) cell of a sweep; one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub kind: SweepKindName,
    pub k: usize,
    pub l: Option<usize>,
    pub n: usize,
    pub multiplier: f64,
    /// Edge probability actually sampled, six significant digits, at most 1.
    pub p: f64,
    pub trials: u64,
    pub successes: u64,
    pub timeouts: u64,
    pub seed: u64,
    pub mean_ms: f64,
    /// ln E[X] at `p`; offset kind only.
    pub ln_expected: Option<f64>,
}

/// Share of timeouts above which a cell is flagged.
pub const TIMEOUT_WARNING_FRACTION: f64 = 0.05;

impl ExperimentRecord {
    pub fn decided(&self) -> u64 {
        self.trials - self.timeouts
    }

    /// Successes over decided trials; `None` when every trial timed out.
    pub fn success_fraction(&self) -> Option<f64> {
        let d = self.decided();
        (d > 0).then(|| self.successes as f64 / d as f64)
    }

    /// p was capped at 1.
    pub fn is_clamped(&self) -> bool {
        self.p >= 1.0
    }

    pub fn timeout_warning(&self) -> bool {
        self.timeouts as f64 > TIMEOUT_WARNING_FRACTION * self.trials as f64
    }
}

/// Rounds to six significant digits, the precision of every float column.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}
