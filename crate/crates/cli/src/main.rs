use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};

use hyperlab::abelian::AbelianGroup;
use hyperlab::harness::{read_csv, render_plot, run_sweep, write_csv, SweepConfig, SweepKind};
use hyperlab::hypergraph::Hypergraph;
use hyperlab::offset::{
    brute_force_cycle_count, find_offset_cycle, gamma_count, offset_threshold, verify_offset_cycle,
    verify_offset_edge_sequence, OffsetCycleCertificate, SearchBudget, SearchOutcome,
    ThresholdMode,
};
use hyperlab::trail::{find_trail, is_t_connected, t_threshold, TConnectivity, TrailSearch};
use hyperlab::weighting::{parse_coloring_for, realize_weighting, WeightingError};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hyperlab",
    version,
    about = "Offset Hamilton cycles, 1-offset trails and group weightings in k-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample H(n, p, k) and write it as text.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for an ℓ-offset Hamilton cycle.
    FindCycle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_BUDGET)]
        budget: u64,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check an ℓ-offset cycle certificate.
    VerifyCycle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        l: usize,
        /// Also check the certificate's edge sequence against the literal definition.
        #[arg(long)]
        strict: bool,
    },
    /// Number of ℓ-offset Hamilton cycles in the complete hypergraph.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Also count by enumerating vertex orders.
        #[arg(long)]
        brute_force: bool,
    },
    /// Threshold probability for offset Hamiltonicity or 𝒯-connectivity.
    #[command(group(ArgGroup::new("kind").required(true).args(["offset", "tconnect"])))]
    Threshold {
        #[arg(long)]
        offset: bool,
        #[arg(long)]
        tconnect: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, required_if_eq("offset", "true"), conflicts_with = "tconnect")]
        l: Option<usize>,
        #[arg(long, default_value_t = ThresholdMode::Sharp, conflicts_with = "tconnect")]
        mode: ThresholdMode,
    },
    /// Decide 𝒯-connectivity.
    Tconnect {
        #[arg(long = "in")]
        input: PathBuf,
        /// Domino bound per pair; defaults to n.
        #[arg(long)]
        max_dominoes: Option<usize>,
    },
    /// Shortest 1-offset trail between two vertices.
    FindTrail {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        /// Domino bound; defaults to n.
        #[arg(long)]
        max_dominoes: Option<usize>,
    },
    /// Edge weighting inducing a given group coloring.
    Weight {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        group: AbelianGroup,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Domino bound per trail; defaults to n.
        #[arg(long)]
        max_dominoes: Option<usize>,
    },
    /// Monte Carlo sweep over n and threshold multipliers.
    #[command(group(ArgGroup::new("kind").required(true).args(["offset", "tconnect"])))]
    Sweep {
        #[arg(long)]
        offset: bool,
        #[arg(long)]
        tconnect: bool,
        #[arg(long)]
        k: usize,
        #[arg(long, required_if_eq("offset", "true"), conflicts_with = "tconnect")]
        l: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        multipliers: Vec<f64>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_BUDGET)]
        budget: u64,
        /// Domino bound per pair for 𝒯-connectivity; defaults to n.
        #[arg(long)]
        max_dominoes: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        /// Record wall-clock search time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Render a sweep CSV as SVG.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> Result<Hypergraph> {
    Hypergraph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Sample { n, k, p, seed, out } => {
            let h = Hypergraph::sample(n, k, p, seed)?;
            write(&out, &h.to_text())?;
            println!("sampled {} edges", h.edge_count());
            Ok(OK)
        }
        Command::FindCycle {
            input,
            l,
            budget,
            cert,
        } => {
            let h = load(&input)?;
            match find_offset_cycle(&h, l, SearchBudget::new(budget)?)? {
                SearchOutcome::Found(c) => {
                    match cert {
                        Some(path) => {
                            write(&path, &c.to_text())?;
                            println!("found");
                        }
                        None => print!("{}", c.to_text()),
                    }
                    Ok(OK)
                }
                SearchOutcome::NoCycle => {
                    println!("no {l}-offset Hamilton cycle");
                    Ok(NEGATIVE)
                }
                SearchOutcome::BudgetExceeded => {
                    println!("budget of {budget} nodes exhausted");
                    Ok(BUDGET)
                }
            }
        }
        Command::VerifyCycle {
            input,
            cert,
            l,
            strict,
        } => {
            let h = load(&input)?;
            let c = OffsetCycleCertificate::parse(&read(&cert)?)
                .with_context(|| format!("parsing {}", cert.display()))?;
            let mut verdict = verify_offset_cycle(&h, &c, l)?;
            if strict && verdict.is_ok() {
                verdict = verify_offset_edge_sequence(&h, &c.edges(), l)?;
            }
            match verdict {
                Ok(()) => {
                    println!("valid");
                    Ok(OK)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Count {
            n,
            k,
            l,
            brute_force,
        } => {
            let gamma = gamma_count(n, k, l)?;
            println!("formula {gamma}");
            if brute_force {
                let count = brute_force_cycle_count(n, k, l)?;
                println!("enumerated {count}");
                let ratio = hyperlab::offset::BigRational::from_integer(count.into()) / gamma;
                println!("ratio {ratio}");
            }
            Ok(OK)
        }
        Command::Threshold {
            offset,
            n,
            k,
            l,
            mode,
            ..
        } => {
            if offset {
                let l = l.context("--offset needs --l")?;
                let t = offset_threshold(n, k, l, mode)?;
                println!("{:.6e} ({})", t.value, t.validity);
            } else {
                if n < 3 || k < 2 {
                    bail!("t-connectivity threshold needs n >= 3 and k >= 2");
                }
                println!("{:.6e}", t_threshold(n, k));
            }
            Ok(OK)
        }
        Command::Tconnect {
            input,
            max_dominoes,
        } => {
            let h = load(&input)?;
            let bound = max_dominoes.unwrap_or(h.n());
            let report = is_t_connected(&h, bound);
            match report.verdict {
                TConnectivity::Connected => {
                    let longest = report.trail_lengths().map(|(_, l)| l).max().unwrap_or(0);
                    println!(
                        "connected: {} pairs, longest witness {longest} dominoes",
                        report.witnesses.len()
                    );
                    Ok(OK)
                }
                TConnectivity::NotConnected { u, v } => {
                    println!("not connected: no 1-offset trail between {u} and {v}");
                    Ok(NEGATIVE)
                }
                TConnectivity::Undetermined { u, v } => {
                    println!(
                        "undetermined: no trail of at most {bound} dominoes between {u} and {v}"
                    );
                    Ok(BUDGET)
                }
            }
        }
        Command::FindTrail {
            input,
            u,
            v,
            max_dominoes,
        } => {
            let h = load(&input)?;
            let bound = max_dominoes.unwrap_or(h.n());
            match find_trail(&h, u, v, bound)? {
                TrailSearch::Found(t) => {
                    print!("{}", t.to_text());
                    Ok(OK)
                }
                TrailSearch::NotFound { exhausted: true } => {
                    println!("no 1-offset trail between {u} and {v}");
                    Ok(NEGATIVE)
                }
                TrailSearch::NotFound { exhausted: false } => {
                    println!("no trail of at most {bound} dominoes between {u} and {v}");
                    Ok(BUDGET)
                }
            }
        }
        Command::Weight {
            input,
            coloring,
            group,
            out,
            max_dominoes,
        } => {
            let h = load(&input)?;
            let target = parse_coloring_for(&read(&coloring)?, &group, h.n())
                .with_context(|| format!("parsing {}", coloring.display()))?;
            let bound = max_dominoes.unwrap_or(h.n());
            match realize_weighting(&h, &target, bound) {
                Ok(r) => {
                    let text = format!("{}{}", r.weighting.to_text(&h), r.log_text());
                    match out {
                        Some(path) => {
                            write(&path, &text)?;
                            println!("realized in {} rounds", r.rounds.len());
                        }
                        None => print!("{text}"),
                    }
                    Ok(OK)
                }
                Err(e @ WeightingError::TrailNotFound { exhausted, .. }) => {
                    println!("{e}");
                    Ok(if exhausted { NEGATIVE } else { BUDGET })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Sweep {
            offset,
            k,
            l,
            n_list,
            multipliers,
            trials,
            seed,
            out,
            budget,
            max_dominoes,
            threads,
            timing,
            ..
        } => {
            let kind = if offset {
                SweepKind::OffsetCycle {
                    l: l.context("--offset needs --l")?,
                }
            } else {
                SweepKind::TConnect
            };
            let mut config = SweepConfig::new(kind, k, n_list, multipliers, trials, seed);
            config.budget = budget;
            config.max_dominoes = max_dominoes;
            config.threads = threads;
            config.record_timing = timing;
            let records = run_sweep(&config)?;
            for r in records.iter().filter(|r| r.timeout_warning()) {
                eprintln!(
                    "warning: n={} multiplier={}: {} of {} trials timed out",
                    r.n, r.multiplier, r.timeouts, r.trials
                );
            }
            write(&out, &write_csv(&records))?;
            println!("wrote {} records", records.len());
            Ok(OK)
        }
        Command::Plot { input, out } => {
            let records =
                read_csv(&read(&input)?).with_context(|| format!("parsing {}", input.display()))?;
            write(&out, &render_plot(&records)?)?;
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
