//! 1-offset trails and 𝒯-connectivity.
//!
//! A 1-offset uv-trail is a chain of dominoes `(s_0, B_1, s_1), (s_1, B_2, s_2),
//! ..., (s_{m-1}, B_m, s_m)` with `s_0 = u`, `s_m = v`, whose `2m` edges
//! `{s_{i-1}} ∪ B_i`, `B_i ∪ {s_i}` are distinct edges of the hypergraph.
//! Vertices may repeat. Validity is positional: the groups define the trail,
//! and literal intersections of consecutive edges may be larger than the
//! nominal 1 or k-1 when vertices recur. [`TrailMode::Strict`] additionally
//! demands the literal sizes.

mod connect;
mod search;

use std::fmt;

use statrs::function::gamma::ln_gamma;
use thiserror::Error;

pub use connect::{is_t_connected, TConnectivity, TConnectivityReport};
pub use search::{find_trail, has_length2_trail, TrailSearch, TrailSearcher};

use crate::combinatorics::binomial;
use crate::domino::Domino;
use crate::hypergraph::{Hypergraph, HypergraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailError {
    #[error("trail endpoints must differ (u = v = {0})")]
    SameEndpoints(Vertex),
    #[error("vertex {vertex} out of range 0..{n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("max_dominoes must be at least 1")]
    ZeroBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrailCertificate {
    pub dominoes: Vec<Domino>,
}

impl TrailCertificate {
    pub fn new(dominoes: Vec<Domino>) -> Self {
        Self { dominoes }
    }

    /// Number of dominoes; the trail has twice as many edges.
    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    pub fn start(&self) -> Option<Vertex> {
        self.dominoes.first().map(|d| d.start)
    }

    pub fn end(&self) -> Option<Vertex> {
        self.dominoes.last().map(|d| d.end)
    }

    /// The `2m` edges in trail order, each sorted.
    pub fn edges(&self) -> Vec<Vec<Vertex>> {
        self.dominoes
            .iter()
            .flat_map(|d| [d.first_edge(), d.second_edge()])
            .collect()
    }

    /// The same trail walked from `v` back to `u`.
    pub fn reversed(&self) -> Self {
        Self {
            dominoes: self.dominoes.iter().rev().map(Domino::reversed).collect(),
        }
    }

    /// One domino per line as `s | b_1 ... b_{k-1} | t`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.dominoes {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut dominoes = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || HypergraphError::Parse {
                line: i + 1,
                message: format!("expected \"s | block | t\", found {line:?}"),
            };
            let parts: Vec<&str> = line.split('|').collect();
            let [s, block, t] = parts[..] else {
                return Err(bad());
            };
            let s = s.trim().parse().map_err(|_| bad())?;
            let t = t.trim().parse().map_err(|_| bad())?;
            let block = block
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<Vertex>, _>>()
                .map_err(|_| bad())?;
            dominoes.push(Domino::new(s, block, t));
        }
        Ok(Self { dominoes })
    }
}

impl fmt::Display for TrailCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrailMode {
    #[default]
    Positional,
    Strict,
}

/// Why a trail certificate fails. Positions are 0-based domino or edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailViolation {
    #[error("trail has no dominoes")]
    Empty,
    #[error("trail runs {found_start} -> {found_end}, expected {u} -> {v}")]
    EndpointMismatch {
        u: Vertex,
        v: Vertex,
        found_start: Vertex,
        found_end: Vertex,
    },
    #[error("chain breaks between dominoes {position} and {}", position + 1)]
    ChainBreak { position: usize },
    #[error("domino {position} is malformed: {reason}")]
    MalformedDomino {
        position: usize,
        reason: &'static str,
    },
    #[error("edge {position} is not in the hypergraph")]
    EdgeAbsent { position: usize },
    #[error("edge {position} repeats edge {first}")]
    EdgeRepeated { position: usize, first: usize },
    #[error("edges {position} and {} meet in {found} vertices, expected {expected}", position + 1)]
    Junction {
        position: usize,
        expected: usize,
        found: usize,
    },
}

/// Checks `cert` as a uv-trail of `h`.
pub fn verify_trail(
    h: &Hypergraph,
    cert: &TrailCertificate,
    u: Vertex,
    v: Vertex,
    mode: TrailMode,
) -> Result<Result<(), TrailViolation>, TrailError> {
    if u == v {
        return Err(TrailError::SameEndpoints(u));
    }
    for x in [u, v] {
        if x >= h.n() {
            return Err(TrailError::VertexOutOfRange {
                vertex: x,
                n: h.n(),
            });
        }
    }
    Ok(check(h, cert, u, v, mode))
}

fn check(
    h: &Hypergraph,
    cert: &TrailCertificate,
    u: Vertex,
    v: Vertex,
    mode: TrailMode,
) -> Result<(), TrailViolation> {
    let (Some(start), Some(end)) = (cert.start(), cert.end()) else {
        return Err(TrailViolation::Empty);
    };
    if start != u || end != v {
        return Err(TrailViolation::EndpointMismatch {
            u,
            v,
            found_start: start,
            found_end: end,
        });
    }
    for (position, pair) in cert.dominoes.windows(2).enumerate() {
        if pair[0].end != pair[1].start {
            return Err(TrailViolation::ChainBreak { position });
        }
    }
    let k = h.k();
    for (position, d) in cert.dominoes.iter().enumerate() {
        let reason = if d.block.len() != k - 1 {
            Some("block size is not k - 1")
        } else if d.block.windows(2).any(|w| w[0] >= w[1]) {
            Some("block has repeated vertices")
        } else if d.block.contains(&d.start) {
            Some("start lies in the block")
        } else if d.block.contains(&d.end) {
            Some("end lies in the block")
        } else if d.start == d.end {
            Some("start equals end")
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(TrailViolation::MalformedDomino { position, reason });
        }
    }
    let edges = cert.edges();
    let mut ids = Vec::with_capacity(edges.len());
    for (position, e) in edges.iter().enumerate() {
        let id = h
            .edge_id_sorted(e)
            .ok_or(TrailViolation::EdgeAbsent { position })?;
        if let Some(first) = ids.iter().position(|&x| x == id) {
            return Err(TrailViolation::EdgeRepeated { position, first });
        }
        ids.push(id);
    }
    if mode == TrailMode::Strict {
        for (position, pair) in edges.windows(2).enumerate() {
            let expected = if position % 2 == 0 { k - 1 } else { 1 };
            let found = pair[0].iter().filter(|x| pair[1].contains(x)).count();
            if found != expected {
                return Err(TrailViolation::Junction {
                    position,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(())
}

/// `sqrt((k-1)! ln n / n^k)`, the 𝒯-connectivity threshold of H(n, p, k).
pub fn t_threshold(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    (0.5 * (ln_gamma(kf) + nf.ln().ln() - kf * nf.ln())).exp()
}

/// `(1 - p^2)^C(n-2, k-1)`: probability that a fixed pair has no 1-offset
/// trail of length 2 in H(n, p, k).
pub fn length2_absence_prob(n: usize, k: usize, p: f64) -> f64 {
    let pairs = binomial(n.saturating_sub(2) as u64, k.saturating_sub(1) as u64)
        .map(|c| c as f64)
        .unwrap_or(f64::INFINITY);
    if pairs == 0.0 {
        return 1.0;
    }
    (pairs * (-p * p).ln_1p()).exp()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Two-domino trail from 0 to 6 in a 4-uniform hypergraph whose second and
    /// third edges meet in two vertices.
    pub(crate) fn shared_block_trail() -> (Hypergraph, TrailCertificate) {
        let cert = TrailCertificate::new(vec![
            Domino::new(0, vec![1, 2, 3], 4),
            Domino::new(4, vec![5, 0, 1], 6),
        ]);
        let h = Hypergraph::new(7, 4, &cert.edges()).unwrap();
        (h, cert)
    }

    #[test]
    fn shared_block_trail_positional_ok_strict_fails() {
        let (h, cert) = shared_block_trail();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(
            verify_trail(&h, &cert, 0, 6, TrailMode::Positional),
            Ok(Ok(()))
        );
        // E_2 = {1,2,3,4}, E_3 = {0,1,4,5}: they share {1, 4}
        assert_eq!(
            verify_trail(&h, &cert, 0, 6, TrailMode::Strict),
            Ok(Err(TrailViolation::Junction {
                position: 1,
                expected: 1,
                found: 2
            }))
        );
        assert_eq!(
            verify_trail(&h, &cert.reversed(), 6, 0, TrailMode::Positional),
            Ok(Ok(()))
        );
    }

    #[test]
    fn single_domino_both_modes() {
        let h = Hypergraph::new(4, 3, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let cert = TrailCertificate::new(vec![Domino::new(0, vec![1, 2], 3)]);
        assert_eq!(
            verify_trail(&h, &cert, 0, 3, TrailMode::Positional),
            Ok(Ok(()))
        );
        assert_eq!(verify_trail(&h, &cert, 0, 3, TrailMode::Strict), Ok(Ok(())));
    }

    #[test]
    fn violations_are_named() {
        let (h, cert) = shared_block_trail();
        assert!(matches!(
            verify_trail(&h, &cert, 0, 5, TrailMode::Positional),
            Ok(Err(TrailViolation::EndpointMismatch { .. }))
        ));
        let mut broken = cert.clone();
        broken.dominoes[1].start = 3;
        broken.dominoes[1].block = vec![0, 1, 5];
        assert_eq!(
            verify_trail(&h, &broken, 0, 6, TrailMode::Positional),
            Ok(Err(TrailViolation::ChainBreak { position: 0 }))
        );
        let h_missing = Hypergraph::new(7, 4, &cert.edges()[..3]).unwrap();
        assert_eq!(
            verify_trail(&h_missing, &cert, 0, 6, TrailMode::Positional),
            Ok(Err(TrailViolation::EdgeAbsent { position: 3 }))
        );
        let back_and_forth = TrailCertificate::new(vec![
            Domino::new(0, vec![1, 2, 3], 4),
            Domino::new(4, vec![1, 2, 3], 0),
        ]);
        // second domino re-uses both edges; u = v is rejected first
        assert_eq!(
            verify_trail(&h, &back_and_forth, 0, 0, TrailMode::Positional),
            Err(TrailError::SameEndpoints(0))
        );
        let repeat = TrailCertificate::new(vec![
            Domino::new(0, vec![1, 2, 3], 4),
            Domino::new(4, vec![1, 2, 3], 0),
            Domino::new(0, vec![1, 2, 3], 4),
        ]);
        assert_eq!(
            verify_trail(&h, &repeat, 0, 4, TrailMode::Positional),
            Ok(Err(TrailViolation::EdgeRepeated {
                position: 2,
                first: 1
            }))
        );
        let malformed = TrailCertificate::new(vec![Domino::new(0, vec![0, 1, 2], 4)]);
        assert!(matches!(
            verify_trail(&h, &malformed, 0, 4, TrailMode::Positional),
            Ok(Err(TrailViolation::MalformedDomino { .. }))
        ));
        assert_eq!(
            verify_trail(
                &h,
                &TrailCertificate::new(vec![]),
                0,
                4,
                TrailMode::Positional
            ),
            Ok(Err(TrailViolation::Empty))
        );
    }

    #[test]
    fn text_round_trip() {
        let (_, cert) = shared_block_trail();
        let text = cert.to_text();
        assert_eq!(text, "0 | 1 2 3 | 4\n4 | 0 1 5 | 6\n");
        assert_eq!(TrailCertificate::parse(&text).unwrap(), cert);
        assert!(TrailCertificate::parse("0 | 1 2\n").is_err());
    }

    #[test]
    fn threshold_values() {
        assert!((t_threshold(100, 3) - (2.0 * 100f64.ln() / 1e6).sqrt()).abs() < 1e-15);
        assert!((t_threshold(100, 3) - 3.035e-3).abs() < 1e-6);
        assert!((t_threshold(100, 4) - (6.0 * 100f64.ln() / 1e8).sqrt()).abs() < 1e-15);
        assert!((t_threshold(100, 4) - 5.25e-4).abs() < 1e-6);
        // t(n)/t(4n) = 2^k sqrt(ln n / ln 4n)
        for k in [3usize, 4, 5] {
            let n = 1000;
            let ratio = t_threshold(n, k) / t_threshold(4 * n, k);
            let expected = 2f64.powi(k as i32) * ((n as f64).ln() / (4.0 * n as f64).ln()).sqrt();
            assert!((ratio / expected - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn absence_probability() {
        assert_eq!(length2_absence_prob(20, 3, 0.0), 1.0);
        assert_eq!(length2_absence_prob(20, 3, 1.0), 0.0);
        assert_eq!(length2_absence_prob(4, 3, 1.0), 0.0);
        let direct = (1.0f64 - 0.0025).powi(153);
        assert!((length2_absence_prob(20, 3, 0.05) - direct).abs() < 1e-12);
        assert!((length2_absence_prob(20, 3, 0.05) - 0.6818).abs() < 1e-4);
    }
}
