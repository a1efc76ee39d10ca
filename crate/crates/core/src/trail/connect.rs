//! All-pairs 𝒯-connectivity.

use super::search::{TrailSearch, TrailSearcher};
use super::{verify_trail, TrailCertificate, TrailMode};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TConnectivity {
    /// Every pair has a verified witness trail.
    Connected,
    /// The pair provably has no 1-offset trail of any length.
    NotConnected { u: Vertex, v: Vertex },
    /// No pair was refuted, but this pair hit the domino bound.
    Undetermined { u: Vertex, v: Vertex },
}

#[derive(Debug, Clone)]
pub struct TConnectivityReport {
    pub verdict: TConnectivity,
    pub max_dominoes: usize,
    /// Witness for every pair `(u, v)`, `u < v`, in lexicographic pair order.
    /// Filled only for connected hypergraphs.
    pub witnesses: Vec<((Vertex, Vertex), TrailCertificate)>,
}

impl TConnectivityReport {
    pub fn is_connected(&self) -> bool {
        self.verdict == TConnectivity::Connected
    }

    /// Cached witness from `u` to `v`, reversed if stored the other way.
    pub fn witness(&self, u: Vertex, v: Vertex) -> Option<TrailCertificate> {
        let key = (u.min(v), u.max(v));
        let i = self
            .witnesses
            .binary_search_by_key(&key, |(p, _)| *p)
            .ok()?;
        let t = &self.witnesses[i].1;
        Some(if u < v { t.clone() } else { t.reversed() })
    }

    /// Witness lengths in dominoes, in pair order.
    pub fn trail_lengths(&self) -> impl Iterator<Item = ((Vertex, Vertex), usize)> + '_ {
        self.witnesses.iter().map(|(p, t)| (*p, t.len()))
    }
}

/// Tests every unordered pair for a 1-offset trail of at most `max_dominoes`
/// dominoes.
///
/// Pairs are scanned as (0,1), (0,2), ..., (1,2), ...; each is first tried
/// with a single domino and otherwise searched. The scan stops at the first
/// pair refuted outright. Every stored witness is re-verified.
pub fn is_t_connected(h: &Hypergraph, max_dominoes: usize) -> TConnectivityReport {
    let n = h.n();
    let bound = max_dominoes.max(1);
    let mut searcher = TrailSearcher::new(h);
    let mut witnesses = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut undetermined = None;
    for u in 0..n {
        for v in u + 1..n {
            let direct = searcher.length2(u, v).expect("distinct in-range pair");
            let trail = match direct {
                Some(t) => t,
                None => match searcher.find(u, v, bound).expect("distinct in-range pair") {
                    TrailSearch::Found(t) => t,
                    TrailSearch::NotFound { exhausted: true } => {
                        return TConnectivityReport {
                            verdict: TConnectivity::NotConnected { u, v },
                            max_dominoes: bound,
                            witnesses: Vec::new(),
                        };
                    }
                    TrailSearch::NotFound { exhausted: false } => {
                        undetermined.get_or_insert((u, v));
                        continue;
                    }
                },
            };
            debug_assert_eq!(
                verify_trail(h, &trail, u, v, TrailMode::Positional),
                Ok(Ok(()))
            );
            if undetermined.is_none() {
                witnesses.push(((u, v), trail));
            }
        }
    }
    if let Some((u, v)) = undetermined {
        return TConnectivityReport {
            verdict: TConnectivity::Undetermined { u, v },
            max_dominoes: bound,
            witnesses: Vec::new(),
        };
    }
    let all_verified = witnesses
        .iter()
        .all(|((u, v), t)| verify_trail(h, t, *u, *v, TrailMode::Positional) == Ok(Ok(())));
    assert!(all_verified, "trail search produced an invalid witness");
    TConnectivityReport {
        verdict: TConnectivity::Connected,
        max_dominoes: bound,
        witnesses,
    }
}
