//! Vertex colorings by group elements and edge weightings that induce them.
//!
//! An edge weighting `W` induces the coloring `c'(v) = Σ_{e ∋ v} W(e)`.
//! [`realize_weighting`] builds a `W` inducing any prescribed target on a
//! 𝒯-connected hypergraph whose group order is coprime to k:
//!
//! 1. Solve `k·h = Σ_v target(v)`, put `h` on the first edge, zero elsewhere.
//!    Then `Σ_v c'(v) = k·h = Σ_v target(v)`.
//! 2. While some vertex is wrong, take the smallest wrong `x` and the smallest
//!    other wrong `y` (which exists since the sums agree), let
//!    `g = c'(x) - target(x)` and add `-g, +g, -g, ...` along the edges of a
//!    1-offset xy-trail. Block vertices get `-g + g` per domino and interior
//!    singletons `+g - g`, so only `x` (down by `g`) and `y` (up by `g`) move.
//!
//! Each round fixes `x` and never touches a correct vertex's color, so at most
//! n - 1 rounds run.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupElement, GroupError};
use crate::hypergraph::{Hypergraph, HypergraphError, Vertex};
use crate::trail::{TConnectivityReport, TrailCertificate, TrailSearch, TrailSearcher};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coloring has {found} colors for {expected} vertices")]
    ColoringSize { expected: usize, found: usize },
    #[error("color of vertex {0} is not an element of the group")]
    ForeignColor(Vertex),
    #[error("weighting groups differ")]
    GroupMismatch,
    #[error("weighting has {found} entries for {expected} edges")]
    WeightingSize { expected: usize, found: usize },
    #[error("edge {0:?} is not in the hypergraph")]
    ForeignEdge(Vec<Vertex>),
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("no 1-offset trail from {x} to {y}{}", if *exhausted { "" } else { " within the bound" })]
    TrailNotFound {
        x: Vertex,
        y: Vertex,
        exhausted: bool,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    /// No monochromatic edge.
    Weak,
    /// All colors within every edge distinct.
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupColoring {
    pub group: AbelianGroup,
    pub colors: Vec<GroupElement>,
}

impl GroupColoring {
    pub fn new(group: AbelianGroup, colors: Vec<GroupElement>) -> Result<Self, WeightingError> {
        if let Some(v) = colors.iter().position(|c| !group.contains(c)) {
            return Err(WeightingError::ForeignColor(v));
        }
        Ok(Self { group, colors })
    }

    pub fn uniform(group: AbelianGroup, n: usize) -> Self {
        let colors = vec![group.identity(); n];
        Self { group, colors }
    }

    /// Group sum of all colors.
    pub fn total(&self) -> GroupElement {
        let mut acc = self.group.identity();
        for c in &self.colors {
            self.group.add_assign(&mut acc, c);
        }
        acc
    }

    /// `group <spec>` header, then `v r_1,...,r_r` per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\n", self.group);
        for (v, c) in self.colors.iter().enumerate() {
            writeln!(out, "{v} {c}").expect("string write");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, WeightingError> {
        let mut group = None;
        let mut entries: Vec<(usize, Vertex, GroupElement)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            let err = |message: String| WeightingError::Parse {
                line: lineno,
                message,
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(grp) = &group else {
                let spec = line
                    .strip_prefix("group")
                    .ok_or_else(|| err("expected \"group <spec>\" header".into()))?;
                group = Some(
                    spec.trim()
                        .parse::<AbelianGroup>()
                        .map_err(|e| err(e.to_string()))?,
                );
                continue;
            };
            let (v, elem) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(format!("expected \"v residues\", found {line:?}")))?;
            let v: Vertex = v.parse().map_err(|_| err(format!("bad vertex {v:?}")))?;
            let elem = grp.parse_element(elem).map_err(|e| err(e.to_string()))?;
            entries.push((lineno, v, elem));
        }
        let group = group.ok_or(WeightingError::Parse {
            line: 1,
            message: "missing \"group <spec>\" header".into(),
        })?;
        let n = entries.len();
        let mut colors: Vec<Option<GroupElement>> = vec![None; n];
        for (line, v, elem) in entries {
            if v >= n || colors[v].is_some() {
                return Err(WeightingError::Parse {
                    line,
                    message: format!("vertex {v} repeated or outside 0..{n}"),
                });
            }
            colors[v] = Some(elem);
        }
        Ok(Self {
            group,
            colors: colors.into_iter().map(|c| c.expect("all filled")).collect(),
        })
    }
}

/// Edge weights indexed by edge id of the host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    pub group: AbelianGroup,
    pub weights: Vec<GroupElement>,
}

impl EdgeWeighting {
    pub fn zero(group: AbelianGroup, h: &Hypergraph) -> Self {
        let weights = vec![group.identity(); h.edge_count()];
        Self { group, weights }
    }

    /// Weighting from `(edge, weight)` pairs; unlisted edges get the identity.
    pub fn from_entries(
        h: &Hypergraph,
        group: AbelianGroup,
        entries: &[(Vec<Vertex>, GroupElement)],
    ) -> Result<Self, WeightingError> {
        let mut w = Self::zero(group, h);
        for (edge, weight) in entries {
            let id = h
                .edge_id(edge)
                .ok_or_else(|| WeightingError::ForeignEdge(edge.clone()))?;
            if !w.group.contains(weight) {
                return Err(GroupError::ComponentMismatch {
                    expected: w.group.moduli().len(),
                    found: weight.residues().len(),
                }
                .into());
            }
            w.weights[id] = weight.clone();
        }
        Ok(w)
    }

    /// Edges with a non-identity weight, by edge id.
    pub fn support(&self) -> impl Iterator<Item = (usize, &GroupElement)> + '_ {
        let zero = self.group.identity();
        self.weights
            .iter()
            .enumerate()
            .filter(move |(_, w)| **w != zero)
    }

    /// `group <spec>` header, then `e_1 ... e_k | r_1,...,r_r` per non-identity edge.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = format!("group {}\n", self.group);
        for (id, w) in self.support() {
            let verts: Vec<String> = h.edge(id).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{} | {w}", verts.join(" ")).expect("string write");
        }
        out
    }

    pub fn parse(h: &Hypergraph, text: &str) -> Result<Self, WeightingError> {
        let mut group: Option<AbelianGroup> = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| WeightingError::Parse {
                line: i + 1,
                message,
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(grp) = &group else {
                let spec = line
                    .strip_prefix("group")
                    .ok_or_else(|| err("expected \"group <spec>\" header".into()))?;
                group = Some(
                    spec.trim()
                        .parse()
                        .map_err(|e: GroupError| err(e.to_string()))?,
                );
                continue;
            };
            let (edge, weight) = line
                .split_once('|')
                .ok_or_else(|| err(format!("expected \"edge | residues\", found {line:?}")))?;
            let edge = edge
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<Vertex>, _>>()
                .map_err(|_| err(format!("bad edge {edge:?}")))?;
            let weight = grp.parse_element(weight).map_err(|e| err(e.to_string()))?;
            entries.push((edge, weight));
        }
        let group = group.ok_or(WeightingError::Parse {
            line: 1,
            message: "missing \"group <spec>\" header".into(),
        })?;
        Self::from_entries(h, group, &entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringVerdict {
    Valid,
    /// The edge (by id) that is monochromatic (weak) or repeats a color (strong).
    Violated {
        edge: usize,
    },
}

pub fn validate_coloring(h: &Hypergraph, c: &GroupColoring, mode: ColoringMode) -> ColoringVerdict {
    for (id, edge) in h.edges().enumerate() {
        let bad = match mode {
            ColoringMode::Weak => edge.iter().all(|&v| c.colors[v] == c.colors[edge[0]]),
            ColoringMode::Strong => edge
                .iter()
                .enumerate()
                .any(|(i, &a)| edge[i + 1..].iter().any(|&b| c.colors[a] == c.colors[b])),
        };
        if bad {
            return ColoringVerdict::Violated { edge: id };
        }
    }
    ColoringVerdict::Valid
}

/// Greedy coloring: vertices in increasing order take the first palette entry
/// that creates no violation among already-colored vertices. On failure
/// returns the vertex that could not be colored.
pub fn greedy_coloring(
    h: &Hypergraph,
    mode: ColoringMode,
    group: &AbelianGroup,
    palette: &[GroupElement],
) -> Result<GroupColoring, Vertex> {
    let n = h.n();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let choice = (0..palette.len()).find(|&c| {
            h.incident(v).iter().all(|&eid| {
                let others = h.edge(eid).iter().filter(|&&x| x != v);
                match mode {
                    ColoringMode::Weak => !others.clone().all(|&x| colors[x] == Some(c)),
                    ColoringMode::Strong => others.clone().all(|&x| colors[x] != Some(c)),
                }
            })
        });
        match choice {
            Some(c) => colors[v] = Some(c),
            None => return Err(v),
        }
    }
    Ok(GroupColoring {
        group: group.clone(),
        colors: colors
            .into_iter()
            .map(|c| palette[c.expect("every vertex colored")].clone())
            .collect(),
    })
}

/// `c'(v) = Σ_{e ∋ v} W(e)`.
pub fn induced_coloring(
    h: &Hypergraph,
    w: &EdgeWeighting,
) -> Result<GroupColoring, WeightingError> {
    if w.weights.len() != h.edge_count() {
        return Err(WeightingError::WeightingSize {
            expected: h.edge_count(),
            found: w.weights.len(),
        });
    }
    let mut colors = vec![w.group.identity(); h.n()];
    for (edge, weight) in h.edges().zip(&w.weights) {
        for &v in edge {
            w.group.add_assign(&mut colors[v], weight);
        }
    }
    Ok(GroupColoring {
        group: w.group.clone(),
        colors,
    })
}

/// One correction round of [`realize_weighting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub x: Vertex,
    pub y: Vertex,
    pub g: GroupElement,
    pub trail: TrailCertificate,
    /// Σ_v c'(v) after the round.
    pub induced_total: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub weighting: EdgeWeighting,
    /// Weight placed on the first edge: the solution of `k·h = Σ target`.
    pub h: GroupElement,
    pub rounds: Vec<Round>,
}

impl Realization {
    /// The round log as `#` comment lines.
    pub fn log_text(&self) -> String {
        let mut out = format!("# initial weight {} on edge 0\n", self.h);
        for (i, r) in self.rounds.iter().enumerate() {
            writeln!(
                out,
                "# round {}: x={} y={} g={} trail={} dominoes",
                i + 1,
                r.x,
                r.y,
                r.g,
                r.trail.len()
            )
            .expect("string write");
        }
        out
    }
}

/// Builds an edge weighting of `h` whose induced coloring equals `target`,
/// searching trails of at most `max_dominoes` dominoes.
pub fn realize_weighting(
    h: &Hypergraph,
    target: &GroupColoring,
    max_dominoes: usize,
) -> Result<Realization, WeightingError> {
    let mut searcher = TrailSearcher::new(h);
    realize_with(h, target, |x, y| {
        match searcher.find(x, y, max_dominoes.max(1)) {
            Ok(TrailSearch::Found(t)) => Ok(t),
            Ok(TrailSearch::NotFound { exhausted }) => {
                Err(WeightingError::TrailNotFound { x, y, exhausted })
            }
            Err(_) => Err(WeightingError::TrailNotFound {
                x,
                y,
                exhausted: true,
            }),
        }
    })
}

/// As [`realize_weighting`], drawing trails from a connectivity report's
/// cached witnesses.
pub fn realize_weighting_with_report(
    h: &Hypergraph,
    target: &GroupColoring,
    report: &TConnectivityReport,
) -> Result<Realization, WeightingError> {
    realize_with(h, target, |x, y| {
        report.witness(x, y).ok_or(WeightingError::TrailNotFound {
            x,
            y,
            exhausted: false,
        })
    })
}

fn realize_with<F>(
    h: &Hypergraph,
    target: &GroupColoring,
    mut trail_for: F,
) -> Result<Realization, WeightingError>
where
    F: FnMut(Vertex, Vertex) -> Result<TrailCertificate, WeightingError>,
{
    let n = h.n();
    if target.colors.len() != n {
        return Err(WeightingError::ColoringSize {
            expected: n,
            found: target.colors.len(),
        });
    }
    if let Some(v) = target.colors.iter().position(|c| !target.group.contains(c)) {
        return Err(WeightingError::ForeignColor(v));
    }
    let group = &target.group;
    let total = target.total();
    let h_weight = group.solve_scaled(h.k() as u64, &total)?;
    if h.edge_count() == 0 {
        return Err(WeightingError::NoEdges);
    }
    let mut weighting = EdgeWeighting::zero(group.clone(), h);
    weighting.weights[0] = h_weight.clone();
    let mut induced = vec![group.identity(); n];
    for &v in h.edge(0) {
        induced[v] = h_weight.clone();
    }
    let mut wrong: BTreeSet<Vertex> = (0..n).filter(|&v| induced[v] != target.colors[v]).collect();
    let mut rounds = Vec::new();
    while let Some(&x) = wrong.first() {
        let y = *wrong
            .iter()
            .nth(1)
            .expect("sums agree, so a second wrong vertex exists");
        let g = group.sub(&induced[x], &target.colors[x])?;
        let trail = trail_for(x, y)?;
        let mut touched = Vec::new();
        for (i, edge) in trail.edges().iter().enumerate() {
            let id = h
                .edge_id_sorted(edge)
                .ok_or_else(|| WeightingError::ForeignEdge(edge.clone()))?;
            let apply = |a: &mut GroupElement| {
                if i % 2 == 0 {
                    group.sub_assign(a, &g)
                } else {
                    group.add_assign(a, &g)
                }
            };
            apply(&mut weighting.weights[id]);
            for &v in edge {
                apply(&mut induced[v]);
                touched.push(v);
            }
        }
        for v in touched {
            if induced[v] == target.colors[v] {
                wrong.remove(&v);
            } else {
                wrong.insert(v);
            }
        }
        let mut induced_total = group.identity();
        for c in &induced {
            group.add_assign(&mut induced_total, c);
        }
        rounds.push(Round {
            x,
            y,
            g,
            trail,
            induced_total,
        });
        assert!(rounds.len() <= n, "weighting rounds exceeded vertex count");
    }
    Ok(Realization {
        weighting,
        h: h_weight,
        rounds,
    })
}

/// Parses a coloring file and checks it names the expected group.
pub fn parse_coloring_for(
    text: &str,
    group: &AbelianGroup,
    n: usize,
) -> Result<GroupColoring, WeightingError> {
    let c = GroupColoring::parse(text)?;
    if &c.group != group {
        return Err(WeightingError::GroupMismatch);
    }
    if c.colors.len() != n {
        return Err(WeightingError::ColoringSize {
            expected: n,
            found: c.colors.len(),
        });
    }
    Ok(c)
}

impl From<HypergraphError> for WeightingError {
    fn from(e: HypergraphError) -> Self {
        WeightingError::Parse {
            line: match e {
                HypergraphError::Parse { line, .. } => line,
                _ => 0,
            },
            message: e.to_string(),
        }
    }
}
