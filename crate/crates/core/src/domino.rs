//! Dominoes: ordered pairs of edges `{s} ∪ B`, `B ∪ {t}` sharing a (k-1)-block.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::hypergraph::{write_vertices, Hypergraph, Vertex};

/// Owned domino `(start, block, end)`; `block` is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domino {
    pub start: Vertex,
    pub block: Vec<Vertex>,
    pub end: Vertex,
}

impl Domino {
    pub fn new(start: Vertex, mut block: Vec<Vertex>, end: Vertex) -> Self {
        block.sort_unstable();
        Self { start, block, end }
    }

    /// `{start} ∪ block`, sorted.
    pub fn first_edge(&self) -> Vec<Vertex> {
        with_vertex(&self.block, self.start)
    }

    /// `block ∪ {end}`, sorted.
    pub fn second_edge(&self) -> Vec<Vertex> {
        with_vertex(&self.block, self.end)
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            block: self.block.clone(),
            end: self.start,
        }
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | ", self.start)?;
        write_vertices(f, &self.block)?;
        write!(f, " | {}", self.end)
    }
}

pub(crate) fn with_vertex(block: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut e = Vec::with_capacity(block.len() + 1);
    e.extend_from_slice(block);
    let pos = e.partition_point(|&x| x < v);
    e.insert(pos, v);
    e
}

/// Borrowed domino inside a [`DominoIndex`], carrying the ids of its two edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominoRef {
    pub start: Vertex,
    pub block: usize,
    pub end: Vertex,
    pub first_edge: usize,
    pub second_edge: usize,
}

#[derive(Debug, Clone)]
struct Block {
    vertices: Vec<Vertex>,
    /// `(x, id of block ∪ {x})`, sorted by `x`; always at least two entries.
    extensions: Vec<(Vertex, usize)>,
}

/// All dominoes of a hypergraph, grouped by start vertex.
///
/// Only (k-1)-blocks lying in two or more edges are stored; the dominoes of a
/// block with `d` extensions are its `d(d-1)` ordered extension pairs, and are
/// produced on demand by [`from`](Self::from).
#[derive(Debug, Clone)]
pub struct DominoIndex {
    blocks: Vec<Block>,
    /// vertex -> (block, position of the vertex in the block's extensions)
    starts: Vec<Vec<(usize, usize)>>,
    count: usize,
}

impl DominoIndex {
    pub fn new(h: &Hypergraph) -> Self {
        let k = h.k();
        let mut by_block: FxHashMap<Vec<Vertex>, Vec<(Vertex, usize)>> = FxHashMap::default();
        let mut block = Vec::with_capacity(k - 1);
        for (id, edge) in h.edges().enumerate() {
            for skip in 0..k {
                block.clear();
                block.extend(
                    edge.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                by_block
                    .entry(block.clone())
                    .or_default()
                    .push((edge[skip], id));
            }
        }
        let mut blocks: Vec<Block> = by_block
            .into_iter()
            .filter(|(_, ext)| ext.len() >= 2)
            .map(|(vertices, mut extensions)| {
                extensions.sort_unstable();
                Block {
                    vertices,
                    extensions,
                }
            })
            .collect();
        blocks.sort_unstable_by(|a, b| a.vertices.cmp(&b.vertices));
        let mut starts = vec![Vec::new(); h.n()];
        let mut count = 0;
        for (b, blk) in blocks.iter().enumerate() {
            let d = blk.extensions.len();
            count += d * (d - 1);
            for (pos, &(x, _)) in blk.extensions.iter().enumerate() {
                starts[x].push((b, pos));
            }
        }
        Self {
            blocks,
            starts,
            count,
        }
    }

    /// Total number of dominoes.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn vertex_count(&self) -> usize {
        self.starts.len()
    }

    pub fn block(&self, id: usize) -> &[Vertex] {
        &self.blocks[id].vertices
    }

    /// Dominoes starting at `s`, ordered by block then end vertex.
    pub fn from(&self, s: Vertex) -> impl Iterator<Item = DominoRef> + '_ {
        self.starts[s].iter().flat_map(move |&(b, pos)| {
            let ext = &self.blocks[b].extensions;
            let first_edge = ext[pos].1;
            ext.iter().enumerate().filter(move |&(i, _)| i != pos).map(
                move |(_, &(t, second_edge))| DominoRef {
                    start: s,
                    block: b,
                    end: t,
                    first_edge,
                    second_edge,
                },
            )
        })
    }

    /// Whether `s` starts any domino.
    pub fn has_from(&self, s: Vertex) -> bool {
        !self.starts[s].is_empty()
    }

    pub fn to_owned(&self, d: DominoRef) -> Domino {
        Domino {
            start: d.start,
            block: self.blocks[d.block].vertices.clone(),
            end: d.end,
        }
    }

    /// Every domino, materialized and sorted.
    pub fn all(&self) -> Vec<Domino> {
        let mut out: Vec<Domino> = (0..self.starts.len())
            .flat_map(|s| self.from(s).map(|d| self.to_owned(d)).collect::<Vec<_>>())
            .collect();
        out.sort();
        out
    }
}
