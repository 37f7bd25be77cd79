//! Metric graphs, their unit subdivisions, and directed exports.
//!
//! Gears are laid out the same way everywhere in the crate: for an `n`-gear
//! the polygon vertices are `0..n`, the leaves are `n..2n`, side `i` is edge
//! `i` running from vertex `i` to vertex `(i + 1) % n`, and tooth `i` is edge
//! `n + i`. A primal gear and its dual therefore share vertex and edge
//! numbering and differ only in the tooth endpoints.

mod fixtures;
mod format;
mod gear;

pub use fixtures::{build_fig3_pair, fig6_pair, Fig3Variant};
pub use format::{parse_digraph, parse_graph, write_digraph, write_graph};
pub use gear::{build_gear, dual_gear, gear_to_digraph, validate_gear, Attach, GearSpec, ToothMode, Variant};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Polygon,
    Tooth,
    Plain,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Polygon => "polygon",
            EdgeClass::Tooth => "tooth",
            EdgeClass::Plain => "plain",
        }
    }
}

impl std::str::FromStr for EdgeClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "polygon" => Ok(EdgeClass::Polygon),
            "tooth" => Ok(EdgeClass::Tooth),
            "plain" => Ok(EdgeClass::Plain),
            other => Err(format!("unknown edge class `{other}`")),
        }
    }
}

/// An oriented edge; the coordinate `x` runs from 0 at `tail` to `length` at `head`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub length: f64,
    pub weight: f64,
    pub class: EdgeClass,
}

/// Which end of an edge touches a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricGraph {
    pub name: String,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl MetricGraph {
    pub fn new(name: impl Into<String>, vertex_count: usize, edges: Vec<Edge>) -> Self {
        Self {
            name: name.into(),
            vertex_count,
            edges,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Edge ends incident to each vertex, in edge order (a loop contributes both ends).
    pub fn incidences(&self) -> Vec<Vec<(usize, End)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (idx, e) in self.edges.iter().enumerate() {
            if e.tail < self.vertex_count {
                inc[e.tail].push((idx, End::Tail));
            }
            if e.head < self.vertex_count {
                inc[e.head].push((idx, End::Head));
            }
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.tail, e.head)).collect();
        connected(self.vertex_count, &pairs)
    }

    /// Same graph with every length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length *= factor;
        }
        g
    }

    /// Splits edge `edge` at coordinate `at`, inserting a new degree-2 vertex.
    ///
    /// The first piece keeps the original id; the second piece is appended.
    pub fn with_inserted_vertex(&self, edge: usize, at: f64) -> Result<Self> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::InvalidGraph(format!("no edge {edge}")))?
            .clone();
        if !(at > 0.0 && at < e.length) {
            return Err(Error::OutOfRange {
                edge,
                x: at,
                length: e.length,
            });
        }
        let mut g = self.clone();
        let mid = g.vertex_count;
        g.vertex_count += 1;
        g.edges[edge].head = mid;
        g.edges[edge].length = at;
        let id = g.edges.len();
        g.edges.push(Edge {
            id,
            tail: mid,
            head: e.head,
            length: e.length - at,
            ..e
        });
        Ok(g)
    }

    /// Lists every violated structural invariant; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            if e.tail >= self.vertex_count || e.head >= self.vertex_count {
                out.push(Violation::VertexOutOfRange { edge: idx });
            }
            if !(e.length > 0.0) || !e.length.is_finite() {
                out.push(Violation::NonPositiveLength { edge: idx });
            }
            if !(e.weight > 0.0) || !e.weight.is_finite() {
                out.push(Violation::NonPositiveWeight { edge: idx });
            }
        }
        if self.vertex_count == 0 {
            out.push(Violation::Empty);
        } else if !out.iter().any(|v| matches!(v, Violation::VertexOutOfRange { .. })) && !self.is_connected() {
            out.push(Violation::NotConnected);
        }
        out
    }
}

/// Role of a vertex in a subdivided gear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexRole {
    /// On the polygon cycle (original corner or interior point of a side).
    Polygon,
    ToothInterior,
    Leaf,
    /// Interior point of a plain edge, or an unclassified original vertex.
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub class: EdgeClass,
}

/// A graph whose edges all have unit length.
///
/// `paths[e]` lists the vertices replacing original edge `e` of the metric
/// graph it came from, ordered from the original tail to the original head.
/// Slot `j` of a path sits at coordinate `x = j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinatorialGraph {
    pub vertex_count: usize,
    pub edges: Vec<UnitEdge>,
    pub roles: Vec<VertexRole>,
    pub paths: Vec<Vec<usize>>,
    pub path_classes: Vec<EdgeClass>,
}

impl CombinatorialGraph {
    /// Neighbours of each vertex together with the index of the connecting edge.
    pub fn neighbors(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (idx, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            if e.u != e.v {
                adj[e.v].push((e.u, idx));
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        connected(self.vertex_count, &pairs)
    }

    /// Two-colouring as a `±1` vector, or `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<i8>> {
        let adj = self.neighbors();
        let mut color = vec![0i8; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start] != 0 {
                continue;
            }
            color[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if color[v] == 0 {
                        color[v] = -color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            if e.u >= self.vertex_count || e.v >= self.vertex_count {
                out.push(Violation::VertexOutOfRange { edge: idx });
            }
            if !(e.weight > 0.0) || !e.weight.is_finite() {
                out.push(Violation::NonPositiveWeight { edge: idx });
            }
        }
        if self.vertex_count == 0 {
            out.push(Violation::Empty);
        } else if out.is_empty() && !self.is_connected() {
            out.push(Violation::NotConnected);
        }
        out
    }
}

/// Replaces every edge of integer length `l` by a path of `l` unit edges.
///
/// Original vertices keep their indices; interior vertices of edge `e` are
/// appended in edge order, each path numbered from its tail side.
pub fn subdivide(g: &MetricGraph) -> Result<CombinatorialGraph> {
    let mut steps = Vec::with_capacity(g.edges.len());
    for (idx, e) in g.edges.iter().enumerate() {
        let rounded = e.length.round();
        if !(e.length > 0.0) || e.length != rounded {
            return Err(Error::NonIntegerLength {
                edge: idx,
                length: e.length,
            });
        }
        steps.push(rounded as usize);
    }

    let degree: Vec<usize> = (0..g.vertex_count).map(|v| g.degree(v)).collect();
    let mut roles: Vec<VertexRole> = (0..g.vertex_count)
        .map(|v| {
            if degree[v] == 1 {
                VertexRole::Leaf
            } else if g
                .edges
                .iter()
                .any(|e| e.class == EdgeClass::Polygon && (e.tail == v || e.head == v))
            {
                VertexRole::Polygon
            } else {
                VertexRole::Other
            }
        })
        .collect();

    let mut next = g.vertex_count;
    let mut edges = Vec::new();
    let mut paths = Vec::with_capacity(g.edges.len());
    for (e, &l) in g.edges.iter().zip(&steps) {
        let mut path = Vec::with_capacity(l + 1);
        path.push(e.tail);
        for _ in 1..l {
            path.push(next);
            roles.push(match e.class {
                EdgeClass::Polygon => VertexRole::Polygon,
                EdgeClass::Tooth => VertexRole::ToothInterior,
                EdgeClass::Plain => VertexRole::Other,
            });
            next += 1;
        }
        path.push(e.head);
        for w in path.windows(2) {
            edges.push(UnitEdge {
                u: w[0],
                v: w[1],
                weight: e.weight,
                class: e.class,
            });
        }
        paths.push(path);
    }

    Ok(CombinatorialGraph {
        vertex_count: next,
        edges,
        roles,
        paths,
        path_classes: g.edges.iter().map(|e| e.class).collect(),
    })
}

/// A directed graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub name: String,
    pub vertex_count: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(name: impl Into<String>, vertex_count: usize, arcs: Vec<(usize, usize)>) -> Self {
        Self {
            name: name.into(),
            vertex_count,
            arcs,
        }
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(t, _) in &self.arcs {
            d[t] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(_, h) in &self.arcs {
            d[h] += 1;
        }
        d
    }

    /// All arcs reversed.
    pub fn transpose(&self) -> Self {
        Self {
            name: format!("{}^T", self.name),
            vertex_count: self.vertex_count,
            arcs: self.arcs.iter().map(|&(t, h)| (h, t)).collect(),
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.arcs.iter().all(|&(t, h)| t != h && seen.insert((t, h)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    VertexOutOfRange {
        edge: usize,
    },
    NonPositiveLength {
        edge: usize,
    },
    NonPositiveWeight {
        edge: usize,
    },
    NotConnected,
    /// Gear-specific structure failures.
    Structure(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "no vertices"),
            Violation::VertexOutOfRange { edge } => write!(f, "vertex out of range on edge {edge}"),
            Violation::NonPositiveLength { edge } => write!(f, "nonpositive length on edge {edge}"),
            Violation::NonPositiveWeight { edge } => write!(f, "nonpositive weight on edge {edge}"),
            Violation::NotConnected => write!(f, "not connected"),
            Violation::Structure(msg) => write!(f, "{msg}"),
        }
    }
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}
