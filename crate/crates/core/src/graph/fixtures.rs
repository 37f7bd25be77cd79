//! Hard-coded isospectral and zeta-equivalent pairs.

use serde::{Deserialize, Serialize};

use super::{Digraph, Edge, EdgeClass, MetricGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fig3Variant {
    /// Triangle with doubled sides, teeth tripled (three leaves or a three-edge bundle).
    A,
    /// Square with single sides, teeth doubled.
    B,
}

impl std::str::FromStr for Fig3Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Fig3Variant::A),
            "b" | "B" => Ok(Fig3Variant::B),
            other => Err(Error::InvalidParams(format!("unknown pair variant `{other}`"))),
        }
    }
}

struct Builder {
    vertices: usize,
    edges: Vec<Edge>,
}

impl Builder {
    fn new(vertices: usize) -> Self {
        Self {
            vertices,
            edges: Vec::new(),
        }
    }

    fn edge(&mut self, tail: usize, head: usize, length: f64) {
        let id = self.edges.len();
        self.edges.push(Edge {
            id,
            tail,
            head,
            length,
            weight: 1.0,
            class: EdgeClass::Plain,
        });
    }

    fn parallel(&mut self, tail: usize, head: usize, length: f64, count: usize) {
        for _ in 0..count {
            self.edge(tail, head, length);
        }
    }

    fn leaves(&mut self, at: usize, length: f64, count: usize) {
        for _ in 0..count {
            let leaf = self.vertices;
            self.vertices += 1;
            self.edge(at, leaf, length);
        }
    }

    fn bundle(&mut self, at: usize, length: f64, count: usize) {
        let end = self.vertices;
        self.vertices += 1;
        self.parallel(at, end, length, count);
    }

    fn finish(self, name: &str) -> MetricGraph {
        MetricGraph::new(name, self.vertices, self.edges)
    }
}

/// The Kirchhoff–Neumann isospectral pairs obtained by unfolding gears with
/// tooth weight 3/2 (variant a, lengths `a, b, c`) or 2 (variant b, lengths
/// `a, b, c, d`). All edges are plain with unit weight.
pub fn build_fig3_pair(variant: Fig3Variant, lengths: &[f64]) -> Result<(MetricGraph, MetricGraph)> {
    let expected = match variant {
        Fig3Variant::A => 3,
        Fig3Variant::B => 4,
    };
    if lengths.len() != expected {
        return Err(Error::InvalidParams(format!(
            "pair variant {variant:?} takes {expected} lengths, got {}",
            lengths.len()
        )));
    }
    if lengths.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidParams("lengths must be positive".into()));
    }
    Ok(match variant {
        Fig3Variant::A => {
            let (a, b, c) = (lengths[0], lengths[1], lengths[2]);
            // corners 0, 1, 2; sides 0-1 (a), 1-2 (b), 2-0 (c), each doubled
            let triangle = |builder: &mut Builder| {
                builder.parallel(0, 1, a, 2);
                builder.parallel(1, 2, b, 2);
                builder.parallel(2, 0, c, 2);
            };
            let mut left = Builder::new(3);
            triangle(&mut left);
            left.leaves(0, a, 3);
            left.bundle(2, b, 3);
            left.bundle(2, c, 3);

            let mut right = Builder::new(3);
            triangle(&mut right);
            right.leaves(1, a, 3);
            right.bundle(1, b, 3);
            right.bundle(0, c, 3);
            (left.finish("pair-a-left"), right.finish("pair-a-right"))
        }
        Fig3Variant::B => {
            let (a, b, c, d) = (lengths[0], lengths[1], lengths[2], lengths[3]);
            // corners 0 = (0,0), 1 = (1,0), 2 = (1,1), 3 = (0,1)
            let mut left = Builder::new(4);
            left.edge(0, 1, a);
            left.edge(1, 2, b);
            left.edge(2, 3, c);
            left.edge(3, 0, d);
            left.leaves(0, a, 2);
            left.leaves(1, b, 2);
            left.bundle(2, c, 2);
            left.leaves(0, d, 2);

            let mut right = Builder::new(4);
            right.edge(0, 1, c);
            right.edge(1, 2, b);
            right.edge(2, 3, a);
            right.edge(3, 0, d);
            right.leaves(2, a, 2);
            right.leaves(1, b, 2);
            right.bundle(0, c, 2);
            right.leaves(0, d, 2);
            (left.finish("pair-b-left"), right.finish("pair-b-right"))
        }
    })
}

/// The two zeta-equivalent simple digraphs on 12 vertices, 0-based
/// (vertex `v` here is vertex `v + 1` in the usual drawing).
pub fn fig6_pair() -> (Digraph, Digraph) {
    let one_based = |arcs: &[(usize, usize)]| arcs.iter().map(|&(t, h)| (t - 1, h - 1)).collect::<Vec<_>>();
    let g = one_based(&[
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (6, 7),
        (1, 8),
        (8, 9),
        (3, 10),
        (10, 11),
        (11, 12),
    ]);
    let gt = one_based(&[
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (2, 7),
        (4, 9),
        (9, 8),
        (1, 12),
        (12, 11),
        (11, 10),
    ]);
    (Digraph::new("G", 12, g), Digraph::new("G~", 12, gt))
}
