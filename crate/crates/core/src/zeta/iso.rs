use crate::error::{Error, Result};
use crate::graph::Digraph;

/// A vertex bijection `phi` with `arcs(g2) = phi(arcs(g1))` (with
/// multiplicity), or `None`. Backtracking with in/out-degree pruning; n <= 16.
pub fn digraph_isomorphic(g1: &Digraph, g2: &Digraph) -> Result<Option<Vec<usize>>> {
    let n = g1.vertex_count;
    if n > 16 || g2.vertex_count > 16 {
        return Err(Error::TooLarge(format!(
            "isomorphism search limited to 16 vertices, got {}",
            n.max(g2.vertex_count)
        )));
    }
    if n != g2.vertex_count || g1.arcs.len() != g2.arcs.len() {
        return Ok(None);
    }
    let counts = |g: &Digraph| {
        let mut m = vec![vec![0u32; n]; n];
        for &(t, h) in &g.arcs {
            m[t][h] += 1;
        }
        m
    };
    let (a1, a2) = (counts(g1), counts(g2));
    let sig = |g: &Digraph, v: usize, a: &[Vec<u32>]| (g.out_degrees()[v], g.in_degrees()[v], a[v][v]);
    let s1: Vec<_> = (0..n).map(|v| sig(g1, v, &a1)).collect();
    let s2: Vec<_> = (0..n).map(|v| sig(g2, v, &a2)).collect();
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    // map the most constrained vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| {
        (
            s1.iter().filter(|s| **s == s1[v]).count(),
            std::cmp::Reverse(s1[v].0 + s1[v].1),
        )
    });

    struct Search<'a> {
        a1: &'a [Vec<u32>],
        a2: &'a [Vec<u32>],
        s1: &'a [(usize, usize, u32)],
        s2: &'a [(usize, usize, u32)],
        order: &'a [usize],
        phi: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> bool {
            let Some(&v) = self.order.get(depth) else {
                return true;
            };
            for u in 0..self.a2.len() {
                if self.used[u] || self.s1[v] != self.s2[u] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&w| {
                    let x = self.phi[w].expect("mapped earlier");
                    self.a1[v][w] == self.a2[u][x] && self.a1[w][v] == self.a2[x][u]
                });
                if !consistent {
                    continue;
                }
                self.phi[v] = Some(u);
                self.used[u] = true;
                if self.go(depth + 1) {
                    return true;
                }
                self.phi[v] = None;
                self.used[u] = false;
            }
            false
        }
    }

    let mut search = Search {
        a1: &a1,
        a2: &a2,
        s1: &s1,
        s2: &s2,
        order: &order,
        phi: vec![None; n],
        used: vec![false; n],
    };
    Ok(search
        .go(0)
        .then(|| search.phi.iter().map(|x| x.expect("complete")).collect()))
}
