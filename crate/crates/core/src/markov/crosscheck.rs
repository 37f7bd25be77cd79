use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{markov_spectrum, MarkovSystem};
use crate::graph::CombinatorialGraph;
use crate::quantum::Spectrum;

/// Multiplicity of `(j pi)^2` on the equilateral (unit-length) metric graph
/// underlying `cg`, for any positive edge weights: `beta + 1` when `j` is
/// even or the graph is bipartite, `beta - 1` otherwise, where `beta` is the
/// first Betti number.
pub fn dirichlet_multiplicity(cg: &CombinatorialGraph, j: usize) -> usize {
    let beta = cg.edges.len() + 1 - cg.vertex_count;
    if j.is_multiple_of(2) || cg.is_bipartite() {
        beta + 1
    } else {
        beta.saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub k_max: f64,
    /// Nonzero eigenvalues predicted from the Markov spectrum, with multiplicity.
    pub expected: Vec<f64>,
    /// Nonzero eigenvalues of the quantum scan, with multiplicity.
    pub found: Vec<f64>,
    /// `(j, multiplicity)` for every `j pi <= k_max` with nonzero multiplicity.
    pub dirichlet: Vec<(usize, usize)>,
    pub max_rel_gap: f64,
    pub tol: f64,
    pub matched: bool,
}

/// Compares a quantum spectrum of a unit-length gear against the values
/// predicted by the Markov spectrum of its subdivision.
///
/// Every `mu` in `spec(M)` other than `±1` contributes
/// `k = theta + 2 pi j` and `k = 2 pi (j + 1) - theta` with `theta = arccos mu`;
/// the points `k = j pi` contribute [`dirichlet_multiplicity`]. Mismatches
/// are reported, not raised.
pub fn crosscheck_quantum(ms: &MarkovSystem<f64>, spectrum: &Spectrum, k_max: f64, tol: f64) -> CrosscheckReport {
    let limit = k_max + 1e-9;
    let mut ks = Vec::new();
    for mu in markov_spectrum(ms) {
        if (mu.abs() - 1.0).abs() < 1e-9 {
            continue;
        }
        let theta = mu.clamp(-1.0, 1.0).acos();
        let mut j = 0.0;
        while theta + 2.0 * PI * j <= limit {
            ks.push(theta + 2.0 * PI * j);
            if 2.0 * PI * (j + 1.0) - theta <= limit {
                ks.push(2.0 * PI * (j + 1.0) - theta);
            }
            j += 1.0;
        }
    }
    let mut dirichlet = Vec::new();
    let mut j = 1;
    while j as f64 * PI <= limit {
        let mult = dirichlet_multiplicity(&ms.graph, j);
        if mult > 0 {
            dirichlet.push((j, mult));
            ks.extend(std::iter::repeat_n(j as f64 * PI, mult));
        }
        j += 1;
    }
    ks.sort_by(f64::total_cmp);
    let expected: Vec<f64> = ks.iter().map(|k| k * k).collect();
    let found: Vec<f64> = spectrum
        .entries
        .iter()
        .filter(|e| e.k > 0.0 && e.k <= limit)
        .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
        .collect();
    let max_rel_gap = expected
        .iter()
        .zip(&found)
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
        .fold(0.0, f64::max);
    let matched = expected.len() == found.len() && max_rel_gap <= tol;
    CrosscheckReport {
        k_max,
        expected,
        found,
        dirichlet,
        max_rel_gap,
        tol,
        matched,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_gear, GearSpec, Variant};
    use crate::markov::tests::gear_cg;
    use crate::markov::{markov_matrix, Weight};
    use crate::quantum::{rank_indicator, scan_spectrum, ScanParams, VertexConditions};

    #[test]
    fn dirichlet_counts() {
        let odd = gear_cg(&[1.0, 1.0, 1.0], Variant::Primal);
        assert_eq!(
            (dirichlet_multiplicity(&odd, 1), dirichlet_multiplicity(&odd, 2)),
            (0, 2)
        );
        let even = gear_cg(&[1.0, 2.0, 3.0], Variant::Primal);
        assert_eq!(dirichlet_multiplicity(&even, 1), 2);
    }

    #[test]
    fn dirichlet_count_matches_null_space() {
        let g = build_gear(&GearSpec::new(vec![1.0, 2.0, 3.0], Variant::Primal).unwrap());
        let (_, s) = rank_indicator(&g, &VertexConditions::kirchhoff(), PI).unwrap();
        assert_eq!(s.iter().filter(|&&x| x < 1e-8 * s[0]).count(), 2);
    }

    #[test]
    fn unit_gear_agrees_with_markov() {
        for lengths in [[1.0, 1.0, 1.0], [1.0, 2.0, 3.0]] {
            let spec = GearSpec::new(lengths.to_vec(), Variant::Primal).unwrap();
            let k_max = 2.0 * PI;
            let spectrum = scan_spectrum(
                &build_gear(&spec),
                &VertexConditions::kirchhoff(),
                &ScanParams::new(k_max),
            )
            .unwrap();
            let ms = markov_matrix::<f64>(&gear_cg(&lengths, Variant::Primal), &Weight::one()).unwrap();
            let report = crosscheck_quantum(&ms, &spectrum, k_max, 1e-8);
            assert!(report.matched, "{report:?}");
        }
    }
}
