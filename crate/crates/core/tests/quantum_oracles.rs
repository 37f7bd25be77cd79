mod common;

use std::f64::consts::PI;

use isogear::graph::{build_gear, dual_gear, Edge, EdgeClass, GearSpec, MetricGraph, Variant};
use isogear::quantum::{
    compare_spectra, eigenfunction_basis, scan_spectrum, vertex_residual, ScanParams, Spectrum, VertexConditions,
};

fn plain(id: usize, tail: usize, head: usize, length: f64) -> Edge {
    Edge {
        id,
        tail,
        head,
        length,
        weight: 1.0,
        class: EdgeClass::Plain,
    }
}

#[test]
fn interval_is_neumann_cosines() {
    let g = MetricGraph::new("interval", 2, vec![plain(0, 0, 1, 1.7)]);
    let s = scan_spectrum(&g, &VertexConditions::kirchhoff(), &ScanParams::new(12.0)).unwrap();
    let expected: Vec<f64> = (0..).map(|j| j as f64 * PI / 1.7).take_while(|&k| k <= 12.0).collect();
    assert_eq!(s.entries.len(), expected.len());
    for (e, k) in s.entries.iter().zip(&expected) {
        assert!((e.k - k).abs() < 1e-9, "{} vs {k}", e.k);
        assert_eq!(e.multiplicity, 1);
    }
}

#[test]
fn circle_has_double_eigenvalues() {
    let g = MetricGraph::new("circle", 2, vec![plain(0, 0, 1, 1.0), plain(1, 1, 0, 2.0)]);
    let s = scan_spectrum(&g, &VertexConditions::kirchhoff(), &ScanParams::new(10.0)).unwrap();
    let positive: Vec<_> = s.entries.iter().filter(|e| e.k > 0.0).collect();
    assert_eq!(positive.len(), 4);
    for (j, e) in positive.iter().enumerate() {
        assert!((e.k - 2.0 * PI * (j + 1) as f64 / 3.0).abs() < 1e-9);
        assert_eq!(e.multiplicity, 2);
    }
}

#[test]
fn star_matches_secular_bisection() {
    let lengths = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    let k_max = 10.0;
    let s = scan_spectrum(
        &common::star(&lengths),
        &VertexConditions::kirchhoff(),
        &ScanParams::new(k_max),
    )
    .unwrap();
    let oracle = common::star_roots(&lengths, k_max);
    let found: Vec<f64> = s.entries.iter().filter(|e| e.k > 0.0).map(|e| e.k).collect();
    assert_eq!(found.len(), oracle.len(), "{found:?} vs {oracle:?}");
    for (a, b) in found.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
    }
}

#[test]
fn scaling_lengths_scales_wavenumbers() {
    let spec = GearSpec::new(vec![1.0, 2.0, 3.0], Variant::Dual).unwrap();
    let g = build_gear(&spec);
    let cond = VertexConditions::new(1.5).unwrap();
    let s = scan_spectrum(&g, &cond, &ScanParams::new(4.0)).unwrap();
    let half = scan_spectrum(&g.scaled(0.5), &cond, &ScanParams::new(8.0)).unwrap();
    let rescaled = Spectrum {
        entries: half
            .entries
            .iter()
            .map(|e| isogear::quantum::SpectrumEntry {
                k: e.k / 2.0,
                lambda: e.lambda / 4.0,
                ..*e
            })
            .collect(),
        k_max: 4.0,
        anomalies: vec![],
    };
    assert!(compare_spectra(&s, &rescaled, 1e-9).unwrap().matched);
}

#[test]
fn eigenfunctions_satisfy_vertex_conditions() {
    let spec = GearSpec::new(vec![1.0, 2f64.sqrt(), PI / 2.0], Variant::Primal).unwrap();
    for g in [build_gear(&spec), build_gear(&dual_gear(&spec))] {
        let cond = VertexConditions::new(2.0).unwrap();
        let params = ScanParams::new(5.0);
        let s = scan_spectrum(&g, &cond, &params).unwrap();
        for e in s.entries.iter().filter(|e| e.k > 0.0) {
            let basis = eigenfunction_basis(&g, &cond, e.k, &params).unwrap();
            assert_eq!(basis.len(), e.multiplicity);
            for f in &basis {
                assert!(vertex_residual(&g, &cond, f) < 1e-9);
            }
        }
    }
}

#[test]
fn csv_round_trip() {
    let spec = GearSpec::new(vec![1.0, 2.0, 3.0], Variant::Primal).unwrap();
    let s = scan_spectrum(
        &build_gear(&spec),
        &VertexConditions::kirchhoff(),
        &ScanParams::new(5.0),
    )
    .unwrap();
    let back = Spectrum::from_csv(&s.to_csv()).unwrap();
    assert_eq!(back.entries, s.entries);
}
