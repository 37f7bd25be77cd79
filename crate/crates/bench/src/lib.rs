//! Fixtures shared by the benchmarks.

use isogear::graph::{build_gear, dual_gear, GearSpec, MetricGraph, Variant};

/// Primal gear with the given lengths and its dual.
pub fn dual_pair(lengths: &[f64]) -> (GearSpec, MetricGraph, MetricGraph) {
    let spec = GearSpec::new(lengths.to_vec(), Variant::Primal).expect("valid lengths");
    let (g, d) = (build_gear(&spec), build_gear(&dual_gear(&spec)));
    (spec, g, d)
}
