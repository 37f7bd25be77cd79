//! Dual n-gear graphs: quantum spectra, eigenfunction transplantation,
//! Markov operators on unit subdivisions and Ihara-type zeta pencils of
//! directed exports.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod graph;
pub mod linalg;
pub mod markov;
pub mod quantum;
pub mod transplant;
pub mod zeta;

pub use error::{Category, Error, Result};
pub use graph::{
    build_gear, dual_gear, subdivide, Attach, CombinatorialGraph, Digraph, Edge, EdgeClass, GearSpec, MetricGraph,
    Variant,
};
pub use markov::{conjugator_report, markov_matrix, MarkovSystem, Mode, Weight};
pub use quantum::{scan_spectrum, Eigenfunction, ScanParams, Spectrum, VertexConditions};
pub use transplant::{transplant, verify_eigenspace, TransplantMap};
pub use zeta::{zeta_equivalent, PencilRestriction, Verdict, VerdictKind};
