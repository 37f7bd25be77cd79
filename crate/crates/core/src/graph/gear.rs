use serde::{Deserialize, Serialize};

use super::{Digraph, Edge, EdgeClass, MetricGraph, Violation};
use crate::error::{Error, Result};

/// Endpoint of side `i` that tooth `i` hangs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attach {
    Tail,
    Head,
}

impl Attach {
    pub fn flipped(self) -> Self {
        match self {
            Attach::Tail => Attach::Head,
            Attach::Head => Attach::Tail,
        }
    }
}

/// Uniform attachment patterns. The primal gear hangs every tooth from the
/// tail of its side, the dual from the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Primal,
    Dual,
}

impl Variant {
    fn attach(self) -> Attach {
        match self {
            Variant::Primal => Attach::Tail,
            Variant::Dual => Attach::Head,
        }
    }
}

/// Combinatorial description of an `n`-gear.
///
/// Side `i` and tooth `i` share length `lengths[i]`. Each tooth may hang from
/// either end of its side; the uniform choices are the [`Variant`]s, mixed
/// choices give the unbalanced gears.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GearSpec {
    lengths: Vec<f64>,
    attachments: Vec<Attach>,
}

impl GearSpec {
    pub fn new(lengths: Vec<f64>, variant: Variant) -> Result<Self> {
        let attachments = vec![variant.attach(); lengths.len()];
        Self::with_attachments(lengths, attachments)
    }

    pub fn with_attachments(lengths: Vec<f64>, attachments: Vec<Attach>) -> Result<Self> {
        if lengths.len() < 3 {
            return Err(Error::InvalidGear(format!("need n >= 3 sides, got {}", lengths.len())));
        }
        if attachments.len() != lengths.len() {
            return Err(Error::InvalidGear(format!(
                "{} attachments for {} sides",
                attachments.len(),
                lengths.len()
            )));
        }
        if let Some((i, l)) = lengths.iter().enumerate().find(|(_, l)| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidGear(format!("length {i} is nonpositive ({l})")));
        }
        Ok(Self { lengths, attachments })
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn attachments(&self) -> &[Attach] {
        &self.attachments
    }

    /// `Some` when every tooth hangs from the same end.
    pub fn variant(&self) -> Option<Variant> {
        if self.attachments.iter().all(|&a| a == Attach::Tail) {
            Some(Variant::Primal)
        } else if self.attachments.iter().all(|&a| a == Attach::Head) {
            Some(Variant::Dual)
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.lengths.iter().all(|l| l.fract() == 0.0)
    }

    pub fn polygon_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Polygon vertex carrying tooth `i`.
    pub fn tooth_vertex(&self, i: usize) -> usize {
        match self.attachments[i] {
            Attach::Tail => i,
            Attach::Head => (i + 1) % self.n(),
        }
    }
}

/// Moves every tooth to the other end of its side.
pub fn dual_gear(spec: &GearSpec) -> GearSpec {
    GearSpec {
        lengths: spec.lengths.clone(),
        attachments: spec.attachments.iter().map(|a| a.flipped()).collect(),
    }
}

/// Builds the metric gear with unit edge weights (the tooth weight enters
/// through the vertex conditions).
///
/// Teeth are parameterized parallel to their sides: a tooth on the tail of
/// side `i` runs from the polygon out to its leaf, a tooth on the head runs
/// from its leaf in to the polygon. Side `i` and tooth `i` are therefore
/// tail-to-tail or head-to-head.
pub fn build_gear(spec: &GearSpec) -> MetricGraph {
    let n = spec.n();
    let mut edges = Vec::with_capacity(2 * n);
    for (i, &l) in spec.lengths.iter().enumerate() {
        edges.push(Edge {
            id: i,
            tail: i,
            head: (i + 1) % n,
            length: l,
            weight: 1.0,
            class: EdgeClass::Polygon,
        });
    }
    for (i, &l) in spec.lengths.iter().enumerate() {
        let (tail, head) = match spec.attachments[i] {
            Attach::Tail => (i, n + i),
            Attach::Head => (n + i, (i + 1) % n),
        };
        edges.push(Edge {
            id: n + i,
            tail,
            head,
            length: l,
            weight: 1.0,
            class: EdgeClass::Tooth,
        });
    }
    let name = match spec.variant() {
        Some(Variant::Primal) => "gear",
        Some(Variant::Dual) => "dual-gear",
        None => "mixed-gear",
    };
    MetricGraph::new(name, 2 * n, edges)
}

/// Checks the gear layout of `g` against `spec`.
pub fn validate_gear(g: &MetricGraph, spec: &GearSpec) -> Vec<Violation> {
    let mut out = g.validate();
    let n = spec.n();
    if g.vertex_count != 2 * n || g.edges.len() != 2 * n {
        out.push(Violation::Structure(format!(
            "expected {} vertices and edges, found {} and {}",
            2 * n,
            g.vertex_count,
            g.edges.len()
        )));
        return out;
    }
    for i in 0..n {
        let side = &g.edges[i];
        if side.class != EdgeClass::Polygon || side.head != g.edges[(i + 1) % n].tail {
            out.push(Violation::Structure(format!("side {i} breaks the oriented polygon")));
        }
        let tooth = &g.edges[n + i];
        if tooth.class != EdgeClass::Tooth {
            out.push(Violation::Structure(format!("edge {} is not a tooth", n + i)));
            continue;
        }
        let leaf = if g.degree(tooth.head) == 1 {
            tooth.head
        } else {
            tooth.tail
        };
        if g.degree(leaf) != 1 {
            out.push(Violation::Structure(format!("tooth {i} is not pendant")));
        }
        let tail_to_tail = tooth.tail == side.tail && tooth.head != side.head;
        let head_to_head = tooth.head == side.head && tooth.tail != side.tail;
        if !(tail_to_tail || head_to_head) {
            out.push(Violation::Structure(format!(
                "tooth {i} is neither tail-to-tail nor head-to-head with side {i}"
            )));
        }
        if (side.length - tooth.length).abs() > 0.0 {
            out.push(Violation::Structure(format!("tooth {i} and side {i} differ in length")));
        }
    }
    out
}

/// Orientation of tooth arcs in a digraph export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToothMode {
    /// Every tooth points away from the polygon (the zeta-equivalent pair convention).
    Outward,
    /// Tooth arcs follow the metric parameterization.
    Aligned,
}

impl std::str::FromStr for ToothMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outward" | "fig6" => Ok(ToothMode::Outward),
            "aligned" => Ok(ToothMode::Aligned),
            other => Err(Error::InvalidParams(format!("unknown tooth mode `{other}`"))),
        }
    }
}

/// Subdivides an integral gear into unit arcs.
///
/// Labels: the polygon cycle comes first, starting at the end of side 0 that
/// does not carry tooth 0; tooth vertices follow, tooth by tooth, each in the
/// order of its parameterization. The polygon arcs follow the cycle.
pub fn gear_to_digraph(spec: &GearSpec, mode: ToothMode) -> Result<Digraph> {
    if !spec.is_integral() {
        let (edge, &length) = spec.lengths.iter().enumerate().find(|(_, l)| l.fract() != 0.0).unwrap();
        return Err(Error::NonIntegerLength { edge, length });
    }
    let n = spec.n();
    let steps: Vec<usize> = spec.lengths.iter().map(|&l| l as usize).collect();
    let perimeter: usize = steps.iter().sum();

    // position of polygon vertex i along the cycle, counted from vertex 0
    let mut corner_pos = Vec::with_capacity(n);
    let mut acc = 0;
    for &s in &steps {
        corner_pos.push(acc);
        acc += s;
    }
    let start = match spec.attachments[0] {
        Attach::Tail => corner_pos[1 % n],
        Attach::Head => corner_pos[0],
    };
    let label = |pos: usize| (pos + perimeter - start) % perimeter;

    let mut arcs: Vec<(usize, usize)> = (0..perimeter).map(|p| (label(p), label((p + 1) % perimeter))).collect();
    arcs.sort_by_key(|&(t, _)| t);

    let mut next = perimeter;
    for i in 0..n {
        let l = steps[i];
        let corner = label(corner_pos[spec.tooth_vertex(i)]);
        // slot j of the tooth sits at x = j
        let mut slots = vec![0usize; l + 1];
        match spec.attachments[i] {
            Attach::Tail => {
                slots[0] = corner;
                for s in slots.iter_mut().skip(1) {
                    *s = next;
                    next += 1;
                }
            }
            Attach::Head => {
                slots[l] = corner;
                for s in slots.iter_mut().take(l) {
                    *s = next;
                    next += 1;
                }
            }
        }
        let outward_is_forward = spec.attachments[i] == Attach::Tail;
        for w in slots.windows(2) {
            let forward = (w[0], w[1]);
            let arc = match mode {
                ToothMode::Aligned => forward,
                ToothMode::Outward if outward_is_forward => forward,
                ToothMode::Outward => (w[1], w[0]),
            };
            arcs.push(arc);
        }
    }
    let name = match spec.variant() {
        Some(Variant::Primal) => "gear",
        Some(Variant::Dual) => "dual-gear",
        None => "mixed-gear",
    };
    Ok(Digraph::new(name, next, arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subdivide;

    fn spec(lengths: &[f64], v: Variant) -> GearSpec {
        GearSpec::new(lengths.to_vec(), v).unwrap()
    }

    #[test]
    fn gear_123_counts() {
        for v in [Variant::Primal, Variant::Dual] {
            let g = build_gear(&spec(&[1.0, 2.0, 3.0], v));
            assert_eq!(g.vertex_count, 6);
            assert_eq!(g.edge_count(), 6);
            assert_eq!(g.total_length(), 12.0);
            assert!(validate_gear(&g, &spec(&[1.0, 2.0, 3.0], v)).is_empty());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            GearSpec::new(vec![1.0, 2.0], Variant::Primal),
            Err(Error::InvalidGear(_))
        ));
        assert!(matches!(
            GearSpec::new(vec![1.0, 0.0, 2.0], Variant::Primal),
            Err(Error::InvalidGear(_))
        ));
        assert!(matches!(
            GearSpec::new(vec![1.0, -1.0, 2.0], Variant::Dual),
            Err(Error::InvalidGear(_))
        ));
        assert!(GearSpec::with_attachments(vec![1.0; 3], vec![Attach::Tail; 2]).is_err());
    }

    #[test]
    fn dual_toggles_and_is_an_involution() {
        let p = spec(&[1.0, 2.0, 3.0], Variant::Primal);
        let d = dual_gear(&p);
        assert_eq!(d.variant(), Some(Variant::Dual));
        assert_eq!(d.lengths(), p.lengths());
        assert_eq!(dual_gear(&d), p);
        let one = spec(&[1.0, 1.0, 1.0], Variant::Dual);
        assert_eq!(dual_gear(&one).variant(), Some(Variant::Primal));
    }

    #[test]
    fn dual_differs_only_in_tooth_endpoints() {
        let p = spec(&[1.0, 2.0, 3.0], Variant::Primal);
        let (gp, gd) = (build_gear(&p), build_gear(&dual_gear(&p)));
        for i in 0..3 {
            assert_eq!(gp.edges[i], gd.edges[i]);
            let (tp, td) = (&gp.edges[3 + i], &gd.edges[3 + i]);
            assert_eq!(tp.length, td.length);
            assert_ne!((tp.tail, tp.head), (td.tail, td.head));
            // the leaf stays the same vertex
            assert_eq!(tp.head, td.tail);
        }
    }

    #[test]
    fn degrees_and_leaves() {
        let mixed =
            GearSpec::with_attachments(vec![1.0, 2.0, 3.0], vec![Attach::Tail, Attach::Head, Attach::Tail]).unwrap();
        let g = build_gear(&mixed);
        let deg: Vec<usize> = (0..6).map(|v| g.degree(v)).collect();
        assert_eq!(deg, vec![3, 2, 4, 1, 1, 1]);
        assert!(validate_gear(&g, &mixed).is_empty());
    }

    #[test]
    fn subdivided_gears() {
        let cg = subdivide(&build_gear(&spec(&[1.0, 2.0, 3.0], Variant::Primal))).unwrap();
        assert_eq!(cg.vertex_count, 12);
        assert_eq!(cg.edges.len(), 12);
        assert!(cg.is_bipartite());
        let cg = subdivide(&build_gear(&spec(&[1.0, 1.0, 1.0], Variant::Primal))).unwrap();
        assert_eq!(cg.vertex_count, 6);
        assert_eq!(cg.edges.len(), 6);
        assert!(!cg.is_bipartite());
    }

    #[test]
    fn digraph_rejects_fractional_lengths() {
        let s = spec(&[1.0, 2.5, 3.0], Variant::Primal);
        assert!(gear_to_digraph(&s, ToothMode::Outward).is_err());
        assert!("sideways".parse::<ToothMode>().is_err());
    }

    #[test]
    fn small_digraph_counts() {
        let d = gear_to_digraph(&spec(&[1.0, 1.0, 1.0], Variant::Primal), ToothMode::Outward).unwrap();
        assert_eq!(d.vertex_count, 6);
        assert_eq!(d.arcs.len(), 6);
        assert!(d.is_simple());
    }
}
