use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{secular_matrix, VertexConditions};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    pub k_max: f64,
    pub delta: f64,
    pub refine_tol: f64,
    pub rank_tol: f64,
    pub mult_tol: f64,
    pub dedup_gap: f64,
}

impl ScanParams {
    pub fn new(k_max: f64) -> Self {
        Self {
            k_max,
            delta: 0.01,
            refine_tol: 1e-12,
            rank_tol: 1e-9,
            mult_tol: 1e-8,
            dedup_gap: 1e-9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("k_max", self.k_max),
            ("delta", self.delta),
            ("refine_tol", self.refine_tol),
            ("rank_tol", self.rank_tol),
            ("mult_tol", self.mult_tol),
            ("dedup_gap", self.dedup_gap),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if self.delta > self.k_max {
            return Err(Error::InvalidParams("delta exceeds k_max".into()));
        }
        Ok(())
    }

    /// Set one field from a `key=value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v: f64 = value
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad value for {key}: `{value}`")))?;
        match key {
            "k_max" => self.k_max = v,
            "delta" => self.delta = v,
            "refine_tol" => self.refine_tol = v,
            "rank_tol" => self.rank_tol = v,
            "mult_tol" => self.mult_tol = v,
            "dedup_gap" => self.dedup_gap = v,
            _ => return Err(Error::InvalidParams(format!("unknown scan parameter `{key}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub k: f64,
    pub lambda: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub k_max: f64,
    /// Refined minima that came close to the rank tolerance without passing it.
    pub anomalies: Vec<f64>,
}

impl Spectrum {
    /// Eigenvalues repeated by multiplicity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,lambda,multiplicity\n");
        for e in &self.entries {
            let _ = writeln!(out, "{:.16e},{:.16e},{}", e.k, e.lambda, e.multiplicity);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with('k')) {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(bad("expected k,lambda,multiplicity"));
            }
            entries.push(SpectrumEntry {
                k: cols[0].trim().parse().map_err(|_| bad("bad k"))?,
                lambda: cols[1].trim().parse().map_err(|_| bad("bad lambda"))?,
                multiplicity: cols[2].trim().parse().map_err(|_| bad("bad multiplicity"))?,
            });
        }
        let k_max = entries.last().map_or(0.0, |e| e.k);
        Ok(Self {
            entries,
            k_max,
            anomalies: Vec::new(),
        })
    }
}

fn ratio(g: &MetricGraph, cond: &VertexConditions, k: f64) -> f64 {
    let s = linalg::singular_values(&secular_matrix(g, cond, k).expect("k > 0 on the grid"));
    s.last().copied().unwrap_or(0.0) / s[0]
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * b.abs() * 4.0 {
            break;
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Find all eigenvalues `k^2` with `0 < k <= k_max`, plus `lambda = 0`.
///
/// Roots closer to 0 than one grid step are not resolved.
pub fn scan_spectrum(g: &MetricGraph, cond: &VertexConditions, params: &ScanParams) -> Result<Spectrum> {
    params.validate()?;
    if let Some(v) = g.validate().into_iter().next() {
        return Err(Error::InvalidGraph(v.to_string()));
    }
    let steps = (params.k_max / params.delta).ceil() as usize + 2;
    let grid: Vec<f64> = (1..=steps).map(|i| i as f64 * params.delta).collect();
    let values: Vec<f64> = grid.par_iter().map(|&k| ratio(g, cond, k)).collect();

    let candidates: Vec<usize> = (1..values.len() - 1)
        .filter(|&i| values[i] <= values[i - 1] && values[i] < values[i + 1])
        .collect();

    let refined: Vec<(f64, f64)> = candidates
        .par_iter()
        .map(|&i| golden_min(|k| ratio(g, cond, k), grid[i - 1], grid[i + 1], params.refine_tol))
        .collect();

    let mut entries = vec![SpectrumEntry {
        k: 0.0,
        lambda: 0.0,
        multiplicity: 1,
    }];
    let mut anomalies = Vec::new();
    for (k, r) in refined {
        if k > params.k_max + 1e-9 {
            continue;
        }
        if r >= params.rank_tol {
            if r < 1e3 * params.rank_tol {
                anomalies.push(k);
            }
            continue;
        }
        let (_, s) = super::rank_indicator(g, cond, k)?;
        let multiplicity = s.iter().filter(|&&x| x < params.mult_tol * s[0]).count().max(1);
        match entries.last_mut() {
            Some(last) if last.k > 0.0 && k - last.k < params.dedup_gap => {
                last.multiplicity = last.multiplicity.max(multiplicity);
            }
            _ => entries.push(SpectrumEntry {
                k,
                lambda: k * k,
                multiplicity,
            }),
        }
    }
    Ok(Spectrum {
        entries,
        k_max: params.k_max,
        anomalies,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPair {
    pub left: f64,
    pub right: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityMismatch {
    pub lambda: f64,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub max_rel_gap: f64,
    pub multiplicity_mismatches: Vec<MultiplicityMismatch>,
    pub pairs: Vec<SpectrumPair>,
    /// Eigenvalues (with multiplicity) left over on the longer side.
    pub unpaired: Vec<f64>,
    pub tol: f64,
    pub matched: bool,
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Pair the two spectra entry by entry in increasing order.
pub fn compare_spectra(s1: &Spectrum, s2: &Spectrum, tol: f64) -> Result<ComparisonReport> {
    if rel_gap(s1.k_max, s2.k_max) > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "spectra scanned to different k_max ({} vs {})",
            s1.k_max, s2.k_max
        )));
    }
    let mut pairs = Vec::new();
    let mut mismatches = Vec::new();
    for (a, b) in s1.entries.iter().zip(&s2.entries) {
        pairs.push(SpectrumPair {
            left: a.lambda,
            right: b.lambda,
            rel_gap: rel_gap(a.lambda, b.lambda),
        });
        if a.multiplicity != b.multiplicity {
            mismatches.push(MultiplicityMismatch {
                lambda: a.lambda,
                left: a.multiplicity,
                right: b.multiplicity,
            });
        }
    }
    let n = pairs.len();
    let unpaired: Vec<f64> = s1.entries[n..]
        .iter()
        .chain(&s2.entries[n..])
        .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
        .collect();
    let max_rel_gap = pairs.iter().map(|p| p.rel_gap).fold(0.0, f64::max);
    let matched = max_rel_gap <= tol && mismatches.is_empty() && unpaired.is_empty();
    Ok(ComparisonReport {
        max_rel_gap,
        multiplicity_mismatches: mismatches,
        pairs,
        unpaired,
        tol,
        matched,
    })
}
