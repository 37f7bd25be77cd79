//! Spectra of weighted metric graphs with continuity and weighted Kirchhoff
//! conditions.
//!
//! On every edge an eigenfunction with wavenumber `k > 0` is
//! `a cos(kx) + b sin(kx)`. The vertex conditions are a homogeneous linear
//! system in the `2m` coefficients; `k^2` is an eigenvalue exactly when that
//! system is singular, and the null space is the eigenspace. Unlike the
//! vertex-value representation this basis stays valid when `k l` is a
//! multiple of `pi` on some edge.

mod scan;

pub use scan::{
    compare_spectra, scan_spectrum, ComparisonReport, MultiplicityMismatch, ScanParams, Spectrum, SpectrumEntry,
    SpectrumPair,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeClass, End, MetricGraph};
use crate::linalg::{self, Mat};

/// Continuity at every vertex plus `sum_e weight_e * outward derivative = 0`.
///
/// The weight of an edge is its stored weight, multiplied by `w` on teeth.
/// With `w = 1` and unit stored weights this is plain Kirchhoff–Neumann.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexConditions {
    pub w: f64,
}

impl VertexConditions {
    pub fn new(w: f64) -> Result<Self> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidParams(format!("tooth weight must be positive, got {w}")));
        }
        Ok(Self { w })
    }

    pub fn kirchhoff() -> Self {
        Self { w: 1.0 }
    }

    pub fn edge_weights(&self, g: &MetricGraph) -> Vec<f64> {
        g.edges
            .iter()
            .map(|e| {
                if e.class == EdgeClass::Tooth {
                    e.weight * self.w
                } else {
                    e.weight
                }
            })
            .collect()
    }
}

/// Per-edge coefficients of an eigenfunction.
///
/// For `k > 0`, `f_e(x) = a cos(kx) + b sin(kx)`; for `k = 0`, `f_e(x) = a + b x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenfunction {
    pub k: f64,
    pub coeffs: Vec<[f64; 2]>,
    pub lengths: Vec<f64>,
}

impl Eigenfunction {
    pub fn lambda(&self) -> f64 {
        self.k * self.k
    }

    pub fn constant(g: &MetricGraph, value: f64) -> Self {
        Self {
            k: 0.0,
            coeffs: vec![[value, 0.0]; g.edge_count()],
            lengths: g.edges.iter().map(|e| e.length).collect(),
        }
    }

    fn check(&self, edge: usize, x: f64) -> Result<()> {
        let length = *self
            .lengths
            .get(edge)
            .ok_or_else(|| Error::InvalidParams(format!("no edge {edge}")))?;
        if !(0.0..=length).contains(&x) {
            return Err(Error::OutOfRange { edge, x, length });
        }
        Ok(())
    }

    pub fn evaluate(&self, edge: usize, x: f64) -> Result<f64> {
        self.check(edge, x)?;
        let [a, b] = self.coeffs[edge];
        Ok(if self.k == 0.0 {
            a + b * x
        } else {
            a * (self.k * x).cos() + b * (self.k * x).sin()
        })
    }

    pub fn evaluate_derivative(&self, edge: usize, x: f64) -> Result<f64> {
        self.check(edge, x)?;
        let [a, b] = self.coeffs[edge];
        let k = self.k;
        Ok(if k == 0.0 {
            b
        } else {
            k * (b * (k * x).cos() - a * (k * x).sin())
        })
    }

    pub fn evaluate_second_derivative(&self, edge: usize, x: f64) -> Result<f64> {
        self.check(edge, x)?;
        let [a, b] = self.coeffs[edge];
        let k = self.k;
        Ok(-k * k * (a * (k * x).cos() + b * (k * x).sin()))
    }

    /// Coefficients of the derivative in the same trigonometric basis.
    pub fn derivative_coeffs(&self) -> Vec<[f64; 2]> {
        self.coeffs.iter().map(|&[a, b]| [self.k * b, -self.k * a]).collect()
    }

    pub fn coefficient_norm(&self) -> f64 {
        self.coeffs.iter().map(|[a, b]| a * a + b * b).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|[a, b]| [a * s, b * s]).collect(),
            ..self.clone()
        }
    }

    /// `<f, g>_w = sum_e weight_e * integral of f_e g_e`, in closed form.
    pub fn inner_w(&self, other: &Eigenfunction, weights: &[f64]) -> f64 {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        let mut total = 0.0;
        for (e, (&[a, b], &[c, d])) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            let l = self.lengths[e];
            total += weights[e] * edge_integral(self.k, other.k, l, [a, b], [c, d]);
        }
        total
    }

    pub fn weighted_norm_sq(&self, weights: &[f64]) -> f64 {
        self.inner_w(self, weights)
    }
}

/// Integral over `[0, l]` of the product of two trigonometric edge functions.
fn edge_integral(k1: f64, k2: f64, l: f64, [a, b]: [f64; 2], [c, d]: [f64; 2]) -> f64 {
    if k1 == 0.0 && k2 == 0.0 {
        return a * c * l + (a * d + b * c) * l * l / 2.0 + b * d * l * l * l / 3.0;
    }
    if k1 == 0.0 || k2 == 0.0 {
        // trigonometric times linear
        let (k, [a, b], [c, d]) = if k2 == 0.0 {
            (k1, [a, b], [c, d])
        } else {
            (k2, [c, d], [a, b])
        };
        let (s, co) = ((k * l).sin(), (k * l).cos());
        let i_cos = s / k;
        let i_sin = (1.0 - co) / k;
        let i_xcos = l * s / k + (co - 1.0) / (k * k);
        let i_xsin = -l * co / k + s / (k * k);
        return a * (c * i_cos + d * i_xcos) + b * (c * i_sin + d * i_xsin);
    }
    if (k1 - k2).abs() <= 1e-14 * k1.abs().max(k2.abs()) {
        let k = 0.5 * (k1 + k2);
        let s2 = (2.0 * k * l).sin() / (4.0 * k);
        let cos2 = l / 2.0 + s2;
        let sin2 = l / 2.0 - s2;
        let sc = (k * l).sin().powi(2) / (2.0 * k);
        return a * c * cos2 + b * d * sin2 + (a * d + b * c) * sc;
    }
    // distinct wavenumbers: product-to-sum identities
    let sinc = |q: f64| if q == 0.0 { l } else { (q * l).sin() / q };
    let cosc = |q: f64| if q == 0.0 { 0.0 } else { (1.0 - (q * l).cos()) / q };
    let (p, m) = (k1 + k2, k1 - k2);
    let cc = 0.5 * (sinc(m) + sinc(p));
    let ss = 0.5 * (sinc(m) - sinc(p));
    // sin(k1 x) cos(k2 x) and cos(k1 x) sin(k2 x)
    let sc = 0.5 * (cosc(p) + cosc(m));
    let cs = 0.5 * (cosc(p) - cosc(m));
    a * c * cc + b * d * ss + b * c * sc + a * d * cs
}

/// Unnormalized rows: per vertex, `deg - 1` continuity rows then one Kirchhoff
/// row (outward derivatives divided by `k`).
fn raw_rows(g: &MetricGraph, cond: &VertexConditions, k: f64) -> Mat<f64> {
    let m = g.edge_count();
    let weights = cond.edge_weights(g);
    let incidences = g.incidences();
    let rows: usize = incidences.iter().map(Vec::len).sum();
    let mut s = Mat::zeros(rows, 2 * m);

    let value = |e: usize, end: End| -> [f64; 2] {
        match end {
            End::Tail => [1.0, 0.0],
            End::Head => {
                let kl = k * g.edges[e].length;
                [kl.cos(), kl.sin()]
            }
        }
    };
    let outward = |e: usize, end: End| -> [f64; 2] {
        match end {
            End::Tail => [0.0, 1.0],
            End::Head => {
                let kl = k * g.edges[e].length;
                [kl.sin(), -kl.cos()]
            }
        }
    };

    let mut r = 0;
    for inc in &incidences {
        if inc.is_empty() {
            continue;
        }
        let (e0, end0) = inc[0];
        let v0 = value(e0, end0);
        for &(e, end) in &inc[1..] {
            let v = value(e, end);
            s[(r, 2 * e0)] += v0[0];
            s[(r, 2 * e0 + 1)] += v0[1];
            s[(r, 2 * e)] -= v[0];
            s[(r, 2 * e + 1)] -= v[1];
            r += 1;
        }
        for &(e, end) in inc {
            let d = outward(e, end);
            s[(r, 2 * e)] += weights[e] * d[0];
            s[(r, 2 * e + 1)] += weights[e] * d[1];
        }
        r += 1;
    }
    s
}

/// The `2m x 2m` secular system at wavenumber `k`, each row scaled to unit
/// Euclidean norm. Its null space is the `k^2`-eigenspace.
pub fn secular_matrix(g: &MetricGraph, cond: &VertexConditions, k: f64) -> Result<Mat<f64>> {
    if !(k > 0.0) {
        return Err(Error::NonPositiveWavenumber(k));
    }
    let mut s = raw_rows(g, cond, k);
    for r in 0..s.rows() {
        let norm = s.row(r).iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for c in 0..s.cols() {
                s[(r, c)] /= norm;
            }
        }
    }
    Ok(s)
}

/// Smallest singular value and the full descending list.
pub fn rank_indicator(g: &MetricGraph, cond: &VertexConditions, k: f64) -> Result<(f64, Vec<f64>)> {
    let s = linalg::singular_values(&secular_matrix(g, cond, k)?);
    Ok((s.last().copied().unwrap_or(0.0), s))
}

/// Orthonormal (in coefficient space) basis of the null space at an accepted root.
pub fn eigenfunction_basis(
    g: &MetricGraph,
    cond: &VertexConditions,
    k: f64,
    params: &ScanParams,
) -> Result<Vec<Eigenfunction>> {
    let svd = linalg::svd(&secular_matrix(g, cond, k)?);
    let top = svd.sigma_max();
    let ratio = svd.sigma_min() / top;
    if !(ratio < params.rank_tol) {
        return Err(Error::NotARoot { k, ratio });
    }
    let lengths: Vec<f64> = g.edges.iter().map(|e| e.length).collect();
    Ok(svd
        .values
        .iter()
        .zip(&svd.right)
        .filter(|(s, _)| **s < params.mult_tol * top)
        .map(|(_, v)| Eigenfunction {
            k,
            coeffs: v.chunks(2).map(|p| [p[0], p[1]]).collect(),
            lengths: lengths.clone(),
        })
        .collect())
}

/// Largest violation of the vertex conditions, relative to the coefficient norm.
pub fn vertex_residual(g: &MetricGraph, cond: &VertexConditions, f: &Eigenfunction) -> f64 {
    let norm = f.coefficient_norm();
    if norm == 0.0 {
        return 0.0;
    }
    if f.k == 0.0 {
        // constants only: every edge flat and equal
        let a0 = f.coeffs[0][0];
        return f
            .coeffs
            .iter()
            .map(|[a, b]| (a - a0).abs().max(b.abs()))
            .fold(0.0, f64::max)
            / norm;
    }
    let s = raw_rows(g, cond, f.k);
    let flat: Vec<f64> = f.coeffs.iter().flat_map(|p| p.iter().copied()).collect();
    s.mul_vec(&flat).iter().fold(0.0f64, |m, x| m.max(x.abs())) / norm
}
