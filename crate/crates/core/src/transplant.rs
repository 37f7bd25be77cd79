//! Eigenderivative transplantation between mutually dual gears.
//!
//! With side `i` and tooth `i` parameterized in parallel, an eigenfunction
//! `f` on a gear with restrictions `p_i, t_i` is sent to
//!
//! ```text
//! p~_i = p_i' + w t_i'      t~_i = p_i' - t_i'        (standard)
//! p~_i = p_i' - t_i'        t~_i = p_i' + w t_i'      (swapped)
//! ```
//!
//! on the dual gear. Everything here acts on trigonometric coefficients, so
//! the eigen-equation holds exactly and norms are closed-form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_gear, dual_gear, GearSpec};
use crate::quantum::{eigenfunction_basis, vertex_residual, Eigenfunction, ScanParams, VertexConditions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TildeForm {
    Standard,
    Swapped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransplantMap {
    pub w: f64,
    pub k: f64,
    pub assignment: Vec<TildeForm>,
}

impl TransplantMap {
    pub fn standard(n: usize, w: f64, k: f64) -> Self {
        Self {
            w,
            k,
            assignment: vec![TildeForm::Standard; n],
        }
    }

    /// Compact form: one `s` (standard) or `v` (swapped) per index.
    pub fn pattern(&self) -> String {
        self.assignment
            .iter()
            .map(|t| if *t == TildeForm::Standard { 's' } else { 'v' })
            .collect()
    }
}

fn check_shape(f: &Eigenfunction, n: usize) -> Result<()> {
    if f.coeffs.len() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "function has {} edges, gear has {}",
            f.coeffs.len(),
            2 * n
        )));
    }
    Ok(())
}

fn combine(u: [f64; 2], v: [f64; 2], s: f64, t: f64) -> [f64; 2] {
    [s * u[0] + t * v[0], s * u[1] + t * v[1]]
}

/// Applies the transplantation to an eigenfunction with `k > 0`.
pub fn transplant(f: &Eigenfunction, map: &TransplantMap) -> Result<Eigenfunction> {
    if f.k == 0.0 {
        return Err(Error::ZeroEigenvalue);
    }
    let n = map.assignment.len();
    check_shape(f, n)?;
    let d = f.derivative_coeffs();
    let w = map.w;
    let mut coeffs = vec![[0.0; 2]; 2 * n];
    for (i, form) in map.assignment.iter().enumerate() {
        let (p, t) = (d[i], d[n + i]);
        let plus = combine(p, t, 1.0, w);
        let minus = combine(p, t, 1.0, -1.0);
        let (side, tooth) = match form {
            TildeForm::Standard => (plus, minus),
            TildeForm::Swapped => (minus, plus),
        };
        coeffs[i] = side;
        coeffs[n + i] = tooth;
    }
    Ok(Eigenfunction {
        k: f.k,
        coeffs,
        lengths: f.lengths.clone(),
    })
}

/// Inverts [`transplant`] on the `lambda`-eigenspace.
///
/// Since `f'' = -lambda f` here, `p~' + w t~' = -lambda (1 + w) p`, hence the
/// negative scale.
pub fn inverse_transplant(ft: &Eigenfunction, map: &TransplantMap) -> Result<Eigenfunction> {
    let lambda = ft.k * ft.k;
    if lambda == 0.0 {
        return Err(Error::ZeroEigenvalue);
    }
    let n = map.assignment.len();
    check_shape(ft, n)?;
    let d = ft.derivative_coeffs();
    let w = map.w;
    let scale = -1.0 / (lambda * (1.0 + w));
    let mut coeffs = vec![[0.0; 2]; 2 * n];
    for (i, form) in map.assignment.iter().enumerate() {
        let (plus, minus) = match form {
            TildeForm::Standard => (d[i], d[n + i]),
            TildeForm::Swapped => (d[n + i], d[i]),
        };
        coeffs[i] = combine(plus, minus, scale, scale * w);
        coeffs[n + i] = combine(plus, minus, scale, -scale);
    }
    Ok(Eigenfunction {
        k: ft.k,
        coeffs,
        lengths: ft.lengths.clone(),
    })
}

/// Finds a tilde assignment whose transplant satisfies the dual conditions.
///
/// The uniform standard pattern is tried first; otherwise all `2^n` patterns
/// are searched (n <= 16) and the one with the smallest residual is kept.
pub fn select_assignment(f: &Eigenfunction, spec: &GearSpec, w: f64, tol: f64) -> Result<(TransplantMap, f64)> {
    let n = spec.n();
    let dual = build_gear(&dual_gear(spec));
    let cond = VertexConditions::new(w)?;
    let residual = |map: &TransplantMap| -> Result<f64> {
        let ft = transplant(f, map)?;
        Ok(vertex_residual(&dual, &cond, &ft))
    };
    let standard = TransplantMap::standard(n, w, f.k);
    let r = residual(&standard)?;
    if r <= tol {
        return Ok((standard, r));
    }
    if n > 16 {
        return Err(Error::TooLarge(format!("assignment search over 2^{n} patterns")));
    }
    let mut best = (standard, r);
    for bits in 1u32..(1 << n) {
        let assignment = (0..n)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    TildeForm::Swapped
                } else {
                    TildeForm::Standard
                }
            })
            .collect();
        let map = TransplantMap { w, k: f.k, assignment };
        let r = residual(&map)?;
        if r < best.1 {
            best = (map, r);
        }
    }
    if best.1 > tol {
        return Err(Error::Inconsistent(format!(
            "no tilde assignment below {tol:e}; best residual {:e}",
            best.1
        )));
    }
    Ok(best)
}

/// Largest `|f'' + k^2 f|` over edges and `samples + 1` points per edge,
/// relative to the largest `|f|` seen.
pub fn check_eigen_equation(f: &Eigenfunction, k: f64, samples: usize) -> f64 {
    let samples = samples.max(1);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for (e, &l) in f.lengths.iter().enumerate() {
        for s in 0..=samples {
            let x = l * s as f64 / samples as f64;
            let v = f.evaluate(e, x).expect("sample inside edge");
            let dd = f.evaluate_second_derivative(e, x).expect("sample inside edge");
            worst = worst.max((dd + k * k * v).abs());
            scale = scale.max(v.abs());
        }
    }
    if scale == 0.0 {
        worst
    } else {
        worst / (scale * k * k).max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
}

/// Compares `||f~||_w^2` against `lambda (1 + w) ||f||_w^2`.
pub fn check_isometry(f: &Eigenfunction, ft: &Eigenfunction, w: f64) -> IsometryCheck {
    let n = f.coeffs.len() / 2;
    let weights: Vec<f64> = (0..2 * n).map(|e| if e < n { 1.0 } else { w }).collect();
    let lhs = ft.weighted_norm_sq(&weights);
    let rhs = f.lambda() * (1.0 + w) * f.weighted_norm_sq(&weights);
    let scale = lhs.abs().max(rhs.abs());
    let rel_error = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
    IsometryCheck { lhs, rhs, rel_error }
}

/// Largest violation of `p~^2 + w t~^2 = (1 + w)(p'^2 + w t'^2)` at sample
/// points, relative to the largest right-hand side.
pub fn pointwise_identity_residual(f: &Eigenfunction, ft: &Eigenfunction, w: f64, samples: usize) -> f64 {
    let n = f.coeffs.len() / 2;
    let samples = samples.max(1);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for i in 0..n {
        let l = f.lengths[i];
        for s in 0..=samples {
            let x = l * s as f64 / samples as f64;
            let p = f.evaluate_derivative(i, x).unwrap_or(0.0);
            let t = f.evaluate_derivative(n + i, x).unwrap_or(0.0);
            let pt = ft.evaluate(i, x).unwrap_or(0.0);
            let tt = ft.evaluate(n + i, x).unwrap_or(0.0);
            let rhs = (1.0 + w) * (p * p + w * t * t);
            worst = worst.max((pt * pt + w * tt * tt - rhs).abs());
            scale = scale.max(rhs);
        }
    }
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransplantReport {
    pub k: f64,
    pub assignment: String,
    pub vertex_residual: f64,
    pub isometry_rel_error: f64,
    pub round_trip_error: f64,
}

/// Transplants every basis function of the `k^2`-eigenspace of `spec` and
/// checks it against the dual gear.
pub fn verify_eigenspace(
    spec: &GearSpec,
    w: f64,
    k: f64,
    params: &ScanParams,
    tol: f64,
) -> Result<Vec<TransplantReport>> {
    let g = build_gear(spec);
    let cond = VertexConditions::new(w)?;
    let basis = eigenfunction_basis(&g, &cond, k, params)?;
    basis
        .iter()
        .map(|f| {
            let (map, vertex_residual) = select_assignment(f, spec, w, tol)?;
            let ft = transplant(f, &map)?;
            let back = inverse_transplant(&ft, &map)?;
            let diff: f64 = back
                .coeffs
                .iter()
                .zip(&f.coeffs)
                .map(|(a, b)| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2))
                .sum::<f64>()
                .sqrt();
            Ok(TransplantReport {
                k,
                assignment: map.pattern(),
                vertex_residual,
                isometry_rel_error: check_isometry(f, &ft, w).rel_error,
                round_trip_error: diff / f.coefficient_norm(),
            })
        })
        .collect()
}
