use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{characteristic_polynomial_exact, markov_matrix, markov_spectrum, MarkovSystem, Scalar, Weight};
use crate::error::{Error, Result};
use crate::graph::{build_gear, dual_gear, subdivide, GearSpec};
use crate::linalg::{self, Mat};
use crate::transplant::TildeForm;

/// Markov systems of a subdivided gear and its dual, with slot-aligned paths.
#[derive(Debug, Clone)]
pub struct GearPair<T> {
    pub spec: GearSpec,
    pub primal: MarkovSystem<T>,
    pub dual: MarkovSystem<T>,
    pub assignment: Vec<TildeForm>,
}

impl<T: Scalar> GearPair<T>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    /// Builds both systems and fixes a tilde assignment under which the
    /// transplant is well defined on every vertex function.
    pub fn new(spec: &GearSpec, w: &Weight) -> Result<Self> {
        if !spec.is_integral() {
            return Err(Error::InvalidGear("Markov systems need integer lengths".into()));
        }
        let primal = markov_matrix(&subdivide(&build_gear(spec))?, w)?;
        let dual = markov_matrix(&subdivide(&build_gear(&dual_gear(spec)))?, w)?;
        let n = spec.n();
        let mut pair = Self {
            spec: spec.clone(),
            primal,
            dual,
            assignment: vec![TildeForm::Standard; n],
        };
        if transplantation_matrix(&pair).is_ok() {
            return Ok(pair);
        }
        for bits in 1u32..(1 << n.min(16)) {
            pair.assignment = (0..n)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        TildeForm::Swapped
                    } else {
                        TildeForm::Standard
                    }
                })
                .collect();
            if transplantation_matrix(&pair).is_ok() {
                return Ok(pair);
            }
        }
        Err(Error::Inconsistent(
            "no tilde assignment gives a well-defined transplant".into(),
        ))
    }

    pub fn size(&self) -> usize {
        self.primal.size()
    }

    /// Derivative of `f` along original edge `e` at slot `j`, in the
    /// direction of the edge's parameterization.
    fn slot_derivative(&self, f: &[T], mf: &[T], e: usize, j: usize) -> T {
        let path = &self.primal.graph.paths[e];
        let v = path[j];
        if j + 1 < path.len() {
            f[path[j + 1]].clone() - mf[v].clone()
        } else {
            mf[v].clone() - f[path[j - 1]].clone()
        }
    }
}

/// Vertex function on the subdivided dual obtained from the discrete
/// eigenderivatives of `f`. Errors if two paths disagree at a shared vertex.
pub fn combinatorial_transplant<T: Scalar>(pair: &GearPair<T>, f: &[T]) -> Result<Vec<T>>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let size = pair.size();
    if f.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {size} vertices",
            f.len()
        )));
    }
    let n = pair.spec.n();
    let w = &pair.primal.w;
    let mf = pair.primal.apply(f);
    let scale = f.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let mut out: Vec<Option<T>> = vec![None; size];
    let mut put = |v: usize, value: T| -> Result<()> {
        match &out[v] {
            Some(old) if !old.near(&value, scale) => Err(Error::Inconsistent(format!(
                "transplant disagrees at dual vertex {v}: {:?} vs {:?}",
                old.to_f64(),
                value.to_f64()
            ))),
            Some(_) => Ok(()),
            None => {
                out[v] = Some(value);
                Ok(())
            }
        }
    };
    for i in 0..n {
        let len = pair.primal.graph.paths[i].len();
        for j in 0..len {
            let p = pair.slot_derivative(f, &mf, i, j);
            let t = pair.slot_derivative(f, &mf, n + i, j);
            let plus = p.clone() + w * &t;
            let minus = p - t;
            let (side, tooth) = match pair.assignment[i] {
                TildeForm::Standard => (plus, minus),
                TildeForm::Swapped => (minus, plus),
            };
            put(pair.dual.graph.paths[i][j], side)?;
            put(pair.dual.graph.paths[n + i][j], tooth)?;
        }
    }
    Ok(out.into_iter().map(|x| x.unwrap_or_else(T::zero)).collect())
}

/// Matrix of the combinatorial transplant; column `j` is the image of the
/// indicator of vertex `j`.
pub fn transplantation_matrix<T: Scalar>(pair: &GearPair<T>) -> Result<Mat<T>>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let size = pair.size();
    let mut t = Mat::zeros(size, size);
    for j in 0..size {
        let mut e = vec![T::zero(); size];
        e[j] = T::one();
        for (r, v) in combinatorial_transplant(pair, &e)?.into_iter().enumerate() {
            t[(r, j)] = v;
        }
    }
    Ok(t)
}

#[derive(Debug, Clone)]
pub struct Conjugator<T> {
    pub t: Mat<T>,
    pub j_plus: Mat<T>,
    pub j_minus: Mat<T>,
    pub c: Mat<T>,
}

/// `C = T + J+ + J-` with `J+ = 1 d^T` and, for bipartite gears,
/// `J- = s~ (s d)^T`. `C` maps the kernel of `T` (constants and the sign
/// vector) onto the corresponding vectors of the dual.
pub fn build_conjugator<T: Scalar>(pair: &GearPair<T>) -> Result<Conjugator<T>>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let t = transplantation_matrix(pair)?;
    let size = pair.size();
    let d = &pair.primal.degrees;
    let j_plus = Mat::from_fn(size, size, |_, c| d[c].clone());
    let j_minus = match (pair.primal.sign_vector(), pair.dual.sign_vector()) {
        (Some(s), Some(st)) => Mat::from_fn(size, size, |r, c| &st[r] * &(&s[c] * &d[c])),
        _ => Mat::zeros(size, size),
    };
    let c = t.add(&j_plus).add(&j_minus);
    Ok(Conjugator { t, j_plus, j_minus, c })
}

impl<T: Scalar> Conjugator<T>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    /// `M~ C - C M`.
    pub fn defect(&self, pair: &GearPair<T>) -> Mat<T> {
        pair.dual.m.matmul(&self.c).sub(&self.c.matmul(&pair.primal.m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Rational,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            other => Err(Error::InvalidParams(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugatorReport {
    pub n: usize,
    pub lengths: Vec<f64>,
    pub w: String,
    pub mode: Mode,
    pub size: usize,
    pub bipartite: bool,
    pub rank_t: usize,
    pub conj_residual: f64,
    #[serde(rename = "sigma_min_C")]
    pub sigma_min_c: f64,
    pub charpoly_equal: bool,
}

impl ConjugatorReport {
    pub fn passed(&self) -> bool {
        let tol = if self.mode == Mode::Rational { 0.0 } else { 1e-10 };
        let rank_ok = self.rank_t + if self.bipartite { 2 } else { 1 } == self.size;
        self.conj_residual <= tol && self.sigma_min_c > 1e-8 && self.charpoly_equal && rank_ok
    }
}

/// Builds `C` for the gear and its dual and checks `M~ C = C M`, the
/// invertibility of `C`, the rank of `T` and the spectra.
pub fn conjugator_report(spec: &GearSpec, w: &Weight, mode: Mode) -> Result<ConjugatorReport> {
    let (size, bipartite, rank_t, conj_residual, c_float, charpoly_equal) = match mode {
        Mode::Rational => {
            let pair = GearPair::<BigRational>::new(spec, w)?;
            let conj = build_conjugator(&pair)?;
            let defect = conj.defect(&pair);
            let residual = Scalar::to_f64(&linalg::max_abs_rational(&defect));
            let equal = characteristic_polynomial_exact(&pair.primal)? == characteristic_polynomial_exact(&pair.dual)?;
            let rank = linalg::exact_rank(&conj.t);
            (
                pair.size(),
                pair.primal.sign_vector().is_some(),
                rank,
                residual,
                conj.c.map(Scalar::to_f64),
                equal,
            )
        }
        Mode::Float => {
            let pair = GearPair::<f64>::new(spec, w)?;
            let conj = build_conjugator(&pair)?;
            let residual = conj.defect(&pair).max_abs();
            let (a, b) = (markov_spectrum(&pair.primal), markov_spectrum(&pair.dual));
            let equal = a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-10);
            let rank = linalg::numerical_rank(&conj.t, 1e-10);
            (
                pair.size(),
                pair.primal.sign_vector().is_some(),
                rank,
                residual,
                conj.c,
                equal,
            )
        }
    };
    Ok(ConjugatorReport {
        n: spec.n(),
        lengths: spec.lengths().to_vec(),
        w: w.to_string(),
        mode,
        size,
        bipartite,
        rank_t,
        conj_residual,
        sigma_min_c: linalg::svd(&c_float).sigma_min(),
        charpoly_equal,
    })
}
