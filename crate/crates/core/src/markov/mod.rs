//! Weighted random walks on unit subdivisions.
//!
//! `M[u][v] = a(u, v) / d(u)` where `a` is the weighted adjacency (tooth
//! edges carry weight `w`) and `d` the weighted degree. `M` is self-adjoint
//! for the inner product weighted by `d`, so its spectrum is real and lies in
//! `[-1, 1]`. Everything is generic over [`Scalar`]: `f64` for speed and
//! `BigRational` for exact identities.

mod charpoly;
mod conjugator;
mod crosscheck;

pub use charpoly::{characteristic_polynomial_exact, PolyCoefficients, RationalPoly};
pub use conjugator::{
    build_conjugator, combinatorial_transplant, conjugator_report, transplantation_matrix, Conjugator,
    ConjugatorReport, GearPair, Mode,
};
pub use crosscheck::{crosscheck_quantum, dirichlet_multiplicity, CrosscheckReport};
pub use num_rational::BigRational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{CombinatorialGraph, EdgeClass};
use crate::linalg::{self, Mat};

/// Field used by the Markov code: `f64` or `BigRational`.
pub trait Scalar: Clone + Num + std::ops::Neg<Output = Self> + PartialEq + fmt::Debug + Send + Sync
where
    for<'a> &'a Self: std::ops::Mul<&'a Self, Output = Self>,
{
    const MODE: &'static str;

    fn from_weight(w: &Weight) -> Result<Self>;

    fn from_f64(x: f64) -> Result<Self>;

    fn to_f64(&self) -> f64;

    /// Equality up to `1e-12` relative to `scale` in float mode; exact otherwise.
    fn near(&self, other: &Self, scale: f64) -> bool;
}

impl Scalar for f64 {
    const MODE: &'static str = "float";

    fn from_weight(w: &Weight) -> Result<Self> {
        Ok(w.value)
    }

    fn from_f64(x: f64) -> Result<Self> {
        Ok(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near(&self, other: &Self, scale: f64) -> bool {
        (self - other).abs() <= 1e-12 * scale.max(1.0)
    }
}

impl Scalar for BigRational {
    const MODE: &'static str = "rational";

    fn from_weight(w: &Weight) -> Result<Self> {
        w.exact.clone().ok_or(Error::IrrationalWeight(w.value))
    }

    fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x).ok_or(Error::IrrationalWeight(x))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near(&self, other: &Self, _scale: f64) -> bool {
        self == other
    }
}

/// A positive tooth weight, exact when it was given as a fraction or a
/// terminating decimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub value: f64,
    pub exact: Option<BigRational>,
}

impl Weight {
    pub fn one() -> Self {
        Self {
            value: 1.0,
            exact: Some(BigRational::one()),
        }
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self::from_exact(q)
    }

    fn from_exact(q: BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::InvalidParams(format!("weight must be positive, got {q}")));
        }
        Ok(Self {
            value: Scalar::to_f64(&q),
            exact: Some(q),
        })
    }

    /// Exact when `x` equals `p/q` with `q <= 1000`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidParams(format!("weight must be positive, got {x}")));
        }
        let exact = (1..=1000i64).find_map(|q| {
            let p = (x * q as f64).round();
            if p / q as f64 != x {
                return None;
            }
            Some(BigRational::new(BigInt::from_f64(p)?, BigInt::from(q)))
        });
        Ok(Self { value: x, exact })
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("bad weight `{s}`"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Self::from_exact(BigRational::new(p, q));
        }
        if s.contains(['e', 'E']) || s.eq_ignore_ascii_case("nan") || s.contains("inf") {
            let x: f64 = s.parse().map_err(|_| bad())?;
            return Self::from_f64(x);
        }
        // terminating decimal, parsed exactly
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Self::from_exact(BigRational::new(digits, scale))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MarkovSystem<T> {
    pub graph: CombinatorialGraph,
    /// Weighted adjacency; symmetric.
    pub adjacency: Mat<T>,
    /// Weighted degrees (stationary weights up to normalization).
    pub degrees: Vec<T>,
    pub m: Mat<T>,
    pub w: T,
}

/// Transition matrix of the `w`-weighted walk.
pub fn markov_matrix<T: Scalar>(cg: &CombinatorialGraph, w: &Weight) -> Result<MarkovSystem<T>>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    if !(w.value > 0.0) {
        return Err(Error::InvalidParams(format!(
            "weight must be positive, got {}",
            w.value
        )));
    }
    if let Some(v) = cg.validate().into_iter().next() {
        return Err(Error::InvalidGraph(v.to_string()));
    }
    let wt = T::from_weight(w)?;
    let n = cg.vertex_count;
    let mut a = Mat::<T>::zeros(n, n);
    for e in &cg.edges {
        let mut weight = T::from_f64(e.weight)?;
        if e.class == EdgeClass::Tooth {
            weight = &weight * &wt;
        }
        a[(e.u, e.v)] = a[(e.u, e.v)].clone() + weight.clone();
        if e.u != e.v {
            a[(e.v, e.u)] = a[(e.v, e.u)].clone() + weight;
        }
    }
    let degrees: Vec<T> = (0..n)
        .map(|u| a.row(u).iter().fold(T::zero(), |s, x| s + x.clone()))
        .collect();
    let m = Mat::from_fn(n, n, |u, v| a[(u, v)].clone() / degrees[u].clone());
    Ok(MarkovSystem {
        graph: cg.clone(),
        adjacency: a,
        degrees,
        m,
        w: wt,
    })
}

impl<T: Scalar> MarkovSystem<T>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn apply(&self, f: &[T]) -> Vec<T> {
        self.m.mul_vec(f)
    }

    /// Largest `|d_u M[u][v] - d_v M[v][u]|` (exactly zero in rational mode).
    pub fn detailed_balance_defect(&self) -> T {
        let n = self.size();
        let mut worst = T::zero();
        for u in 0..n {
            for v in 0..n {
                let diff = &self.degrees[u] * &self.m[(u, v)] - &self.degrees[v] * &self.m[(v, u)];
                let diff = if diff.to_f64() < 0.0 { -diff } else { diff };
                if diff.to_f64() > worst.to_f64() || (worst.is_zero() && !diff.is_zero()) {
                    worst = diff;
                }
            }
        }
        worst
    }

    /// `f'_{[v, v']}(v) = -M[f](v) + f(v')`.
    pub fn derivative(&self, f: &[T], v: usize, v2: usize) -> Result<T> {
        if self.adjacency[(v, v2)].is_zero() {
            return Err(Error::NotAdjacent(v, v2));
        }
        Ok(self.mean_at(f, v).neg() + f[v2].clone())
    }

    fn mean_at(&self, f: &[T], v: usize) -> T {
        self.m.row(v).iter().zip(f).fold(T::zero(), |s, (a, b)| s + a * b)
    }

    /// At every vertex, `sum_{v'} a(v, v') f'_{[v, v']}(v)`; identically zero.
    pub fn kirchhoff_defects(&self, f: &[T]) -> Vec<T> {
        let adj = self.graph.neighbors();
        (0..self.size())
            .map(|v| {
                let mean = self.mean_at(f, v);
                let mut seen = Vec::new();
                let mut total = T::zero();
                for &(u, _) in &adj[v] {
                    if seen.contains(&u) {
                        continue;
                    }
                    seen.push(u);
                    total = total + &self.adjacency[(v, u)] * &(f[u].clone() - mean.clone());
                }
                total
            })
            .collect()
    }

    /// Sign vector of the bipartition, `+1` on vertex 0.
    pub fn sign_vector(&self) -> Option<Vec<T>> {
        self.graph.bipartition().map(|c| {
            let flip = c[0];
            c.iter()
                .map(|&s| if s == flip { T::one() } else { -T::one() })
                .collect()
        })
    }

    pub fn to_f64(&self) -> MarkovSystem<f64> {
        MarkovSystem {
            graph: self.graph.clone(),
            adjacency: self.adjacency.map(Scalar::to_f64),
            degrees: self.degrees.iter().map(Scalar::to_f64).collect(),
            m: self.m.map(Scalar::to_f64),
            w: self.w.to_f64(),
        }
    }
}

/// Eigenvalues of `M`, ascending, via Jacobi rotations on
/// `D^{1/2} M D^{-1/2} = D^{-1/2} A D^{-1/2}`.
pub fn markov_spectrum<T: Scalar>(ms: &MarkovSystem<T>) -> Vec<f64>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let d: Vec<f64> = ms.degrees.iter().map(Scalar::to_f64).collect();
    let n = d.len();
    let s = Mat::from_fn(n, n, |u, v| ms.adjacency[(u, v)].to_f64() / (d[u] * d[v]).sqrt());
    linalg::symmetric_eigen(&s).0
}

/// Eigenvalues together with `M`-eigenvectors (columns, `D^{-1/2}`-scaled).
pub fn markov_eigenvectors(ms: &MarkovSystem<f64>) -> (Vec<f64>, Mat<f64>) {
    let n = ms.size();
    let d = &ms.degrees;
    let s = Mat::from_fn(n, n, |u, v| ms.adjacency[(u, v)] / (d[u] * d[v]).sqrt());
    let (values, vectors) = linalg::symmetric_eigen(&s);
    let scaled = Mat::from_fn(n, n, |r, c| vectors[(r, c)] / d[r].sqrt());
    (values, scaled)
}
