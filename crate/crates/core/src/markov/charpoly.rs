use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MarkovSystem;
use crate::error::Result;
use crate::linalg::{bareiss_det, Mat};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    pub coeffs: Vec<BigRational>,
}

/// JSON shape of a [`RationalPoly`]: decimal strings, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCoefficients {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &BigRational) -> usize {
        let mut p = self.clone();
        let mut count = 0;
        while p.degree() > 0 && p.eval(x).is_zero() {
            // synthetic division by (t - x)
            let n = p.coeffs.len();
            let mut q = vec![BigRational::zero(); n - 1];
            let mut carry = BigRational::zero();
            for i in (1..n).rev() {
                carry = &p.coeffs[i] + carry * x;
                q[i - 1] = carry.clone();
            }
            p = RationalPoly::new(q);
            count += 1;
        }
        count
    }

    pub fn to_lists(&self) -> PolyCoefficients {
        PolyCoefficients {
            num: self.coeffs.iter().map(|c| c.numer().to_string()).collect(),
            den: self.coeffs.iter().map(|c| c.denom().to_string()).collect(),
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

fn lcm_of_denominators(m: &Mat<BigRational>) -> BigInt {
    let mut l = BigInt::one();
    for r in 0..m.rows() {
        for x in m.row(r) {
            l = l.lcm(x.denom());
        }
    }
    l
}

/// Converts values `P(0), ..., P(N)` of a degree-`N` integer polynomial to
/// coefficients via forward differences.
pub(crate) fn interpolate_integer_points(values: &[BigInt]) -> Vec<BigRational> {
    let n = values.len();
    // Newton form: P(t) = sum_i (Delta^i P(0) / i!) t (t-1) ... (t-i+1)
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    for i in 0..n {
        newton.push(diffs[0].clone());
        for j in 0..n - i - 1 {
            diffs[j] = &diffs[j + 1] - &diffs[j];
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    // falling factorial basis polynomial, built incrementally
    let mut basis = vec![BigInt::one()];
    let mut factorial = BigInt::one();
    for (i, c) in newton.iter().enumerate() {
        if i > 0 {
            factorial *= BigInt::from(i);
        }
        let scale = BigRational::new(c.clone(), factorial.clone());
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += &scale * BigRational::from_integer(b.clone());
        }
        // basis *= (t - i)
        let mut next = vec![BigInt::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= b * BigInt::from(i);
        }
        basis = next;
    }
    coeffs
}

/// `det(t I - M)` exactly, via `det(t D - A) / det(D)` with integer-scaled
/// `D` and `A`, Bareiss determinants at `t = 0..N`, and interpolation.
pub fn characteristic_polynomial_exact(ms: &MarkovSystem<BigRational>) -> Result<RationalPoly> {
    let n = ms.size();
    let scale = BigRational::from_integer(lcm_of_denominators(&ms.adjacency));
    let a = ms.adjacency.map(|x| (x * &scale).to_integer());
    let d: Vec<BigInt> = ms.degrees.iter().map(|x| (x * &scale).to_integer()).collect();
    let values: Vec<BigInt> = (0..=n)
        .into_par_iter()
        .map(|t| {
            let t = BigInt::from(t);
            let m = Mat::from_fn(n, n, |r, c| {
                let diag = if r == c { &t * &d[r] } else { BigInt::zero() };
                diag - &a[(r, c)]
            });
            bareiss_det(&m)
        })
        .collect();
    let det_d = d.iter().fold(BigInt::one(), |acc, x| acc * x);
    let det_d = BigRational::from_integer(det_d);
    let coeffs = interpolate_integer_points(&values)
        .into_iter()
        .map(|c| c / &det_d)
        .collect();
    Ok(RationalPoly::new(coeffs))
}
