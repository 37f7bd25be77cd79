//! Sparse integer polynomials in `x, y, alpha, beta, gamma, delta` and exact
//! determinants of polynomial matrices by interpolation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::field;
use crate::error::{Error, Result};
use crate::linalg::Mat;

pub const VARIABLES: [&str; 6] = ["x", "y", "alpha", "beta", "gamma", "delta"];

pub type Exponents = [u32; 6];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl SparsePolynomial {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0; 6])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 6];
        e[i] = 1;
        Self::monomial(1, e)
    }

    pub fn monomial(c: impl Into<BigInt>, exps: Exponents) -> Self {
        let mut p = Self::default();
        p.add_term(exps, c.into());
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Substitutes `0` for variable `var`.
    pub fn set_zero(&self, var: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> [bool; 6] {
        let mut seen = [false; 6];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                seen[i] |= k > 0;
            }
        }
        seen
    }

    pub fn coefficient_norm1(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn eval_mod(&self, point: &[u64; 6], p: u64) -> u64 {
        let mut total = 0;
        for (e, c) in &self.terms {
            let mut term = bigint_mod(c, p);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = field::mul(term, field::pow(point[i], k as u64, p), p);
                }
            }
            total = field::add(total, term, p);
        }
        total
    }

    pub fn eval(&self, point: &[i64; 6]) -> BigInt {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                term *= num_traits::pow(BigInt::from(point[i]), k as usize);
            }
            total += term;
        }
        total
    }

    /// Renames variables: term exponent `i` moves to position `perm[i]`.
    pub fn permute_variables(&self, perm: [usize; 6]) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            let mut f = [0; 6];
            for i in 0..6 {
                f[perm[i]] = e[i];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// One line per term, `coeff x^a y^b alpha^c beta^d gamma^e delta^f`,
    /// in lexicographic order of the exponent tuples.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            out.push_str(&c.to_string());
            for (name, k) in VARIABLES.iter().zip(e) {
                out.push_str(&format!(" {name}^{k}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut p = Self::default();
        for (i, line) in text.lines().enumerate() {
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut tokens = line.split_whitespace();
            let Some(c) = tokens.next() else { continue };
            let c: BigInt = c.parse().map_err(|_| bad("bad coefficient"))?;
            let mut e = [0; 6];
            for (slot, name) in e.iter_mut().zip(VARIABLES) {
                let tok = tokens.next().ok_or_else(|| bad("missing exponent"))?;
                let k = tok
                    .strip_prefix(name)
                    .and_then(|s| s.strip_prefix('^'))
                    .ok_or_else(|| bad("exponent out of order"))?;
                *slot = k.parse().map_err(|_| bad("bad exponent"))?;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (n, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = VARIABLES
                .iter()
                .zip(e)
                .filter(|(_, k)| **k > 0)
                .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            match (a.is_one(), vars.is_empty()) {
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (_, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Add for SparsePolynomial {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for SparsePolynomial {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for SparsePolynomial {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..6 {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Zero for SparsePolynomial {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.magnitude() % p;
    let r = r.to_u64().expect("reduced below p");
    if c.sign() == Sign::Minus {
        field::sub(0, r, p)
    } else {
        r
    }
}

/// All points of `N^k` with coordinate sum at most `d`.
fn simplex_points(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in simplex_points(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficients (mod p) of `t (t - 1) ... (t - i + 1) / i!`, lowest first.
fn binomial_basis(i: u32, p: u64) -> Vec<u64> {
    let mut poly = vec![1u64];
    let mut fact = 1u64;
    for j in 0..i as u64 {
        let mut next = vec![0u64; poly.len() + 1];
        for (m, &c) in poly.iter().enumerate() {
            next[m + 1] = field::add(next[m + 1], c, p);
            next[m] = field::sub(next[m], field::mul(c, j % p, p), p);
        }
        poly = next;
        fact = field::mul(fact, (j + 1) % p, p);
    }
    let finv = field::inv(fact, p);
    poly.iter().map(|&c| field::mul(c, finv, p)).collect()
}

/// Newton interpolation on the simplex grid: `f` is known on all points of
/// total degree at most `d` and is a polynomial of total degree at most `d`.
fn interpolate(k: usize, d: u32, f: &dyn Fn(&[u32]) -> u64, p: u64) -> HashMap<Vec<u32>, u64> {
    let mut out = HashMap::new();
    if k == 0 {
        let v = f(&[]);
        if v != 0 {
            out.insert(Vec::new(), v);
        }
        return out;
    }
    let mut binom = vec![vec![1u64]];
    for i in 1..=d as usize {
        let prev = &binom[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = field::add(prev[j - 1], prev[j], p);
        }
        binom.push(row);
    }
    for i in 0..=d {
        let row = &binom[i as usize];
        // i-th forward difference in the first coordinate, at 0
        let g = |r: &[u32]| {
            let mut point = Vec::with_capacity(r.len() + 1);
            point.push(0);
            point.extend_from_slice(r);
            let mut acc = 0u64;
            for j in 0..=i {
                point[0] = j;
                let term = field::mul(row[j as usize], f(&point), p);
                acc = if (i - j) % 2 == 0 {
                    field::add(acc, term, p)
                } else {
                    field::sub(acc, term, p)
                };
            }
            acc
        };
        let ci = interpolate(k - 1, d - i, &g, p);
        if ci.is_empty() {
            continue;
        }
        let basis = binomial_basis(i, p);
        for (exps, c) in ci {
            for (m, &b) in basis.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let mut key = Vec::with_capacity(k);
                key.push(m as u32);
                key.extend_from_slice(&exps);
                let slot = out.entry(key).or_insert(0);
                *slot = field::add(*slot, field::mul(c, b, p), p);
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Exact determinant of a square matrix of polynomials.
///
/// The determinant is interpolated from its values on a simplex grid modulo
/// enough 61-bit primes to cover a coefficient bound, then lifted
/// symmetrically by Chinese remaindering.
pub fn det_symbolic(m: &Mat<SparsePolynomial>) -> Result<SparsePolynomial> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix has no determinant",
            n,
            m.cols()
        )));
    }
    if n == 0 {
        return Ok(SparsePolynomial::constant(1));
    }
    let mut present = [false; 6];
    let mut degree = 0u32;
    let mut bound = BigInt::one();
    for r in 0..n {
        let mut row_deg = 0;
        let mut row_norm = BigInt::zero();
        for e in m.row(r) {
            for (i, used) in e.variables().iter().enumerate() {
                present[i] |= used;
            }
            row_deg = row_deg.max(e.total_degree());
            row_norm += e.coefficient_norm1();
        }
        degree += row_deg;
        bound *= row_norm;
    }
    if bound.is_zero() {
        return Ok(SparsePolynomial::default());
    }
    let vars: Vec<usize> = (0..6).filter(|&i| present[i]).collect();
    let needed = BigInt::from(2) * &bound + 1;
    let mut count = 1;
    while field::primes(count).iter().fold(BigInt::one(), |a, &p| a * p) < needed {
        count += 1;
    }
    let primes = field::primes(count);
    let points = simplex_points(vars.len(), degree);
    let residues: Vec<HashMap<Vec<u32>, u64>> = primes
        .iter()
        .map(|&p| {
            let values: HashMap<Vec<u32>, u64> = points
                .par_iter()
                .map(|pt| {
                    let mut full = [0u64; 6];
                    for (slot, &v) in vars.iter().zip(pt) {
                        full[*slot] = v as u64 % p;
                    }
                    let rows = (0..n)
                        .map(|r| m.row(r).iter().map(|e| e.eval_mod(&full, p)).collect())
                        .collect();
                    (pt.clone(), field::det(rows, p))
                })
                .collect();
            interpolate(vars.len(), degree, &|pt: &[u32]| values[pt], p)
        })
        .collect();

    // combine residues per monomial
    let mut keys: Vec<&Vec<u32>> = residues.iter().flat_map(|r| r.keys()).collect();
    keys.sort();
    keys.dedup();
    let modulus = primes.iter().fold(BigInt::one(), |a, &p| a * p);
    let half = &modulus / 2;
    let mut out = SparsePolynomial::default();
    for key in keys {
        let mut x = BigInt::zero();
        let mut mprod = BigInt::one();
        for (res, &p) in residues.iter().zip(&primes) {
            let r = res.get(key).copied().unwrap_or(0);
            let current = bigint_mod(&x, p);
            let mp = bigint_mod(&mprod, p);
            let t = field::mul(field::sub(r, current, p), field::inv(mp, p), p);
            x += &mprod * t;
            mprod *= p;
        }
        if x > half {
            x -= &modulus;
        }
        let mut exps = [0; 6];
        for (slot, &k) in vars.iter().zip(key) {
            exps[*slot] = k;
        }
        out.add_term(exps, x);
    }
    Ok(out)
}
