//! Generalized characteristic polynomials of digraphs.
//!
//! For a digraph with adjacency `A` the pencil is
//! `L(z) = x I + y J + alpha A + beta A^T + gamma D_out + delta D_in`
//! with `J` the all-ones matrix. Two digraphs are compared through
//! `det L(z)`, either by random evaluation over a prime field or by exact
//! expansion.

pub mod field;
mod iso;
mod poly;
mod tmatrix;

pub use iso::digraph_isomorphic;
pub use poly::{det_symbolic, Exponents, SparsePolynomial, VARIABLES};
pub use tmatrix::{intertwiner_t, verify_t, TReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::Mat;

/// Which part of `det L(z)` is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilRestriction {
    /// `y = 0`: the polynomial that determines the reversing zeta function.
    Eta,
    /// All six variables.
    Full,
}

impl std::str::FromStr for PencilRestriction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta" => Ok(Self::Eta),
            "full" => Ok(Self::Full),
            other => Err(Error::InvalidParams(format!("unknown restriction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub n: usize,
    /// Arc counts.
    pub a: Mat<i64>,
    pub out_degrees: Vec<i64>,
    pub in_degrees: Vec<i64>,
}

pub fn pencil(g: &Digraph) -> Pencil {
    let n = g.vertex_count;
    let mut a = Mat::zeros(n, n);
    for &(t, h) in &g.arcs {
        a[(t, h)] += 1;
    }
    let out_degrees = (0..n).map(|r| a.row(r).iter().sum()).collect();
    let in_degrees = (0..n).map(|c| a.column(c).iter().sum()).collect();
    Pencil {
        n,
        a,
        out_degrees,
        in_degrees,
    }
}

impl Pencil {
    /// Entry `(r, c)` as integer coefficients of `(x, y, alpha, beta, gamma, delta)`.
    fn entry(&self, r: usize, c: usize) -> [i64; 6] {
        let diag = i64::from(r == c);
        [
            diag,
            1,
            self.a[(r, c)],
            self.a[(c, r)],
            diag * self.out_degrees[r],
            diag * self.in_degrees[r],
        ]
    }

    pub fn matrix_mod(&self, pt: &PrimeFieldPoint) -> Vec<Vec<u64>> {
        let p = pt.prime;
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        self.entry(r, c).iter().zip(&pt.coords).fold(0, |acc, (&k, &z)| {
                            field::add(acc, field::mul(field::from_i64(k, p), z, p), p)
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn symbolic_matrix(&self, restriction: PencilRestriction) -> Mat<SparsePolynomial> {
        Mat::from_fn(self.n, self.n, |r, c| {
            let mut e = SparsePolynomial::default();
            for (i, k) in self.entry(r, c).into_iter().enumerate() {
                if i == 1 && restriction == PencilRestriction::Eta {
                    continue;
                }
                let mut exps = [0; 6];
                exps[i] = 1;
                e.add_term(exps, k.into());
            }
            e
        })
    }
}

/// A point `(x, y, alpha, beta, gamma, delta)` of `F_p^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFieldPoint {
    pub prime: u64,
    pub coords: [u64; 6],
}

impl PrimeFieldPoint {
    pub fn new(coords: [u64; 6], prime: u64) -> Self {
        Self {
            prime,
            coords: coords.map(|c| c % prime),
        }
    }

    pub fn random(rng: &mut impl Rng, prime: u64, restriction: PencilRestriction) -> Self {
        let mut coords = [0u64; 6];
        for c in coords.iter_mut() {
            *c = rng.random_range(0..prime);
        }
        if restriction == PencilRestriction::Eta {
            coords[1] = 0;
        }
        Self { prime, coords }
    }
}

/// `det L(pt)` over `F_p`.
pub fn eval_det(p: &Pencil, pt: &PrimeFieldPoint) -> u64 {
    field::det(p.matrix_mod(pt), pt.prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    EquivalentWithBound,
    Distinguished,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: usize,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub restriction: PencilRestriction,
    pub verdict: VerdictKind,
    /// Schwartz–Zippel bound `n / p` on a single trial missing a difference.
    pub failure_bound: f64,
    /// `log10((n / p)^trials)`, the bound for all trials together.
    pub failure_bound_log10_all: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguishing_point: Option<PrimeFieldPoint>,
}

/// Randomized identity test of `det L_{g1}(z) = det L_{g2}(z)`.
///
/// Trial `i` draws its point from a ChaCha20 stream `i` under `seed`, so the
/// verdict does not depend on scheduling.
pub fn zeta_equivalent(
    g1: &Digraph,
    g2: &Digraph,
    trials: usize,
    seed: u64,
    restriction: PencilRestriction,
) -> Verdict {
    let prime = field::P61;
    let n = g1.vertex_count.max(g2.vertex_count);
    let failure_bound = n as f64 / prime as f64;
    let mut verdict = Verdict {
        n,
        trials,
        prime,
        seed,
        restriction,
        verdict: VerdictKind::Distinguished,
        failure_bound,
        failure_bound_log10_all: trials as f64 * failure_bound.log10(),
        distinguishing_point: None,
    };
    if g1.vertex_count != g2.vertex_count {
        // determinants of different degree
        return verdict;
    }
    let (p1, p2) = (pencil(g1), pencil(g2));
    let first_difference = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let pt = PrimeFieldPoint::random(&mut rng, prime, restriction);
            (eval_det(&p1, &pt) != eval_det(&p2, &pt)).then_some(pt)
        })
        .find_first(Option::is_some)
        .flatten();
    match first_difference {
        Some(pt) => verdict.distinguishing_point = Some(pt),
        None => verdict.verdict = VerdictKind::EquivalentWithBound,
    }
    verdict
}

/// `det L(z)` expanded exactly (n <= 12).
pub fn char_poly_symbolic(p: &Pencil, restriction: PencilRestriction) -> Result<SparsePolynomial> {
    if p.n > 12 {
        return Err(Error::TooLarge(format!(
            "symbolic expansion limited to 12 vertices, got {}",
            p.n
        )));
    }
    det_symbolic(&p.symbolic_matrix(restriction))
}
