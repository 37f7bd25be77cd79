#![allow(dead_code)]

use isogear::graph::{Attach, Edge, EdgeClass, GearSpec, MetricGraph};
use isogear::linalg::Mat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Star with Neumann leaves; edge `i` runs from the centre (vertex 0) to leaf `i + 1`.
pub fn star(lengths: &[f64]) -> MetricGraph {
    let edges = lengths
        .iter()
        .enumerate()
        .map(|(i, &length)| Edge {
            id: i,
            tail: 0,
            head: i + 1,
            length,
            weight: 1.0,
            class: EdgeClass::Plain,
        })
        .collect();
    MetricGraph::new("star", lengths.len() + 1, edges)
}

/// Positive wavenumbers of a star with pairwise incommensurate arms, from
/// sign changes of `sum_i sin(k l_i) prod_{j != i} cos(k l_j)`.
pub fn star_roots(lengths: &[f64], k_max: f64) -> Vec<f64> {
    let f = |k: f64| {
        (0..lengths.len())
            .map(|i| {
                lengths
                    .iter()
                    .enumerate()
                    .map(|(j, l)| if i == j { (k * l).sin() } else { (k * l).cos() })
                    .product::<f64>()
            })
            .sum::<f64>()
    };
    let step = 1e-3;
    let mut roots = Vec::new();
    let mut a = step;
    while a < k_max {
        let b = (a + step).min(k_max);
        if f(a) == 0.0 {
            roots.push(a);
        } else if f(a) * f(b) < 0.0 {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if f(lo) * f(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
    }
    roots
}

/// Ascending coefficients of `det(t I - m)` by the Faddeev–LeVerrier recursion.
pub fn faddeev_leverrier(m: &Mat<BigRational>) -> Vec<BigRational> {
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = Mat::<BigRational>::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() + prev.clone();
        }
        mk = m.matmul(&shifted);
        let trace = (0..n).fold(BigRational::zero(), |s, i| s + mk[(i, i)].clone());
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .filter(|&c| m[0][c] != 0)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * cofactor_det(&minor)
        })
        .sum()
}

/// Integer-length gear with `3 <= n <= max_n` and lengths in `1..=max_len`.
pub fn random_gear(rng: &mut impl Rng, max_n: usize, max_len: u32, mixed: bool) -> GearSpec {
    let n = rng.random_range(3..=max_n);
    let lengths = (0..n).map(|_| f64::from(rng.random_range(1..=max_len))).collect();
    let attachments = if mixed {
        (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Attach::Tail
                } else {
                    Attach::Head
                }
            })
            .collect()
    } else {
        vec![
            if rng.random_bool(0.5) {
                Attach::Tail
            } else {
                Attach::Head
            };
            n
        ]
    };
    GearSpec::with_attachments(lengths, attachments).unwrap()
}

/// Sorted eigenvalues expanded by multiplicity, strictly positive only.
pub fn positive_lambdas(s: &isogear::quantum::Spectrum) -> Vec<f64> {
    s.entries
        .iter()
        .filter(|e| e.k > 0.0)
        .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
        .collect()
}
