mod common;

use isogear::graph::{fig6_pair, Digraph};
use isogear::zeta::{char_poly_symbolic, eval_det, field, pencil, PencilRestriction, PrimeFieldPoint};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random_digraph(rng: &mut impl Rng, n: usize) -> Digraph {
    let mut arcs = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t != h && rng.random_bool(0.35) {
                arcs.push((t, h));
            }
        }
    }
    Digraph::new("random", n, arcs)
}

fn integer_matrix(g: &Digraph, z: [i64; 6]) -> Vec<Vec<i128>> {
    let n = g.vertex_count;
    let (out, inn) = (g.out_degrees(), g.in_degrees());
    let mut m = vec![vec![i128::from(z[1]); n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        row[v] += i128::from(z[0]) + i128::from(z[4]) * out[v] as i128 + i128::from(z[5]) * inn[v] as i128;
    }
    for &(t, h) in &g.arcs {
        m[t][h] += i128::from(z[2]);
        m[h][t] += i128::from(z[3]);
    }
    m
}

#[test]
fn field_determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.random_range(1..=6);
        let g = random_digraph(&mut rng, n);
        let z: [i64; 6] = std::array::from_fn(|_| rng.random_range(-9..=9));
        let expected = common::cofactor_det(&integer_matrix(&g, z)).rem_euclid(i128::from(field::P61)) as u64;
        let pt = PrimeFieldPoint::new(z.map(|c| field::from_i64(c, field::P61)), field::P61);
        assert_eq!(eval_det(&pencil(&g), &pt), expected);
    }
}

#[test]
fn symbolic_determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    for _ in 0..8 {
        let n = rng.random_range(1..=5);
        let g = random_digraph(&mut rng, n);
        let poly = char_poly_symbolic(&pencil(&g), PencilRestriction::Full).unwrap();
        assert_eq!(poly.homogeneous_degree(), Some(n as u32));
        for _ in 0..5 {
            let z: [i64; 6] = std::array::from_fn(|_| rng.random_range(-5..=5));
            assert_eq!(
                poly.eval(&z),
                BigInt::from(common::cofactor_det(&integer_matrix(&g, z)))
            );
        }
    }
}

#[test]
fn fig6_eta_polynomials_coincide() {
    let (g, gt) = fig6_pair();
    let a = char_poly_symbolic(&pencil(&g), PencilRestriction::Eta).unwrap();
    let b = char_poly_symbolic(&pencil(&gt), PencilRestriction::Eta).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.homogeneous_degree(), Some(12));
    let full_a = char_poly_symbolic(&pencil(&g), PencilRestriction::Full).unwrap();
    let full_b = char_poly_symbolic(&pencil(&gt), PencilRestriction::Full).unwrap();
    assert_eq!(full_a.set_zero(1), a);
    assert_ne!(full_a, full_b);
}
