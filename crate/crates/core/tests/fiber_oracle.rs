//! Generic fiber sizes checked against exhaustive search over a small prime
//! field. The oracle evaluates the gradients by hand and never touches the
//! Gröbner engine.

use polardeg::parser::parse_poly;
use polardeg::polar::{map_degree, polar_map, DegreeOptions};
use polardeg::{HomogeneousForm, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Map = fn(&[u64; 3], u64) -> [u64; 3];

fn pow(b: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

fn fermat_gradient<const D: u64>(x: &[u64; 3], p: u64) -> [u64; 3] {
    [0, 1, 2].map(|i| D % p * pow(x[i], D - 1, p) % p)
}

/// `∇(x2·(x0² + x1² + x2²)) = (2 x0 x2, 2 x1 x2, x0² + x1² + 3 x2²)`.
fn conic_line_gradient(x: &[u64; 3], p: u64) -> [u64; 3] {
    let [a, b, c] = *x;
    [2 * a % p * c % p, 2 * b % p * c % p, (a * a + b * b + 3 * c % p * c) % p]
}

/// `∇(x0 x1 x2)`.
fn triangle_gradient(x: &[u64; 3], p: u64) -> [u64; 3] {
    let [a, b, c] = *x;
    [b * c % p, a * c % p, a * b % p]
}

/// Normalized representatives of the points of `ℙ²(𝔽_p)`.
fn projective_plane(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::new();
    for a in 0..p {
        for b in 0..p {
            pts.push([1, a, b]);
        }
    }
    for b in 0..p {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    pts
}

fn proportional(u: &[u64; 3], v: &[u64; 3], p: u64) -> bool {
    let cross = |i: usize, j: usize| (u[i] * v[j] % p + p - u[j] * v[i] % p) % p;
    cross(0, 1) == 0 && cross(0, 2) == 0 && cross(1, 2) == 0
}

/// Size of the fiber through a random point `x*` outside the base locus,
/// repeated and reduced to the most frequent count.
fn brute_force_degree(map: Map, p: u64, samples: usize, seed: u64) -> usize {
    let plane = projective_plane(p);
    let images: Vec<[u64; 3]> = plane.iter().map(|x| map(x, p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = std::collections::HashMap::new();
    let mut done = 0;
    while done < samples {
        let star = rng.gen_range(0..plane.len());
        let y = images[star];
        if y == [0, 0, 0] {
            continue;
        }
        let n = images.iter().filter(|z| **z != [0, 0, 0] && proportional(z, &y, p)).count();
        *counts.entry(n).or_insert(0usize) += 1;
        done += 1;
    }
    counts.into_iter().max_by_key(|&(n, c)| (c, std::cmp::Reverse(n))).unwrap().0
}

fn engine_degree(text: &str) -> u64 {
    let f = PrimeField::new(polardeg::DEFAULT_PRIME).unwrap();
    let m = polar_map(&HomogeneousForm::new(parse_poly(text, 3, &f).unwrap()).unwrap()).unwrap();
    map_degree(&m, 0, &DegreeOptions::default()).unwrap().stable_value().unwrap()
}

#[test]
fn fermat_quartic_fiber_has_nine_points() {
    // p ≡ 1 mod 3, so every fiber point of the quartic's gradient is rational
    for p in [31, 37, 43] {
        assert_eq!(brute_force_degree(fermat_gradient::<4>, p, 40, p), 9, "p = {p}");
    }
    assert_eq!(engine_degree("x0^4 + x1^4 + x2^4"), 9);
}

#[test]
fn fermat_cubic_fiber_has_four_points() {
    for p in [29, 31] {
        assert_eq!(brute_force_degree(fermat_gradient::<3>, p, 40, p), 4, "p = {p}");
    }
    assert_eq!(engine_degree("x0^3 + x1^3 + x2^3"), 4);
}

#[test]
fn conic_fiber_is_one_point() {
    assert_eq!(brute_force_degree(fermat_gradient::<2>, 31, 40, 1), 1);
    assert_eq!(engine_degree("x0^2 + x1^2 + x2^2"), 1);
}

#[test]
fn cremona_fiber_is_one_point() {
    assert_eq!(brute_force_degree(triangle_gradient, 37, 40, 2), 1);
    assert_eq!(engine_degree("x0*x1*x2"), 1);
}

#[test]
fn conic_and_transversal_line_fiber_has_two_points() {
    // a degree-two fiber through a rational point is rational
    assert_eq!(brute_force_degree(conic_line_gradient, 41, 60, 3), 2);
    assert_eq!(engine_degree("x2*(x0^2 + x1^2 + x2^2)"), 2);
}
