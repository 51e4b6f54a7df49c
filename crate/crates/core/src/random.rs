//! Seeded randomness for every "generic" choice.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::monomial::Monomial;
use crate::poly::{HomogeneousForm, MultiPoly};

/// A deterministic stream of random field elements.
#[derive(Clone, Debug)]
pub struct SeedStream {
    rng: ChaCha8Rng,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// Mixes a base seed with a path of indices (SplitMix64 finalizer), so that
/// trial `t`, attempt `a` of level `i` gets its own reproducible seed.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    let mut z = base;
    for &p in path {
        z = splitmix(z ^ splitmix(p.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    z
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform element of the prime field described by `spec`.
pub fn random_scalar(spec: FieldSpec, stream: &mut SeedStream) -> Result<u64> {
    match spec {
        FieldSpec::Rationals => Err(Error::RandomOverRationals),
        FieldSpec::PrimeField { prime } => Ok(sample(&PrimeField::new(prime)?, stream)),
    }
}

pub(crate) fn sample(field: &PrimeField, stream: &mut SeedStream) -> u64 {
    stream.rng.gen_range(0..field.modulus())
}

pub(crate) fn sample_vec(field: &PrimeField, len: usize, stream: &mut SeedStream) -> Vec<u64> {
    (0..len).map(|_| sample(field, stream)).collect()
}

/// A nonzero vector, by rejection.
pub(crate) fn sample_nonzero_vec(field: &PrimeField, len: usize, stream: &mut SeedStream) -> Vec<u64> {
    loop {
        let v = sample_vec(field, len, stream);
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// `rows × cols` matrix with independent uniform entries.
pub(crate) fn sample_matrix(
    field: &PrimeField,
    rows: usize,
    cols: usize,
    stream: &mut SeedStream,
) -> Vec<Vec<u64>> {
    (0..rows).map(|_| sample_vec(field, cols, stream)).collect()
}

/// A linear form with independent uniform coefficients, never zero.
pub fn random_linear_form(
    spec: FieldSpec,
    nvars: usize,
    stream: &mut SeedStream,
) -> Result<HomogeneousForm<PrimeField>> {
    let field = PrimeField::from_spec(spec)?;
    if nvars == 0 {
        return Err(Error::InvalidArgument("a linear form needs at least one variable".into()));
    }
    let coeffs = sample_nonzero_vec(&field, nvars, stream);
    Ok(HomogeneousForm::new(linear_form(&field, &coeffs)).expect("linear forms are homogeneous"))
}

pub(crate) fn linear_form<K: Field>(field: &K, coeffs: &[K::Elem]) -> MultiPoly<K> {
    let terms = coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())).collect();
    MultiPoly::from_terms(field, coeffs.len(), terms)
}

/// Rank of a matrix over a prime field, by Gaussian elimination.
pub(crate) fn matrix_rank(field: &PrimeField, m: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][c]).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let factor = field.mul(&a[r][c], &inv);
                for k in c..cols {
                    let t = field.mul(&factor, &a[rank][k]);
                    a[r][k] = field.sub(&a[r][k], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}
