//! Polar maps of homogeneous polynomials and of weighted products
//! `∏ F_i^{λ_i}`, and their degrees `deg_i` by generic fiber counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::gcd::{gcd, gcd_many};
use crate::groebner::{groebner_with, is_reduced_zero_dim, is_zero_dimensional, quotient_dimension, GroebnerConfig, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{HomogeneousForm, MultiPoly};
use crate::random::{derive_seed, sample_matrix, sample_nonzero_vec, SeedStream};
use crate::report::{DegreeReport, TrialRecord};

/// Knobs shared by every randomized degree computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeOptions {
    pub trials: usize,
    /// Extra attempts per trial after a non-zero-dimensional or non-reduced
    /// fiber system.
    pub retries: usize,
    pub seed: u64,
    pub groebner: GroebnerConfig,
    pub parallel: bool,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions { trials: 5, retries: 3, seed: 0, groebner: GroebnerConfig::default(), parallel: true }
    }
}

impl DegreeOptions {
    pub fn with_seed(self, seed: u64) -> Self {
        DegreeOptions { seed, ..self }
    }
}

/// The multi-valued function `∏ F_i^{λ_i}`: reduced, pairwise coprime
/// homogeneous factors with nonzero rational weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFunction<K: Field> {
    factors: Vec<HomogeneousForm<K>>,
    weights: Vec<BigRational>,
    scaled: Vec<BigInt>,
    nvars: usize,
}

impl<K: Field> WeightedFunction<K> {
    /// Validates the factors (homogeneous, nonconstant, squarefree, pairwise
    /// coprime) and weights (nonzero, one per factor).
    pub fn new(factors: Vec<MultiPoly<K>>, weights: Vec<BigRational>) -> Result<Self> {
        let w = Self::new_unchecked(factors, weights)?;
        for (k, f) in w.factors.iter().enumerate() {
            if !is_squarefree(f.poly()) {
                return Err(Error::NotSquarefree(k));
            }
        }
        for a in 0..w.factors.len() {
            for b in a + 1..w.factors.len() {
                if !gcd(w.factors[a].poly(), w.factors[b].poly())?.is_constant() {
                    return Err(Error::NotCoprime(a, b));
                }
            }
        }
        Ok(w)
    }

    /// Checks shapes and weights but not squarefreeness or coprimality.
    pub fn new_unchecked(factors: Vec<MultiPoly<K>>, weights: Vec<BigRational>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::NoFactors);
        }
        if factors.len() != weights.len() {
            return Err(Error::WeightCount { factors: factors.len(), weights: weights.len() });
        }
        if let Some(index) = weights.iter().position(|w| w.is_zero()) {
            return Err(Error::ZeroWeight { index });
        }
        let nvars = factors[0].nvars();
        let field = factors[0].field().clone();
        let mut forms = Vec::with_capacity(factors.len());
        for f in factors {
            if f.nvars() != nvars {
                return Err(Error::VarCountMismatch(nvars, f.nvars()));
            }
            if *f.field() != field {
                return Err(Error::FieldMismatch);
            }
            let h = HomogeneousForm::new(f)?;
            if h.degree() < 1 {
                return Err(Error::ConstantPolynomial);
            }
            forms.push(h);
        }
        let lcm = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled: Vec<BigInt> = weights.iter().map(|w| (w * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        for (index, s) in scaled.iter().enumerate() {
            if field.is_zero(&field.from_bigint(s)) {
                return Err(Error::InvalidArgument(format!("weight {index} vanishes in {}", field.spec())));
            }
        }
        Ok(WeightedFunction { factors: forms, weights, scaled, nvars })
    }

    /// A single factor with weight one.
    pub fn single(f: MultiPoly<K>) -> Result<Self> {
        Self::new(vec![f], vec![BigRational::one()])
    }

    /// The same factors with new weights.
    pub fn reweighted(&self, weights: Vec<BigRational>) -> Result<Self> {
        Self::new_unchecked(self.factors.iter().map(|f| f.poly().clone()).collect(), weights)
    }

    pub fn factors(&self) -> &[HomogeneousForm<K>] {
        &self.factors
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// Weights multiplied by the least common denominator.
    pub fn integer_weights(&self) -> &[BigInt] {
        &self.scaled
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &K {
        self.factors[0].poly().field()
    }

    /// `Σ λ_i deg F_i`.
    pub fn total_degree(&self) -> BigRational {
        self.weights
            .iter()
            .zip(&self.factors)
            .map(|(w, f)| w * BigRational::from_integer(BigInt::from(f.degree())))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `Σ μ_i deg F_i` for the integer-scaled weights `μ`.
    pub fn scaled_total_degree(&self) -> BigInt {
        self.scaled.iter().zip(&self.factors).map(|(w, f)| w * BigInt::from(f.degree())).sum()
    }

    /// All weights strictly of one sign: the implemented form of the
    /// half-plane hypothesis for rational weights.
    pub fn weights_same_sign(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive()) || self.weights.iter().all(|w| w.is_negative())
    }

    pub fn product(&self) -> MultiPoly<K> {
        let mut acc = MultiPoly::one(self.field(), self.nvars);
        for f in &self.factors {
            acc = &acc * f.poly();
        }
        acc
    }

    /// `F̂_j = ∏_{i≠j} F_i`.
    pub fn cofactors(&self) -> Vec<MultiPoly<K>> {
        (0..self.factors.len())
            .map(|j| {
                let mut acc = MultiPoly::one(self.field(), self.nvars);
                for (i, f) in self.factors.iter().enumerate() {
                    if i != j {
                        acc = &acc * f.poly();
                    }
                }
                acc
            })
            .collect()
    }

    /// The coefficients `Σ_j μ_j F̂_j ∂F_j/∂x_i` of `(∏F_j)·Σ μ_j dF_j/F_j`,
    /// before any common factor is removed.
    pub fn log_differential(&self) -> Vec<MultiPoly<K>> {
        let field = self.field();
        let cofactors = self.cofactors();
        let weighted: Vec<MultiPoly<K>> = cofactors
            .iter()
            .zip(&self.scaled)
            .map(|(c, w)| c.scale(&field.from_bigint(w)))
            .collect();
        (0..self.nvars)
            .map(|i| {
                let mut acc = MultiPoly::zero(field, self.nvars);
                for (f, wc) in self.factors.iter().zip(&weighted) {
                    let d = f.poly().diff(i);
                    if !d.is_zero() {
                        acc = &acc + &(wc * &d);
                    }
                }
                acc
            })
            .collect()
    }
}

impl WeightedFunction<Rationals> {
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<WeightedFunction<PrimeField>> {
        let factors = self.factors.iter().map(|f| f.poly().reduce_mod(field)).collect::<Result<Vec<_>>>()?;
        WeightedFunction::new_unchecked(factors, self.weights.clone())
    }
}

/// `gcd(F, ∂F/∂x_0, …, ∂F/∂x_n)` is a unit. In characteristic zero, or
/// above the degree, this is exactly squarefreeness.
pub fn is_squarefree<K: Field>(f: &MultiPoly<K>) -> bool {
    let mut family = vec![f.clone()];
    family.extend(f.gradient());
    gcd_many(family.iter()).is_some_and(|g| g.is_constant())
}

/// A rational self-map of `ℙ^n` given by `n + 1` forms of equal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapRep<K: Field> {
    components: Vec<MultiPoly<K>>,
    degree: i32,
}

impl<K: Field> RationalMapRep<K> {
    pub fn new(components: Vec<MultiPoly<K>>) -> Result<Self> {
        let n1 = components.len();
        if n1 < 2 {
            return Err(Error::InvalidArgument("a map of projective space needs at least two components".into()));
        }
        let mut degree = None;
        for c in &components {
            if c.nvars() != n1 {
                return Err(Error::VarCountMismatch(n1, c.nvars()));
            }
            if !c.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if c.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(c.total_degree()),
                Some(d) if d != c.total_degree() => return Err(Error::DegreeMismatch(d, c.total_degree())),
                _ => {}
            }
        }
        let degree = degree.ok_or(Error::DegenerateMap)?;
        Ok(RationalMapRep { components, degree })
    }

    pub fn components(&self) -> &[MultiPoly<K>] {
        &self.components
    }

    /// Dimension `n` of the source projective space.
    pub fn source_dim(&self) -> usize {
        self.components.len() - 1
    }

    /// Common degree of the components.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn field(&self) -> &K {
        self.components[0].field()
    }

    /// Divides out the gcd of the components.
    pub fn cleared(&self) -> Self {
        let g = gcd_many(self.components.iter().filter(|c| !c.is_zero())).expect("some component is nonzero");
        if g.is_constant() {
            return self.clone();
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.div_exact(&g).expect("gcd divides every component"))
            .collect();
        RationalMapRep::new(comps).expect("clearing keeps a valid map")
    }
}

impl RationalMapRep<Rationals> {
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<RationalMapRep<PrimeField>> {
        RationalMapRep::new(self.components.iter().map(|c| c.reduce_mod(field)).collect::<Result<_>>()?)
    }
}

/// `∇F = (∂F/∂x_0 : … : ∂F/∂x_n)`.
pub fn polar_map<K: Field>(f: &HomogeneousForm<K>) -> Result<RationalMapRep<K>> {
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    RationalMapRep::new(f.poly().gradient())
}

/// `∇𝔽^λ` with components `Σ_j μ_j F̂_j ∂F_j/∂x_i`, their common factor
/// divided out.
pub fn weighted_polar_map<K: Field>(w: &WeightedFunction<K>) -> Result<RationalMapRep<K>> {
    let comps = w.log_differential();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateMap);
    }
    Ok(RationalMapRep::new(comps)?.cleared())
}

pub(crate) fn check_sampling_field(field: &PrimeField) -> Result<()> {
    FieldSpec::sampling_prime(field.modulus()).map(|_| ())
}

/// `deg_i` of a rational map by counting a generic fiber.
///
/// Each trial draws `n - i` linear forms cutting a generic `i`-plane `L` of
/// the target, an auxiliary form `ℓ_0`, and a generic affine chart of a
/// generic `(n-i)`-plane of the source (parametrized as `x = M·(1, z)`).
/// The system `ℓ_j(c(x)) = 0`, `u·ℓ_0(c(x)) = 1` in `(z, u)` then cuts out
/// exactly the honest preimage points: the `u` equation removes the base
/// locus together with anything mapped into `ℓ_0 = 0`. An accepted trial
/// is zero-dimensional and reduced, and its value is the quotient
/// dimension.
pub fn map_degree(m: &RationalMapRep<PrimeField>, i: usize, opts: &DegreeOptions) -> Result<DegreeReport> {
    check_sampling_field(m.field())?;
    let n = m.source_dim();
    if i >= n {
        return Err(Error::InvalidLevel { level: i as i64, range: format!("0..={}", n - 1) });
    }
    run_trials(i, opts, |stream| fiber_trial(m, i, stream, &opts.groebner))
}

/// Runs `opts.trials` independent trials with retries and aggregates them.
/// Trial `t`, attempt `a` at level `i` uses seed `derive_seed(seed, [i, t, a])`.
pub(crate) fn run_trials<F>(i: usize, opts: &DegreeOptions, attempt: F) -> Result<DegreeReport>
where
    F: Fn(&mut SeedStream) -> Result<(Option<u64>, bool)> + Sync,
{
    let one_trial = |t: usize| -> Result<TrialRecord> {
        let mut last = None;
        for a in 0..=opts.retries {
            let seed = derive_seed(opts.seed, &[i as u64, t as u64, a as u64]);
            let mut stream = SeedStream::new(seed);
            let (value, reduced) = attempt(&mut stream)?;
            let rec = TrialRecord { seed, value, zero_dim: value.is_some(), reduced, attempts: a + 1 };
            if rec.accepted() {
                return Ok(rec);
            }
            last = Some(rec);
        }
        Ok(last.expect("at least one attempt"))
    };
    let trials: Vec<TrialRecord> = if opts.parallel {
        (0..opts.trials).into_par_iter().map(one_trial).collect::<Result<_>>()?
    } else {
        (0..opts.trials).map(one_trial).collect::<Result<_>>()?
    };
    if !trials.is_empty() && !trials.iter().any(|t| t.zero_dim) {
        return Err(Error::NoZeroDimensionalTrial);
    }
    Ok(DegreeReport::from_trials(i, trials))
}

/// One attempt: `(quotient dimension if zero-dimensional, reduced)`.
pub(crate) fn fiber_trial(
    m: &RationalMapRep<PrimeField>,
    i: usize,
    stream: &mut SeedStream,
    config: &GroebnerConfig,
) -> Result<(Option<u64>, bool)> {
    let field = *m.field();
    let n = m.source_dim();
    let free = n - i;
    let targets: Vec<Vec<u64>> = (0..free).map(|_| sample_nonzero_vec(&field, n + 1, stream)).collect();
    let aux = sample_nonzero_vec(&field, n + 1, stream);
    let chart = sample_matrix(&field, n + 1, free + 1, stream);

    // z_1..z_free at indices 0..free, u at index free
    let nv = free + 1;
    let images: Vec<MultiPoly<PrimeField>> = chart
        .iter()
        .map(|row| {
            let mut terms = vec![(Monomial::one(), row[0])];
            terms.extend((1..=free).map(|s| (Monomial::var(s - 1), row[s])));
            MultiPoly::from_terms(&field, nv, terms)
        })
        .collect();
    let pulled: Vec<MultiPoly<PrimeField>> =
        m.components().iter().map(|c| c.compose(&images)).collect::<Result<_>>()?;
    let combine = |coeffs: &[u64]| {
        let mut acc = MultiPoly::zero(&field, nv);
        for (c, p) in coeffs.iter().zip(&pulled) {
            if *c != 0 && !p.is_zero() {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    };
    let mut eqs: Vec<MultiPoly<PrimeField>> = targets.iter().map(|t| combine(t)).collect();
    let u = MultiPoly::var(&field, nv, free);
    eqs.push(&(&u * &combine(&aux)) - &MultiPoly::one(&field, nv));

    let gb = groebner_with(&Ideal::new(&field, nv, eqs)?, MonomialOrder::DegRevLex, config)?;
    if !is_zero_dimensional(&gb) {
        return Ok((None, false));
    }
    let dim = quotient_dimension(&gb)? as u64;
    let reduced = is_reduced_zero_dim(&gb, stream)?;
    Ok((Some(dim), reduced))
}

/// `(deg_0, …, deg_{n-1})` of `∇𝔽^λ`.
pub fn polar_degrees_profile(w: &WeightedFunction<PrimeField>, opts: &DegreeOptions) -> Result<Vec<DegreeReport>> {
    if w.total_degree().is_zero() {
        return Err(Error::ZeroTotalDegree);
    }
    let m = weighted_polar_map(w)?;
    (0..m.source_dim()).map(|i| map_degree(&m, i, opts)).collect()
}

/// `deg_0(∇𝔽^λ) = 1`, stably across all trials.
pub fn homaloidal_check(w: &WeightedFunction<PrimeField>, opts: &DegreeOptions) -> Result<bool> {
    if w.total_degree().is_zero() {
        return Err(Error::ZeroTotalDegree);
    }
    let r = map_degree(&weighted_polar_map(w)?, 0, opts)?;
    Ok(r.stable_value() == Some(1))
}
