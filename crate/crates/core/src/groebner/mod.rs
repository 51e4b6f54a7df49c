//! Gröbner bases and the ideal-theoretic queries built on them.

mod buchberger;
mod queries;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{normalize_terms, MultiPoly};

use buchberger::{buchberger, reduce, sub_scaled, Lead, Terms};

pub use queries::{hilbert_function, ideal_dimension, is_reduced_zero_dim, is_zero_dimensional, quotient_dimension, standard_monomials};

/// Default cap on processed S-pairs.
pub const DEFAULT_MAX_PAIRS: usize = 200_000;
/// Default cap on the number of polynomials created during a run.
pub const DEFAULT_MAX_BASIS: usize = 20_000;

/// Environment variable overriding [`DEFAULT_MAX_PAIRS`] in the CLI.
pub const MAX_PAIRS_ENV: &str = "POLARDEG_MAX_PAIRS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSelection {
    /// Smallest lcm first.
    Normal,
    /// Smallest sugar degree first, ties by lcm.
    Sugar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub selection: PairSelection,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: DEFAULT_MAX_PAIRS,
            max_basis: DEFAULT_MAX_BASIS,
            selection: PairSelection::Normal,
        }
    }
}

/// A finitely generated ideal. Zero generators are dropped on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<K: Field> {
    field: K,
    nvars: usize,
    generators: Vec<MultiPoly<K>>,
}

impl<K: Field> Ideal<K> {
    pub fn new(field: &K, nvars: usize, generators: Vec<MultiPoly<K>>) -> Result<Self> {
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.nvars() != nvars {
                return Err(Error::VarCountMismatch(nvars, g.nvars()));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { field: field.clone(), nvars, generators })
    }

    /// Ideal of a nonempty list of compatible polynomials.
    pub fn from_polys(generators: Vec<MultiPoly<K>>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
        let (field, nvars) = (first.field().clone(), first.nvars());
        Self::new(&field, nvars, generators)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly<K>] {
        &self.generators
    }
}

/// A reduced Gröbner basis: monic elements, sorted by descending lead
/// monomial, each stored in the basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<K: Field> {
    field: K,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Terms<K>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis as ordinary polynomials.
    pub fn basis(&self) -> Vec<MultiPoly<K>> {
        self.polys.iter().map(|t| MultiPoly::from_terms(&self.field, self.nvars, t.clone())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p[0].0).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p[0].0.is_one())
    }

    fn leads(&self) -> Vec<Lead> {
        self.polys.iter().map(|p| Lead::new(p[0].0)).collect()
    }

    fn to_terms(&self, p: &MultiPoly<K>) -> Terms<K> {
        normalize_terms(&self.field, p.terms().to_vec(), self.order)
    }

    pub(crate) fn reduce_terms(&self, p: Terms<K>) -> Terms<K> {
        let refs: Vec<&Terms<K>> = self.polys.iter().collect();
        reduce(&self.field, self.order, p, &refs, &self.leads(), true)
    }

    pub fn contains(&self, p: &MultiPoly<K>) -> bool {
        normal_form(p, self).is_zero()
    }

    /// True iff every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let f = &self.field;
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let lcm = a[0].0.lcm(&b[0].0);
                let left: Terms<K> = a.iter().map(|(m, c)| (m.mul(&lcm.div(&a[0].0)), c.clone())).collect();
                let s = sub_scaled(f, self.order, &left, &f.one(), &lcm.div(&b[0].0), b);
                if !self.reduce_terms(s).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis under `order` with the default resource caps.
pub fn groebner<K: Field>(ideal: &Ideal<K>, order: MonomialOrder) -> Result<GroebnerBasis<K>> {
    groebner_with(ideal, order, &GroebnerConfig::default())
}

pub fn groebner_with<K: Field>(
    ideal: &Ideal<K>,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis<K>> {
    let gens = ideal
        .generators
        .iter()
        .map(|g| normalize_terms(&ideal.field, g.terms().to_vec(), order))
        .collect();
    let polys = buchberger(&ideal.field, order, gens, config)?;
    Ok(GroebnerBasis { field: ideal.field.clone(), nvars: ideal.nvars, order, polys })
}

/// The remainder of `p` modulo `basis`; zero iff `p` lies in the ideal.
pub fn normal_form<K: Field>(p: &MultiPoly<K>, basis: &GroebnerBasis<K>) -> MultiPoly<K> {
    assert_eq!(p.nvars(), basis.nvars, "variable count mismatch");
    let r = basis.reduce_terms(basis.to_terms(p));
    MultiPoly::from_terms(&basis.field, basis.nvars, r)
}

/// Generators of `I ∩ K[x_k, …, x_{n-1}]`, still written in all `n`
/// variables.
pub fn eliminate<K: Field>(ideal: &Ideal<K>, k: usize, config: &GroebnerConfig) -> Result<Ideal<K>> {
    if k >= ideal.nvars && ideal.nvars > 0 {
        return Err(Error::InvalidArgument(format!("cannot eliminate {k} of {} variables", ideal.nvars)));
    }
    if k == 0 {
        return Ok(ideal.clone());
    }
    let gb = groebner_with(ideal, MonomialOrder::Block(k), config)?;
    let kept = gb
        .basis()
        .into_iter()
        .filter(|g| (0..k).all(|v| !g.uses_var(v)))
        .collect();
    Ideal::new(&ideal.field, ideal.nvars, kept)
}

/// `I : f^∞`, by adjoining `t`, adding `t·f - 1` and eliminating `t`.
pub fn saturate<K: Field>(ideal: &Ideal<K>, f: &MultiPoly<K>, config: &GroebnerConfig) -> Result<Ideal<K>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot saturate by the zero polynomial".into()));
    }
    if f.nvars() != ideal.nvars {
        return Err(Error::VarCountMismatch(ideal.nvars, f.nvars()));
    }
    let field = &ideal.field;
    let n = ideal.nvars + 1;
    let t = MultiPoly::var(field, n, 0);
    let mut gens: Vec<_> = ideal.generators.iter().map(|g| g.insert_var(0)).collect();
    gens.push(&(&t * &f.insert_var(0)) - &MultiPoly::one(field, n));
    let lifted = Ideal::new(field, n, gens)?;
    let elim = eliminate(&lifted, 1, config)?;
    let back = elim.generators.iter().map(|g| g.remove_var(0)).collect();
    Ideal::new(field, ideal.nvars, back)
}
