//! Sparse multivariate polynomials with dense exponent vectors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Storage order for terms. Gröbner computations under other orders keep
/// their own sorted copies.
pub const CANONICAL_ORDER: MonomialOrder = MonomialOrder::DegRevLex;

/// A polynomial over `K` in a fixed number of variables `x0, …, x{n-1}`.
///
/// Terms are kept sorted in descending degrevlex order with no zero
/// coefficients and no repeated monomials.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<K: Field> {
    field: K,
    nvars: usize,
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> MultiPoly<K> {
    pub fn zero(field: &K, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &K, nvars: usize, c: K::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn one(field: &K, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &K, nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut p = Self::zero(field, nvars);
        p.terms.push((Monomial::var(index), field.one()));
        p
    }

    pub fn monomial(field: &K, nvars: usize, m: Monomial, c: K::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: &K, nvars: usize, terms: Vec<(Monomial, K::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        p.terms = normalize_terms(field, terms, CANONICAL_ORDER);
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree, with `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.degree() as i32).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Degree in a single variable, `-1` for zero.
    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(var) as i32).max().unwrap_or(-1)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Leading term in the canonical (degrevlex) order.
    pub fn leading_term(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_in(&self, order: MonomialOrder) -> Option<&(Monomial, K::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn coefficient(&self, m: &Monomial) -> K::Elem {
        self.terms
            .binary_search_by(|(t, _)| CANONICAL_ORDER.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match CANONICAL_ORDER.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { f.neg(cb) } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { f.neg(c) } else { c.clone() })),
        );
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb), f.mul(ca, cb)));
            }
        }
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: normalize_terms(f, raw, CANONICAL_ORDER) }
    }

    /// Product with a single term `c·m`; order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange { index: var, nvars: self.nvars });
        }
        Ok(self.diff(var))
    }

    pub(crate) fn diff(&self, var: usize) -> Self {
        let f = &self.field;
        let raw: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        // lowering one exponent keeps degrevlex order among survivors
        Self::from_terms(f, self.nvars, raw)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.diff(i)).collect()
    }

    /// Directional derivative `Σ v_i ∂/∂x_i`.
    pub fn directional_derivative(&self, direction: &[K::Elem]) -> Self {
        let f = &self.field;
        let mut acc = Self::zero(f, self.nvars);
        for (i, v) in direction.iter().enumerate() {
            if !f.is_zero(v) {
                acc = &acc + &self.diff(i).scale(v);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[K::Elem]) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `images[i]` for `x_i`. All images must share a field and
    /// variable count; the result lives in that ring.
    pub fn compose(&self, images: &[MultiPoly<K>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VarCountMismatch(self.nvars, images.len()));
        }
        let f = &self.field;
        let target = images.first().map_or(0, |p| p.nvars);
        for im in images {
            if im.field != *f {
                return Err(Error::FieldMismatch);
            }
            if im.nvars != target {
                return Err(Error::VarCountMismatch(target, im.nvars));
            }
        }
        let mut powers: Vec<Vec<MultiPoly<K>>> = images
            .iter()
            .map(|im| vec![MultiPoly::one(f, target), im.clone()])
            .collect();
        let mut acc = MultiPoly::zero(f, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(f, target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `p(M·z)`: the matrix has one row per variable of `p`, and its
    /// column count is the number of new variables `z`.
    pub fn substitute_linear(&self, matrix: &[Vec<K::Elem>]) -> Result<Self> {
        if matrix.len() != self.nvars {
            return Err(Error::MatrixShape { expected_rows: self.nvars, rows: matrix.len() });
        }
        let cols = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged substitution matrix".into()));
        }
        if cols > MAX_VARS {
            return Err(Error::TooManyVariables(cols));
        }
        let f = &self.field;
        let images: Vec<_> = matrix
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (Monomial::var(j), a.clone()))
                    .collect();
                MultiPoly::from_terms(f, cols, terms)
            })
            .collect();
        if self.nvars == 0 {
            return Ok(MultiPoly::from_terms(f, cols, self.terms.clone()));
        }
        self.compose(&images)
    }

    /// Re-embeds into a ring with a new variable inserted at `index`.
    pub fn insert_var(&self, index: usize) -> Self {
        assert!(index <= self.nvars && self.nvars < MAX_VARS);
        let raw = self.terms.iter().map(|(m, c)| (m.insert_var(index), c.clone())).collect();
        Self::from_terms(&self.field, self.nvars + 1, raw)
    }

    /// Drops a variable that does not occur.
    pub fn remove_var(&self, index: usize) -> Self {
        assert!(!self.uses_var(index));
        let raw = self.terms.iter().map(|(m, c)| (m.remove_var(index), c.clone())).collect();
        Self::from_terms(&self.field, self.nvars - 1, raw)
    }

    /// Sets `x_var = value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &K::Elem) -> Self {
        let f = &self.field;
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exp(var, 0), f.mul(c, &f.pow(value, m.exp(var) as u64))))
            .collect();
        Self::from_terms(f, self.nvars, raw)
    }

    /// Scales so that the leading coefficient in `order` is one.
    pub fn monic_in(&self, order: MonomialOrder) -> Self {
        match self.leading_term_in(order) {
            None => self.clone(),
            Some((_, c)) => {
                let ci = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&ci)
            }
        }
    }

    /// Exact division in `K[x]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let order = MonomialOrder::Lex;
        let (lm, lc) = divisor.leading_term_in(order)?.clone();
        let lci = f.inv(&lc)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term_in(order).cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = f.mul(&c, &lci);
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Self::from_terms(f, self.nvars, quot))
    }

    /// Carries the polynomial to another field through a coefficient map.
    pub fn map_coefficients<L: Field>(
        &self,
        target: &L,
        mut map: impl FnMut(&K::Elem) -> Result<L::Elem>,
    ) -> Result<MultiPoly<L>> {
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            raw.push((*m, map(c)?));
        }
        Ok(MultiPoly::from_terms(target, self.nvars, raw))
    }

    /// Largest exponent of any variable, used to bound composition work.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| (0..self.nvars).map(move |i| m.exp(i)))
            .max()
            .unwrap_or(0)
    }
}

impl MultiPoly<Rationals> {
    /// Reduction modulo `p`; fails when a denominator is divisible by `p`.
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<MultiPoly<PrimeField>> {
        self.map_coefficients(field, |c| field.from_rational(c))
    }
}

/// Sorts descending under `order`, merges equal monomials, drops zeros.
pub(crate) fn normalize_terms<K: Field>(
    field: &K,
    mut raw: Vec<(Monomial, K::Elem)>,
    order: MonomialOrder,
) -> Vec<(Monomial, K::Elem)> {
    raw.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<(Monomial, K::Elem)> = Vec::with_capacity(raw.len());
    for (m, c) in raw {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if field.is_zero(lc) {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if field.is_zero(lc) {
            out.pop();
        }
    }
    out
}

impl<K: Field> Add for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn add(self, rhs: Self) -> MultiPoly<K> {
        debug_assert!(self.nvars == rhs.nvars && self.field == rhs.field);
        self.add_unchecked(rhs, false)
    }
}

impl<K: Field> Sub for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn sub(self, rhs: Self) -> MultiPoly<K> {
        debug_assert!(self.nvars == rhs.nvars && self.field == rhs.field);
        self.add_unchecked(rhs, true)
    }
}

impl<K: Field> Mul for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn mul(self, rhs: Self) -> MultiPoly<K> {
        debug_assert!(self.nvars == rhs.nvars && self.field == rhs.field);
        self.mul_unchecked(rhs)
    }
}

impl<K: Field> Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    /// Prints in the parser's grammar, e.g. `x0^2 - 3/2*x1*x2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut s = self.field.format(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if s != "1" || m.is_one() {
                factors.push(s);
            }
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    e => factors.push(format!("x{i}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.field.spec(), self.nvars, self)
    }
}

/// A homogeneous polynomial together with its degree (`-1` for zero).
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousForm<K: Field> {
    poly: MultiPoly<K>,
    degree: i32,
}

impl<K: Field> HomogeneousForm<K> {
    pub fn new(poly: MultiPoly<K>) -> Result<Self> {
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let degree = poly.total_degree();
        Ok(HomogeneousForm { poly, degree })
    }

    /// The zero form; carries degree marker `-1`.
    pub fn zero(field: &K, nvars: usize) -> Self {
        HomogeneousForm { poly: MultiPoly::zero(field, nvars), degree: -1 }
    }

    pub fn poly(&self) -> &MultiPoly<K> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<K> {
        self.poly
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// `Σ x_i·a_i`. Zero exactly when `Σ a_i dx_i` descends to projective space.
///
/// Zero coefficients are ignored in the degree check.
pub fn euler_contraction<K: Field>(coeffs: &[HomogeneousForm<K>]) -> Result<MultiPoly<K>> {
    let first = coeffs.first().ok_or(Error::ZeroForm)?;
    let nvars = first.poly.nvars;
    if coeffs.len() != nvars {
        return Err(Error::VarCountMismatch(nvars, coeffs.len()));
    }
    let mut degree = None;
    for a in coeffs.iter().filter(|a| !a.is_zero()) {
        if a.poly.nvars != nvars {
            return Err(Error::VarCountMismatch(nvars, a.poly.nvars));
        }
        match degree {
            None => degree = Some(a.degree),
            Some(d) if d != a.degree => return Err(Error::DegreeMismatch(d, a.degree)),
            _ => {}
        }
    }
    Ok(contract_radial(coeffs.iter().map(|a| &a.poly)))
}

pub(crate) fn contract_radial<'a, K: Field + 'a>(
    coeffs: impl IntoIterator<Item = &'a MultiPoly<K>>,
) -> MultiPoly<K> {
    let mut acc: Option<MultiPoly<K>> = None;
    for (i, a) in coeffs.into_iter().enumerate() {
        let f = a.field();
        let term = a.mul_term(&Monomial::var(i), &f.one());
        acc = Some(match acc {
            None => term,
            Some(s) => &s + &term,
        });
    }
    acc.expect("at least one coefficient")
}
