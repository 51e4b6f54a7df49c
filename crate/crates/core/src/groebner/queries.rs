//! Queries answered from a reduced Gröbner basis: standard monomials,
//! dimensions, Hilbert functions and the reducedness test for finite schemes.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::monomial::Monomial;
use crate::random::{sample_vec, SeedStream};

use super::buchberger::{Lead, Terms};
use super::GroebnerBasis;

/// Each variable occurs as a pure power among the leading monomials (the
/// unit ideal counts as zero-dimensional: its variety is empty).
pub fn is_zero_dimensional<K: Field>(g: &GroebnerBasis<K>) -> bool {
    if g.is_unit_ideal() {
        return true;
    }
    let lms = g.leading_monomials();
    (0..g.nvars()).all(|v| {
        lms.iter().any(|m| m.exp(v) > 0 && m.degree() == m.exp(v))
    })
}

/// Monomials outside the leading-term ideal, in breadth-first order.
pub fn standard_monomials<K: Field>(g: &GroebnerBasis<K>) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(g) {
        return Err(Error::NotZeroDimensional);
    }
    if g.is_unit_ideal() {
        return Ok(Vec::new());
    }
    let leads: Vec<Lead> = g.leading_monomials().into_iter().map(Lead::new).collect();
    let in_lead_ideal = |m: &Monomial| {
        let mask = m.support_mask();
        leads.iter().any(|l| l.divides(m, mask))
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Monomial::one()]);
    seen.insert(Monomial::one());
    while let Some(m) = queue.pop_front() {
        out.push(m);
        for v in 0..g.nvars() {
            let next = m.mul(&Monomial::var(v));
            if !in_lead_ideal(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Vector-space dimension of the quotient ring, i.e. the number of
/// solutions counted with multiplicity.
pub fn quotient_dimension<K: Field>(g: &GroebnerBasis<K>) -> Result<usize> {
    standard_monomials(g).map(|s| s.len())
}

/// Krull dimension of the quotient: the largest set of variables whose
/// monomials avoid every leading monomial. The unit ideal gets `-1`.
pub fn ideal_dimension<K: Field>(g: &GroebnerBasis<K>) -> i32 {
    if g.is_unit_ideal() {
        return -1;
    }
    let masks: Vec<u32> = g.leading_monomials().iter().map(|m| m.support_mask()).collect();
    let n = g.nvars();
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as i32;
        if size > best && masks.iter().all(|&m| m & !subset != 0) {
            best = size;
        }
    }
    best
}

/// Number of standard monomials of degree `d`. For a homogeneous ideal
/// this is the Hilbert function of the quotient in degree `d`.
pub fn hilbert_function<K: Field>(g: &GroebnerBasis<K>, d: u32) -> u64 {
    if g.is_unit_ideal() {
        return 0;
    }
    let leads: Vec<Lead> = g.leading_monomials().into_iter().map(Lead::new).collect();
    let n = g.nvars();
    let mut count = 0;
    let mut exps = vec![0u32; n];
    for_each_composition(d, n, &mut exps, 0, &mut |e| {
        let m = Monomial::from_exponents(e);
        let mask = m.support_mask();
        if !leads.iter().any(|l| l.divides(&m, mask)) {
            count += 1;
        }
    });
    count
}

fn for_each_composition(left: u32, n: usize, exps: &mut Vec<u32>, at: usize, f: &mut impl FnMut(&[u32])) {
    if n == 0 {
        if left == 0 {
            f(exps);
        }
        return;
    }
    if at == n - 1 {
        exps[at] = left;
        f(exps);
        return;
    }
    for e in (0..=left).rev() {
        exps[at] = e;
        for_each_composition(left - e, n, exps, at + 1, f);
    }
    exps[at] = 0;
}

/// Whether the finite scheme is reduced with a separating random linear
/// form: the minimal polynomial of multiplication by the form must have
/// degree equal to the quotient dimension and no repeated roots. A `false`
/// can come from an unlucky form; callers retry with fresh randomness.
pub fn is_reduced_zero_dim(g: &GroebnerBasis<PrimeField>, stream: &mut SeedStream) -> Result<bool> {
    let field = *g.field();
    let basis = standard_monomials(g)?;
    let dim = basis.len();
    if dim == 0 {
        return Ok(true);
    }
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let coeffs = sample_vec(&field, g.nvars(), stream);
    let order = g.order();
    let mut form: Terms<PrimeField> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (Monomial::var(i), *c))
        .collect();
    form.sort_by(|a, b| order.cmp(&b.0, &a.0));

    let to_vec = |t: &Terms<PrimeField>| {
        let mut v = vec![0u64; dim];
        for (m, c) in t {
            v[index[m]] = *c;
        }
        v
    };

    // Echelon rows (vector part, combination part), pivot column per row.
    let mut rows: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
    let mut power: Terms<PrimeField> = vec![(Monomial::one(), 1)];
    for k in 0..=dim {
        let mut v = to_vec(&power);
        let mut combo = vec![0u64; dim + 1];
        combo[k] = 1;
        for (rv, rc, piv) in &rows {
            let c = v[*piv];
            if c != 0 {
                for j in 0..dim {
                    v[j] = field.sub(&v[j], &field.mul(&c, &rv[j]));
                }
                for j in 0..=dim {
                    combo[j] = field.sub(&combo[j], &field.mul(&c, &rc[j]));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(piv) => {
                let inv = field.inv(&v[piv]).unwrap();
                for x in v.iter_mut() {
                    *x = field.mul(x, &inv);
                }
                for x in combo.iter_mut() {
                    *x = field.mul(x, &inv);
                }
                rows.push((v, combo, piv));
            }
            None => {
                if k < dim {
                    return Ok(false);
                }
                let minpoly: Vec<u64> = combo[..=k].to_vec();
                return Ok(univariate_squarefree(&field, &minpoly));
            }
        }
        if k < dim {
            power = g.reduce_terms(mul_terms(&field, order, &power, &form));
        }
    }
    unreachable!("dim + 1 vectors in a dim-dimensional space are dependent")
}

fn mul_terms(
    field: &PrimeField,
    order: crate::monomial::MonomialOrder,
    a: &Terms<PrimeField>,
    b: &Terms<PrimeField>,
) -> Terms<PrimeField> {
    let raw = a
        .iter()
        .flat_map(|(ma, ca)| b.iter().map(move |(mb, cb)| (ma.mul(mb), field.mul(ca, cb))))
        .collect();
    crate::poly::normalize_terms(field, raw, order)
}

/// Coefficients in increasing degree.
fn univariate_squarefree(field: &PrimeField, p: &[u64]) -> bool {
    let deriv: Vec<u64> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    univariate_gcd_degree(field, p.to_vec(), deriv) == 0
}

fn univariate_gcd_degree(field: &PrimeField, mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb_inv = field.inv(b.last().unwrap()).unwrap();
        while a.len() >= b.len() {
            let c = field.mul(a.last().unwrap(), &lb_inv);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[j + shift] = field.sub(&a[j + shift], &field.mul(&c, bj));
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}
