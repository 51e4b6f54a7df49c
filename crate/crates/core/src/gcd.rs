//! Multivariate gcd by recursive content/primitive-part splitting and
//! subresultant pseudo-remainder sequences in a main variable.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::MultiPoly;

/// Greatest common divisor, normalized to leading coefficient one in lex
/// order (so `gcd(p, 0)` is `p` made monic and `gcd(0, 0) = 0`).
pub fn gcd<K: Field>(p: &MultiPoly<K>, q: &MultiPoly<K>) -> Result<MultiPoly<K>> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if p.nvars() != q.nvars() {
        return Err(Error::VarCountMismatch(p.nvars(), q.nvars()));
    }
    Ok(gcd_rec(p, q).monic_in(MonomialOrder::Lex))
}

/// Gcd of a whole family, stopping early once it becomes a unit.
pub fn gcd_many<'a, K: Field + 'a>(
    polys: impl IntoIterator<Item = &'a MultiPoly<K>>,
) -> Option<MultiPoly<K>> {
    let mut acc: Option<MultiPoly<K>> = None;
    for p in polys {
        if let Some(g) = &acc {
            if !g.is_zero() && g.is_constant() {
                break;
            }
        }
        acc = Some(match acc {
            None => p.clone(),
            Some(g) => gcd_rec(&g, p),
        });
    }
    acc.map(|g| g.monic_in(MonomialOrder::Lex))
}

/// Gcd up to a nonzero scalar.
pub(crate) fn gcd_rec<K: Field>(p: &MultiPoly<K>, q: &MultiPoly<K>) -> MultiPoly<K> {
    let f = p.field();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(f, p.nvars());
    }
    if p.len() == 1 && q.len() == 1 {
        return monomial_gcd(p, q);
    }
    let v = (0..p.nvars())
        .find(|&i| p.uses_var(i) || q.uses_var(i))
        .expect("nonconstant polynomial uses a variable");
    if !p.uses_var(v) {
        return gcd_rec(p, &content(q, v));
    }
    if !q.uses_var(v) {
        return gcd_rec(&content(p, v), q);
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let pp = to_univariate(&p.div_exact(&cp).expect("content divides"), v);
    let qq = to_univariate(&q.div_exact(&cq).expect("content divides"), v);
    let c = gcd_rec(&cp, &cq);
    let g = if pp.len() >= qq.len() { subresultant_gcd(pp, qq) } else { subresultant_gcd(qq, pp) };
    &c * &from_univariate(&g, v, p)
}

fn monomial_gcd<K: Field>(p: &MultiPoly<K>, q: &MultiPoly<K>) -> MultiPoly<K> {
    let (a, _) = &p.terms()[0];
    let (b, _) = &q.terms()[0];
    let exps: Vec<u32> = (0..p.nvars()).map(|i| a.exp(i).min(b.exp(i))).collect();
    MultiPoly::monomial(p.field(), p.nvars(), Monomial::from_exponents(&exps), p.field().one())
}

/// Gcd of the coefficients of `p` viewed in `K[others][x_v]`.
fn content<K: Field>(p: &MultiPoly<K>, v: usize) -> MultiPoly<K> {
    let coeffs = to_univariate(p, v);
    let mut acc = MultiPoly::zero(p.field(), p.nvars());
    for c in coeffs.iter().rev().filter(|c| !c.is_zero()) {
        acc = gcd_rec(&acc, c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

type Univariate<K> = Vec<MultiPoly<K>>;

fn to_univariate<K: Field>(p: &MultiPoly<K>, v: usize) -> Univariate<K> {
    let deg = p.degree_in(v).max(0) as usize;
    let mut buckets: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        buckets[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| MultiPoly::from_terms(p.field(), p.nvars(), t))
        .collect()
}

fn from_univariate<K: Field>(u: &Univariate<K>, v: usize, like: &MultiPoly<K>) -> MultiPoly<K> {
    let mut raw = Vec::new();
    for (e, c) in u.iter().enumerate() {
        for (m, a) in c.terms() {
            raw.push((m.with_exp(v, e as u32), a.clone()));
        }
    }
    MultiPoly::from_terms(like.field(), like.nvars(), raw)
}

fn trim<K: Field>(u: &mut Univariate<K>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn degree<K: Field>(u: &Univariate<K>) -> isize {
    u.len() as isize - 1
}

/// `lc(b)^(deg a - deg b + 1)·a mod b`.
fn pseudo_remainder<K: Field>(a: &Univariate<K>, b: &Univariate<K>) -> Univariate<K> {
    let db = degree(b);
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = a.clone();
    let mut e = degree(a) - db + 1;
    while degree(&r) >= db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = (degree(&r) - db) as usize;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &lr * bj;
            r[j + shift] = &r[j + shift] - &t;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let scale = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &scale;
        }
    }
    r
}

fn primitive_part<K: Field>(u: &Univariate<K>) -> Univariate<K> {
    let mut cont: Option<MultiPoly<K>> = None;
    for c in u.iter().rev().filter(|c| !c.is_zero()) {
        if cont.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
        cont = Some(match cont {
            None => c.clone(),
            Some(g) => gcd_rec(&g, c),
        });
    }
    match cont {
        Some(g) if !g.is_constant() => {
            u.iter().map(|c| c.div_exact(&g).expect("content divides")).collect()
        }
        _ => u.clone(),
    }
}

/// Primitive gcd of two primitive polynomials with `deg a >= deg b`.
fn subresultant_gcd<K: Field>(mut a: Univariate<K>, mut b: Univariate<K>) -> Univariate<K> {
    let f = a[0].field().clone();
    let nvars = a[0].nvars();
    let unit = || vec![MultiPoly::one(&f, nvars)];
    if degree(&b) == 0 {
        return unit();
    }
    let mut g = MultiPoly::one(&f, nvars);
    let mut h = MultiPoly::one(&f, nvars);
    loop {
        let delta = (degree(&a) - degree(&b)) as u32;
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return primitive_part(&b);
        }
        if degree(&r) == 0 {
            return unit();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}
