//! Buchberger's algorithm on term vectors sorted under an arbitrary order.
//! Pairs are pruned with the Gebauer–Möller installation of the product and
//! chain criteria.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

use super::{GroebnerConfig, PairSelection};

/// Terms sorted descending under the active order, no zero coefficients.
pub(crate) type Terms<K> = Vec<(Monomial, <K as Field>::Elem)>;

/// Lead monomial with its support mask, for quick divisibility rejection.
#[derive(Clone, Copy)]
pub(crate) struct Lead {
    pub mono: Monomial,
    pub mask: u32,
}

impl Lead {
    pub fn new(mono: Monomial) -> Self {
        Lead { mono, mask: mono.support_mask() }
    }

    #[inline]
    pub fn divides(&self, m: &Monomial, mask: u32) -> bool {
        self.mask & !mask == 0 && self.mono.divides(m)
    }
}

/// `a - c·m·b`, where `m·b` keeps its order because orders are
/// multiplicative.
pub(crate) fn sub_scaled<K: Field>(
    field: &K,
    order: MonomialOrder,
    a: &[(Monomial, K::Elem)],
    c: &K::Elem,
    m: &Monomial,
    b: &[(Monomial, K::Elem)],
) -> Terms<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, field.neg(&field.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (bm, bc) in &b[j..] {
        out.push((bm.mul(m), field.neg(&field.mul(c, bc))));
    }
    out
}

pub(crate) fn make_monic<K: Field>(field: &K, p: &mut Terms<K>) {
    if let Some((_, lc)) = p.first() {
        if !field.is_one(lc) {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in p.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

/// Reduces `p` by monic `basis` elements whose leads are `leads`.
/// With `full == false` only the leading term is reduced away.
pub(crate) fn reduce<K: Field>(
    field: &K,
    order: MonomialOrder,
    mut p: Terms<K>,
    basis: &[&Terms<K>],
    leads: &[Lead],
    full: bool,
) -> Terms<K> {
    let mut done: Terms<K> = Vec::new();
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = (p[pos].0, p[pos].1.clone());
        let mask = m.support_mask();
        match leads.iter().position(|l| l.divides(&m, mask)) {
            Some(k) => {
                let g = basis[k];
                let q = m.div(&leads[k].mono);
                p = sub_scaled(field, order, &p[pos + 1..], &c, &q, &g[1..]);
                pos = 0;
            }
            None => {
                if !full {
                    break;
                }
                done.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    if full {
        done
    } else {
        p.drain(..pos);
        p
    }
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a, K: Field> {
    field: &'a K,
    order: MonomialOrder,
    polys: Vec<Terms<K>>,
    leads: Vec<Lead>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a, K: Field> State<'a, K> {
    fn insert(&mut self, mut h: Terms<K>, sugar: u32) -> usize {
        make_monic(self.field, &mut h);
        let idx = self.polys.len();
        let lead = Lead::new(h[0].0);
        self.polys.push(h);
        self.leads.push(lead);
        self.sugar.push(sugar);
        self.update(idx);
        idx
    }

    fn update(&mut self, h: usize) {
        let lh = self.leads[h].mono;
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.leads[g].mono;
                (g, lh.lcm(&lg), lh.is_coprime(&lg))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, &(g1, l1, coprime)) in cands.iter().enumerate() {
            let dominated = cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(&l1))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1, coprime));
            }
        }
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && leads[p.i].mono.lcm(&lh) != p.lcm
                && leads[p.j].mono.lcm(&lh) != p.lcm)
        });
        for (g, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let sg = self.sugar[g] + lcm.degree() - self.leads[g].mono.degree();
            let sh = self.sugar[h] + lcm.degree() - lh.degree();
            self.pairs.push(Pair { i: g, j: h, lcm, sugar: sg.max(sh) });
        }
        self.active.retain(|&g| !lh.divides(&leads[g].mono));
        self.active.push(h);
    }

    fn select(&mut self, selection: PairSelection) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let cmp = |a: &Pair, b: &Pair| -> Ordering {
            let primary = match selection {
                PairSelection::Normal => Ordering::Equal,
                PairSelection::Sugar => a.sugar.cmp(&b.sugar),
            };
            primary
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
        };
        let best = (0..self.pairs.len())
            .min_by(|&x, &y| cmp(&self.pairs[x], &self.pairs[y]))
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Terms<K> {
        let a = &self.polys[p.i];
        let b = &self.polys[p.j];
        let ma = p.lcm.div(&a[0].0);
        let mb = p.lcm.div(&b[0].0);
        let one = self.field.one();
        let left: Terms<K> = a[1..].iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
        sub_scaled(self.field, self.order, &left, &one, &mb, &b[1..])
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, each sorted
/// under `order`. Returns monic elements sorted by descending lead.
pub(crate) fn buchberger<K: Field>(
    field: &K,
    order: MonomialOrder,
    gens: Vec<Terms<K>>,
    config: &GroebnerConfig,
) -> Result<Vec<Terms<K>>> {
    let mut st = State {
        field,
        order,
        polys: Vec::new(),
        leads: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut gens: Vec<Terms<K>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for g in gens {
        let reducers: Vec<&Terms<K>> = st.active.iter().map(|&k| &st.polys[k]).collect();
        let leads: Vec<Lead> = st.active.iter().map(|&k| st.leads[k]).collect();
        let sugar = g.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let h = reduce(field, order, g, &reducers, &leads, false);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return Ok(vec![vec![(Monomial::one(), field.one())]]);
        }
        st.insert(h, sugar);
    }
    let mut processed = 0usize;
    while let Some(pair) = st.select(config.selection) {
        processed += 1;
        if processed > config.max_pairs {
            return Err(Error::ResourceCap(format!("more than {} S-pairs", config.max_pairs)));
        }
        let s = st.spoly(&pair);
        if s.is_empty() {
            continue;
        }
        let reducers: Vec<&Terms<K>> = st.active.iter().map(|&k| &st.polys[k]).collect();
        let leads: Vec<Lead> = st.active.iter().map(|&k| st.leads[k]).collect();
        let h = reduce(field, order, s, &reducers, &leads, false);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return Ok(vec![vec![(Monomial::one(), field.one())]]);
        }
        if st.polys.len() >= config.max_basis {
            return Err(Error::ResourceCap(format!("more than {} basis elements", config.max_basis)));
        }
        st.insert(h, pair.sugar);
    }
    Ok(interreduce(field, order, st.active.iter().map(|&k| st.polys[k].clone()).collect()))
}

/// Minimal, tail-reduced, monic, sorted by descending lead.
pub(crate) fn interreduce<K: Field>(field: &K, order: MonomialOrder, polys: Vec<Terms<K>>) -> Vec<Terms<K>> {
    let mut polys: Vec<Terms<K>> = polys.into_iter().filter(|p| !p.is_empty()).collect();
    polys.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    let mut minimal: Vec<Terms<K>> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let lm = p[0].0;
        let dominated = polys.iter().enumerate().any(|(j, q)| {
            j != k && q[0].0.divides(&lm) && (q[0].0 != lm || j < k)
        });
        if !dominated {
            minimal.push(p.clone());
        }
    }
    let leads: Vec<Lead> = minimal.iter().map(|p| Lead::new(p[0].0)).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms<K>> = (0..minimal.len()).filter(|&j| j != k).map(|j| &minimal[j]).collect();
        let other_leads: Vec<Lead> = (0..minimal.len()).filter(|&j| j != k).map(|j| leads[j]).collect();
        let head = minimal[k][0].clone();
        let tail = reduce(field, order, minimal[k][1..].to_vec(), &others, &other_leads, true);
        let mut p = Vec::with_capacity(tail.len() + 1);
        p.push(head);
        p.extend(tail);
        make_monic(field, &mut p);
        out.push(p);
    }
    out
}
