//! Dense exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables a polynomial may use. Leaves room
/// for one or two auxiliary variables on top of the largest ambient spaces.
pub const MAX_VARS: usize = 12;

/// A monomial as a fixed-width exponent vector. Entries past the owning
/// polynomial's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(index: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[index] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        r.deg += other.deg;
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a -= *b;
        }
        r.deg -= other.deg;
        r
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::default();
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            r.deg += r.exps[i] as u32;
        }
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn with_exp(&self, index: usize, e: u32) -> Monomial {
        let mut r = *self;
        r.deg = r.deg - r.exps[index] as u32 + e;
        r.exps[index] = u16::try_from(e).expect("exponent overflow");
        r
    }

    /// Inserts a zero exponent at `index`, shifting later variables up.
    pub fn insert_var(&self, index: usize) -> Monomial {
        let mut r = Monomial { deg: self.deg, ..Default::default() };
        r.exps[..index].copy_from_slice(&self.exps[..index]);
        r.exps[index + 1..].copy_from_slice(&self.exps[index..MAX_VARS - 1]);
        r
    }

    /// Drops the variable at `index`, which must have exponent zero.
    pub fn remove_var(&self, index: usize) -> Monomial {
        debug_assert_eq!(self.exps[index], 0);
        let mut r = Monomial { deg: self.deg, ..Default::default() };
        r.exps[..index].copy_from_slice(&self.exps[..index]);
        r.exps[index..MAX_VARS - 1].copy_from_slice(&self.exps[index + 1..]);
        r
    }

    fn cmp_lex_range(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        self.exps[lo..hi].cmp(&other.exps[lo..hi])
    }

    fn cmp_degrevlex_range(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da: u32 = self.exps[lo..hi].iter().map(|&e| e as u32).sum();
        let db: u32 = other.exps[lo..hi].iter().map(|&e| e as u32).sum();
        da.cmp(&db).then_with(|| {
            for i in (lo..hi).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }

    fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Total orders on monomials compatible with multiplication. Variable 0 is
/// the largest variable in every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// rest. Eliminates the first block.
    Block(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => a.cmp_degrevlex(b),
            MonomialOrder::Lex => a.cmp_lex_range(b, 0, MAX_VARS),
            MonomialOrder::Block(k) => a
                .cmp_degrevlex_range(b, 0, k)
                .then_with(|| a.cmp_degrevlex_range(b, k, MAX_VARS)),
        }
    }
}
