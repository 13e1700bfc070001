use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::{Monomial, OrderSpec};

/// Exact rational scalars; always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// An element of the algebra in standard form: terms strictly descending
/// under the order it was built with, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        Self::term(c, Monomial::one(n))
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn term(coeff: Rational, mono: Monomial) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: vec![Term { coeff, mono }] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(n, i))
    }

    /// Collects arbitrary (possibly repeated, unsorted) terms into standard form.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I, order: &OrderSpec) -> Self {
        let mut acc = Accumulator::new();
        for t in terms {
            acc.add(t.mono, t.coeff);
        }
        acc.finish(order)
    }

    /// Trusts the caller that `terms` is already in standard form.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Returns `Some(c)` when the polynomial is the scalar `c` (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|t| &t.mono == m).map(|t| t.coeff.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|t| Term { coeff: -&t.coeff, mono: t.mono.clone() }).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|t| Term { coeff: &t.coeff * c, mono: t.mono.clone() }).collect() }
    }

    /// Makes the leading coefficient 1; returns the factor that was divided out.
    pub fn make_monic(&mut self) -> Rational {
        let Some(lc) = self.leading().map(|t| t.coeff.clone()) else {
            return Rational::one();
        };
        if !lc.is_one() {
            let inv = lc.recip();
            for t in &mut self.terms {
                t.coeff *= &inv;
            }
        }
        lc
    }

    pub fn add(&self, other: &Self, order: &OrderSpec) -> Self {
        self.add_scaled(other, &Rational::one(), order)
    }

    pub fn sub(&self, other: &Self, order: &OrderSpec) -> Self {
        self.add_scaled(other, &-Rational::one(), order)
    }

    /// `self + c * other` by a sorted merge.
    pub fn add_scaled(&self, other: &Self, c: &Rational, order: &OrderSpec) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: &b[j].coeff * c, mono: b[j].mono.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].coeff + &b[j].coeff * c;
                    if !s.is_zero() {
                        out.push(Term { coeff: s, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { coeff: &t.coeff * c, mono: t.mono.clone() }));
        Polynomial { terms: out }
    }

    /// Drops the leading term in place.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term that is smaller than every present one.
    pub(crate) fn push_smallest(&mut self, t: Term) {
        self.terms.push(t);
    }

    /// Checks the standard-form invariant under `order`.
    pub fn is_normalized(&self, order: &OrderSpec) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_zero())
            && self.terms.windows(2).all(|w| order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }
}

/// Hash-based term collector used by products and parsers.
#[derive(Default)]
pub struct Accumulator {
    map: HashMap<Monomial, Rational>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.map.entry(mono) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_poly(&mut self, p: &Polynomial, c: &Rational) {
        for t in p.terms() {
            self.add(t.mono.clone(), &t.coeff * c);
        }
    }

    pub fn finish(self, order: &OrderSpec) -> Polynomial {
        let mut terms: Vec<Term> = self.map.into_iter().map(|(mono, coeff)| Term { coeff, mono }).collect();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { terms }
    }
}
