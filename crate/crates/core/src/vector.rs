//! Sparse elements of free modules `R^s` and matrices of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{ModuleOrder, OrderSpec};
use crate::poly::{Polynomial, Rational, Term};

/// Element of `R^rank`; positions are 0-based and zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    rank: usize,
    entries: BTreeMap<usize, Polynomial>,
}

impl ModuleVector {
    pub fn zero(rank: usize) -> Self {
        ModuleVector { rank, entries: BTreeMap::new() }
    }

    pub fn unit(rank: usize, pos: usize, nvars: usize) -> Self {
        Self::single(rank, pos, Polynomial::one(nvars))
    }

    pub fn single(rank: usize, pos: usize, p: Polynomial) -> Self {
        assert!(pos < rank, "position {pos} outside rank {rank}");
        let mut v = Self::zero(rank);
        v.set(pos, p);
        v
    }

    pub fn from_dense(entries: Vec<Polynomial>) -> Self {
        let rank = entries.len();
        let entries = entries.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
        ModuleVector { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: usize) -> Option<&Polynomial> {
        self.entries.get(&pos)
    }

    pub fn entry(&self, pos: usize) -> Polynomial {
        self.entries.get(&pos).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, pos: usize, p: Polynomial) {
        assert!(pos < self.rank, "position {pos} outside rank {}", self.rank);
        if p.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, p);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.entries.iter().map(|(&i, p)| (i, p))
    }

    pub fn into_entries(self) -> impl Iterator<Item = (usize, Polynomial)> {
        self.entries.into_iter()
    }

    pub fn to_dense(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.entry(i)).collect()
    }

    pub fn num_terms(&self) -> usize {
        self.entries.values().map(Polynomial::len).sum()
    }

    /// Maximal `(position, term)` under `mo`.
    pub fn leading(&self, mo: &ModuleOrder) -> Option<(usize, &Term)> {
        let mut best: Option<(usize, &Term)> = None;
        for (&pos, p) in &self.entries {
            let t = p.leading().expect("stored entries are nonzero");
            best = match best {
                Some((bp, bt)) if mo.cmp((bp, &bt.mono), (pos, &t.mono)) != Ordering::Less => Some((bp, bt)),
                _ => Some((pos, t)),
            };
        }
        best
    }

    pub fn leading_checked(&self, mo: &ModuleOrder) -> Result<(usize, Term)> {
        self.leading(mo).map(|(p, t)| (p, t.clone())).ok_or(Error::ZeroVector)
    }

    pub fn neg(&self) -> Self {
        ModuleVector { rank: self.rank, entries: self.entries.iter().map(|(&i, p)| (i, p.neg())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        if c.is_one() {
            return self.clone();
        }
        ModuleVector { rank: self.rank, entries: self.entries.iter().map(|(&i, p)| (i, p.scale(c))).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &Rational, order: &OrderSpec) -> Self {
        let mut out = self.clone();
        out.add_scaled_in_place(other, c, order);
        out
    }

    pub fn add_scaled_in_place(&mut self, other: &Self, c: &Rational, order: &OrderSpec) {
        debug_assert_eq!(self.rank, other.rank);
        if c.is_zero() {
            return;
        }
        for (&pos, p) in &other.entries {
            let merged = match self.entries.get(&pos) {
                Some(q) => q.add_scaled(p, c, order),
                None => p.scale(c),
            };
            self.set(pos, merged);
        }
    }

    pub fn add(&self, other: &Self, order: &OrderSpec) -> Self {
        self.add_scaled(other, &Rational::one(), order)
    }

    pub fn sub(&self, other: &Self, order: &OrderSpec) -> Self {
        self.add_scaled(other, &-Rational::one(), order)
    }

    /// Makes the leading coefficient 1 and returns the divided-out factor.
    pub fn make_monic(&mut self, mo: &ModuleOrder) -> Rational {
        let Some((_, t)) = self.leading(mo) else {
            return Rational::one();
        };
        let lc = t.coeff.clone();
        if !lc.is_one() {
            *self = self.scale(&lc.recip());
        }
        lc
    }

    /// Removes and returns the leading term of entry `pos`.
    pub(crate) fn pop_leading_at(&mut self, pos: usize) -> Option<Term> {
        let p = self.entries.get_mut(&pos)?;
        let t = p.pop_leading();
        if p.is_zero() {
            self.entries.remove(&pos);
        }
        t
    }

    /// Appends a term below every term already stored at `pos`.
    pub(crate) fn push_smallest_at(&mut self, pos: usize, t: Term) {
        self.entries.entry(pos).or_default().push_smallest(t);
    }

    /// Copies the entries into a vector of rank `rank`, shifted by `offset`.
    pub fn placed(&self, rank: usize, offset: usize) -> Self {
        assert!(offset + self.rank <= rank);
        ModuleVector { rank, entries: self.entries.iter().map(|(&i, p)| (i + offset, p.clone())).collect() }
    }

    /// Entries `start..start+len` as a vector of rank `len`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        ModuleVector {
            rank: len,
            entries: self.entries.range(start..start + len).map(|(&i, p)| (i - start, p.clone())).collect(),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank != rank {
            return Err(Error::RankMismatch { expected: rank, found: self.rank });
        }
        Ok(())
    }
}

/// Matrix over the algebra; row `i` is the image of the `i`-th basis vector,
/// so maps act by row-vector-times-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    cols: usize,
    rows: Vec<ModuleVector>,
}

impl PolyMatrix {
    pub fn new(cols: usize, rows: Vec<ModuleVector>) -> Result<Self> {
        for r in &rows {
            r.check_rank(cols)?;
        }
        Ok(PolyMatrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        PolyMatrix { cols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<ModuleVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &ModuleVector {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(ModuleVector::is_zero)
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.rows[i].entry(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::poly::int;

    fn order() -> OrderSpec {
        OrderSpec::weighted(vec![1, 2, 2]).unwrap()
    }

    fn mono(c: i64, e: &[u32]) -> Polynomial {
        Polynomial::term(int(c), Monomial::from_exponents(e))
    }

    #[test]
    fn leading_of_unit_vector() {
        let mo = ModuleOrder::top(order());
        let e1 = ModuleVector::unit(2, 0, 3);
        let (pos, t) = e1.leading(&mo).unwrap();
        assert_eq!(pos, 0);
        assert!(t.mono.is_one());
        assert_eq!(t.coeff, int(1));
    }

    #[test]
    fn leading_uses_weighted_degree() {
        let mo = ModuleOrder::top(order());
        let v = ModuleVector::from_dense(vec![mono(1, &[0, 3, 0]), mono(1, &[1, 0, 0])]);
        let (pos, t) = v.leading(&mo).unwrap();
        assert_eq!(pos, 0);
        assert_eq!(t.mono, Monomial::from_exponents(&[0, 3, 0]));

        let w = ModuleVector::from_dense(vec![Polynomial::zero(), mono(1, &[1, 0, 1])]);
        assert_eq!(w.leading(&mo).unwrap().0, 1);
    }

    #[test]
    fn zero_vector_has_no_leading_term() {
        let mo = ModuleOrder::top(order());
        assert!(matches!(ModuleVector::zero(3).leading_checked(&mo), Err(Error::ZeroVector)));
    }

    #[test]
    fn sparse_arithmetic_drops_zeros() {
        let o = order();
        let v = ModuleVector::from_dense(vec![mono(1, &[1, 0, 0]), mono(2, &[0, 1, 0])]);
        let d = v.sub(&v, &o);
        assert!(d.is_zero());
        let shifted = v.placed(6, 2);
        assert_eq!(shifted.entry(3), mono(2, &[0, 1, 0]));
        assert_eq!(shifted.slice(2, 2), v);
    }

    #[test]
    fn matrix_rank_is_checked() {
        let bad = PolyMatrix::new(3, vec![ModuleVector::zero(2)]);
        assert!(matches!(bad, Err(Error::RankMismatch { expected: 3, found: 2 })));
    }
}
