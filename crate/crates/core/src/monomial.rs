//! Standard monomials and the admissible orders they are sorted by.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a standard monomial `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    pub fn var_pow(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Index of the first variable with a positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Index of the last variable with a positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    /// Exponent-wise sum (the commutative product).
    pub fn add(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` in the exponent lattice, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Whether the monomial is a pure power `x_i^e` with `e > 0`; returns `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// ω-weighted degree order with a lexicographic tiebreak.
///
/// `precedence[0]` is the variable compared first in the tiebreak; a larger
/// exponent there makes the monomial larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    weights: Vec<u32>,
    precedence: Vec<usize>,
}

impl OrderSpec {
    pub fn new(weights: Vec<u32>, precedence: Vec<usize>) -> Result<Self> {
        let n = weights.len();
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidOrder(format!("weight of variable {} must be positive", pos + 1)));
        }
        if precedence.len() != n {
            return Err(Error::InvalidOrder(format!(
                "precedence lists {} variables, expected {n}",
                precedence.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &precedence {
            if p >= n || seen[p] {
                return Err(Error::InvalidOrder("precedence is not a permutation of the variables".into()));
            }
            seen[p] = true;
        }
        Ok(OrderSpec { weights, precedence })
    }

    /// Weighted order with the declared variable order as tiebreak.
    pub fn weighted(weights: Vec<u32>) -> Result<Self> {
        let n = weights.len();
        Self::new(weights, (0..n).collect())
    }

    /// All-ones weights, declared order tiebreak (degree-lexicographic).
    pub fn deglex(n: usize) -> Self {
        OrderSpec { weights: vec![1; n], precedence: (0..n).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    /// Total comparison; callers guarantee matching dimensions.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| {
                for &v in &self.precedence {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }

    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.nvars();
        if a.nvars() != n || b.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: if a.nvars() != n { a.nvars() } else { b.nvars() } });
        }
        Ok(self.cmp(a, b))
    }
}

/// How positions and monomials are combined when ordering module terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModuleScheme {
    /// Compare monomials first, then prefer the lower position.
    #[default]
    TermOverPosition,
    /// Prefer the lower position first, then compare monomials.
    PositionOverTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub base: OrderSpec,
    pub scheme: ModuleScheme,
}

impl ModuleOrder {
    pub fn top(base: OrderSpec) -> Self {
        ModuleOrder { base, scheme: ModuleScheme::TermOverPosition }
    }

    pub fn pot(base: OrderSpec) -> Self {
        ModuleOrder { base, scheme: ModuleScheme::PositionOverTerm }
    }

    /// Compare `(position, monomial)` pairs; positions are 0-based and a lower
    /// position counts as larger.
    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let by_pos = b.0.cmp(&a.0);
        match self.scheme {
            ModuleScheme::TermOverPosition => self.base.cmp(a.1, b.1).then(by_pos),
            ModuleScheme::PositionOverTerm => by_pos.then_with(|| self.base.cmp(a.1, b.1)),
        }
    }
}
