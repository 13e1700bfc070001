//! PBW algebras given by commutation relations, and multiplication of
//! standard-form elements by rewriting out-of-order variable pairs.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderSpec};
use crate::poly::{Accumulator, Polynomial, Rational, Term};
use crate::vector::ModuleVector;

/// `x_j x_i = coeff * x_i x_j + tail` for a pair `j > i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub coeff: Rational,
    pub tail: Polynomial,
}

impl Relation {
    pub fn commuting() -> Self {
        Relation { coeff: Rational::one(), tail: Polynomial::zero() }
    }

    fn is_commuting(&self) -> bool {
        self.coeff.is_one() && self.tail.is_zero()
    }
}

/// A relation as supplied by a caller: `x_j x_i = coeff * x_i x_j + tail`.
#[derive(Clone, Debug)]
pub struct RelationSpec {
    pub j: usize,
    pub i: usize,
    pub coeff: Rational,
    pub tail: Polynomial,
}

type PairKey = (usize, u32, usize, u32);

/// A validated PBW algebra over the rationals.
#[derive(Clone)]
pub struct AlgebraSpec {
    names: Vec<String>,
    order: OrderSpec,
    /// Row-major over pairs `(j, i)`, `j > i`; see [`pair_index`].
    relations: Vec<Relation>,
    commutative: bool,
    // x_j^p x_i^q for j > i; invisible to equality.
    cache: Arc<RwLock<HashMap<PairKey, Arc<Polynomial>>>>,
}

fn pair_index(j: usize, i: usize) -> usize {
    debug_assert!(j > i);
    j * (j - 1) / 2 + i
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.order == other.order && self.relations == other.relations
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("names", &self.names)
            .field("order", &self.order)
            .field("relations", &self.relations)
            .finish()
    }
}

impl AlgebraSpec {
    /// Builds and validates an algebra. Pairs without a relation commute.
    pub fn construct(names: Vec<String>, relations: Vec<RelationSpec>, order: OrderSpec) -> Result<Self> {
        let alg = Self::unchecked(names, relations, order)?;
        alg.validate()?;
        Ok(alg)
    }

    pub fn commutative(names: Vec<String>, order: OrderSpec) -> Result<Self> {
        Self::construct(names, Vec::new(), order)
    }

    /// Builds the relation table without the admissibility and overlap checks.
    pub(crate) fn unchecked(names: Vec<String>, relations: Vec<RelationSpec>, order: OrderSpec) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("an algebra needs at least one variable".into()));
        }
        if order.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: order.nvars() });
        }
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::InvalidAlgebra(format!("variable `{name}` declared twice")));
            }
        }
        let mut table = vec![None; n * (n - 1) / 2];
        for r in relations {
            if r.j >= n || r.i >= r.j {
                return Err(Error::InvalidAlgebra(format!(
                    "relation must rewrite an inverted pair x_j x_i with j > i, got ({}, {})",
                    r.j + 1,
                    r.i + 1
                )));
            }
            if r.coeff.is_zero() {
                return Err(Error::InvalidAlgebra(format!(
                    "relation {}*{} has zero coefficient",
                    names[r.j], names[r.i]
                )));
            }
            let slot = &mut table[pair_index(r.j, r.i)];
            if slot.is_some() {
                return Err(Error::InvalidAlgebra(format!("relation {}*{} given twice", names[r.j], names[r.i])));
            }
            for t in r.tail.terms() {
                if t.mono.nvars() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: t.mono.nvars() });
                }
            }
            let tail = Polynomial::from_terms(r.tail.into_terms(), &order);
            *slot = Some(Relation { coeff: r.coeff, tail });
        }
        let relations: Vec<Relation> = table.into_iter().map(|r| r.unwrap_or_else(Relation::commuting)).collect();
        let commutative = relations.iter().all(Relation::is_commuting);
        Ok(AlgebraSpec { names, order, relations, commutative, cache: Arc::default() })
    }

    fn validate(&self) -> Result<()> {
        let n = self.nvars();
        for j in 0..n {
            for i in 0..j {
                let word = self.monomial_xi_xj(i, j);
                let rel = self.relation(j, i);
                if let Some(t) = rel.tail.leading() {
                    if self.order.cmp(&t.mono, &word) != std::cmp::Ordering::Less {
                        return Err(Error::AdmissibilityViolation {
                            pair: format!("{}*{}", self.names[j], self.names[i]),
                            monomial: self.render_monomial(&t.mono),
                        });
                    }
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    self.check_overlap(k, j, i)?;
                }
            }
        }
        Ok(())
    }

    /// Compares `(x_k x_j) x_i` with `x_k (x_j x_i)` after full rewriting.
    fn check_overlap(&self, k: usize, j: usize, i: usize) -> Result<()> {
        let n = self.nvars();
        let (xk, xi) = (Monomial::var(n, k), Monomial::var(n, i));
        let kj = self.mono_mul(&xk, &Monomial::var(n, j));
        let ji = self.mono_mul(&Monomial::var(n, j), &xi);
        let mut left = Accumulator::new();
        for t in kj.terms() {
            self.mono_mul_into(&t.mono, &xi, &t.coeff, &mut left);
        }
        let mut right = Accumulator::new();
        for t in ji.terms() {
            self.mono_mul_into(&xk, &t.mono, &t.coeff, &mut right);
        }
        let (left, right) = (left.finish(&self.order), right.finish(&self.order));
        if left != right {
            let nm = &self.names;
            return Err(Error::AssociativityViolation {
                triple: format!("({}, {}, {})", nm[k], nm[j], nm[i]),
                detail: format!(
                    "({}*{})*{} = {} but {}*({}*{}) = {}",
                    nm[k],
                    nm[j],
                    nm[i],
                    self.render(&left),
                    nm[k],
                    nm[j],
                    nm[i],
                    self.render(&right)
                ),
            });
        }
        Ok(())
    }

    fn monomial_xi_xj(&self, i: usize, j: usize) -> Monomial {
        let n = self.nvars();
        Monomial::var(n, i).add(&Monomial::var(n, j))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relation(&self, j: usize, i: usize) -> &Relation {
        &self.relations[pair_index(j, i)]
    }

    /// All relations as `(j, i, relation)` with `j > i`.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize, &Relation)> + '_ {
        let n = self.nvars();
        (0..n).flat_map(move |j| (0..j).map(move |i| (j, i, self.relation(j, i))))
    }

    pub fn relation_specs(&self) -> Vec<RelationSpec> {
        self.relations()
            .filter(|(_, _, r)| !r.is_commuting())
            .map(|(j, i, r)| RelationSpec { j, i, coeff: r.coeff.clone(), tail: r.tail.clone() })
            .collect()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(c, self.nvars())
    }

    // ---- multiplication -------------------------------------------------

    /// `x^a * x^b` in standard form.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Polynomial {
        let mut acc = Accumulator::new();
        self.mono_mul_into(a, b, &Rational::one(), &mut acc);
        acc.finish(&self.order)
    }

    /// Adds `c * x^a * x^b` to `acc`.
    fn mono_mul_into(&self, a: &Monomial, b: &Monomial, c: &Rational, acc: &mut Accumulator) {
        let (Some(j), Some(i)) = (a.last_var(), b.first_var()) else {
            acc.add(a.add(b), c.clone());
            return;
        };
        if self.commutative || j <= i {
            acc.add(a.add(b), c.clone());
            return;
        }
        let a_rest = a.with_exponent(j, 0);
        let b_rest = b.with_exponent(i, 0);
        let swapped = self.pow_pair(j, a.exponent(j), i, b.exponent(i));
        for t in swapped.terms() {
            let ct = c * &t.coeff;
            if a_rest.is_one() {
                self.mono_mul_into(&t.mono, &b_rest, &ct, acc);
            } else {
                let left = self.mono_mul(&a_rest, &t.mono);
                for s in left.terms() {
                    self.mono_mul_into(&s.mono, &b_rest, &(&ct * &s.coeff), acc);
                }
            }
        }
    }

    /// `x_j^p x_i^q` for `j > i`, memoized.
    fn pow_pair(&self, j: usize, p: u32, i: usize, q: u32) -> Arc<Polynomial> {
        let n = self.nvars();
        let rel = self.relation(j, i);
        if rel.tail.is_zero() {
            let c: Rational = Pow::pow(&rel.coeff, p * q);
            let m = Monomial::var_pow(n, i, q).add(&Monomial::var_pow(n, j, p));
            return Arc::new(Polynomial::term(c, m));
        }
        let key = (j, p, i, q);
        if let Some(hit) = self.cache.read().expect("product cache poisoned").get(&key) {
            return hit.clone();
        }
        let result = if p == 1 && q == 1 {
            Polynomial::term(rel.coeff.clone(), self.monomial_xi_xj(i, j)).add(&rel.tail, &self.order)
        } else if q > 1 {
            let prev = self.pow_pair(j, p, i, q - 1);
            let xi = Monomial::var(n, i);
            let mut acc = Accumulator::new();
            for t in prev.terms() {
                self.mono_mul_into(&t.mono, &xi, &t.coeff, &mut acc);
            }
            acc.finish(&self.order)
        } else {
            let prev = self.pow_pair(j, p - 1, i, 1);
            let xj = Monomial::var(n, j);
            let mut acc = Accumulator::new();
            for t in prev.terms() {
                self.mono_mul_into(&xj, &t.mono, &t.coeff, &mut acc);
            }
            acc.finish(&self.order)
        };
        let result = Arc::new(result);
        self.cache.write().expect("product cache poisoned").insert(key, result.clone());
        result
    }

    /// The product `f * g` in standard form.
    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = Accumulator::new();
        for s in f.terms() {
            for t in g.terms() {
                self.mono_mul_into(&s.mono, &t.mono, &(&s.coeff * &t.coeff), &mut acc);
            }
        }
        acc.finish(&self.order)
    }

    /// `c * x^m * g`.
    pub fn term_mul(&self, c: &Rational, m: &Monomial, g: &Polynomial) -> Polynomial {
        let mut acc = Accumulator::new();
        for t in g.terms() {
            self.mono_mul_into(m, &t.mono, &(c * &t.coeff), &mut acc);
        }
        acc.finish(&self.order)
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        f.add(g, &self.order)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        f.sub(g, &self.order)
    }

    /// `f^e` by repeated multiplication.
    pub fn pow(&self, f: &Polynomial, e: u32) -> Polynomial {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, f);
        }
        out
    }

    /// Left action `c * x^m * v` on a module vector.
    pub fn term_mul_vec(&self, c: &Rational, m: &Monomial, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.rank());
        for (pos, p) in v.entries() {
            out.set(pos, self.term_mul(c, m, p));
        }
        out
    }

    /// Left action `f * v`.
    pub fn mul_vec(&self, f: &Polynomial, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.rank());
        for (pos, p) in v.entries() {
            out.set(pos, self.mul(f, p));
        }
        out
    }

    /// Right action `v * f`, entrywise.
    pub fn right_multiply(&self, v: &ModuleVector, f: &Polynomial) -> ModuleVector {
        let mut out = ModuleVector::zero(v.rank());
        for (pos, p) in v.entries() {
            out.set(pos, self.mul(p, f));
        }
        out
    }

    /// `sum_k coeffs[k] * vectors[k]` (left coefficients).
    pub fn combine(&self, coeffs: &ModuleVector, vectors: &[ModuleVector], rank: usize) -> ModuleVector {
        let mut out = ModuleVector::zero(rank);
        for (k, c) in coeffs.entries() {
            let prod = self.mul_vec(c, &vectors[k]);
            out.add_scaled_in_place(&prod, &Rational::one(), &self.order);
        }
        out
    }

    /// Copy of the algebra with a different monomial order. The relations are
    /// revalidated since admissibility depends on the order.
    pub fn with_order(&self, order: OrderSpec) -> Result<Self> {
        Self::construct(self.names.clone(), self.relation_specs(), order)
    }

    // ---- opposite -------------------------------------------------------

    /// Rewrites an element of this algebra in the standard form of `op`,
    /// the opposite algebra: `x^a` is the reversed word `x_n^{a_n} o ... o x_1^{a_1}`.
    pub fn transport_to_opposite(&self, f: &Polynomial, op: &AlgebraSpec) -> Polynomial {
        let n = self.nvars();
        let mut acc = Accumulator::new();
        for t in f.terms() {
            let mut word = op.one();
            for v in (0..n).rev() {
                let e = t.mono.exponent(v);
                if e > 0 {
                    word = op.term_mul_right(&word, &Monomial::var_pow(n, v, e));
                }
            }
            acc.add_poly(&word, &t.coeff);
        }
        acc.finish(&op.order)
    }

    /// `f * x^m`.
    fn term_mul_right(&self, f: &Polynomial, m: &Monomial) -> Polynomial {
        let mut acc = Accumulator::new();
        for t in f.terms() {
            self.mono_mul_into(&t.mono, m, &t.coeff, &mut acc);
        }
        acc.finish(&self.order)
    }

    /// The opposite algebra on the same variable names and order.
    pub fn opposite(&self) -> Result<Self> {
        let n = self.nvars();
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (j, i))).collect();
        // Tails of a pair only involve words below x_i x_j, so processing pairs
        // in ascending order means every transported word sees finished relations.
        pairs.sort_by(|a, b| self.order.cmp(&self.monomial_xi_xj(a.1, a.0), &self.monomial_xi_xj(b.1, b.0)));
        let mut specs: Vec<RelationSpec> = Vec::new();
        for (j, i) in pairs {
            let rel = self.relation(j, i);
            if rel.is_commuting() {
                continue;
            }
            // x_j o x_i = x_i x_j = (1/c) (x_i o x_j) - (1/c) p
            let inv = rel.coeff.recip();
            let tail = if rel.tail.is_zero() {
                Polynomial::zero()
            } else {
                let partial = AlgebraSpec::unchecked(self.names.clone(), specs.clone(), self.order.clone())?;
                self.transport_to_opposite(&rel.tail, &partial).scale(&-&inv)
            };
            specs.push(RelationSpec { j, i, coeff: inv, tail });
        }
        Self::construct(self.names.clone(), specs, self.order.clone())
    }

    // ---- rendering ------------------------------------------------------

    pub fn render(&self, f: &Polynomial) -> String {
        crate::render::polynomial(f, &self.names)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        crate::render::monomial(m, &self.names)
    }

    pub fn render_vector(&self, v: &ModuleVector) -> String {
        crate::render::vector(v, &self.names)
    }

    pub fn render_relation(&self, j: usize, i: usize) -> String {
        let rel = self.relation(j, i);
        let rhs = Polynomial::term(rel.coeff.clone(), self.monomial_xi_xj(i, j)).add(&rel.tail, &self.order);
        format!("{}*{} = {}", self.names[j], self.names[i], self.render(&rhs))
    }
}

/// The enveloping algebra `R ⊗ R^op` on `2n` variables: `x_1..x_n` followed by
/// the opposite copies `x_1_op..x_n_op`.
#[derive(Clone, Debug)]
pub struct EnvAlgebra {
    pub base: AlgebraSpec,
    pub opposite: AlgebraSpec,
    pub env: AlgebraSpec,
}

impl EnvAlgebra {
    pub fn n(&self) -> usize {
        self.base.nvars()
    }

    /// Embeds `x^a` as `x^a ⊗ 1`.
    pub fn lift_poly(&self, f: &Polynomial) -> Polynomial {
        let n = self.n();
        let terms = f.terms().iter().map(|t| {
            let mut e = t.mono.exponents().to_vec();
            e.resize(2 * n, 0);
            Term { coeff: t.coeff.clone(), mono: Monomial::from_exponents(&e) }
        });
        Polynomial::from_terms(terms, self.env.order())
    }

    /// Embeds `x^b` as `1 ⊗ x^b`, reading `x^b` as an element of `R^op`.
    pub fn lift_opposite(&self, g: &Polynomial) -> Polynomial {
        let n = self.n();
        let terms = g.terms().iter().map(|t| {
            let mut e = vec![0; n];
            e.extend_from_slice(t.mono.exponents());
            Term { coeff: t.coeff.clone(), mono: Monomial::from_exponents(&e) }
        });
        Polynomial::from_terms(terms, self.env.order())
    }

    pub fn env_lift(&self, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.rank());
        for (pos, p) in v.entries() {
            out.set(pos, self.lift_poly(p));
        }
        out
    }

    /// The multiplication map `f ⊗ g ↦ f g` on one element.
    pub fn project_poly(&self, f: &Polynomial) -> Polynomial {
        let n = self.n();
        let base = &self.base;
        let mut acc = Accumulator::new();
        for t in f.terms() {
            let e = t.mono.exponents();
            let left = Monomial::from_exponents(&e[..n]);
            // x̄^b is the reversed word x_n^{b_n} ... x_1^{b_1} in R.
            let mut word = Polynomial::term(t.coeff.clone(), left);
            for v in (0..n).rev() {
                if e[n + v] > 0 {
                    word = base.term_mul_right(&word, &Monomial::var_pow(n, v, e[n + v]));
                }
            }
            acc.add_poly(&word, &Rational::one());
        }
        acc.finish(base.order())
    }

    /// The multiplication map applied componentwise.
    pub fn env_project(&self, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.rank());
        for (pos, p) in v.entries() {
            out.set(pos, self.project_poly(p));
        }
        out
    }

    /// `x_i ⊗ 1 - 1 ⊗ x_i`.
    pub fn kernel_generator(&self, i: usize) -> Polynomial {
        let n = self.n();
        self.env.var(i).sub(&self.env.var(n + i), self.env.order())
    }
}

/// Builds `R ⊗ R^op`. Weights are concatenated; in the lexicographic tiebreak the
/// opposite block is compared first, which makes `1 ⊗ x_i` the leading word of
/// every kernel generator of the multiplication map.
pub fn enveloping(base: &AlgebraSpec) -> Result<EnvAlgebra> {
    let n = base.nvars();
    let opposite = base.opposite()?;
    let mut names = base.names().to_vec();
    names.extend(base.names().iter().map(|s| format!("{s}_op")));
    let mut weights = base.order().weights().to_vec();
    weights.extend_from_slice(base.order().weights());
    let mut precedence: Vec<usize> = base.order().precedence().iter().map(|&p| p + n).collect();
    precedence.extend_from_slice(base.order().precedence());
    let order = OrderSpec::new(weights, precedence)?;

    let pad = |f: &Polynomial, shift: usize| {
        let terms = f.terms().iter().map(|t| {
            let mut e = vec![0; 2 * n];
            e[shift..shift + n].copy_from_slice(t.mono.exponents());
            Term { coeff: t.coeff.clone(), mono: Monomial::from_exponents(&e) }
        });
        Polynomial::from_terms(terms, &order)
    };
    let mut specs = Vec::new();
    for r in base.relation_specs() {
        specs.push(RelationSpec { j: r.j, i: r.i, coeff: r.coeff, tail: pad(&r.tail, 0) });
    }
    for r in opposite.relation_specs() {
        specs.push(RelationSpec { j: r.j + n, i: r.i + n, coeff: r.coeff, tail: pad(&r.tail, n) });
    }
    let env = AlgebraSpec::construct(names, specs, order)?;
    Ok(EnvAlgebra { base: base.clone(), opposite, env })
}
