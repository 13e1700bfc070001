//! Left Gröbner bases of submodules of `R^s`, left division and syzygies.
//!
//! Everything here works with left coefficients: a module element is
//! reduced by subtracting `c * x^u * g` where `x^u` multiplies `g` from the
//! left. Since the algebra is PBW, the leading word of `x^u * g` is
//! `u + lm(g)`, though its coefficient may differ from `lc(g)`; multipliers
//! are therefore computed in the exponent lattice and the coefficient is
//! read off the actual product.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::monomial::{ModuleOrder, Monomial};
use crate::par;
use crate::poly::{Accumulator, Polynomial, Rational};
use crate::vector::ModuleVector;

/// Outcome of left division: `input = sum quotients[k] * divisors[k] + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionRecord {
    pub quotients: Vec<Polynomial>,
    pub remainder: ModuleVector,
}

#[derive(Clone, Debug)]
struct Lead {
    pos: usize,
    mono: Monomial,
}

fn lead_of(v: &ModuleVector, mo: &ModuleOrder) -> Lead {
    let (pos, t) = v.leading(mo).expect("divisors are nonzero");
    Lead { pos, mono: t.mono.clone() }
}

/// Sparse quotient bookkeeping: divisor index -> accumulated polynomial.
type Quotients = BTreeMap<usize, Accumulator>;

fn add_quotient(q: &mut Quotients, k: usize, mono: Monomial, c: Rational) {
    q.entry(k).or_default().add(mono, c);
}

struct Reducer<'a> {
    alg: &'a AlgebraSpec,
    mo: &'a ModuleOrder,
    divisors: &'a [ModuleVector],
    leads: Vec<Lead>,
}

impl<'a> Reducer<'a> {
    fn new(alg: &'a AlgebraSpec, mo: &'a ModuleOrder, divisors: &'a [ModuleVector]) -> Self {
        let leads = divisors.iter().map(|d| lead_of(d, mo)).collect();
        Reducer { alg, mo, divisors, leads }
    }

    fn find(&self, pos: usize, mono: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.leads
            .iter()
            .enumerate()
            .find(|(k, l)| Some(*k) != skip && l.pos == pos && l.mono.divides(mono))
            .map(|(k, _)| k)
    }

    /// Full reduction; the first divisor whose leading word divides wins.
    fn reduce(&self, mut p: ModuleVector, q: &mut Quotients, skip: Option<usize>) -> ModuleVector {
        let order = self.alg.order();
        let mut rem = ModuleVector::zero(p.rank());
        loop {
            let Some((pos, t)) = p.leading(self.mo).map(|(pos, t)| (pos, t.clone())) else {
                return rem;
            };
            match self.find(pos, &t.mono, skip) {
                Some(k) => {
                    let u = self.leads[k].mono.quotient_of(&t.mono).expect("divisibility checked");
                    let prod = self.alg.term_mul_vec(&Rational::one(), &u, &self.divisors[k]);
                    let lc = prod.get(pos).and_then(|e| e.leading()).expect("PBW leading word is preserved");
                    debug_assert_eq!(lc.mono, t.mono);
                    let f = &t.coeff / &lc.coeff;
                    p.add_scaled_in_place(&prod, &-&f, order);
                    add_quotient(q, k, u, f);
                }
                None => {
                    let t = p.pop_leading_at(pos).expect("leading term exists");
                    rem.push_smallest_at(pos, t);
                }
            }
        }
    }
}

fn finish_quotients(q: Quotients, alg: &AlgebraSpec) -> BTreeMap<usize, Polynomial> {
    q.into_iter()
        .map(|(k, acc)| (k, acc.finish(alg.order())))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Divides `v` by `divisors`, which must be nonzero and of `v`'s rank.
pub fn normal_form(alg: &AlgebraSpec, mo: &ModuleOrder, v: &ModuleVector, divisors: &[ModuleVector]) -> Result<DivisionRecord> {
    for d in divisors {
        d.check_rank(v.rank())?;
        if d.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    let red = Reducer::new(alg, mo, divisors);
    let mut q = Quotients::new();
    let remainder = red.reduce(v.clone(), &mut q, None);
    let q = finish_quotients(q, alg);
    let quotients = (0..divisors.len()).map(|k| q.get(&k).cloned().unwrap_or_default()).collect();
    Ok(DivisionRecord { quotients, remainder })
}

/// Buchberger state: elements plus (optionally) their expressions in the inputs.
struct Completion {
    elements: Vec<ModuleVector>,
    leads: Vec<Lead>,
    /// `elements[k] = sum reps[k][i] * gens[i]`
    reps: Option<Vec<ModuleVector>>,
    /// Relations among `elements` from pairs whose S-vector reduced to zero.
    pair_syzygies: Vec<BTreeMap<usize, Polynomial>>,
    /// Gebauer-Moeller pair pruning. Only the chain criterion is used; the
    /// coprime-leads criterion fails for noncommuting variables.
    chain: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    a: usize,
    b: usize,
    lcm: Monomial,
    pos: usize,
    degree: u64,
}

/// Output of reducing one S-vector: `S = sum coeffs * g`, reduced to `remainder`.
struct PairResult {
    coeffs: Quotients,
    remainder: ModuleVector,
}

impl Completion {
    fn run(alg: &AlgebraSpec, mo: &ModuleOrder, gens: &[ModuleVector], track: bool, chain: bool) -> Self {
        let order = alg.order();
        let mut c = Completion {
            elements: Vec::new(),
            leads: Vec::new(),
            reps: track.then(Vec::new),
            pair_syzygies: Vec::new(),
            chain,
        };
        let mut pairs: Vec<Pair> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut g = g.clone();
            let lc = g.make_monic(mo);
            let rep = ModuleVector::single(gens.len(), i, alg.constant(lc.recip()));
            c.push(alg, mo, g, rep, &mut pairs);
        }
        while !pairs.is_empty() {
            // normal strategy, batched by weighted degree of the lcm
            let min_deg = pairs.iter().map(|p| p.degree).min().expect("nonempty");
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = pairs.into_iter().partition(|p| p.degree == min_deg);
            pairs = rest;
            batch.sort_by(|x, y| mo.cmp((x.pos, &x.lcm), (y.pos, &y.lcm)).then((x.a, x.b).cmp(&(y.a, y.b))));

            let snapshot = c.elements.len();
            let results = {
                let red = Reducer::new(alg, mo, &c.elements);
                par::map(&batch, |p| c.reduce_pair(alg, &red, p))
            };
            for mut r in results {
                if !r.remainder.is_zero() && c.elements.len() > snapshot {
                    let red = Reducer::new(alg, mo, &c.elements);
                    let mut q = Quotients::new();
                    r.remainder = red.reduce(r.remainder, &mut q, None);
                    for (k, acc) in q {
                        for t in acc.finish(order).into_terms() {
                            add_quotient(&mut r.coeffs, k, t.mono, -t.coeff);
                        }
                    }
                }
                if r.remainder.is_zero() {
                    if track {
                        // 0 = S - sum q g; coeffs already hold S's multipliers minus quotients
                        c.pair_syzygies.push(finish_quotients(r.coeffs, alg));
                    }
                    continue;
                }
                let mut g = r.remainder;
                let lc = g.make_monic(mo);
                let rep = if let Some(reps) = &c.reps {
                    let coeffs = finish_quotients(r.coeffs, alg);
                    let mut rep = ModuleVector::zero(gens.len());
                    for (k, f) in &coeffs {
                        rep.add_scaled_in_place(&alg.mul_vec(f, &reps[*k]), &Rational::one(), order);
                    }
                    rep.scale(&lc.recip())
                } else {
                    ModuleVector::zero(0)
                };
                c.push(alg, mo, g, rep, &mut pairs);
            }
        }
        c
    }

    fn push(&mut self, alg: &AlgebraSpec, mo: &ModuleOrder, g: ModuleVector, rep: ModuleVector, pairs: &mut Vec<Pair>) {
        let lead = lead_of(&g, mo);
        let b = self.elements.len();
        let mut fresh: Vec<Pair> = Vec::new();
        for (a, la) in self.leads.iter().enumerate() {
            if la.pos == lead.pos {
                let lcm = la.mono.lcm(&lead.mono);
                let degree = alg.order().degree(&lcm);
                fresh.push(Pair { a, b, lcm, pos: lead.pos, degree });
            }
        }
        if self.chain {
            let leads = &self.leads;
            // old pair (i, j) is implied by (i, b) and (j, b)
            pairs.retain(|p| {
                p.pos != lead.pos
                    || !lead.mono.divides(&p.lcm)
                    || leads[p.a].mono.lcm(&lead.mono) == p.lcm
                    || leads[p.b].mono.lcm(&lead.mono) == p.lcm
            });
            // among new pairs keep those with minimal lcm, one per lcm
            let mut kept: Vec<Pair> = Vec::new();
            for p in fresh {
                let dominated = kept.iter().any(|q| q.lcm.divides(&p.lcm));
                if !dominated {
                    kept.retain(|q| !p.lcm.divides(&q.lcm));
                    kept.push(p);
                }
            }
            fresh = kept;
        }
        pairs.extend(fresh);
        self.elements.push(g);
        self.leads.push(lead);
        if let Some(reps) = &mut self.reps {
            reps.push(rep);
        }
    }

    /// S-vector of a pair, fully reduced by the current elements. The returned
    /// coefficients satisfy `remainder = sum coeffs[k] * elements[k]`.
    fn reduce_pair(&self, alg: &AlgebraSpec, red: &Reducer<'_>, p: &Pair) -> PairResult {
        let order = alg.order();
        let side = |k: usize| {
            let u = self.leads[k].mono.quotient_of(&p.lcm).expect("lcm is a multiple");
            let prod = alg.term_mul_vec(&Rational::one(), &u, &self.elements[k]);
            let lc = prod.get(p.pos).and_then(|e| e.leading()).expect("PBW leading word").coeff.clone();
            (u, prod, lc.recip())
        };
        let (ua, pa, ca) = side(p.a);
        let (ub, pb, cb) = side(p.b);
        let s = pa.scale(&ca).sub(&pb.scale(&cb), order);
        let mut q = Quotients::new();
        let remainder = red.reduce(s, &mut q, None);
        // coeffs = S multipliers - quotients
        let mut coeffs = Quotients::new();
        for (k, acc) in q {
            let mut neg = Accumulator::new();
            for t in acc.finish(order).into_terms() {
                neg.add(t.mono, -t.coeff);
            }
            coeffs.insert(k, neg);
        }
        add_quotient(&mut coeffs, p.a, ua, ca);
        add_quotient(&mut coeffs, p.b, ub, -cb);
        PairResult { coeffs, remainder }
    }
}

/// Interreduces a Gröbner basis. Returns indices into `elements` of the kept
/// elements together with their reduced, monic forms and the relation
/// `reduced = sum coeffs[k] * elements[k]`.
fn interreduce(
    alg: &AlgebraSpec,
    mo: &ModuleOrder,
    elements: &[ModuleVector],
) -> Vec<(ModuleVector, BTreeMap<usize, Polynomial>)> {
    let leads: Vec<Lead> = elements.iter().map(|g| lead_of(g, mo)).collect();
    let mut kept: Vec<usize> = Vec::new();
    for k in 0..elements.len() {
        let redundant = (0..elements.len()).any(|j| {
            j != k
                && leads[j].pos == leads[k].pos
                && leads[j].mono.divides(&leads[k].mono)
                && (leads[j].mono != leads[k].mono || j < k)
        });
        if !redundant {
            kept.push(k);
        }
    }
    let minimal: Vec<ModuleVector> = kept.iter().map(|&k| elements[k].clone()).collect();
    let red = Reducer::new(alg, mo, &minimal);
    let items: Vec<usize> = (0..minimal.len()).collect();
    let mut out: Vec<(ModuleVector, BTreeMap<usize, Polynomial>)> = par::map(&items, |&i| {
        let mut q = Quotients::new();
        let mut r = red.reduce(minimal[i].clone(), &mut q, Some(i));
        let lc = r.make_monic(mo);
        let inv = lc.recip();
        // r_before = g_i - sum q_j g_j
        let mut coeffs: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (j, p) in finish_quotients(q, alg) {
            coeffs.insert(kept[j], p.neg().scale(&inv));
        }
        coeffs.insert(kept[i], alg.constant(inv));
        (r, coeffs)
    });
    out.sort_by(|(a, _), (b, _)| {
        let la = lead_of(a, mo);
        let lb = lead_of(b, mo);
        mo.cmp((lb.pos, &lb.mono), (la.pos, &la.mono))
    });
    out
}

/// A reduced left Gröbner basis, with provenance when computed by
/// [`left_groebner_basis`].
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub algebra: AlgebraSpec,
    pub module_order: ModuleOrder,
    rank: usize,
    elements: Vec<ModuleVector>,
    provenance: Option<Vec<ModuleVector>>,
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    /// `elements[k] = sum provenance[k][i] * generators[i]`.
    pub fn provenance(&self) -> Option<&[ModuleVector]> {
        self.provenance.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, v: &ModuleVector) -> Result<DivisionRecord> {
        normal_form(&self.algebra, &self.module_order, v, &self.elements)
    }

    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        let red = Reducer::new(&self.algebra, &self.module_order, &self.elements);
        red.reduce(v.clone(), &mut Quotients::new(), None)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        v.rank() == self.rank && self.reduce(v).is_zero()
    }

    /// Leading `(position, monomial)` of each element.
    pub fn leading_words(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|g| {
            let l = lead_of(g, &self.module_order);
            (l.pos, l.mono)
        }).collect()
    }

    /// Checks Buchberger's criterion: every same-position S-vector reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let alg = &self.algebra;
        let mo = &self.module_order;
        let leads: Vec<Lead> = self.elements.iter().map(|g| lead_of(g, mo)).collect();
        let pairs: Vec<(usize, usize)> = (0..leads.len())
            .flat_map(|b| (0..b).map(move |a| (a, b)))
            .filter(|&(a, b)| leads[a].pos == leads[b].pos)
            .collect();
        let red = Reducer::new(alg, mo, &self.elements);
        par::all(&pairs, |&(a, b)| {
            let lcm = leads[a].mono.lcm(&leads[b].mono);
            let pos = leads[a].pos;
            let side = |k: usize| {
                let u = leads[k].mono.quotient_of(&lcm).expect("lcm");
                let prod = alg.term_mul_vec(&Rational::one(), &u, &self.elements[k]);
                let lc = prod.get(pos).and_then(|e| e.leading()).expect("lead").coeff.clone();
                prod.scale(&lc.recip())
            };
            let s = side(a).sub(&side(b), alg.order());
            red.reduce(s, &mut Quotients::new(), None).is_zero()
        })
    }

    /// Whether `self` is interreduced with monic elements.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_words();
        self.elements.iter().enumerate().all(|(k, g)| {
            let monic = g.leading(&self.module_order).is_some_and(|(_, t)| t.coeff.is_one());
            let clean = g.entries().all(|(pos, p)| {
                p.terms().iter().all(|t| {
                    !leads.iter().enumerate().any(|(j, (lp, lm))| {
                        *lp == pos && lm.divides(&t.mono) && !(j == k && *lm == t.mono)
                    })
                })
            });
            monic && clean
        })
    }
}

fn check_ranks(rank: usize, gens: &[ModuleVector]) -> Result<()> {
    gens.iter().try_for_each(|g| g.check_rank(rank))
}

/// Reduced left Gröbner basis of the submodule of `R^rank` generated by `gens`,
/// with each element expressed as a left combination of the generators.
pub fn left_groebner_basis(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, gens: &[ModuleVector]) -> Result<GroebnerBasis> {
    check_ranks(rank, gens)?;
    let c = Completion::run(alg, mo, gens, true, true);
    let reps = c.reps.as_ref().expect("tracked");
    let reduced = interreduce(alg, mo, &c.elements);
    let mut elements = Vec::with_capacity(reduced.len());
    let mut provenance = Vec::with_capacity(reduced.len());
    for (g, coeffs) in reduced {
        let mut rep = ModuleVector::zero(gens.len());
        for (k, f) in &coeffs {
            rep.add_scaled_in_place(&alg.mul_vec(f, &reps[*k]), &Rational::one(), alg.order());
        }
        elements.push(g);
        provenance.push(rep);
    }
    Ok(GroebnerBasis { algebra: alg.clone(), module_order: mo.clone(), rank, elements, provenance: Some(provenance) })
}

/// Same basis as [`left_groebner_basis`] without provenance bookkeeping.
pub fn groebner_basis(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, gens: &[ModuleVector]) -> Result<GroebnerBasis> {
    check_ranks(rank, gens)?;
    let c = Completion::run(alg, mo, gens, false, true);
    let elements = interreduce(alg, mo, &c.elements).into_iter().map(|(g, _)| g).collect();
    Ok(GroebnerBasis { algebra: alg.clone(), module_order: mo.clone(), rank, elements, provenance: None })
}

/// Generators of the left syzygy module of `gens`.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    /// Vectors `p` in `R^{gens.len()}` with `sum p_i * gens_i = 0`; a reduced
    /// Gröbner basis of the syzygy module.
    pub generators: Vec<ModuleVector>,
    /// Syzygies of the internal Gröbner basis translated back to the generators,
    /// together with the relations expressing each generator through that basis.
    pub schreyer: Vec<ModuleVector>,
}

/// Left syzygies via Schreyer's construction: relations among a Gröbner basis
/// come from S-vector reductions; they are translated back to the generators
/// and completed by the rows of `I - S T` (`S` divides the generators by the
/// basis, `T` is the basis's provenance).
pub fn left_syzygies(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, gens: &[ModuleVector]) -> Result<SyzygyBasis> {
    syzygies_with(alg, mo, rank, gens, true)
}

/// [`left_syzygies`] with every S-pair processed; kept as a reference for tests.
#[doc(hidden)]
pub fn left_syzygies_all_pairs(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, gens: &[ModuleVector]) -> Result<SyzygyBasis> {
    syzygies_with(alg, mo, rank, gens, false)
}

fn syzygies_with(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, gens: &[ModuleVector], chain: bool) -> Result<SyzygyBasis> {
    check_ranks(rank, gens)?;
    let t = gens.len();
    let order = alg.order();
    let c = Completion::run(alg, mo, gens, true, chain);
    let reps = c.reps.as_ref().expect("tracked");
    let translate = |coeffs: &BTreeMap<usize, Polynomial>| {
        let mut out = ModuleVector::zero(t);
        for (k, f) in coeffs {
            out.add_scaled_in_place(&alg.mul_vec(f, &reps[*k]), &Rational::one(), order);
        }
        out
    };
    let mut schreyer: Vec<ModuleVector> = par::map(&c.pair_syzygies, translate);
    let red = Reducer::new(alg, mo, &c.elements);
    let idx: Vec<usize> = (0..t).collect();
    let lifts = par::map(&idx, |&i| {
        let mut q = Quotients::new();
        let rem = red.reduce(gens[i].clone(), &mut q, None);
        debug_assert!(rem.is_zero(), "generator must reduce to zero by its own basis");
        let combo = translate(&finish_quotients(q, alg));
        ModuleVector::unit(t, i, alg.nvars()).sub(&combo, order)
    });
    schreyer.extend(lifts);
    schreyer.retain(|v| !v.is_zero());
    let generators = groebner_basis(alg, mo, t, &schreyer)?.elements;
    Ok(SyzygyBasis { generators, schreyer })
}

pub fn is_member(v: &ModuleVector, gb: &GroebnerBasis) -> bool {
    gb.contains(v)
}

/// Whether `a` and `b` generate the same left submodule of `R^rank`.
pub fn submodule_equal(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, a: &[ModuleVector], b: &[ModuleVector]) -> Result<bool> {
    let ga = groebner_basis(alg, mo, rank, a)?;
    let gb = groebner_basis(alg, mo, rank, b)?;
    // reduced bases of equal modules coincide
    Ok(ga.elements == gb.elements)
}

/// Whether every element of `a` lies in the module generated by `b`.
pub fn submodule_contained(alg: &AlgebraSpec, mo: &ModuleOrder, rank: usize, a: &[ModuleVector], b: &[ModuleVector]) -> Result<bool> {
    check_ranks(rank, a)?;
    let gb = groebner_basis(alg, mo, rank, b)?;
    Ok(par::all(a, |v| gb.contains(v)))
}

/// `sum coeffs_i * vectors_i`, used to verify division and syzygy identities.
pub fn left_combination(alg: &AlgebraSpec, coeffs: &[Polynomial], vectors: &[ModuleVector], rank: usize) -> ModuleVector {
    let mut out = ModuleVector::zero(rank);
    for (c, v) in coeffs.iter().zip(vectors) {
        if !c.is_zero() {
            out.add_scaled_in_place(&alg.mul_vec(c, v), &Rational::one(), alg.order());
        }
    }
    out
}
