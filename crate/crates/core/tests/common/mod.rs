//! Randomized property suites shared by the `properties` and `acceptance`
//! targets. Each suite runs a proptest `TestRunner` for a given case count.

#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pbwtor::groebner::{
    groebner_basis, left_combination, left_groebner_basis, left_syzygies, left_syzygies_all_pairs, normal_form, submodule_equal,
};
use pbwtor::parse::{parse_polynomial, parse_vector};
use pbwtor::poly::Accumulator;
use pbwtor::resolution::{free_resolution, is_complex, LeftPresentation};
use pbwtor::tor::{build_ak, verify_complex};
use pbwtor::{catalog, enveloping, render, AlgebraSpec, ModuleOrder, ModuleVector, Monomial, Polynomial, Rational};

/// Coefficient numerator, denominator and exponents (truncated to the algebra).
pub type RawTerm = (i64, i64, Vec<u32>);
pub type RawPoly = Vec<RawTerm>;

const MAX_VARS: usize = 6;

pub struct Corpus {
    pub name: &'static str,
    pub alg: AlgebraSpec,
}

/// Every validated algebra used by the suites.
pub fn corpus() -> &'static [Corpus] {
    static C: OnceLock<Vec<Corpus>> = OnceLock::new();
    C.get_or_init(|| {
        vec![
            Corpus { name: "k[x,y,z]", alg: catalog::commutative(&["x", "y", "z"]) },
            Corpus { name: "U(sl2)", alg: catalog::sl2() },
            Corpus { name: "A1", alg: catalog::weyl1() },
            Corpus { name: "quantum plane", alg: catalog::quantum_plane(3) },
            Corpus { name: "U(sl2)^env", alg: enveloping(&catalog::sl2()).unwrap().env },
            Corpus { name: "A1^env", alg: enveloping(&catalog::weyl1()).unwrap().env },
        ]
    })
}

/// The algebras small enough for Gröbner and resolution suites.
const SMALL: [usize; 4] = [0, 1, 2, 3];

pub fn build(alg: &AlgebraSpec, raw: &RawPoly) -> Polynomial {
    let n = alg.nvars();
    let mut acc = Accumulator::new();
    for (num, den, e) in raw {
        let mono = Monomial::from_exponents(&e[..n]);
        acc.add(mono, Rational::new((*num).into(), (*den).into()));
    }
    acc.finish(alg.order())
}

pub fn build_vec(alg: &AlgebraSpec, raw: &[RawPoly]) -> ModuleVector {
    ModuleVector::from_dense(raw.iter().map(|r| build(alg, r)).collect())
}

fn raw_term(max_exp: u32) -> impl Strategy<Value = RawTerm> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=3, vec(0..=max_exp, MAX_VARS))
}

pub fn raw_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = RawPoly> {
    vec(raw_term(max_exp), 0..=max_terms)
}

fn raw_nonzero(max_terms: usize, max_exp: u32) -> impl Strategy<Value = RawPoly> {
    vec(raw_term(max_exp), 1..=max_terms)
}

/// `count` vectors of rank `rank` with entries of degree at most 3.
fn raw_vectors(rank: usize, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<RawPoly>>> {
    vec(vec(raw_poly(2, 1), rank), count)
}

/// Algebra index, rank and generators for the completion suites. Three
/// generators are allowed in rank 1 but only two in rank 2: beyond that,
/// syzygy modules over U(sl2) already carry coefficients of hundreds of digits.
fn generator_sets() -> impl Strategy<Value = (usize, usize, Vec<Vec<RawPoly>>)> {
    (prop::sample::select(SMALL.to_vec()), 1usize..=2)
        .prop_flat_map(|(k, rank)| (Just(k), Just(rank), raw_vectors(rank, 1..=4 - rank)))
}

fn top(alg: &AlgebraSpec) -> ModuleOrder {
    ModuleOrder::top(alg.order().clone())
}

fn nonzero(alg: &AlgebraSpec, raw: &[Vec<RawPoly>]) -> Vec<ModuleVector> {
    raw.iter().map(|r| build_vec(alg, r)).filter(|v| !v.is_zero()).collect()
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, max_shrink_time: 10_000, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn associativity(cases: u32) -> Result<(), String> {
    let s = (0..corpus().len(), raw_poly(3, 2), raw_poly(3, 2), raw_poly(3, 2));
    run(cases, s, |(k, f, g, h)| {
        let a = &corpus()[k].alg;
        let (f, g, h) = (build(a, &f), build(a, &g), build(a, &h));
        prop_assert_eq!(a.mul(&a.mul(&f, &g), &h), a.mul(&f, &a.mul(&g, &h)), "in {}", corpus()[k].name);
        Ok(())
    })
}

pub fn leading_monomial_additivity(cases: u32) -> Result<(), String> {
    let s = (0..corpus().len(), raw_nonzero(3, 3), raw_nonzero(3, 3));
    run(cases, s, |(k, f, g)| {
        let a = &corpus()[k].alg;
        let (f, g) = (build(a, &f), build(a, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = a.mul(&f, &g);
        let (lf, lg) = (f.leading().unwrap(), g.leading().unwrap());
        let l = fg.leading().expect("PBW algebras are domains");
        prop_assert_eq!(&l.mono, &lf.mono.add(&lg.mono));
        prop_assert!(fg.is_normalized(a.order()));
        Ok(())
    })
}

pub fn division_identity(cases: u32) -> Result<(), String> {
    let s = (prop::sample::select(SMALL.to_vec()), 1usize..=2).prop_flat_map(|(k, rank)| {
        (Just(k), Just(rank), raw_vectors(rank, 1..=3), vec(raw_poly(4, 3), rank))
    });
    run(cases, s, |(k, rank, divs, target)| {
        let a = &corpus()[k].alg;
        let mo = top(a);
        let divs = nonzero(a, &divs);
        prop_assume!(!divs.is_empty());
        let v = build_vec(a, &target);
        let rec = normal_form(a, &mo, &v, &divs).unwrap();
        let combo = left_combination(a, &rec.quotients, &divs, rank);
        prop_assert_eq!(combo.add(&rec.remainder, a.order()), v);
        let leads: Vec<_> = divs.iter().map(|d| d.leading_checked(&mo).unwrap()).collect();
        for (pos, p) in rec.remainder.entries() {
            for t in p.terms() {
                prop_assert!(!leads.iter().any(|(lp, lt)| *lp == pos && lt.mono.divides(&t.mono)));
            }
        }
        Ok(())
    })
}

pub fn groebner_criterion(cases: u32) -> Result<(), String> {
    let s = generator_sets();
    run(cases, s, |(k, rank, gens)| {
        let a = &corpus()[k].alg;
        let mo = top(a);
        let gens: Vec<ModuleVector> = gens.iter().map(|r| build_vec(a, r)).collect();
        let gb = left_groebner_basis(a, &mo, rank, &gens).unwrap();
        prop_assert!(gb.satisfies_criterion());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        for (e, p) in gb.elements().iter().zip(gb.provenance().unwrap()) {
            prop_assert_eq!(&left_combination(a, &p.to_dense(), &gens, rank), e);
        }
        Ok(())
    })
}

pub fn syzygy_soundness(cases: u32) -> Result<(), String> {
    let s = generator_sets();
    run(cases, s, |(k, rank, gens)| {
        let a = &corpus()[k].alg;
        let mo = top(a);
        let gens: Vec<ModuleVector> = gens.iter().map(|r| build_vec(a, r)).collect();
        let syz = left_syzygies(a, &mo, rank, &gens).unwrap();
        for p in syz.generators.iter().chain(&syz.schreyer) {
            prop_assert_eq!(p.rank(), gens.len());
            prop_assert!(left_combination(a, &p.to_dense(), &gens, rank).is_zero());
        }
        let out = groebner_basis(a, &mo, gens.len(), &syz.generators).unwrap();
        for p in &syz.schreyer {
            prop_assert!(out.contains(p));
        }
        // pruning S-pairs must not lose syzygies
        let all = left_syzygies_all_pairs(a, &mo, rank, &gens).unwrap();
        prop_assert!(submodule_equal(a, &mo, gens.len(), &syz.generators, &all.generators).unwrap());
        Ok(())
    })
}

pub fn complex_identities(cases: u32) -> Result<(), String> {
    let s = (generator_sets(), 1usize..=2, any::<bool>());
    run(cases, s, |((k, rank, gens), m, cokernel)| {
        let a = &corpus()[k].alg;
        let mo = top(a);
        let gens: Vec<ModuleVector> = gens.iter().map(|r| build_vec(a, r)).collect();
        let p = if cokernel { LeftPresentation::cokernel(rank, gens) } else { LeftPresentation::generators(rank, gens) };
        let res = free_resolution(a, &mo, &p.unwrap(), 3).unwrap();
        prop_assert!(is_complex(a, &res).unwrap());
        let aks: Vec<_> = res.differentials().iter().map(|d| build_ak(d, m)).collect();
        for w in aks.windows(2) {
            prop_assert!(verify_complex(a, &w[1], &w[0]));
        }
        Ok(())
    })
}

pub fn order_compatibility(cases: u32) -> Result<(), String> {
    let mono = || vec(0u32..=4, MAX_VARS);
    let s = (0..corpus().len(), mono(), mono(), mono());
    run(cases, s, |(k, x, y, z)| {
        let o = corpus()[k].alg.order();
        let n = o.nvars();
        let (x, y, z) = (Monomial::from_exponents(&x[..n]), Monomial::from_exponents(&y[..n]), Monomial::from_exponents(&z[..n]));
        prop_assert_eq!(o.cmp(&x, &y), o.cmp(&y, &x).reverse());
        prop_assert_eq!(o.cmp(&x, &y) == std::cmp::Ordering::Equal, x == y);
        prop_assert_eq!(o.cmp(&x, &y), o.cmp(&x.add(&z), &y.add(&z)));
        prop_assert!(o.cmp(&Monomial::one(n), &x) != std::cmp::Ordering::Greater);
        Ok(())
    })
}

pub fn rational_exactness(cases: u32) -> Result<(), String> {
    let s = (0..corpus().len(), raw_poly(4, 3), raw_poly(4, 3), prop_oneof![-50i64..=-1, 1i64..=50], 1i64..=50);
    run(cases, s, |(k, f, g, num, den)| {
        let a = &corpus()[k].alg;
        let (f, g) = (build(a, &f), build(a, &g));
        let c = Rational::new(num.into(), den.into());
        prop_assert_eq!(f.scale(&c).scale(&c.recip()), f.clone());
        prop_assert_eq!(f.add(&g, a.order()).sub(&g, a.order()), f.clone());
        prop_assert!(f.sub(&f, a.order()).is_zero());
        let lhs = a.mul(&f.scale(&c), &g);
        prop_assert_eq!(lhs, a.mul(&f, &g).scale(&c));
        Ok(())
    })
}

pub fn render_round_trip(cases: u32) -> Result<(), String> {
    let s = (0..corpus().len(), vec(raw_poly(4, 3), 1..=3));
    run(cases, s, |(k, raws)| {
        let a = &corpus()[k].alg;
        let polys: Vec<Polynomial> = raws.iter().map(|r| build(a, r)).collect();
        for f in &polys {
            prop_assert_eq!(&parse_polynomial(&a.render(f), a).unwrap(), f);
        }
        let v = ModuleVector::from_dense(polys);
        let text = render::vector(&v, a.names());
        prop_assert_eq!(parse_vector(&text, a, Some(v.rank())).unwrap(), v);
        Ok(())
    })
}

pub fn opposite_anti_homomorphism(cases: u32) -> Result<(), String> {
    let s = (0..corpus().len(), raw_poly(3, 2), raw_poly(3, 2));
    run(cases, s, |(k, f, g)| {
        let a = &corpus()[k].alg;
        let op = a.opposite().unwrap();
        let (f, g) = (build(a, &f), build(a, &g));
        let lhs = a.transport_to_opposite(&a.mul(&f, &g), &op);
        let rhs = op.mul(&a.transport_to_opposite(&g, &op), &a.transport_to_opposite(&f, &op));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn projection_inverts_lift(cases: u32) -> Result<(), String> {
    let s = (prop::sample::select(SMALL.to_vec()), vec(raw_poly(3, 3), 1..=3));
    run(cases, s, |(k, raws)| {
        let a = &corpus()[k].alg;
        let env = enveloping(a).unwrap();
        let v = ModuleVector::from_dense(raws.iter().map(|r| build(a, r)).collect());
        prop_assert_eq!(env.env_project(&env.env_lift(&v)), v);
        Ok(())
    })
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: [Suite; 11] = [
    ("multiplication associativity", associativity),
    ("leading monomial additivity", leading_monomial_additivity),
    ("division identity", division_identity),
    ("S-vectors of returned bases reduce to zero", groebner_criterion),
    ("syzygy soundness and completeness", syzygy_soundness),
    ("complex identities", complex_identities),
    ("monomial order compatibility", order_compatibility),
    ("rational exactness", rational_exactness),
    ("render/parse round trip", render_round_trip),
    ("opposite reverses products", opposite_anti_homomorphism),
    ("projection inverts lift", projection_inverts_lift),
];
