//! Values checked against oracles that do not go through the engine's own
//! rewriting: closed formulas, hand expansions and the unpruned completion.

use pbwtor::groebner::{
    groebner_basis, is_member, left_combination, left_syzygies, left_syzygies_all_pairs, submodule_equal,
};
use pbwtor::parse::{parse_polynomial, parse_vector};
use pbwtor::poly::Accumulator;
use pbwtor::problem::parse_problem;
use pbwtor::resolution::{free_resolution, LeftPresentation};
use pbwtor::tor::{build_ak, dimension_if_finite, kernel_mod_l, verify_complex, Dimension, QuotientPresentation};
use pbwtor::{catalog, enveloping, AlgebraSpec, ModuleOrder, ModuleVector, Monomial, Polynomial, Rational};

fn top(alg: &AlgebraSpec) -> ModuleOrder {
    ModuleOrder::top(alg.order().clone())
}

fn poly(alg: &AlgebraSpec, s: &str) -> Polynomial {
    parse_polynomial(s, alg).unwrap()
}

fn vecs(alg: &AlgebraSpec, rank: usize, texts: &[&str]) -> Vec<ModuleVector> {
    texts.iter().map(|t| parse_vector(t, alg, Some(rank)).unwrap()).collect()
}

#[test]
fn weyl_leibniz_rule() {
    // d x^n = x^n d + n x^(n-1)
    let a = catalog::weyl1();
    let d = a.var(1);
    for n in 1..=8u32 {
        let xn = Polynomial::term(Rational::from_integer(1.into()), Monomial::from_exponents(&[n, 0]));
        let mut expected = Accumulator::new();
        expected.add(Monomial::from_exponents(&[n, 1]), Rational::from_integer(1.into()));
        expected.add(Monomial::from_exponents(&[n - 1, 0]), Rational::from_integer(n.into()));
        assert_eq!(a.mul(&d, &xn), expected.finish(a.order()), "n = {n}");
    }
}

#[test]
fn sl2_hand_expansion() {
    let a = catalog::sl2();
    let zxy = a.mul(&a.mul(&a.var(2), &a.var(0)), &a.var(1));
    assert_eq!(a.render(&zxy), "x*y*z");
}

#[test]
fn commutative_products_add_exponents() {
    let a = catalog::commutative(&["x", "y", "z"]);
    let f = poly(&a, "3*x^2*z - 1/2*y + 5");
    let g = poly(&a, "y*z^3 - 2*x");
    let mut naive = Accumulator::new();
    for s in f.terms() {
        for t in g.terms() {
            naive.add(s.mono.add(&t.mono), &s.coeff * &t.coeff);
        }
    }
    assert_eq!(a.mul(&f, &g), naive.finish(a.order()));
}

#[test]
fn weyl_opposite_relation_flips_sign() {
    let env = enveloping(&catalog::weyl1()).unwrap();
    assert_eq!(env.opposite.render_relation(1, 0), "d*x = x*d - 1");
}

#[test]
fn koszul_syzygy_by_substitution_and_membership() {
    let a = catalog::commutative(&["x", "y"]);
    let mo = top(&a);
    let gens = vecs(&a, 1, &["(x)", "(y)"]);
    let syz = left_syzygies(&a, &mo, 1, &gens).unwrap();
    let koszul = vecs(&a, 2, &["(y, -x)"]);
    for p in &syz.generators {
        assert!(left_combination(&a, &p.to_dense(), &gens, 1).is_zero());
    }
    let theirs = groebner_basis(&a, &mo, 2, &koszul).unwrap();
    let ours = groebner_basis(&a, &mo, 2, &syz.generators).unwrap();
    assert!(syz.generators.iter().all(|p| is_member(p, &theirs)));
    assert!(koszul.iter().all(|p| is_member(p, &ours)));
}

#[test]
fn hand_run_buchberger() {
    let a = catalog::commutative(&["x", "y"]);
    let mo = top(&a);
    let gens = vecs(&a, 1, &["(x^2)", "(x*y)"]);
    let gb = groebner_basis(&a, &mo, 1, &gens).unwrap();
    assert_eq!(gb.elements(), gens.as_slice());
    assert!(!gb.contains(&vecs(&a, 1, &["(x)"])[0]));

    let w = catalog::weyl1();
    let gb = groebner_basis(&w, &top(&w), 1, &vecs(&w, 1, &["(x)", "(d)"])).unwrap();
    assert_eq!(gb.elements(), vecs(&w, 1, &["(1)"]).as_slice());
}

#[test]
fn koszul_complex_oracle() {
    let a = catalog::commutative(&["x", "y"]);
    let mo = top(&a);
    let res = free_resolution(&a, &mo, &LeftPresentation::cokernel(1, vecs(&a, 1, &["(x)", "(y)"])).unwrap(), 3).unwrap();
    assert_eq!(res.ranks(), &[1, 2, 1, 0]);
    let d2 = res.differential(2).unwrap();
    assert!(submodule_equal(&a, &mo, 2, d2.rows(), &vecs(&a, 2, &["(y, -x)"])).unwrap());
    let (a1, a2) = (build_ak(&res.differential(1).unwrap(), 1), build_ak(&d2, 1));
    assert!(verify_complex(&a, &a2, &a1));

    // every a x + b y lies in <x, y>, so the kernel is everything
    let l = vecs(&a, 1, &["(x)", "(y)"]);
    let kernel = kernel_mod_l(&a, &mo, &a1, &l, 1).unwrap();
    let units = vecs(&a, 2, &["(1, 0)", "(0, 1)"]);
    assert!(submodule_equal(&a, &mo, 2, &kernel.generators, &units).unwrap());
}

#[test]
fn staircase_count() {
    let a = catalog::commutative(&["x", "y"]);
    let q = QuotientPresentation {
        ambient: 1,
        numerator: vecs(&a, 1, &["(1)"]),
        denominator: vecs(&a, 1, &["(x^2)", "(y)"]),
        is_zero: false,
        dimension: Dimension::NotComputed,
    };
    assert_eq!(dimension_if_finite(&a, &top(&a), &q).unwrap(), Dimension::Finite(2));
}

#[test]
fn pruned_pairs_keep_every_syzygy() {
    let p = parse_problem(include_str!("../../../problems/sl2.pbw")).unwrap();
    let (a, mo) = (&p.algebra, &p.module_order);
    let n = p.module("N").unwrap();
    let pruned = left_syzygies(a, mo, 2, &n.vectors).unwrap();
    let all = left_syzygies_all_pairs(a, mo, 2, &n.vectors).unwrap();
    assert!(submodule_equal(a, mo, 3, &pruned.generators, &all.generators).unwrap());

    let k3 = catalog::commutative(&["x", "y", "z"]);
    let gens = vecs(&k3, 2, &["(x*y, z)", "(y^2, x - z)", "(x*z, y)", "(z^2, x)"]);
    let pruned = left_syzygies(&k3, &top(&k3), 2, &gens).unwrap();
    let all = left_syzygies_all_pairs(&k3, &top(&k3), 2, &gens).unwrap();
    assert!(submodule_equal(&k3, &top(&k3), 4, &pruned.generators, &all.generators).unwrap());
}
