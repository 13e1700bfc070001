//! Canonical text rendering: terms in descending order, reduced fractions with
//! `/`, factors joined by `*`, exponents with `^`.

use std::fmt::Write;

use num_traits::{One, Signed};

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rational};
use crate::vector::{ModuleVector, PolyMatrix};

pub fn rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn monomial(m: &Monomial, names: &[String]) -> String {
    let mut out = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&names[i]);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

pub fn polynomial(f: &Polynomial, names: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in f.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = t.coeff.abs();
        if t.mono.is_one() {
            out.push_str(&rational(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial(&t.mono, names));
        } else {
            let _ = write!(out, "{}*{}", rational(&abs), monomial(&t.mono, names));
        }
    }
    out
}

pub fn vector(v: &ModuleVector, names: &[String]) -> String {
    let parts: Vec<String> = (0..v.rank()).map(|i| v.get(i).map_or_else(|| "0".into(), |p| polynomial(p, names))).collect();
    format!("({})", parts.join(", "))
}

/// One row per line.
pub fn matrix(m: &PolyMatrix, names: &[String]) -> String {
    let mut out = String::new();
    for r in m.rows() {
        out.push_str(&vector(r, names));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderSpec;
    use crate::poly::{int, rat, Term};

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn casimir_rendering() {
        let o = OrderSpec::weighted(vec![1, 2, 2]).unwrap();
        let t = |c, e: &[u32]| Term { coeff: c, mono: Monomial::from_exponents(e) };
        let c = Polynomial::from_terms([t(rat(1, 2), &[0, 0, 2]), t(int(2), &[1, 1, 0]), t(int(-1), &[0, 0, 1])], &o);
        assert_eq!(polynomial(&c, &names()), "1/2*z^2 + 2*x*y - z");
        let neg = Polynomial::from_terms([t(rat(-3, 4), &[0, 0, 0]), t(int(-1), &[2, 0, 0])], &o);
        assert_eq!(polynomial(&neg, &names()), "-x^2 - 3/4");
        assert_eq!(polynomial(&Polynomial::zero(), &names()), "0");
    }

    #[test]
    fn vector_rendering() {
        let v = ModuleVector::from_dense(vec![Polynomial::one(3), Polynomial::zero(), Polynomial::var(3, 1)]);
        assert_eq!(vector(&v, &names()), "(1, 0, y)");
    }
}
