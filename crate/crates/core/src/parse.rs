//! Expression front-end. Products are ordered; evaluation normalizes through
//! the algebra's multiplication, so `y*x` comes back rewritten.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraSpec, RelationSpec};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderSpec};
use crate::poly::{Polynomial, Rational, Term};
use crate::vector::ModuleVector;

/// Named polynomials usable inside expressions.
pub type Definitions = HashMap<String, Polynomial>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Equals,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (line0, col0);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: tl, col: tc });
            k += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            col += k - start;
            out.push(Spanned { tok: Tok::Num(s.parse().expect("digits")), line: tl, col: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            col += k - start;
            out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            continue;
        }
        return Err(Error::parse(tl, tc, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Var { name: String, line: usize, col: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { num: Box<Expr>, den: Box<Expr>, line: usize, col: usize },
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str, line: usize, col: usize) -> Result<Self> {
        let toks = lex(text, line, col)?;
        let end = toks.last().map_or((line, col), |t| (t.line, t.col + 1));
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Slash) {
                let (line, col) = self.here();
                self.pos += 1;
                lhs = Expr::Div { num: Box::new(lhs), den: Box::new(self.unary()?), line, col };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                match u32::try_from(&n) {
                    Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                    Err(_) => self.err("exponent too large"),
                }
            }
            Some(Tok::Minus) => self.err("negative exponent"),
            _ => self.err("exponent must be a non-negative integer literal"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var { name, line, col })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
    }
}

fn eval(e: &Expr, alg: &AlgebraSpec, defs: &Definitions) -> Result<Polynomial> {
    Ok(match e {
        Expr::Num(c) => alg.constant(c.clone()),
        Expr::Var { name, line, col } => match alg.var_index(name) {
            Some(i) => alg.var(i),
            None => match defs.get(name) {
                Some(p) => p.clone(),
                None => return Err(Error::parse(*line, *col, format!("unknown variable `{name}`"))),
            },
        },
        Expr::Add(a, b) => alg.add(&eval(a, alg, defs)?, &eval(b, alg, defs)?),
        Expr::Sub(a, b) => alg.sub(&eval(a, alg, defs)?, &eval(b, alg, defs)?),
        Expr::Mul(a, b) => alg.mul(&eval(a, alg, defs)?, &eval(b, alg, defs)?),
        Expr::Neg(a) => eval(a, alg, defs)?.neg(),
        Expr::Pow(a, k) => alg.pow(&eval(a, alg, defs)?, *k),
        Expr::Div { num, den, line, col } => {
            let d = eval(den, alg, defs)?;
            match d.as_constant() {
                Some(c) if !c.is_zero() => eval(num, alg, defs)?.scale(&c.recip()),
                Some(_) => return Err(Error::parse(*line, *col, "division by zero")),
                None => return Err(Error::parse(*line, *col, "division is only allowed by nonzero scalars")),
            }
        }
    })
}

pub fn parse_polynomial(text: &str, alg: &AlgebraSpec) -> Result<Polynomial> {
    parse_polynomial_at(text, alg, &Definitions::new(), 1, 1)
}

/// Parses an expression whose first character sits at `line:col` of a file.
pub fn parse_polynomial_at(text: &str, alg: &AlgebraSpec, defs: &Definitions, line: usize, col: usize) -> Result<Polynomial> {
    let mut p = Parser::new(text, line, col)?;
    if p.at_end() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if !p.at_end() {
        return p.err("trailing input after expression");
    }
    eval(&e, alg, defs)
}

pub fn parse_vector(text: &str, alg: &AlgebraSpec, rank: Option<usize>) -> Result<ModuleVector> {
    parse_vector_at(text, alg, &Definitions::new(), rank, 1, 1)
}

/// Parses `( expr , expr , ... )`; a bare expression is a vector of rank 1.
pub fn parse_vector_at(
    text: &str,
    alg: &AlgebraSpec,
    defs: &Definitions,
    rank: Option<usize>,
    line: usize,
    col: usize,
) -> Result<ModuleVector> {
    let mut p = Parser::new(text, line, col)?;
    let start = p.here();
    let mut exprs = Vec::new();
    if p.eat(&Tok::LParen) {
        loop {
            exprs.push(p.expr()?);
            if p.eat(&Tok::Comma) {
                continue;
            }
            p.expect(&Tok::RParen, "`,` or `)`")?;
            break;
        }
    } else {
        if p.at_end() {
            return p.err("empty tuple");
        }
        exprs.push(p.expr()?);
    }
    if !p.at_end() {
        return p.err("trailing input after tuple");
    }
    if let Some(r) = rank {
        if exprs.len() != r {
            return Err(Error::parse(start.0, start.1, format!("tuple has {} entries, expected {r}", exprs.len())));
        }
    }
    let entries = exprs.iter().map(|e| eval(e, alg, defs)).collect::<Result<Vec<_>>>()?;
    Ok(ModuleVector::from_dense(entries))
}

/// Polynomial in the free algebra: words of variable indices.
type FreePoly = HashMap<Vec<usize>, Rational>;

fn eval_free(e: &Expr, names: &[String]) -> Result<FreePoly> {
    let mut out = FreePoly::new();
    let add_into = |out: &mut FreePoly, p: FreePoly, sign: &Rational| {
        for (w, c) in p {
            let entry = out.entry(w).or_insert_with(Rational::zero);
            *entry += c * sign;
        }
    };
    match e {
        Expr::Num(c) => {
            out.insert(Vec::new(), c.clone());
        }
        Expr::Var { name, line, col } => match names.iter().position(|n| n == name) {
            Some(i) => {
                out.insert(vec![i], Rational::one());
            }
            None => return Err(Error::parse(*line, *col, format!("unknown variable `{name}`"))),
        },
        Expr::Add(a, b) => {
            add_into(&mut out, eval_free(a, names)?, &Rational::one());
            add_into(&mut out, eval_free(b, names)?, &Rational::one());
        }
        Expr::Sub(a, b) => {
            add_into(&mut out, eval_free(a, names)?, &Rational::one());
            add_into(&mut out, eval_free(b, names)?, &-Rational::one());
        }
        Expr::Neg(a) => add_into(&mut out, eval_free(a, names)?, &-Rational::one()),
        Expr::Mul(a, b) => {
            let (fa, fb) = (eval_free(a, names)?, eval_free(b, names)?);
            for (wa, ca) in &fa {
                for (wb, cb) in &fb {
                    let mut w = wa.clone();
                    w.extend_from_slice(wb);
                    *out.entry(w).or_insert_with(Rational::zero) += ca * cb;
                }
            }
        }
        Expr::Pow(a, k) => {
            let base = eval_free(a, names)?;
            out.insert(Vec::new(), Rational::one());
            for _ in 0..*k {
                let mut next = FreePoly::new();
                for (wa, ca) in &out {
                    for (wb, cb) in &base {
                        let mut w = wa.clone();
                        w.extend_from_slice(wb);
                        *next.entry(w).or_insert_with(Rational::zero) += ca * cb;
                    }
                }
                out = next;
            }
        }
        Expr::Div { num, den, line, col } => {
            let d = eval_free(den, names)?;
            let d: Vec<_> = d.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            match d.as_slice() {
                [(w, c)] if w.is_empty() => add_into(&mut out, eval_free(num, names)?, &c.recip()),
                [] => return Err(Error::parse(*line, *col, "division by zero")),
                _ => return Err(Error::parse(*line, *col, "division is only allowed by nonzero scalars")),
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Parses `x_j*x_i = c*x_i*x_j + tail`. The left side must be one inverted pair;
/// the right side must already be written with standard (non-decreasing) words,
/// since no multiplication exists before the relations do.
pub fn parse_relation_at(text: &str, names: &[String], order: &OrderSpec, line: usize, col: usize) -> Result<RelationSpec> {
    let mut p = Parser::new(text, line, col)?;
    let (l0, c0) = p.here();
    let lhs = p.expr()?;
    p.expect(&Tok::Equals, "`=` in relation")?;
    let (l1, c1) = p.here();
    let rhs = p.expr()?;
    if !p.at_end() {
        return p.err("trailing input after relation");
    }
    let lhs = eval_free(&lhs, names)?;
    let (j, i) = match lhs.iter().collect::<Vec<_>>().as_slice() {
        [(w, c)] if w.len() == 2 && w[0] > w[1] && c.is_one() => (w[0], w[1]),
        _ => {
            return Err(Error::parse(
                l0,
                c0,
                "left side of a relation must be a single inverted pair like `y*x` (later variable first)",
            ))
        }
    };
    let n = names.len();
    let mut coeff = Rational::zero();
    let mut tail = Vec::new();
    for (w, c) in eval_free(&rhs, names)? {
        if w.windows(2).any(|p| p[0] > p[1]) {
            let word: Vec<&str> = w.iter().map(|&k| names[k].as_str()).collect();
            return Err(Error::parse(
                l1,
                c1,
                format!("right side word `{}` is not in standard variable order", word.join("*")),
            ));
        }
        if w == [i, j] {
            coeff = c;
            continue;
        }
        let mut e = vec![0u32; n];
        for k in w {
            e[k] += 1;
        }
        tail.push(Term { coeff: c, mono: Monomial::from_exponents(&e) });
    }
    if coeff.is_zero() {
        return Err(Error::parse(
            l1,
            c1,
            format!("right side must contain a nonzero multiple of `{}*{}`", names[i], names[j]),
        ));
    }
    Ok(RelationSpec { j, i, coeff, tail: Polynomial::from_terms(tail, order) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn casimir_round_trips() {
        let a = catalog::sl2();
        let c = parse_polynomial("1/2*z^2 + 2*x*y - z", &a).unwrap();
        assert_eq!(c, catalog::casimir(&a));
        assert_eq!(a.render(&c), "1/2*z^2 + 2*x*y - z");
    }

    #[test]
    fn products_are_rewritten() {
        let a = catalog::sl2();
        assert_eq!(a.render(&parse_polynomial("y*x", &a).unwrap()), "x*y - z");
        assert!(parse_polynomial("0", &a).unwrap().is_zero());
        assert_eq!(a.render(&parse_polynomial("-(x - 1)^2", &a).unwrap()), "-x^2 + 2*x - 1");
    }

    #[test]
    fn errors_carry_positions() {
        let a = catalog::sl2();
        assert_eq!(parse_polynomial("x + w", &a), Err(Error::parse(1, 5, "unknown variable `w`")));
        assert_eq!(parse_polynomial("x^-1", &a), Err(Error::parse(1, 3, "negative exponent")));
        assert!(matches!(parse_polynomial("x +", &a), Err(Error::Parse { line: 1, col: 4, .. })));
        assert!(matches!(parse_polynomial("x / y", &a), Err(Error::Parse { col: 3, .. })));
        assert!(matches!(parse_polynomial("x $ y", &a), Err(Error::Parse { col: 3, .. })));
    }

    #[test]
    fn tuples() {
        let a = catalog::sl2();
        let v = parse_vector("(y^3, x)", &a, Some(2)).unwrap();
        assert_eq!(a.render_vector(&v), "(y^3, x)");
        assert!(parse_vector("(1, 2, 3)", &a, Some(2)).is_err());
        assert_eq!(parse_vector("x*z", &a, Some(1)).unwrap().rank(), 1);
    }

    #[test]
    fn definitions_are_substituted() {
        let a = catalog::sl2();
        let mut defs = Definitions::new();
        defs.insert("C".into(), catalog::casimir(&a));
        let v = parse_vector_at("(C, 1)", &a, &defs, Some(2), 1, 1).unwrap();
        assert_eq!(a.render_vector(&v), "(1/2*z^2 + 2*x*y - z, 1)");
    }

    #[test]
    fn relations() {
        let names: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let o = OrderSpec::weighted(vec![1, 2, 2]).unwrap();
        let r = parse_relation_at("y*x = x*y - z", &names, &o, 1, 1).unwrap();
        assert_eq!((r.j, r.i), (1, 0));
        assert!(r.coeff.is_one());
        assert_eq!(r.tail, Polynomial::var(3, 2).neg());
        let q = parse_relation_at("z*y = 1/2*y*z", &names, &o, 1, 1).unwrap();
        assert_eq!(q.coeff, crate::poly::rat(1, 2));
        assert!(parse_relation_at("x*y = x*y", &names, &o, 1, 1).is_err());
        assert!(parse_relation_at("y*x = y*x", &names, &o, 1, 1).is_err());
        assert!(parse_relation_at("y*x = x*y + z*x", &names, &o, 1, 1).is_err());
    }
}
