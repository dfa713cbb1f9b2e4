//! Sparse multivariate polynomials under a degree-lexicographic order, and a
//! parser for the textual syntax.

use crate::error::{CatError, Result};
use crate::field::Field;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector. Variables later in the list are larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self`; requires `self | other`.
    pub fn quotient(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Poly::term(nvars, Mono::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::term(nvars, Mono::var(nvars, i), F::one())
    }

    pub fn term(nvars: usize, m: Mono, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// The variable index if this is a bare variable.
    pub fn as_var(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !c.is_one() || m.degree() != 1 {
            return None;
        }
        m.0.iter().position(|&e| e == 1)
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Whether the polynomial mentions variable `i`.
    pub fn uses(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<F> {
        self.scale(&(F::zero() - F::one()))
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// `c·m·self`.
    pub fn mul_term(&self, m: &Mono, c: &F) -> Poly<F> {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (k, v) in &self.terms {
                out.add_term(k.mul(m), v.clone() * c.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly<F> {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly<F> {
        match self.leading() {
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly<F> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] -= 1;
            let factor = F::from_u32(e).expect("exponent fits the field");
            out.add_term(k, c.clone() * factor);
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`; all images share one
    /// variable count, which becomes the result's.
    pub fn substitute(&self, images: &[Poly<F>], nvars: usize) -> Poly<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Poly::zero(nvars);
        let mut powers: Vec<Vec<Poly<F>>> = vec![Vec::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Poly::one(nvars));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().expect("non-empty").mul(&images[i]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// The same polynomial in a longer variable list that extends this one.
    pub fn extend(&self, nvars: usize) -> Poly<F> {
        assert!(nvars >= self.nvars, "extension must not drop variables");
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Renders with the given variable names, leading term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            let unit = cs == "1";
            if factors.is_empty() {
                out.push_str(&cs);
            } else if unit {
                out.push_str(&factors.join("*"));
            } else {
                let coef = if cs.contains('/') { format!("({cs})") } else { cs };
                out.push_str(&format!("{coef}*{}", factors.join("*")));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(CatError::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    lookup: &'a dyn Fn(&str) -> Option<usize>,
    src: &'a str,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn err<T>(&self, msg: impl std::fmt::Display) -> Result<T> {
        Err(CatError::Parse(format!("{msg} in \"{}\"", self.src)))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().or_else(|_| self.err(format!("exponent {n} too large")))?;
                    Ok(base.pow(e))
                }
                _ => self.err("exponent must be a non-negative integer"),
            }
        } else {
            Ok(base)
        }
    }

    fn number(&self, s: &str) -> Result<F> {
        let ten = F::from_u32(10).expect("field contains the integers");
        s.chars().try_fold(F::zero(), |acc, c| match c.to_digit(10) {
            Some(d) => Ok(acc * ten.clone() + F::from_u32(d).expect("digit")),
            None => self.err(format!("bad number {s}")),
        })
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut v = self.number(&n)?;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            let dv = self.number(&d)?;
                            if dv.is_zero() {
                                return self.err("zero denominator");
                            }
                            v = v / dv;
                        }
                        _ => return self.err("'/' only forms rational literals p/q"),
                    }
                }
                Ok(Poly::constant(self.nvars, v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match (self.lookup)(&name) {
                    Some(i) => Ok(Poly::var(self.nvars, i)),
                    None if name.starts_with("dd") => {
                        self.err(format!("{name}: iterated differentials are written delta_x, delta_dx"))
                    }
                    None => self.err(format!("unknown generator {name}")),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return self.err("missing ')'");
                }
                Ok(p)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over the variables `names`.
pub fn parse_poly<F: Field>(s: &str, names: &[String]) -> Result<Poly<F>> {
    let lookup = |n: &str| names.iter().position(|v| v == n);
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(CatError::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars: names.len(),
        lookup: &lookup,
        src: s,
        _f: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Whether `s` is a valid generator name.
pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn deglex_order() {
        // x < y, so y > x and x^2 > y (degree first)
        let x = Mono(vec![1, 0]);
        let y = Mono(vec![0, 1]);
        let x2 = Mono(vec![2, 0]);
        assert!(y > x);
        assert!(x2 > y);
        assert!(Mono(vec![1, 1]) < Mono(vec![0, 2]));
    }

    #[test]
    fn parse_and_render() {
        let n = names(&["x", "dx"]);
        let p: Poly<Rational> = parse_poly("2*x*dx - 1/2 + (x+1)^2", &n).unwrap();
        assert_eq!(p.render(&n), "2*x*dx + x^2 + 2*x + 1/2");
        assert!(parse_poly::<Rational>("ddx", &n).is_err());
        assert!(parse_poly::<Rational>("x +", &n).is_err());
        assert!(parse_poly::<Rational>("x / 2", &n).is_err());
    }

    #[test]
    fn derivative_and_substitution() {
        let n = names(&["x", "y"]);
        let p: Poly<Rational> = parse_poly("x^3*y + y^2", &n).unwrap();
        assert_eq!(p.derivative(0).render(&n), "3*x^2*y");
        let imgs = vec![parse_poly("y", &n).unwrap(), parse_poly("x", &n).unwrap()];
        assert_eq!(p.substitute(&imgs, 2).render(&n), "x*y^3 + x^2");
    }
}
