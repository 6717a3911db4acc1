//! A small language for *-polynomials in the generators `z[i,j]`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['\'']
//! atom   := 'z' '[' int ',' int ']' | complex | '(' expr ')'
//! ```
//!
//! Complex literals are single tokens: `2`, `-1.5`, `3i`, `i`, `2+3i`,
//! `0.5-i`. A sign may start a literal only at the beginning of a factor, and
//! a literal `a+bi` must not contain whitespace, so `2 + 3i` is a sum of two
//! scalars while `2+3i` is one.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gens::{collect, GenTable, Letter, Monomial};
use crate::kernel::TruncatedOperator;

#[derive(Debug, Clone, PartialEq)]
pub enum StarPolynomial {
    Gen { i: usize, j: usize },
    Scalar(Complex64),
    Adjoint(Box<StarPolynomial>),
    Add(Box<StarPolynomial>, Box<StarPolynomial>),
    Sub(Box<StarPolynomial>, Box<StarPolynomial>),
    Mul(Box<StarPolynomial>, Box<StarPolynomial>),
}

use StarPolynomial as P;

impl StarPolynomial {
    pub fn gen(i: usize, j: usize) -> Self {
        P::Gen { i, j }
    }

    pub fn scalar(c: Complex64) -> Self {
        P::Scalar(c)
    }

    pub fn real(x: f64) -> Self {
        P::Scalar(Complex64::new(x, 0.0))
    }

    pub fn adjoint(self) -> Self {
        P::Adjoint(Box::new(self))
    }

    pub fn plus(self, rhs: Self) -> Self {
        P::Add(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: Self) -> Self {
        P::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn times(self, rhs: Self) -> Self {
        P::Mul(Box::new(self), Box::new(rhs))
    }

    /// Left-nested product of generators and adjoints; the empty word is `1`.
    pub fn word(letters: &[Letter]) -> Self {
        let mut it = letters.iter().map(|l| {
            let g = P::gen(l.i, l.j);
            if l.adjoint {
                g.adjoint()
            } else {
                g
            }
        });
        match it.next() {
            None => P::real(1.0),
            Some(first) => it.fold(first, P::times),
        }
    }

    /// Left-nested sum; the empty sum is `0`.
    pub fn sum(terms: impl IntoIterator<Item = Self>) -> Self {
        let mut it = terms.into_iter();
        match it.next() {
            None => P::real(0.0),
            Some(first) => it.fold(first, P::plus),
        }
    }

    /// Expands into a collected list of monomials.
    pub fn expand(&self) -> Vec<Monomial> {
        collect(self.expand_raw())
    }

    fn expand_raw(&self) -> Vec<Monomial> {
        match self {
            P::Gen { i, j } => vec![Monomial::unit(vec![Letter::gen(*i, *j)])],
            P::Scalar(c) => vec![Monomial::new(*c, Vec::new())],
            P::Adjoint(a) => a.expand_raw().iter().map(Monomial::adjoint).collect(),
            P::Add(a, b) => {
                let mut v = a.expand_raw();
                v.extend(b.expand_raw());
                v
            }
            P::Sub(a, b) => {
                let mut v = a.expand_raw();
                v.extend(b.expand_raw().into_iter().map(|m| Monomial::new(-m.coeff, m.letters)));
                v
            }
            P::Mul(a, b) => {
                let (left, right) = (a.expand_raw(), b.expand_raw());
                let mut v = Vec::with_capacity(left.len() * right.len());
                for l in &left {
                    for r in &right {
                        let mut letters = l.letters.clone();
                        letters.extend_from_slice(&r.letters);
                        v.push(Monomial::new(l.coeff * r.coeff, letters));
                    }
                }
                v
            }
        }
    }

    /// Longest word after expansion.
    pub fn degree(&self) -> usize {
        crate::gens::degree(&self.expand())
    }

    /// Largest generator index used, 0 for a constant.
    pub fn max_index(&self) -> usize {
        match self {
            P::Gen { i, j } => (*i).max(*j),
            P::Scalar(_) => 0,
            P::Adjoint(a) => a.max_index(),
            P::Add(a, b) | P::Sub(a, b) | P::Mul(a, b) => a.max_index().max(b.max_index()),
        }
    }

    /// Value under a one-dimensional assignment of the generators.
    pub fn eval_scalar(&self, f: &impl Fn(usize, usize) -> Complex64) -> Complex64 {
        match self {
            P::Gen { i, j } => f(*i, *j),
            P::Scalar(c) => *c,
            P::Adjoint(a) => a.eval_scalar(f).conj(),
            P::Add(a, b) => a.eval_scalar(f) + b.eval_scalar(f),
            P::Sub(a, b) => a.eval_scalar(f) - b.eval_scalar(f),
            P::Mul(a, b) => a.eval_scalar(f) * b.eval_scalar(f),
        }
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn scalar_text(c: Complex64) -> (String, bool) {
    // returns the literal and whether it needs parentheses when embedded
    if c.im == 0.0 {
        let s = fmt_num(c.re);
        let neg = s.starts_with('-');
        (s, neg)
    } else if c.re == 0.0 && !c.re.is_sign_negative() {
        let s = format!("{}i", fmt_num(c.im));
        let neg = s.starts_with('-');
        (s, neg)
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        (format!("{}{}{}i", fmt_num(c.re), sign, fmt_num(c.im.abs())), true)
    }
}

impl StarPolynomial {
    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        // ctx: 0 = expr, 1 = right operand of +/-, 2 = factor of a product,
        // 3 = operand of a postfix adjoint
        match self {
            P::Gen { i, j } => write!(f, "z[{i},{j}]"),
            P::Scalar(c) => {
                let (s, needs) = scalar_text(*c);
                if needs && ctx > 0 {
                    write!(f, "({s})")
                } else {
                    write!(f, "{s}")
                }
            }
            P::Adjoint(a) => {
                let wrap = ctx == 3;
                if wrap {
                    write!(f, "(")?;
                }
                a.write(f, 3)?;
                write!(f, "'")?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
            P::Add(a, b) | P::Sub(a, b) => {
                let wrap = ctx >= 1;
                if wrap {
                    write!(f, "(")?;
                }
                a.write(f, 0)?;
                write!(f, " {} ", if matches!(self, P::Add(..)) { '+' } else { '-' })?;
                b.write(f, 1)?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
            P::Mul(a, b) => {
                let wrap = ctx >= 2;
                if wrap {
                    write!(f, "(")?;
                }
                a.write(f, 1)?;
                write!(f, " * ")?;
                b.write(f, 2)?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", ch as char))
        }
    }

    fn expr(&mut self) -> Result<StarPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.plus(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.minus(self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<StarPolynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.times(self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<StarPolynomial> {
        let a = self.atom()?;
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            return Ok(a.adjoint());
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<StarPolynomial> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.int()?;
                self.expect(b',')?;
                let j = self.int()?;
                self.expect(b']')?;
                if i == 0 || j == 0 {
                    return self.err("generator indices start at 1");
                }
                Ok(P::gen(i, j))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c == b'-' || c == b'+' || c == b'.' || c == b'i' || c.is_ascii_digit() => self.literal(),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("integer out of range")
            })
    }

    /// Unsigned decimal number at the cursor, no whitespace skipping.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let s = self.src;
        let mut p = self.pos;
        while p < s.len() && s[p].is_ascii_digit() {
            p += 1;
        }
        if p < s.len() && s[p] == b'.' {
            p += 1;
            while p < s.len() && s[p].is_ascii_digit() {
                p += 1;
            }
        }
        let mantissa_end = p;
        if mantissa_end == start || (mantissa_end == start + 1 && s[start] == b'.') {
            return None;
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            let digits = q;
            while q < s.len() && s[q].is_ascii_digit() {
                q += 1;
            }
            if q > digits {
                p = q;
            }
        }
        self.pos = p;
        std::str::from_utf8(&s[start..p]).unwrap().parse().ok().filter(|x: &f64| x.is_finite())
    }

    /// `[sign] (number | number 'i' | 'i' | number ('+'|'-') [number] 'i')`
    fn literal(&mut self) -> Result<StarPolynomial> {
        self.skip_ws();
        let start = self.pos;
        let mut sign = 1.0;
        if let Some(&c) = self.src.get(self.pos) {
            if c == b'-' || c == b'+' {
                sign = if c == b'-' { -1.0 } else { 1.0 };
                self.pos += 1;
            }
        }
        if self.src.get(self.pos) == Some(&b'i') {
            self.pos += 1;
            return Ok(P::Scalar(Complex64::new(0.0, sign)));
        }
        let Some(a) = self.number() else {
            self.pos = start;
            return self.err("expected a number");
        };
        let a = sign * a;
        match self.src.get(self.pos) {
            Some(b'i') => {
                self.pos += 1;
                Ok(P::Scalar(Complex64::new(0.0, a)))
            }
            Some(&c) if c == b'+' || c == b'-' => {
                // a+bi only if an imaginary part follows immediately
                let save = self.pos;
                self.pos += 1;
                let s2 = if c == b'-' { -1.0 } else { 1.0 };
                if self.src.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(P::Scalar(Complex64::new(a, s2)));
                }
                if let Some(b) = self.number() {
                    if self.src.get(self.pos) == Some(&b'i') {
                        self.pos += 1;
                        return Ok(P::Scalar(Complex64::new(a, s2 * b)));
                    }
                }
                self.pos = save;
                Ok(P::Scalar(Complex64::new(a, 0.0)))
            }
            _ => Ok(P::Scalar(Complex64::new(a, 0.0))),
        }
    }
}

pub fn parse_star_poly(text: &str) -> Result<StarPolynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Matrix of `p` with generators taken from `table`.
pub fn eval_star_poly(p: &StarPolynomial, table: &GenTable) -> Result<TruncatedOperator> {
    let m = p.expand();
    table.eval(&m)
}

impl std::str::FromStr for StarPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_star_poly(s)
    }
}
