//! Polynomial expressions: `+ - * ^ ( )`, integer and `a/b` literals.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{GradedRing, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// Byte offset into the input.
    #[error("at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("at offset {offset}: unknown variable `{name}`")]
    UnknownVariable { offset: usize, name: String },
    #[error("at offset {offset}: exponent too large")]
    Exponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownVariable { offset, .. }
            | ParseError::Exponent { offset } => *offset,
        }
    }
}

/// Sparse polynomial over ℚ before reduction into a field.
pub type RationalTerms = BTreeMap<Vec<u32>, BigRational>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn add_into(acc: &mut RationalTerms, e: Vec<u32>, c: BigRational) {
    let entry = acc.entry(e.clone()).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&e);
    }
}

fn mul(a: &RationalTerms, b: &RationalTerms, offset: usize) -> std::result::Result<RationalTerms, ParseError> {
    let mut out = RationalTerms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea
                .iter()
                .zip(eb)
                .map(|(x, y)| x.checked_add(*y))
                .collect::<Option<Vec<u32>>>()
                .ok_or(ParseError::Exponent { offset })?;
            add_into(&mut out, e, ca * cb);
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn constant(&self, c: BigRational) -> RationalTerms {
        let mut t = RationalTerms::new();
        if !c.is_zero() {
            t.insert(vec![0; self.vars.len()], c);
        }
        t
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("digits"))
    }

    fn expr(&mut self) -> std::result::Result<RationalTerms, ParseError> {
        let mut acc = RationalTerms::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            for (e, c) in t {
                add_into(&mut acc, e, if sign < 0 { -c } else { c });
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<RationalTerms, ParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let offset = self.pos;
            let f = self.power()?;
            acc = mul(&acc, &f, offset)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> std::result::Result<RationalTerms, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let offset = self.pos;
        let e = self.integer().ok_or_else(|| self.err("exponent"))?;
        let e: u32 = e.try_into().map_err(|_| ParseError::Exponent { offset })?;
        let mut acc = self.constant(BigRational::one());
        for _ in 0..e {
            acc = mul(&acc, &base, offset)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> std::result::Result<RationalTerms, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("`)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit");
                let d = if self.eat('/') {
                    let d = self.integer().ok_or_else(|| self.err("denominator"))?;
                    if d.is_zero() {
                        return Err(self.err("nonzero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(self.constant(BigRational::new(n, d)))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if is_ident(c)) {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let i = self.vars.iter().position(|v| v == name).ok_or_else(|| ParseError::UnknownVariable {
                    offset: start,
                    name: name.to_string(),
                })?;
                let mut e = vec![0; self.vars.len()];
                e[i] = 1;
                Ok(RationalTerms::from([(e, BigRational::one())]))
            }
            _ => Err(self.err("number, variable or `(`")),
        }
    }
}

/// Parse an expression in the given variables.
pub fn parse_rational(src: &str, vars: &[String]) -> std::result::Result<RationalTerms, ParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("operator or end of input"));
    }
    Ok(out)
}

/// Reduce rational coefficients into `field`.
pub fn into_polynomial<F: Field>(ring: Arc<GradedRing>, field: F, terms: &RationalTerms) -> Result<Polynomial<F>> {
    let mut out = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        let v = field
            .from_rational(c)
            .ok_or_else(|| Error::DenominatorVanishes(crate::field::format_rational(c)))?;
        out.push((Monomial::new(e.clone()), v));
    }
    Ok(Polynomial::from_terms(ring, field, out))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Math(#[from] Error),
}

pub fn parse_polynomial<F: Field>(src: &str, ring: &Arc<GradedRing>, field: F) -> std::result::Result<Polynomial<F>, TextError> {
    let terms = parse_rational(src, ring.vars())?;
    Ok(into_polynomial(ring.clone(), field, &terms)?)
}
