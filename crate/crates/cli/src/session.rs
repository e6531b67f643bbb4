//! The ring/ideal input language.
//!
//! ```text
//! field Fp 32003
//! vars x0 x1 y0 y1
//! deg x0 x1 = (1,0)
//! deg y0 y1 = (0,1)
//! ideal I = [ x0*y1 - x1*y0 ; x0^2 ]
//! tvars t1 t2
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use mdeg_core::text::{into_polynomial, parse_rational, ParseError, RationalTerms};
use mdeg_core::{Field, FieldSpec, GradedRing, Ideal, Polynomial};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("{line}:{col}: syntax error, expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("{line}: variable `{name}` has no degree")]
    MissingDegree { line: usize, name: String },
    #[error("{line}: {source}")]
    Declaration { line: usize, source: mdeg_core::Error },
    #[error("no `vars` declaration")]
    NoRing,
    #[error("no ideal named `{0}`")]
    UnknownIdeal(String),
    #[error("ideal `{0}` is declared twice")]
    DuplicateIdeal(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Argument(String),
}

#[derive(Clone, Debug)]
pub struct NamedIdeal {
    pub name: String,
    pub line: usize,
    pub gens: Vec<RationalTerms>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub field: FieldSpec,
    pub ring: Arc<GradedRing>,
    pub ideals: Vec<NamedIdeal>,
    /// Names for the grading variables, `t1..tp` when absent.
    pub tvars: Option<Vec<String>>,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    lines: Vec<usize>,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let mut lines = vec![0];
        lines.extend(src.match_indices('\n').map(|(i, _)| i + 1));
        Cursor { src, pos: 0, lines }
    }

    fn line_col(&self, offset: usize) -> (usize, usize) {
        let line = self.lines.partition_point(|&s| s <= offset);
        let start = self.lines[line - 1];
        (line, self.src[start..offset].chars().count() + 1)
    }

    fn line(&self) -> usize {
        self.line_col(self.pos).0
    }

    fn error(&self, expected: &str) -> InputError {
        let (line, col) = self.line_col(self.pos);
        InputError::Syntax {
            line,
            col,
            expected: expected.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() && (newlines || c != '\n') {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws(false);
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws(false);
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn expect(&mut self, c: char, newlines: bool) -> Result<(), InputError> {
        self.skip_ws(newlines);
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn end_of_line(&mut self) -> Result<(), InputError> {
        self.skip_ws(false);
        match self.peek() {
            None | Some('\n') => Ok(()),
            _ => Err(self.error("end of line")),
        }
    }

    fn ident_list(&mut self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        loop {
            self.skip_ws(false);
            let at = self.pos;
            match self.ident() {
                Some(name) => out.push((at, name)),
                None => return out,
            }
        }
    }
}

/// Comments become spaces so byte offsets survive.
fn strip_comments(src: &str) -> String {
    src.lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_input(text: &str) -> Result<Session, InputError> {
    let clean = strip_comments(text);
    let mut cur = Cursor::new(&clean);
    let mut field = FieldSpec::default_prime();
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut degrees: BTreeMap<String, (usize, Vec<u32>)> = BTreeMap::new();
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    let mut tvars = None;
    loop {
        cur.skip_ws(true);
        if cur.peek().is_none() {
            break;
        }
        let line = cur.line();
        let keyword = cur.ident().ok_or_else(|| cur.error("`field`, `vars`, `deg`, `ideal` or `tvars`"))?;
        match keyword {
            "field" => {
                let at = cur.pos;
                match cur.ident() {
                    Some("QQ") => field = FieldSpec::Rationals,
                    Some("Fp") => {
                        let p = cur.number().ok_or_else(|| cur.error("prime modulus"))?;
                        field = FieldSpec::prime(p).map_err(|source| InputError::Declaration { line, source })?;
                    }
                    _ => {
                        cur.pos = at;
                        return Err(cur.error("`QQ` or `Fp <prime>`"));
                    }
                }
                cur.end_of_line()?;
            }
            "vars" => {
                let names: Vec<String> = cur.ident_list().into_iter().map(|(_, n)| n.to_string()).collect();
                if names.is_empty() {
                    return Err(cur.error("variable name"));
                }
                cur.end_of_line()?;
                vars = Some((line, names));
            }
            "deg" => {
                let Some((_, declared)) = &vars else {
                    return Err(cur.error("a `vars` line before `deg`"));
                };
                let names = cur.ident_list();
                if names.is_empty() {
                    return Err(cur.error("variable name"));
                }
                for (at, n) in &names {
                    if !declared.iter().any(|v| v == n) {
                        let (line, col) = cur.line_col(*at);
                        return Err(InputError::UnknownVariable {
                            line,
                            col,
                            name: n.to_string(),
                        });
                    }
                }
                cur.expect('=', false)?;
                cur.expect('(', false)?;
                let mut d = Vec::new();
                loop {
                    d.push(cur.number().ok_or_else(|| cur.error("nonnegative integer"))? as u32);
                    cur.skip_ws(false);
                    if cur.peek() == Some(',') {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
                cur.expect(')', false)?;
                cur.end_of_line()?;
                for (_, n) in names {
                    degrees.insert(n.to_string(), (line, d.clone()));
                }
            }
            "ideal" => {
                let Some((_, declared)) = &vars else {
                    return Err(cur.error("a `vars` line before `ideal`"));
                };
                let name = cur.ident().ok_or_else(|| cur.error("ideal name"))?.to_string();
                if ideals.iter().any(|i| i.name == name) {
                    return Err(InputError::DuplicateIdeal(name));
                }
                cur.expect('=', false)?;
                cur.expect('[', true)?;
                let body_start = cur.pos;
                let close = clean[body_start..]
                    .find(']')
                    .map(|i| body_start + i)
                    .ok_or_else(|| {
                        cur.pos = clean.len();
                        cur.error("`]`")
                    })?;
                let mut gens = Vec::new();
                let mut start = body_start;
                for piece in clean[body_start..close].split(';') {
                    if piece.trim().is_empty() {
                        if clean[body_start..close].trim().is_empty() {
                            break;
                        }
                        cur.pos = start + piece.len();
                        return Err(cur.error("polynomial"));
                    }
                    let terms = parse_rational(piece, declared).map_err(|e| {
                        let (line, col) = cur.line_col(start + e.offset());
                        match e {
                            ParseError::UnknownVariable { name, .. } => InputError::UnknownVariable { line, col, name },
                            ParseError::Syntax { expected, .. } => InputError::Syntax { line, col, expected },
                            ParseError::Exponent { .. } => InputError::Syntax {
                                line,
                                col,
                                expected: "smaller exponent".into(),
                            },
                        }
                    })?;
                    gens.push(terms);
                    start += piece.len() + 1;
                }
                cur.pos = close + 1;
                cur.end_of_line()?;
                ideals.push(NamedIdeal { name, line, gens });
            }
            "tvars" => {
                let names: Vec<String> = cur.ident_list().into_iter().map(|(_, n)| n.to_string()).collect();
                cur.end_of_line()?;
                tvars = Some(names);
            }
            _ => {
                let (line, _) = cur.line_col(cur.pos);
                return Err(InputError::Syntax {
                    line,
                    col: 1,
                    expected: "`field`, `vars`, `deg`, `ideal` or `tvars`".into(),
                });
            }
        }
    }
    let (vars_line, names) = vars.ok_or(InputError::NoRing)?;
    let mut degs = Vec::with_capacity(names.len());
    let mut rank = None;
    for n in &names {
        let (line, d) = degrees.get(n).ok_or_else(|| InputError::MissingDegree {
            line: vars_line,
            name: n.clone(),
        })?;
        if d.iter().all(|&x| x == 0) {
            return Err(InputError::Declaration {
                line: *line,
                source: mdeg_core::Error::ZeroDegreeVariable(n.clone()),
            });
        }
        rank.get_or_insert(d.len());
        degs.push(d.clone());
    }
    let rank = rank.unwrap_or(0);
    let ring = GradedRing::new(names, degs, rank, field).map_err(|source| {
        let line = match &source {
            mdeg_core::Error::DegreeLength { name, .. } => degrees.get(name).map(|d| d.0).unwrap_or(vars_line),
            _ => vars_line,
        };
        InputError::Declaration { line, source }
    })?;
    if let Some(t) = &tvars {
        if t.len() != rank {
            return Err(InputError::Argument(format!(
                "`tvars` lists {} names for a rank {rank} grading",
                t.len()
            )));
        }
    }
    Ok(Session {
        field,
        ring: Arc::new(ring),
        ideals,
        tvars,
    })
}

impl Session {
    pub fn tnames(&self) -> Vec<String> {
        self.tvars
            .clone()
            .unwrap_or_else(|| mdeg_core::IntegerPolynomial::default_names(self.ring.rank()))
    }

    /// Replace the coefficient field.
    pub fn with_field(&self, field: FieldSpec) -> Result<Session, InputError> {
        let ring = self
            .ring
            .with_field(field)
            .map_err(|source| InputError::Declaration { line: 1, source })?;
        Ok(Session {
            field,
            ring: Arc::new(ring),
            ideals: self.ideals.clone(),
            tvars: self.tvars.clone(),
        })
    }

    pub fn named(&self, name: Option<&str>) -> Result<&NamedIdeal, InputError> {
        match name {
            Some(n) => self
                .ideals
                .iter()
                .find(|i| i.name == n)
                .ok_or_else(|| InputError::UnknownIdeal(n.to_string())),
            None => self
                .ideals
                .first()
                .ok_or_else(|| InputError::Argument("the input declares no ideal".into())),
        }
    }

    pub fn ideal<F: Field>(&self, name: Option<&str>, field: F) -> Result<Ideal<F>, InputError> {
        let named = self.named(name)?;
        let line = named.line;
        let gens = named
            .gens
            .iter()
            .map(|g| into_polynomial(self.ring.clone(), field.clone(), g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| InputError::Declaration { line, source })?;
        Ideal::new(self.ring.clone(), field, gens).map_err(|source| InputError::Declaration { line, source })
    }
}

fn fmt_degree(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Render a session file that parses back to the same ring and ideals.
pub fn write_session<F: Field>(
    ring: &GradedRing,
    tvars: Option<&[String]>,
    ideals: &[(String, Vec<Polynomial<F>>)],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", ring.field()));
    out.push_str(&format!("vars {}\n", ring.vars().join(" ")));
    // consecutive variables of equal degree share a line
    let mut i = 0;
    while i < ring.nvars() {
        let mut j = i + 1;
        while j < ring.nvars() && ring.degree(j) == ring.degree(i) {
            j += 1;
        }
        out.push_str(&format!(
            "deg {} = {}\n",
            ring.vars()[i..j].join(" "),
            fmt_degree(ring.degree(i))
        ));
        i = j;
    }
    if let Some(t) = tvars {
        out.push_str(&format!("tvars {}\n", t.join(" ")));
    }
    for (name, gens) in ideals {
        if gens.is_empty() {
            out.push_str(&format!("ideal {name} = []\n"));
            continue;
        }
        out.push_str(&format!("ideal {name} = [\n"));
        let body: Vec<String> = gens.iter().map(|g| format!("  {g}")).collect();
        out.push_str(&body.join(";\n"));
        out.push_str("\n]\n");
    }
    out
}
