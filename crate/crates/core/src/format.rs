//! The `.lsa` text format.
//!
//! ```text
//! # Leib_{1,2}
//! dims 1 2
//! [y1, x1] = y2
//! [x1, y1] = 1/2 y2 - 3*y1
//! ```
//!
//! Omitted brackets are zero. Coefficients use the scalar literal grammar and
//! may be juxtaposed with (`1/2 y2`) or starred onto (`2*y2`) a basis token;
//! compound coefficients need parentheses (`(1 + z(3)^1) y2`).

use std::fmt::{self, Write as _};

use crate::algebra::{Basis, SuperAlgebra, TableBuilder};
use crate::error::{Error, Result};
use crate::scalar::literal::{basis_token, tokenize, Cursor, SyntaxError, Tok, Token};
use crate::scalar::Scalar;

pub(crate) fn write_linear_combination<'a>(f: &mut impl fmt::Write, terms: impl Iterator<Item = (&'a Scalar, Basis)>) -> fmt::Result {
    let mut first = true;
    for (c, b) in terms {
        let (negative, body) = coefficient_text(c);
        match (first, negative) {
            (true, false) => {}
            (true, true) => f.write_str("-")?,
            (false, false) => f.write_str(" + ")?,
            (false, true) => f.write_str(" - ")?,
        }
        match body {
            None => write!(f, "{b}")?,
            Some(text) => write!(f, "{text} {b}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Sign and coefficient text for a term; `None` text means a unit coefficient.
fn coefficient_text(c: &Scalar) -> (bool, Option<String>) {
    let text = c.to_string();
    if c.is_monomial() {
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if magnitude == "1" {
            return (negative, None);
        }
        return (negative, Some(magnitude));
    }
    (false, Some(format!("({text})")))
}

/// Canonical text: header, then nonzero brackets in canonical order.
pub fn serialize_lsa(alg: &SuperAlgebra) -> String {
    let mut out = format!("dims {} {}\n", alg.n(), alg.m());
    for (a, b, v) in alg.entries() {
        let _ = write!(out, "[{a}, {b}] = ");
        let _ = write_linear_combination(&mut out, v.terms());
        out.push('\n');
    }
    out
}

fn syntax(line: usize, e: SyntaxError) -> Error {
    Error::Parse { line, column: e.column, message: e.message }
}

fn at_line(line: usize, e: Error) -> Error {
    Error::AtLine { line, source: Box::new(e) }
}

fn basis_at(cur: &mut Cursor<'_>) -> std::result::Result<Basis, SyntaxError> {
    let column = cur.column();
    match cur.bump() {
        Some(Token { tok: Tok::Ident(name), .. }) => match basis_token(name) {
            Some(('x', i)) => Ok(Basis::x(i)),
            Some((_, j)) => Ok(Basis::y(j)),
            None => Err(SyntaxError::new(column, format!("unknown basis token '{name}'"))),
        },
        _ => Err(SyntaxError::new(column, "expected a basis token x<i> or y<j>")),
    }
}

type BracketLine = (Basis, Basis, Vec<(Scalar, Basis)>);

fn parse_bracket(cur: &mut Cursor<'_>) -> std::result::Result<BracketLine, SyntaxError> {
    cur.expect(&Tok::LBracket, "'['")?;
    let a = basis_at(cur)?;
    cur.expect(&Tok::Comma, "','")?;
    let b = basis_at(cur)?;
    cur.expect(&Tok::RBracket, "']'")?;
    cur.expect(&Tok::Eq, "'='")?;
    let mut terms = Vec::new();
    // a lone `0` right-hand side spells out a zero product
    if let (Some(Token { tok: Tok::Int(v), .. }), None) = (cur.peek(), cur.peek_at(1)) {
        if num_traits::Zero::is_zero(v) {
            cur.bump();
            return Ok((a, b, terms));
        }
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek().map(|t| &t.tok) {
            Some(Tok::Plus) if !first => {
                cur.bump();
            }
            Some(Tok::Minus) => {
                cur.bump();
                negative = true;
            }
            None if first => return Err(cur.error("expected a term")),
            None => break,
            _ if !first => return Err(cur.error("expected '+' or '-'")),
            _ => {}
        }
        let coeff = if cur.at_basis_suffix() && !matches!(cur.peek().map(|t| &t.tok), Some(Tok::Star)) {
            Scalar::one()
        } else {
            let c = cur.parse_product()?;
            if matches!(cur.peek().map(|t| &t.tok), Some(Tok::Star)) {
                cur.bump();
            }
            c
        };
        let t = basis_at(cur)?;
        terms.push((if negative { -coeff } else { coeff }, t));
        first = false;
    }
    Ok((a, b, terms))
}

/// Parses `.lsa` text. Errors carry 1-based line (and, for syntax, column)
/// numbers; no partial algebra is ever returned.
pub fn parse_lsa(text: &str) -> Result<SuperAlgebra> {
    let mut builder: Option<TableBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let toks = tokenize(content).map_err(|e| syntax(line, e))?;
        let mut cur = Cursor::new(&toks, content.chars().count() + 1);
        let Some(tb) = builder.as_mut() else {
            builder = Some(parse_header(&mut cur).map_err(|e| syntax(line, e))?);
            continue;
        };
        let (a, b, terms) = parse_bracket(&mut cur).map_err(|e| syntax(line, e))?;
        if !cur.at_end() {
            return Err(syntax(line, cur.error("trailing input")));
        }
        tb.set(a, b, &terms).map_err(|e| at_line(line, e))?;
    }
    match builder {
        Some(b) => Ok(b.build()),
        None => Err(Error::Parse { line: 1, column: 1, message: "missing 'dims <n> <m>' header".into() }),
    }
}

fn parse_header(cur: &mut Cursor<'_>) -> std::result::Result<TableBuilder, SyntaxError> {
    match cur.bump() {
        Some(Token { tok: Tok::Ident(w), .. }) if w == "dims" => {}
        _ => return Err(SyntaxError::new(1, "expected 'dims <n> <m>' header")),
    }
    let dim = |cur: &mut Cursor<'_>| {
        let column = cur.column();
        match cur.bump() {
            Some(Token { tok: Tok::Int(v), .. }) => {
                num_traits::ToPrimitive::to_usize(v).filter(|&d| d <= 256).ok_or_else(|| SyntaxError::new(column, "dimension out of range"))
            }
            _ => Err(SyntaxError::new(column, "expected a dimension")),
        }
    };
    let n = dim(cur)?;
    let m = dim(cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after dims"));
    }
    Ok(TableBuilder::new(n, m))
}
