//! Tokenizer and recursive-descent parser for scalar literals.
//!
//! The same token stream is reused by the `.lsa` reader, which needs to stop a
//! coefficient product in front of a basis token (`1/2 y2`, `2*y2`).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Rational, Scalar};

/// Field orders above this are rejected to keep `φ(N)` sane.
const MAX_ORDER: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(column: usize, message: impl Into<String>) -> Self {
        SyntaxError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Slash,
    Star,
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), column });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), column });
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            other => return Err(SyntaxError::new(column, format!("unexpected character '{other}'"))),
        };
        out.push(Token { tok, column });
        i += 1;
    }
    Ok(out)
}

/// `x<i>` / `y<j>` with a positive decimal index.
pub(crate) fn basis_token(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let head = chars.next()?;
    if head != 'x' && head != 'y' {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((head, rest.parse().ok()?))
}

pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    /// Column reported for "unexpected end of input".
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Token], end_column: usize) -> Self {
        Cursor { toks, pos: 0, end_column }
    }

    pub(crate) fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub(crate) fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + offset)
    }

    pub(crate) fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.column(), message)
    }

    pub(crate) fn expect(&mut self, want: &Tok, what: &str) -> Result<&'a Token, SyntaxError> {
        match self.peek() {
            Some(t) if &t.tok == want => {
                self.pos += 1;
                Ok(t)
            }
            Some(_) => Err(self.error(format!("expected {what}"))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }

    fn next_is_basis(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Some(Token { tok: Tok::Ident(s), .. }) if basis_token(s).is_some())
    }

    /// True when the cursor sits on a basis token or on `* <basis>`.
    pub(crate) fn at_basis_suffix(&self) -> bool {
        self.next_is_basis(0) || (matches!(self.peek(), Some(Token { tok: Tok::Star, .. })) && self.next_is_basis(1))
    }

    pub(crate) fn parse_sum(&mut self) -> Result<Scalar, SyntaxError> {
        let mut acc = self.parse_product()?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.parse_product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.parse_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// A `*`-product of factors. Stops in front of a basis suffix so that the
    /// caller can attach the coefficient to it.
    pub(crate) fn parse_product(&mut self) -> Result<Scalar, SyntaxError> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Token { tok: Tok::Star, .. })) && !self.at_basis_suffix() {
            self.bump();
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Scalar, SyntaxError> {
        if matches!(self.peek(), Some(Token { tok: Tok::Minus, .. })) {
            self.bump();
            return Ok(-self.parse_factor()?);
        }
        let base_column = self.column();
        let base = self.parse_atom()?;
        if !matches!(self.peek(), Some(Token { tok: Tok::Caret, .. })) {
            return Ok(base);
        }
        self.bump();
        let negative = matches!(self.peek(), Some(Token { tok: Tok::Minus, .. }));
        if negative {
            self.bump();
        }
        let column = self.column();
        let e = match self.bump() {
            Some(Token { tok: Tok::Int(v), .. }) => v.to_i64().filter(|e| *e <= 1 << 20),
            _ => return Err(SyntaxError::new(column, "expected integer exponent")),
        };
        let Some(e) = e else {
            return Err(SyntaxError::new(column, "exponent too large"));
        };
        base.pow(if negative { -e } else { e }).map_err(|_| SyntaxError::new(base_column, "zero raised to a negative power"))
    }

    fn parse_atom(&mut self) -> Result<Scalar, SyntaxError> {
        let column = self.column();
        let Some(t) = self.bump() else {
            return Err(self.error("expected a scalar, found end of input"));
        };
        match &t.tok {
            Tok::Int(p) => {
                if !matches!(self.peek(), Some(Token { tok: Tok::Slash, .. })) {
                    return Ok(Scalar::from(p.clone()));
                }
                self.bump();
                let qcol = self.column();
                match self.bump() {
                    Some(Token { tok: Tok::Int(q), .. }) if q.is_zero() => Err(SyntaxError::new(qcol, "zero denominator")),
                    Some(Token { tok: Tok::Int(q), .. }) => Ok(Scalar::from_rational(Rational::new(p.clone(), q.clone()))),
                    _ => Err(SyntaxError::new(qcol, "expected integer denominator")),
                }
            }
            Tok::Ident(name) if name == "z" => {
                self.expect(&Tok::LParen, "'(' after z")?;
                let ncol = self.column();
                let order = match self.bump() {
                    Some(Token { tok: Tok::Int(v), .. }) => v.to_u32(),
                    _ => return Err(SyntaxError::new(ncol, "expected root order")),
                };
                let order = match order {
                    Some(o) if (1..=MAX_ORDER).contains(&o) => o,
                    _ => return Err(SyntaxError::new(ncol, format!("root order must be in 1..={MAX_ORDER}"))),
                };
                self.expect(&Tok::RParen, "')'")?;
                Ok(Scalar::root_of_unity(order, 1))
            }
            Tok::LParen => {
                let v = self.parse_sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::Ident(name) => Err(SyntaxError::new(column, format!("unexpected identifier '{name}' in scalar"))),
            _ => Err(SyntaxError::new(column, "expected a scalar")),
        }
    }
}

pub(crate) fn parse_scalar(text: &str) -> Result<Scalar, SyntaxError> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks, text.chars().count() + 1);
    let v = cur.parse_sum()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after scalar"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_signs() {
        assert_eq!(parse_scalar("1 + 2*3").unwrap(), Scalar::from_integer(7));
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::from_integer(-4));
        assert_eq!(parse_scalar("(1/2)^-2").unwrap(), Scalar::from_integer(4));
        assert_eq!(parse_scalar("3 - -1").unwrap(), Scalar::from_integer(4));
        assert_eq!(parse_scalar("z(3)^3").unwrap(), Scalar::one());
    }

    #[test]
    fn error_columns() {
        assert_eq!(parse_scalar("1 + ").unwrap_err().column, 5);
        assert_eq!(parse_scalar("2/0").unwrap_err().column, 3);
        assert_eq!(parse_scalar("1 $").unwrap_err().column, 3);
        assert_eq!(parse_scalar("0^-1").unwrap_err().column, 1);
    }

    #[test]
    fn product_stops_before_basis() {
        let toks = tokenize("1/2*y2").unwrap();
        let mut cur = Cursor::new(&toks, 7);
        assert_eq!(cur.parse_product().unwrap(), Scalar::ratio(1, 2));
        assert!(cur.at_basis_suffix());
        assert_eq!(basis_token("x12"), Some(('x', 12)));
        assert_eq!(basis_token("z1"), None);
        assert_eq!(basis_token("y"), None);
    }
}
