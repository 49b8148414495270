//! Text formats for polynomials.
//!
//! Two forms are accepted:
//! * a coefficient list in ascending degree, `[c0, c1, ...]`, where each
//!   entry is an integer or `p/q`, optionally quoted;
//! * an expression in `x` built from rationals, `+ - * ^` and parentheses,
//!   which covers the factored form `-10*(x - 1)*(x - 2)*(x + 10)^4`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("unexpected `{found}` at offset {pos}")]
    Unexpected { found: String, pos: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("exponent `{0}` is not a small non-negative integer")]
    BadExponent(String),
}

/// Parses `n`, `-n`, `p/q` (surrounding quotes and spaces ignored).
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim().trim_matches('"').trim();
    let bad = || ParseError::BadRational(s.trim().to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or(ParseError::Eof)?.trim();
        if inner.is_empty() {
            return Ok(Poly::zero());
        }
        let coeffs = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Poly::new(coeffs));
    }
    let mut parser = Parser {
        toks: tokenize(t)?,
        pos: 0,
    };
    let p = parser.expr()?;
    match parser.toks.get(parser.pos) {
        None => Ok(p),
        Some((tok, off)) => Err(ParseError::Unexpected {
            found: tok.describe(),
            pos: *off,
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::X => "x".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '"' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            'x' | 'X' => out.push((Tok::X, i)),
            '+' => out.push((Tok::Plus, i)),
            '-' => out.push((Tok::Minus, i)),
            '*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    out.push((Tok::Caret, i));
                    i += 1;
                } else {
                    out.push((Tok::Star, i));
                }
            }
            '/' => out.push((Tok::Slash, i)),
            '^' => out.push((Tok::Caret, i)),
            '(' => out.push((Tok::LParen, i)),
            ')' => out.push((Tok::RParen, i)),
            other => {
                return Err(ParseError::Unexpected {
                    found: other.to_string(),
                    pos: i,
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, off)) => ParseError::Unexpected {
                found: t.describe(),
                pos: *off,
            },
            None => ParseError::Eof,
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' | '/' | implicit) unary)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    if d.degree() != Some(0) {
                        return Err(self.unexpected());
                    }
                    acc = acc.scale(&d.leading_coeff().recip());
                }
                Some(Tok::X) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let k: usize = n
                        .to_string()
                        .parse()
                        .ok()
                        .filter(|&k| k <= 4096)
                        .ok_or_else(|| ParseError::BadExponent(n.to_string()))?;
                    Ok(base.pow(k))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.unexpected())
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Poly::constant(Rational::from_integer(n))),
            Some(Tok::X) => Ok(Poly::x()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.unexpected())
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}
