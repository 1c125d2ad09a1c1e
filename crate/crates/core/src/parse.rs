//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var | var '^' nat | '(' expr ')'
//! rational := int | int '/' nat
//! ```
//!
//! Whitespace is insignificant and there is no implicit multiplication.
//! Two small extensions are accepted: a leading sign on any factor (so the
//! canonical text `-y*s^2 + x` reads back) and `'(' expr ')' '^' nat`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{ParseError, ParseErrorKind};
use crate::polyring::{Polynomial, Rational};

/// Parses `text` over the ordered variable list `vars`.
pub fn parse_polynomial<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(ParseErrorKind::Syntax(format!(
            "unexpected `{}`",
            parser.chars[parser.pos]
        ))));
    }
    Ok(p)
}

/// Parses a rational literal `p` or `p/q` (optionally signed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(ParseErrorKind::Syntax(format!("expected `{c}`, found `{d}`")))),
            None => Err(self.error(ParseErrorKind::Syntax(format!("expected `{c}`, found end of input")))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                match self.exponent()? {
                    Some(e) => Ok(inner.pow(e)),
                    None => Ok(inner),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                Ok(Polynomial::constant(self.nvars(), c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident();
                let Some(index) = self.vars.iter().position(|v| *v == name) else {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownVariable(name),
                        position: start,
                    });
                };
                let x = Polynomial::var(self.nvars(), index);
                match self.exponent()? {
                    Some(e) => Ok(x.pow(e)),
                    None => Ok(x),
                }
            }
            Some(c) => Err(self.error(ParseErrorKind::Syntax(format!("unexpected `{c}`")))),
            None => Err(self.error(ParseErrorKind::Syntax("unexpected end of input".into()))),
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some('^') {
            return Ok(None);
        }
        self.pos += 1;
        match self.peek() {
            Some('-') => Err(self.error(ParseErrorKind::NegativeExponent)),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits.parse::<u32>().map(Some).map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax(format!("exponent `{digits}` out of range")),
                    position: start,
                })
            }
            _ => Err(self.error(ParseErrorKind::Syntax("expected exponent".into()))),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = self.digits().parse().expect("digit run");
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.pos += 1;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let den: BigInt = self.digits().parse().expect("digit run");
                if den.is_zero() {
                    return Err(ParseError {
                        kind: ParseErrorKind::Syntax("zero denominator".into()),
                        position: start,
                    });
                }
                Ok(Rational::new(num, den))
            }
            _ => Err(self.error(ParseErrorKind::Syntax("expected denominator".into()))),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}
