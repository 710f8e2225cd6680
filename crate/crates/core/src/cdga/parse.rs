//! Polynomial strings: `2*x^2*y - 3/4*z + (a + b)^2`.
//!
//! Products keep the order in which factors are written; Koszul signs are
//! applied later, when a raw polynomial is brought to normal form.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::scalar::parse_scalar;
use crate::linalg::Scalar;

/// One coefficient times an ordered word of generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: Scalar,
    pub word: Vec<usize>,
}

pub type RawPoly = Vec<RawTerm>;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Scalar),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if den_start == i {
                        return Err(Error::Parse(format!("missing denominator in `{s}`")));
                    }
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(parse_scalar(&text)?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Fn(&str) -> Option<usize>> {
    tokens: Vec<Token>,
    pos: usize,
    lookup: &'a F,
    source: &'a str,
}

fn mul_poly(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for s in a {
        for t in b {
            let mut word = s.word.clone();
            word.extend_from_slice(&t.word);
            out.push(RawTerm { coeff: &s.coeff * &t.coeff, word });
        }
    }
    out
}

fn constant(c: Scalar) -> RawPoly {
    vec![RawTerm { coeff: c, word: Vec::new() }]
}

impl<F: Fn(&str) -> Option<usize>> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.source))
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut out = Vec::new();
        let mut sign = Scalar::one();
        match self.peek() {
            Some(Token::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            out.extend(t.into_iter().map(|r| RawTerm { coeff: &r.coeff * &sign, word: r.word }));
            match self.peek() {
                Some(Token::Plus) => {
                    sign = Scalar::one();
                    self.pos += 1;
                }
                Some(Token::Minus) => {
                    sign = -Scalar::one();
                    self.pos += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul_poly(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exp = match self.tokens.get(self.pos) {
            Some(Token::Num(n)) if n.is_integer() && n >= &Scalar::zero() => n.to_integer(),
            _ => return Err(self.err("exponent must be a nonnegative integer")),
        };
        self.pos += 1;
        let exp: u32 = exp.try_into().map_err(|_| self.err("exponent too large"))?;
        let mut acc = constant(Scalar::one());
        for _ in 0..exp {
            acc = mul_poly(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RawPoly> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(constant(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let idx = (self.lookup)(&name).ok_or(Error::UnknownGenerator(name))?;
                Ok(vec![RawTerm { coeff: Scalar::one(), word: vec![idx] }])
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.tokens.get(self.pos) != Some(&Token::RParen) {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, generator or `(`")),
        }
    }
}

/// Parses a polynomial string, resolving generator names through `lookup`.
pub fn parse_polynomial(s: &str, lookup: &impl Fn(&str) -> Option<usize>) -> Result<RawPoly> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { tokens, pos: 0, lookup, source: s };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, ratio};

    fn names(s: &str) -> Option<usize> {
        ["x", "y", "z_1"].iter().position(|n| *n == s)
    }

    #[test]
    fn products_keep_order() {
        let p = parse_polynomial("y*x", &names).unwrap();
        assert_eq!(p, vec![RawTerm { coeff: int(1), word: vec![1, 0] }]);
    }

    #[test]
    fn coefficients_and_powers() {
        let p = parse_polynomial(" -3/2 * x^2 + z_1 ", &names).unwrap();
        assert_eq!(p[0], RawTerm { coeff: ratio(-3, 2), word: vec![0, 0] });
        assert_eq!(p[1], RawTerm { coeff: int(1), word: vec![2] });
    }

    #[test]
    fn parentheses_expand() {
        let p = parse_polynomial("(x - y)^2", &names).unwrap();
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_polynomial("w", &names), Err(Error::UnknownGenerator("w".into())));
        assert!(matches!(parse_polynomial("x^", &names), Err(Error::Parse(_))));
        assert!(matches!(parse_polynomial("(x", &names), Err(Error::Parse(_))));
        assert!(matches!(parse_polynomial("", &names), Err(Error::Parse(_))));
        assert!(matches!(parse_polynomial("x $ y", &names), Err(Error::Parse(_))));
    }
}
