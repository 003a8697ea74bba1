//! Text syntax for polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := atom ('^' integer)?
//! atom    := number ('/' number)? | identifier | '(' expr ')'
//! ```
//!
//! `^` binds tightest, so `-x^2` is `-(x^2)`. There is no implicit
//! multiplication and `/` only appears inside rational literals.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Rational;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Num(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(s)
        } else {
            chars.next();
            column += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: at.line, column: at.column, message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        match &self.peek().tok {
            Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                let at = self.peek().clone();
                self.error(&at, "implicit multiplication is not allowed; use '*'")
            }
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        let exp = match at.tok {
            Tok::Num(ref n) => n.clone(),
            _ => return self.error(&at, "exponent must be a non-negative integer literal"),
        };
        let exp: u32 = match u32::try_from(&exp) {
            Ok(e) => e,
            Err(_) => return self.error(&at, "exponent too large"),
        };
        if self.peek().tok == Tok::Caret {
            let at = self.peek().clone();
            return self.error(&at, "chained exponents are ambiguous; add parentheses");
        }
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.bump();
        match at.tok {
            Tok::Num(ref n) => {
                let mut value = Rational::from_integer(n.clone());
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let den_tok = self.bump();
                    let den = match den_tok.tok {
                        Tok::Num(ref d) => d.clone(),
                        _ => return self.error(&den_tok, "expected denominator after '/'"),
                    };
                    if den.is_zero() {
                        return self.error(&den_tok, "zero denominator");
                    }
                    value = Rational::new(n.clone(), den);
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Tok::Ident(ref name) => match self.ring.index_of(name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => Err(Error::UnknownVariable { name: name.clone(), line: at.line, column: at.column }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.error(&at, "unexpected end of input"),
            ref other => self.error(&at, format!("unexpected token {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::Slash => "'/'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parses `text` in the given ring.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return p.error(&end, format!("unexpected {}", describe(&end.tok)));
    }
    Ok(out)
}

/// Identifiers occurring in `text`, sorted and deduplicated.
pub fn identifiers(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = tokenize(text)?
        .into_iter()
        .filter_map(|t| match t.tok {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    Ok(names)
}

/// Parses with the ring given by `vars`, or by the sorted identifiers of `text`.
pub fn parse_with_vars(text: &str, vars: Option<&[String]>) -> Result<Polynomial> {
    let ring = match vars {
        Some(v) => Ring::new(v)?,
        None => {
            let names = identifiers(text)?;
            if names.is_empty() {
                return Err(Error::InvalidInput("no variables; pass an explicit variable list".into()));
            }
            Ring::new(&names)?
        }
    };
    parse_polynomial(text, &ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::rational;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names).unwrap()
    }

    #[test]
    fn standard_examples_parse() {
        let r = ring(&["x", "y", "w"]);
        assert_eq!(parse_polynomial("x^2*y^2 + w^2", &r).unwrap().num_terms(), 2);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        let cusp = parse_polynomial("(y^2 - x^3)^2 + w^2", &r).unwrap();
        let hand = parse_polynomial("y^4 - 2*x^3*y^2 + x^6 + w^2", &r).unwrap();
        assert_eq!(cusp, hand);
        assert_eq!(cusp.num_terms(), 4);
    }

    #[test]
    fn precedence_and_literals() {
        let r = ring(&["x"]);
        assert_eq!(parse_polynomial("-x^2", &r).unwrap(), -&parse_polynomial("x^2", &r).unwrap());
        let half = parse_polynomial("1/2*x", &r).unwrap();
        assert_eq!(half.terms().next().unwrap().1, &rational(1, 2));
        assert_eq!(parse_polynomial("(1/2)^2", &r).unwrap().constant_term(), rational(1, 4));
        assert_eq!(parse_polynomial("2 - -x", &r).unwrap(), parse_polynomial("x + 2", &r).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(&["x", "y"]);
        match parse_polynomial("x +\n  2 y", &r) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x + z", &r) {
            Err(Error::UnknownVariable { name, column, .. }) => {
                assert_eq!(name, "z");
                assert_eq!(column, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x^", &r).is_err());
        assert!(parse_polynomial("x^2^3", &r).is_err());
        assert!(parse_polynomial("(x + y", &r).is_err());
        assert!(parse_polynomial("x / y", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
        assert!(parse_polynomial("x # y", &r).is_err());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let r = ring(&["x"]);
        let p = parse_polynomial("123456789012345678901234567890*x", &r).unwrap();
        assert_eq!(p.to_string(), "123456789012345678901234567890*x");
    }

    #[test]
    fn inferred_ring_is_sorted() {
        let p = parse_with_vars("x^2*y^2 + w^2", None).unwrap();
        assert_eq!(p.ring().names(), &["w", "x", "y"]);
    }
}
