//! Expression parser for the polynomial grammar.
//!
//! Grammar: identifiers from a caller-supplied list, integer and rational
//! literals `a/b`, operators `+ - * ^`, parentheses; whitespace is
//! insignificant. The printer in [`crate::poly`] emits the same grammar, so
//! `parse(print(p)) = p`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(Token, usize)>> {
        let mut lexer = Lexer { input: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some((token, at)) = lexer.next_token()? {
            out.push((token, at));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Token, usize)>> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.input.len() {
            return Ok(None);
        }
        let start = self.pos;
        let byte = self.input[self.pos];
        let token = match byte {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.input.len() && self.input[end].is_ascii_digit() {
                    end += 1;
                }
                let digits = std::str::from_utf8(&self.input[self.pos..end]).unwrap();
                self.pos = end;
                return Ok(Some((Token::Number(digits.parse().unwrap()), start)));
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = self.pos;
                while end < self.input.len()
                    && (self.input[end].is_ascii_alphanumeric() || self.input[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.input[self.pos..end]).unwrap().to_string();
                self.pos = end;
                return Ok(Some((Token::Ident(name), start)));
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((token, start)))
    }
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    vars: Vec<&'a str>,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.cursor).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if token.is_some() {
            self.cursor += 1;
        }
        token
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        let pos = self.position();
        match self.advance() {
            Some(t) if t == token => Ok(()),
            _ => Err(Error::Parse { pos, msg: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let arity = self.vars.len();
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.advance();
                negate = true;
            }
            Some(Token::Plus) => {
                self.advance();
            }
            _ => {}
        }
        let mut total = self.term()?;
        if negate {
            total = total.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    total = total.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.advance();
                    total = total.sub(&self.term()?);
                }
                _ => break,
            }
        }
        let _ = arity;
        Ok(total)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut product = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.advance();
            product = product.mul(&self.factor()?);
        }
        Ok(product)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.advance();
            let pos = self.position();
            match self.advance() {
                Some(Token::Number(n)) => {
                    let exponent = u32::try_from(n)
                        .map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
                    return Ok(base.pow(exponent));
                }
                _ => {
                    return Err(Error::Parse { pos, msg: "expected integer exponent".into() });
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        let arity = self.vars.len();
        let pos = self.position();
        match self.advance() {
            Some(Token::Number(n)) => {
                let mut value = Rat::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.advance();
                    let dpos = self.position();
                    match self.advance() {
                        Some(Token::Number(d)) => {
                            if d.is_zero() {
                                return Err(Error::Parse {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            value /= Rat::from_integer(d);
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos: dpos,
                                msg: "expected denominator".into(),
                            })
                        }
                    }
                }
                Ok(Poly::constant(arity, value))
            }
            Some(Token::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(index) => Ok(Poly::var(arity, index)),
                None => Err(Error::UnknownIdentifier { name, pos }),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some(Token::Minus) => Ok(self.primary()?.neg()),
            _ => Err(Error::Parse { pos, msg: "expected a value".into() }),
        }
    }
}

/// Parses `text` over the ordered variable list `vars`.
pub fn parse<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Poly> {
    let tokens = Lexer::tokens(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        vars: vars.iter().map(|s| s.as_ref()).collect(),
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.cursor < parser.tokens.len() {
        return Err(Error::Parse { pos: parser.position(), msg: "trailing input".into() });
    }
    Ok(poly)
}

/// Parses over the default names `x1..xn`.
pub fn parse_x(text: &str, arity: usize) -> Result<Poly> {
    parse(text, &crate::poly::default_names(arity))
}
