//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant, implicit multiplication rejected):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! A single unary minus is allowed before a term.

use std::fmt;

use num::{BigInt, Zero};

use super::{Polynomial, Rational, VarContext};

/// Parse failure with a 1-based character position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let position = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                tokens.push((position, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((position, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((position, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((position, Token::Slash));
                i += 1;
            }
            '^' => {
                tokens.push((position, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((position, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((position, Token::RParen));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push((position, Token::Int(digits.parse().unwrap())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((position, Token::Ident(chars[start..i].iter().collect())));
            }
            other => return err(position, format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    index: usize,
    eof_position: usize,
    context: &'a VarContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.index)
            .map(|(p, _)| *p)
            .unwrap_or(self.eof_position)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.index).map(|(_, t)| t.clone());
        if token.is_some() {
            self.index += 1;
        }
        token
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.signed_term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.signed_term()?;
                }
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    return err(
                        self.position(),
                        "implicit multiplication is not allowed; insert `*`",
                    );
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Polynomial, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            Ok(-&self.term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if !matches!(self.peek(), Some(Token::Caret)) {
            return Ok(base);
        }
        self.bump();
        let position = self.position();
        match self.bump() {
            Some(Token::Int(n)) => match u32::try_from(&n) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => err(position, "exponent too large"),
            },
            Some(Token::Minus) => err(position, "negative exponent is not allowed"),
            _ => err(position, "exponent must be an unsigned integer"),
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let position = self.position();
        match self.bump() {
            Some(Token::Int(numer)) => {
                if !matches!(self.peek(), Some(Token::Slash)) {
                    let value = Rational::from_integer(numer);
                    return Ok(Polynomial::constant(self.context.clone(), value));
                }
                self.bump();
                let denom_position = self.position();
                match self.bump() {
                    Some(Token::Int(denom)) => {
                        if denom.is_zero() {
                            err(denom_position, "denominator must be nonzero")
                        } else {
                            let value = Rational::new(numer, denom);
                            Ok(Polynomial::constant(self.context.clone(), value))
                        }
                    }
                    _ => err(denom_position, "expected an unsigned integer after `/`"),
                }
            }
            Some(Token::Ident(name)) => match self.context.index_of(&name) {
                Some(index) => Ok(Polynomial::var(self.context.clone(), index)),
                None => err(position, format!("unknown variable `{name}`")),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close_position = self.position();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => err(close_position, "expected `)`"),
                }
            }
            _ => err(
                position,
                "expected a number, a variable, or a parenthesized expression",
            ),
        }
    }
}

/// Parses a polynomial expression over the given context.
pub fn parse_poly(text: &str, context: &VarContext) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        eof_position: text.chars().count() + 1,
        context,
    };
    let poly = parser.expr()?;
    match parser.peek() {
        None => Ok(poly),
        Some(Token::RParen) => err(parser.position(), "unmatched `)`"),
        Some(_) => err(parser.position(), "unexpected token"),
    }
}
