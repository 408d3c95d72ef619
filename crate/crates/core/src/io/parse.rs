//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant, multiplication always explicit):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::polynomial::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { found: String, expected: &'static str },
    UnknownVariable(String),
    NegativeExponent,
    NonIntegerExponent,
    ExponentTooLarge(String),
    ZeroDenominator,
    InvalidCharacter(char),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected { found, expected } => write!(f, "unexpected {found}, expected {expected}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
            ParseErrorKind::NonIntegerExponent => f.write_str("non-integer exponent"),
            ParseErrorKind::ExponentTooLarge(e) => write!(f, "exponent {e} too large"),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::InvalidCharacter(c) => write!(f, "invalid character `{c}`"),
        }
    }
}

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Dot => "'.'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let single = match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '.' => Some(Tok::Dot),
            _ => None,
        };
        let tok = if let Some(t) = single {
            chars.next();
            col += 1;
            t
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            Tok::Ident(s)
        } else {
            return Err(ParseError {
                line: tl,
                column: tc,
                kind: ParseErrorKind::InvalidCharacter(c),
            });
        };
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error_here(ParseErrorKind::Unexpected {
            found: self.peek().describe(),
            expected,
        })
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
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

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp = match self.peek().clone() {
            Tok::Int(s) => {
                let e = s
                    .parse::<u32>()
                    .map_err(|_| self.error_here(ParseErrorKind::ExponentTooLarge(s.clone())))?;
                self.bump();
                if matches!(self.peek(), Tok::Dot | Tok::Slash) {
                    return Err(self.error_here(ParseErrorKind::NonIntegerExponent));
                }
                e
            }
            Tok::Minus => return Err(self.error_here(ParseErrorKind::NegativeExponent)),
            Tok::Dot | Tok::LParen | Tok::Ident(_) => return Err(self.error_here(ParseErrorKind::NonIntegerExponent)),
            _ => return Err(self.unexpected("nonnegative integer exponent")),
        };
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let n: BigInt = num.parse().expect("lexer yields digits");
                let d: BigInt = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(den) => {
                            let d: BigInt = den.parse().expect("lexer yields digits");
                            if d == BigInt::from(0) {
                                return Err(self.error_here(ParseErrorKind::ZeroDenominator));
                            }
                            self.bump();
                            d
                        }
                        _ => return Err(self.unexpected("integer denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(Polynomial::constant(self.nvars(), Rational::from_bigints(n, d)))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var(self.nvars(), i))
                }
                None => Err(self.error_here(ParseErrorKind::UnknownVariable(name))),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("number, variable or '('")),
        }
    }
}

/// Parses `text` as a polynomial in the variables `vars` (in order).
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, ParseError> {
    let owned: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    parse_poly_at(text, &owned, 1, 1)
}

/// As [`parse_poly`], reporting positions relative to `line`/`column`.
pub(crate) fn parse_poly_at(text: &str, vars: &[String], line: usize, column: usize) -> Result<Polynomial, ParseError> {
    let toks = lex(text, line, column)?;
    let mut p = Parser { toks, pos: 0, vars };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of expression"));
    }
    Ok(poly)
}
