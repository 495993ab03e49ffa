use std::fmt;

use thiserror::Error;

use super::ast::{Equation, QuasiIdentity, Term};
use crate::algebra::{is_variable_name, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {}: expected {expected}, found {found}", Position(*.position))]
    Syntax {
        position: Option<usize>,
        expected: String,
        found: String,
    },
    #[error("unknown symbol `{name}` at offset {position}")]
    UnknownSymbol { position: usize, name: String },
    #[error("symbol `{name}` at offset {position} expects {expected} argument(s), found {found}")]
    ArityMismatch {
        position: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

struct Position(Option<usize>);

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(p) => write!(f, "offset {p}"),
            None => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Amp,
    Implies,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Implies => f.write_str("`=>`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b',' => out.push((Tok::Comma, start)),
            b'&' => out.push((Tok::Amp, start)),
            b'=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 1;
                    out.push((Tok::Implies, start));
                } else {
                    out.push((Tok::Eq, start));
                }
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: Some(start),
                    expected: "a term, `=`, `&` or `=>`".into(),
                    found: format!("`{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> Option<usize> {
        self.toks.get(self.pos).map(|(_, p)| *p)
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            expected: expected.to_string(),
            found: self
                .peek()
                .map_or_else(|| "end of input".to_string(), |t| t.to_string()),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let Some((Tok::Ident(name), at)) = self.toks.get(self.pos).cloned() else {
            return Err(self.error("a term"));
        };
        self.pos += 1;
        if is_variable_name(&name) {
            let index = name[1..].parse::<usize>().map_err(|_| ParseError::Syntax {
                position: Some(at),
                expected: "a variable index that fits in memory".into(),
                found: format!("`{name}`"),
            })?;
            return Ok(Term::Var(index));
        }
        if name.as_bytes()[0].is_ascii_digit() {
            return Err(ParseError::Syntax {
                position: Some(at),
                expected: "a term".into(),
                found: format!("`{name}`"),
            });
        }
        let op = self.sig.index_of(&name).ok_or_else(|| ParseError::UnknownSymbol {
            position: at,
            name: name.clone(),
        })?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            args.push(self.term()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`,` or `)`")?;
        }
        let expected = self.sig.arity(op);
        if args.len() != expected {
            return Err(ParseError::ArityMismatch {
                position: at,
                name,
                expected,
                found: args.len(),
            });
        }
        Ok(Term::App(op, args))
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let lhs = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.term()?;
        Ok(Equation { lhs, rhs })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

/// Parses `eq ("&" eq)* "=>" eq | eq`.
pub fn parse_quasi_identity(text: &str, sig: &Signature) -> Result<QuasiIdentity, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let mut eqs = vec![p.equation()?];
    while p.peek() == Some(&Tok::Amp) {
        p.pos += 1;
        eqs.push(p.equation()?);
    }
    if p.peek() == Some(&Tok::Implies) {
        p.pos += 1;
        let conclusion = p.equation()?;
        p.finish()?;
        return Ok(QuasiIdentity::new(eqs, conclusion));
    }
    if eqs.len() > 1 {
        return Err(p.error("`=>`"));
    }
    p.finish()?;
    Ok(QuasiIdentity::identity(eqs.pop().unwrap()))
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(text: &str, sig: &Signature) -> Result<Equation, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}
