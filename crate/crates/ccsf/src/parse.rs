//! Recursive-descent parser for the surface term grammar.
//!
//! ```text
//! term   := sum
//! sum    := par ('+' par)*
//! par    := prefix ('||' prefix)*
//! prefix := action '.' prefix | atom
//! atom   := '0' | ident | 'f' '(' term ',' term ')' | '(' term ')'
//! action := 'a' | "a'" | 'tau'
//! ```

use crate::action::Action;
use crate::error::{Error, Result};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Zero,
    Ident(String),
    Act(Action),
    F,
    LParen,
    RParen,
    Comma,
    Dot,
    Plus,
    Bar2,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Zero => "'0'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Act(a) => format!("action '{a}'"),
            Tok::F => "'f'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Bar2 => "'||'".into(),
            Tok::Eq => "'='".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn error_at(src: &str, offset: usize, message: String) -> Error {
    let (line, column) = position(src, offset);
    Error::Parse { line, column, message }
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'0' => lx.push(Tok::Zero, start),
                b'(' => lx.push(Tok::LParen, start),
                b')' => lx.push(Tok::RParen, start),
                b',' => lx.push(Tok::Comma, start),
                b'.' => lx.push(Tok::Dot, start),
                b'+' => lx.push(Tok::Plus, start),
                b'=' => lx.push(Tok::Eq, start),
                b'|' => {
                    if bytes.get(i + 1) == Some(&b'|') {
                        lx.push(Tok::Bar2, start);
                        i += 1;
                    } else {
                        return Err(error_at(src, start, "expected '||'".into()));
                    }
                }
                b'a'..=b'z' => {
                    let mut j = i;
                    while j < bytes.len() && matches!(bytes[j], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                        j += 1;
                    }
                    let word = &src[i..j];
                    let tok = match word {
                        "a" if bytes.get(j) == Some(&b'\'') => {
                            j += 1;
                            Tok::Act(Action::ABar)
                        }
                        "a" => Tok::Act(Action::A),
                        "tau" => Tok::Act(Action::Tau),
                        "f" => Tok::F,
                        _ => Tok::Ident(word.to_string()),
                    };
                    lx.push(tok, start);
                    i = j;
                    continue;
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(error_at(src, start, format!("unexpected character '{ch}'")));
                }
            }
            i += 1;
        }
        lx.push(Tok::Eof, src.len());
        Ok(lx.toks)
    }

    fn push(&mut self, t: Tok, at: usize) {
        self.toks.push((t, at));
    }
}

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> Result<Parser<'s>> {
        Ok(Parser { src, toks: Lexer::run(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let (tok, at) = &self.toks[self.pos];
        Err(error_at(self.src, *at, format!("expected {expected}, found {}", tok.describe())))
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&t.describe())
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.par()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::sum(t, self.par()?);
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term> {
        let mut t = self.prefix()?;
        while *self.peek() == Tok::Bar2 {
            self.bump();
            t = Term::par(t, self.prefix()?);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term> {
        if let Tok::Act(a) = *self.peek() {
            self.bump();
            if *self.peek() != Tok::Dot {
                return self.fail("'.' after action");
            }
            self.bump();
            let body = self.prefix()?;
            return Ok(Term::prefix(a, body));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Nil)
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::var(&x))
            }
            Tok::F => {
                self.bump();
                self.expect(Tok::LParen)?;
                let l = self.term()?;
                self.expect(Tok::Comma)?;
                let r = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::f(l, r))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail("a term"),
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

/// Parses a term.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(src: &str) -> Result<(Term, Term)> {
    let mut p = Parser::new(src)?;
    let l = p.term()?;
    p.expect(Tok::Eq)?;
    let r = p.term()?;
    p.finish()?;
    Ok((l, r))
}

/// Adjusts the position of an error produced while parsing a fragment that
/// starts at `line`, `col_offset` of a larger text.
pub(crate) fn relocate(e: Error, line: usize, col_offset: usize) -> Error {
    match e {
        Error::Parse { line: l, column, message } => Error::Parse {
            line: line + l - 1,
            column: if l == 1 { column + col_offset } else { column },
            message,
        },
        other => other,
    }
}
