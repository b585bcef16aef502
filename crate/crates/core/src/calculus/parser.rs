//! Recursive-descent parser for the object grammar:
//!
//! ```text
//! expr := "0" | "O(" divisor ")" | "OE(" int "," int ")"
//!       | "shift(" expr "," int ")" | "sum(" expr ("," expr)* ")"
//!       | "cone(" expr "," expr ["," provenance] ")"
//!       | "L(" expr "," expr ")" | "R(" expr "," expr ")" | name
//! ```

use crate::error::ParseError;
use crate::geometry::{DivisorClass, SurfaceDivisor};

use super::object::{Atom, Expr, Provenance};

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Whether `s` can be bound as a name.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s)
}

const KEYWORDS: [&str; 7] = ["O", "OE", "shift", "sum", "cone", "L", "R"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphanumeric() || c == '_' || (i == 0 && c.is_ascii_alphabetic())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 || rest.starts_with(|c: char| c.is_ascii_digit()) {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let mut len = 0;
        if rest.starts_with(['-', '+']) {
            len = 1;
        }
        len += rest[len..].chars().take_while(char::is_ascii_digit).count();
        let text = &rest[..len];
        let n = text.parse().map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok(n)
    }

    /// Text up to the matching close parenthesis of an already-consumed `(`.
    fn until_close(&mut self) -> Result<(&'a str, usize), ParseError> {
        let start = self.pos;
        let end = self.rest().find(')').ok_or_else(|| self.error("unclosed `(`"))?;
        self.pos += end + 1;
        Ok((&self.src[start..start + end], start))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.rest().starts_with('0') {
            self.pos += 1;
            return Ok(Expr::Zero);
        }
        let at = self.pos;
        let Some(word) = self.identifier() else {
            return Err(self.error("expected an object expression"));
        };
        self.skip_ws();
        if !self.rest().starts_with('(') {
            if KEYWORDS.contains(&word) {
                return Err(ParseError::new(at, format!("`{word}` needs an argument list")));
            }
            return Ok(Expr::Name(word.to_string()));
        }
        self.pos += 1;
        let e = match word {
            "O" => {
                let (text, start) = self.until_close()?;
                let d: DivisorClass = text
                    .parse()
                    .map_err(|e: ParseError| ParseError::new(start + e.position, e.message))?;
                return Ok(Expr::Atom(Atom::Line(d)));
            }
            "OE" => {
                let d = self.integer()?;
                self.expect(',')?;
                let e = self.integer()?;
                Expr::Atom(Atom::OnE(SurfaceDivisor::new(d, e)))
            }
            "shift" => {
                let x = self.expr()?;
                self.expect(',')?;
                let n = self.integer()?;
                Expr::Shift(Box::new(x), n)
            }
            "sum" => {
                let mut xs = vec![self.expr()?];
                while self.eat(',') {
                    xs.push(self.expr()?);
                }
                Expr::Sum(xs)
            }
            "cone" => {
                let s = self.expr()?;
                self.expect(',')?;
                let t = self.expr()?;
                let provenance = if self.eat(',') {
                    self.skip_ws();
                    let kw_at = self.pos;
                    let kw = self.identifier().unwrap_or("");
                    Provenance::from_keyword(kw)
                        .ok_or_else(|| ParseError::new(kw_at, format!("unknown provenance `{kw}`")))?
                } else {
                    Provenance::Unspecified
                };
                Expr::Cone { source: Box::new(s), target: Box::new(t), provenance }
            }
            "L" | "R" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if word == "L" {
                    Expr::Left(Box::new(a), Box::new(b))
                } else {
                    Expr::Right(Box::new(a), Box::new(b))
                }
            }
            other => return Err(ParseError::new(at, format!("unknown constructor `{other}`"))),
        };
        self.expect(')')?;
        Ok(e)
    }
}
