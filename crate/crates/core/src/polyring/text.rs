//! Canonical polynomial text syntax.
//!
//! Printing: terms in decreasing grevlex order joined by ` + `; a term is
//! `c*x1^a1*...*xn^an` with `c` omitted when 1 and `^1` omitted. Zero prints
//! as `0`.
//!
//! Parsing accepts a superset: `+`, `-`, `*`, `^`, parentheses and integer
//! constants (reduced mod p).

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

impl PolyRing {
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        f.terms()
            .iter()
            .map(|(m, c)| self.format_term(m, *c))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn format_term(&self, m: &Monomial, c: u32) -> String {
        let mut factors = Vec::new();
        if c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(self.names()[i].clone()),
                _ => factors.push(format!("{}^{}", self.names()[i], e)),
            }
        }
        factors.join("*")
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.parse_at(text, 1, 1)
    }

    /// Parses `text`, reporting errors relative to the given line and column.
    pub fn parse_at(&self, text: &str, line: usize, column: usize) -> Result<Polynomial> {
        let mut p = Parser {
            ring: self,
            chars: text.chars().collect(),
            pos: 0,
            line,
            column,
        };
        p.skip_ws();
        if p.at_end() {
            return Err(p.error("empty polynomial"));
        }
        let f = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column + self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.power()?;
                acc = self.ring.multiply(&acc, &f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.unary()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let k = self.integer()?;
            if k < 0 {
                self.pos = start;
                return Err(self.error("negative exponent"));
            }
            return self.ring.pow(&base, k as u64);
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let f = self.unary()?;
                Ok(self.ring.neg(&f))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(self.ring.constant(k))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.names().iter().position(|n| *n == name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().map_err(|_| {
            let mut e = self.error("integer out of range");
            if let Error::Parse { column, .. } = &mut e {
                *column = self.column + start;
            }
            e
        })
    }
}
