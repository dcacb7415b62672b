//! A small expression language for classes, e.g.
//! `c3(E)^2 - c2(E)*c4(E)` or `H^4*inc`.
//!
//! Atoms: integers; `cK(bundle)` for any bundle of the table, where a bare
//! number `j` abbreviates `tautj`; `eK` for `cK(E)`; and the named classes
//! `H`, `inc`, `lin`, `Delta0`, `Delta2`, `Delta4`, `Delta6`, `integrand`.
//! Operators `+ - * ^` with the usual precedence, and parentheses.

use crate::error::{Error, Result};
use crate::localization::{EquivariantClass, Localizer};
use crate::table::BUNDLE_E;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(u64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().map_err(|_| Error::Parse(format!("number `{s}` too large")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    loc: &'a Localizer,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{op}` at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<EquivariantClass> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<EquivariantClass> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<EquivariantClass> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let n = u32::try_from(*n).map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(n));
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<EquivariantClass> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(n)) => {
                let n = i64::try_from(n).map_err(|_| Error::Parse("integer too large".into()))?;
                Ok(self.loc.constant(n))
            }
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => self.named(&name),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }

    fn named(&mut self, name: &str) -> Result<EquivariantClass> {
        let index = |s: &str| s.parse::<usize>().ok();
        match name {
            "H" => return self.loc.h(),
            "inc" => return Ok(self.loc.inc_lin()?.0),
            "lin" => return Ok(self.loc.inc_lin()?.1),
            "integrand" => return self.loc.ultimate_integrand(),
            _ => {}
        }
        if let Some(k) = name.strip_prefix("Delta").and_then(index) {
            return self.loc.delta(k as u32);
        }
        if let Some(k) = name.strip_prefix('e').and_then(index) {
            return self.loc.chern(BUNDLE_E, k);
        }
        if let Some(k) = name.strip_prefix('c').and_then(index) {
            self.expect('(')?;
            let bundle = match self.tokens.get(self.pos).cloned() {
                Some(Token::Ident(b)) => b,
                Some(Token::Num(j)) => format!("taut{j}"),
                _ => return Err(Error::Parse(format!("{name}( needs a bundle name"))),
            };
            self.pos += 1;
            self.expect(')')?;
            return self.loc.chern(&bundle, k);
        }
        Err(Error::UnknownClass(name.into()))
    }
}

/// Parses `src` and assembles the class it names over `loc`'s table.
pub fn evaluate(src: &str, loc: &Localizer) -> Result<EquivariantClass> {
    let mut parser = Parser { tokens: tokenize(src)?, pos: 0, loc };
    let cls = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(cls)
}
