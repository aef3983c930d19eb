//! Parser for the textual form printed by `RatFunc`'s `Display`:
//! integers, the variables `d m j r`, `+ - * / ^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::VAR_NAMES;
use super::{CoeffError, RatFunc};

pub fn parse_rational(s: &str) -> Result<BigRational, CoeffError> {
    let f = parse_ratfunc(s)?;
    f.to_rational()
        .ok_or_else(|| CoeffError::Parse(format!("`{s}` is not a rational constant")))
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, CoeffError> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CoeffError::Parse(format!("trailing input in `{s}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CoeffError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("ascii digits")));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if let Some(v) = VAR_NAMES.iter().position(|n| n.starts_with(c)) {
            out.push(Tok::Var(v));
            i += 1;
        } else {
            return Err(CoeffError::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, CoeffError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| CoeffError::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(CoeffError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, CoeffError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(RatFunc::from_rational(&BigRational::from_integer(k)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RatFunc::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(CoeffError::Parse("unbalanced parentheses".into()));
                }
                Ok(inner)
            }
            other => Err(CoeffError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
