//! Literal grammar for field elements.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := atom ['^' exponent]
//! atom     := integer | 't' | '(' expr ')'
//! exponent := ['-'] integer ['/' integer] | '(' rational arithmetic ')'
//! ```
//!
//! A bare rational exponent binds tightly, so `t^1/2` is `τ^(1/2)` and
//! `3/2*t` is `(3/2)·τ`. Only `t` may carry a non-integer exponent.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{FieldElement, FieldError, Rational};

pub fn parse_literal(input: &str) -> Result<FieldElement, FieldError> {
    let mut p = Parser {
        src: input,
        chars: input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(_, c)| c)
            .collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(p.err("empty literal"));
    }
    let x = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err(&format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(x)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> FieldError {
        FieldError::Parse {
            input: self.src.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<FieldElement, FieldError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement, FieldError> {
        let is_tau = self.peek() == Some('t');
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_tau {
            return Ok(FieldElement::tau_pow(&e));
        }
        if !e.is_integer() {
            return Err(self.err("only t may have a non-integer exponent"));
        }
        let e = e
            .to_integer()
            .to_i32()
            .ok_or_else(|| self.err("exponent out of range"))?;
        base.pow(e)
    }

    fn atom(&mut self) -> Result<FieldElement, FieldError> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(FieldElement::tau())
            }
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => Ok(FieldElement::from_rational(self.integer()?)),
            Some(c) => Err(self.err(&format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<Rational, FieldError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
        Ok(Rational::from_integer(n))
    }

    fn exponent(&mut self) -> Result<Rational, FieldError> {
        if self.eat('(') {
            let e = self.rat_expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        let negative = self.eat('-');
        let mut e = self.integer()?;
        if self.eat('/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero exponent denominator"));
            }
            e /= d;
        }
        Ok(if negative { -e } else { e })
    }

    fn rat_expr(&mut self) -> Result<Rational, FieldError> {
        let negate = self.eat('-');
        let mut acc = self.rat_term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc += self.rat_term()?;
            } else if self.eat('-') {
                acc -= self.rat_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn rat_term(&mut self) -> Result<Rational, FieldError> {
        let mut acc = self.rat_atom()?;
        loop {
            if self.eat('*') {
                acc *= self.rat_atom()?;
            } else if self.eat('/') {
                let d = self.rat_atom()?;
                if d.is_zero() {
                    return Err(self.err("division by zero in exponent"));
                }
                acc /= d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn rat_atom(&mut self) -> Result<Rational, FieldError> {
        if self.eat('(') {
            let e = self.rat_expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.eat('-') {
            return Ok(-self.rat_atom()?);
        }
        self.integer()
    }
}
