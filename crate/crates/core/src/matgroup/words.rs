//! Group words and relations such as `T^3=U^8=(UT)^2=1` or `TU^4=U^4T`.
//!
//! A symbol is a letter followed by optional digits; juxtaposition is
//! multiplication, `^k` a (possibly negative) power, `[a,b]` the commutator
//! `a b a⁻¹ b⁻¹`. Unicode superscripts are accepted for exponents.

use std::collections::HashMap;

use super::GL2Element;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    One,
    Symbol(String),
    Group(Vec<(Atom, i64)>),
    Commutator(Vec<(Atom, i64)>, Vec<(Atom, i64)>),
}

/// A relation `w₀ = w₁ = … = w_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    parts: Vec<Vec<(Atom, i64)>>,
}

fn desuperscript(s: &str) -> String {
    let mut out = String::new();
    let mut in_sup = false;
    for ch in s.chars() {
        let mapped = match ch {
            '⁰' => Some('0'),
            '¹' => Some('1'),
            '²' => Some('2'),
            '³' => Some('3'),
            '⁴' => Some('4'),
            '⁵' => Some('5'),
            '⁶' => Some('6'),
            '⁷' => Some('7'),
            '⁸' => Some('8'),
            '⁹' => Some('9'),
            '⁻' => Some('-'),
            _ => None,
        };
        match mapped {
            Some(d) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(d);
            }
            None => {
                in_sup = false;
                if !ch.is_whitespace() {
                    out.push(ch);
                }
            }
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self) -> Error {
        Error::Parse(format!("bad word '{}' at position {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Vec<(Atom, i64)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' || c == b',' || c == b']' {
                break;
            }
            let atom = self.atom()?;
            let exp = self.exponent()?;
            out.push((atom, exp));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(Atom::Group(w))
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                if self.peek() != Some(b',') {
                    return Err(self.err());
                }
                self.pos += 1;
                let b = self.word()?;
                if self.peek() != Some(b']') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(Atom::Commutator(a, b))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Atom::One)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == b'\'') {
                    self.pos += 1;
                }
                Ok(Atom::Symbol(self.src[start..self.pos].to_string()))
            }
            _ => Err(self.err()),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let v: i64 = self.src[start..self.pos].parse().map_err(|_| self.err())?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err());
            }
            self.pos += 1;
        }
        Ok(v)
    }
}

impl Relation {
    pub fn parse(text: &str) -> Result<Relation> {
        let clean = desuperscript(text);
        let mut parts = Vec::new();
        for piece in clean.split('=') {
            let mut p = Parser { s: piece.as_bytes(), pos: 0, src: piece };
            let w = p.word()?;
            if p.pos != piece.len() || w.is_empty() {
                return Err(Error::Parse(format!("bad relation '{text}'")));
            }
            parts.push(w);
        }
        if parts.len() < 2 {
            parts.push(vec![(Atom::One, 1)]);
        }
        Ok(Relation { parts })
    }

    /// Symbols used by the relation.
    pub fn symbols(&self) -> Vec<String> {
        fn walk(w: &[(Atom, i64)], out: &mut Vec<String>) {
            for (a, _) in w {
                match a {
                    Atom::Symbol(s) => out.push(s.clone()),
                    Atom::Group(w) => walk(w, out),
                    Atom::Commutator(x, y) => {
                        walk(x, out);
                        walk(y, out);
                    }
                    Atom::One => {}
                }
            }
        }
        let mut out = Vec::new();
        for p in &self.parts {
            walk(p, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Checks the relation in an arbitrary group given by `mul`, `inv` and `one`.
    pub fn holds_in<E: Clone + PartialEq>(
        &self,
        lookup: &dyn Fn(&str) -> Option<E>,
        mul: &dyn Fn(&E, &E) -> E,
        inv: &dyn Fn(&E) -> E,
        one: &E,
    ) -> Result<bool> {
        let values: Vec<E> = self.parts.iter().map(|w| eval(w, lookup, mul, inv, one)).collect::<Result<_>>()?;
        Ok(values.windows(2).all(|w| w[0] == w[1]))
    }
}

fn eval<E: Clone>(
    w: &[(Atom, i64)],
    lookup: &dyn Fn(&str) -> Option<E>,
    mul: &dyn Fn(&E, &E) -> E,
    inv: &dyn Fn(&E) -> E,
    one: &E,
) -> Result<E> {
    let mut acc = one.clone();
    for (atom, e) in w {
        let base = match atom {
            Atom::One => one.clone(),
            Atom::Symbol(s) => lookup(s).ok_or_else(|| Error::Usage(format!("unknown symbol '{s}'")))?,
            Atom::Group(inner) => eval(inner, lookup, mul, inv, one)?,
            Atom::Commutator(a, b) => {
                let x = eval(a, lookup, mul, inv, one)?;
                let y = eval(b, lookup, mul, inv, one)?;
                mul(&mul(&x, &y), &mul(&inv(&x), &inv(&y)))
            }
        };
        let b = if *e < 0 { inv(&base) } else { base };
        for _ in 0..e.unsigned_abs() {
            acc = mul(&acc, &b);
        }
    }
    Ok(acc)
}

/// True iff every relation holds for the assigned matrices.
pub fn check_relations(assignments: &HashMap<String, GL2Element>, relations: &[&str]) -> Result<bool> {
    let lookup = |s: &str| assignments.get(s).cloned();
    let mul = |a: &GL2Element, b: &GL2Element| a.mul(b);
    let inv = |a: &GL2Element| a.inv().expect("invertible");
    for r in relations {
        let rel = Relation::parse(r)?;
        if !rel.holds_in(&lookup, &mul, &inv, &GL2Element::identity())? {
            return Ok(false);
        }
    }
    Ok(true)
}
