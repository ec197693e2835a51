//! Element expressions.
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := factor ('*'? factor)*
//! factor  := primary ('^*')*
//! primary := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Juxtaposition is multiplication. `IDENT` names a vertex or an edge; `e^*`
//! is the ghost edge. `i` is the imaginary unit unless the graph has a vertex
//! or edge named `i`. A term made only of scalars stands for that multiple of
//! the identity `Σ_v v`. Identifiers may contain `'` so primed names parse.

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraContext, AlgebraError, Element, Monomial};
use crate::graph::Graph;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Ghost,
    Open,
    Close,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, AlgebraError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'/' => Token::Slash,
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'^' => {
                if bytes.get(i + 1) != Some(&b'*') {
                    return Err(AlgebraError::Parse { position: i, message: "expected '*' after '^'".into() });
                }
                i += 1;
                Token::Ghost
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Token::Int(text[start..=i].parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_' || bytes[i + 1] == b'\'')
                {
                    i += 1;
                }
                Token::Ident(text[start..=i].to_owned())
            }
            _ => {
                return Err(AlgebraError::Parse { position: i, message: "unexpected character".into() });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

enum Value {
    Scalar(Scalar),
    Element(Element),
}

struct Parser<'a> {
    ctx: &'a AlgebraContext,
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse { position: self.position(), message: message.to_string() }
    }

    fn to_element(&self, v: Value) -> Element {
        match v {
            Value::Scalar(c) => self.ctx.unit().scale(&c),
            Value::Element(x) => x,
        }
    }

    fn add(&self, a: Value, b: Value, negate: bool) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if negate { x - y } else { x + y }),
            (a, b) => {
                let (a, b) = (self.to_element(a), self.to_element(b));
                Value::Element(if negate { &a - &b } else { &a + &b })
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Scalar(c), Value::Element(x)) | (Value::Element(x), Value::Scalar(c)) => {
                Value::Element(x.scale(&c))
            }
            (Value::Element(x), Value::Element(y)) => Value::Element(self.ctx.mul(&x, &y)),
        }
    }

    fn expr(&mut self) -> Result<Value, AlgebraError> {
        let negate = *self.peek() == Token::Minus;
        if negate {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = match acc {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Element(x) => Value::Element(-x),
            };
        }
        loop {
            let minus = match self.peek() {
                Token::Plus => false,
                Token::Minus => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = self.add(acc, rhs, minus);
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Token::Ident(_) | Token::Int(_) | Token::Open)
    }

    fn term(&mut self) -> Result<Value, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Token::Star {
                self.pos += 1;
                if !self.starts_factor() {
                    return Err(self.error("expected a factor after '*'"));
                }
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs);
        }
    }

    fn factor(&mut self) -> Result<Value, AlgebraError> {
        let mut value = self.primary()?;
        while *self.peek() == Token::Ghost {
            self.pos += 1;
            value = match value {
                Value::Scalar(c) => Value::Scalar(self.ctx.field().star(&c)),
                Value::Element(x) => Value::Element(self.ctx.star(&x)),
            };
        }
        Ok(value)
    }

    fn primary(&mut self) -> Result<Value, AlgebraError> {
        let at = self.position();
        match self.peek().clone() {
            Token::Int(n) => {
                self.pos += 1;
                let mut r = Rational::new(n, BigInt::one())?;
                if *self.peek() == Token::Slash {
                    self.pos += 1;
                    let Token::Int(d) = self.peek().clone() else {
                        return Err(self.error("expected denominator"));
                    };
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    self.pos += 1;
                    r = Rational::new(r.numer().clone(), d)?;
                }
                Ok(Value::Scalar(Scalar::real(r)))
            }
            Token::Ident(name) => {
                self.pos += 1;
                if let Some(x) = self.ctx.generator(&name) {
                    return Ok(Value::Element(x));
                }
                let graph = self.ctx.graph();
                if graph.vertex_id(&name).is_some() && graph.edge_id(&name).is_some() {
                    return Err(AlgebraError::Parse { position: at, message: alloc::format!("ambiguous identifier {name}") });
                }
                if name == "i" {
                    if !self.ctx.field().admits(&Scalar::i()) {
                        return Err(AlgebraError::Parse { position: at, message: "i is not in the coefficient field".into() });
                    }
                    return Ok(Value::Scalar(Scalar::i()));
                }
                Err(AlgebraError::Parse { position: at, message: alloc::format!("unknown generator {name}") })
            }
            Token::Open => {
                self.pos += 1;
                let inner = self.expr()?;
                if *self.peek() != Token::Close {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a generator, number or '('")),
        }
    }
}

pub(super) fn parse(ctx: &AlgebraContext, text: &str) -> Result<Element, AlgebraError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { ctx, tokens, pos: 0 };
    let value = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error("unexpected token"));
    }
    Ok(parser.to_element(value))
}

pub(super) fn monomial_text(graph: &Graph, m: &Monomial) -> String {
    if m.p.is_vertex() && m.q.is_vertex() {
        return graph.vertex_name(m.p.source()).to_string();
    }
    let mut parts: Vec<String> = m.p.edges().iter().map(|&e| graph.edge_name(e).to_string()).collect();
    parts.extend(m.q.edges().iter().rev().map(|&e| alloc::format!("{}^*", graph.edge_name(e))));
    parts.join(" ")
}

/// Text form of an element, accepted back by the parser.
pub struct ElementDisplay<'a> {
    ctx: &'a AlgebraContext,
    x: &'a Element,
}

impl<'a> ElementDisplay<'a> {
    pub(super) fn new(ctx: &'a AlgebraContext, x: &'a Element) -> Self {
        ElementDisplay { ctx, x }
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        let graph = self.ctx.graph();
        for (k, (m, c)) in self.x.terms().enumerate() {
            // Real and purely imaginary coefficients carry their sign outside.
            let (negative, magnitude) = if c.im.is_zero() {
                (c.re.is_negative(), Scalar::real(c.re.abs()))
            } else if c.re.is_zero() {
                (c.im.is_negative(), Scalar::new(Rational::zero(), c.im.abs()))
            } else {
                (false, c.clone())
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                if magnitude.re.is_zero() || magnitude.im.is_zero() {
                    write!(f, "{magnitude} ")?;
                } else {
                    write!(f, "({magnitude}) ")?;
                }
            }
            write!(f, "{}", monomial_text(graph, m))?;
        }
        Ok(())
    }
}
