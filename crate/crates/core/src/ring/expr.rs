//! Parser for product expressions over ring elements.
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := atom ('^' digits)?
//! atom   := '(' expr ')' | integer | variable | class | name
//! class  := 'r0' | 'r[' ints ';' ints ']' | 'ra[' m ',' n ',' alpha ']'
//! name   := y_j | y_i | y_ji | y_{j,i} | z_j | z_i | z_ji | z_{j,i}
//!         | y_j[a] | 'y_j[a] | z_j[a] | z_i[b] | 'z_i[b]
//! ```
//!
//! A flavor list of the single entry `0` stands for the zero vector. Named
//! elements need the two-node model; classes and variables work for any
//! abelian theory.

use std::sync::Arc;

use super::two_node::{Named, TwoNode};
use super::{AbelianRing, ClassIndex, RingElement};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::rat;

const MAX_DEPTH: usize = 32;
const MAX_EXPONENT: u32 = 32;
const MAX_ENTRY: i64 = 64;
const MAX_INDEX: i64 = 4096;
const MAX_DEGREE: u32 = 48;

pub struct ExprContext {
    ring: Arc<AbelianRing>,
    two_node: Option<TwoNode>,
}

impl ExprContext {
    pub fn new(ring: Arc<AbelianRing>) -> Self {
        ExprContext { ring, two_node: None }
    }

    pub fn two_node(model: TwoNode) -> Self {
        ExprContext {
            ring: model.ring().clone(),
            two_node: Some(model),
        }
    }

    pub fn ring(&self) -> &Arc<AbelianRing> {
        &self.ring
    }

    pub fn parse(&self, input: &str) -> Result<RingElement> {
        let mut p = Parser {
            ctx: self,
            src: input.as_bytes(),
            pos: 0,
            depth: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ctx: &'a ExprContext,
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RingElement> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = self.multiply(&acc, &rhs)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            if !(0..=MAX_EXPONENT as i64).contains(&e) {
                return Err(self.error(&format!("exponent must lie in 0..={MAX_EXPONENT}")));
            }
            let mut out = RingElement::one(&self.ctx.ring);
            for _ in 0..e {
                out = self.multiply(&out, &base)?;
            }
            return Ok(out);
        }
        Ok(base)
    }

    /// `a · b`, refused before expansion if an index or a coefficient
    /// degree would leave the parser's limits.
    fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let ring = &self.ctx.ring;
        for (ia, pa) in a.terms() {
            for (ib, pb) in b.terms() {
                let sum = ia.add(ib);
                if sum.gauge.iter().chain(&sum.flavor).any(|k| k.abs() > MAX_INDEX) {
                    return Err(self.error("class index too large"));
                }
                let degree = pa.total_degree().unwrap_or(0)
                    + pb.total_degree().unwrap_or(0)
                    + ring.pairing_exponents(ia, ib).iter().sum::<u32>();
                if degree > MAX_DEGREE {
                    return Err(self.error(&format!("coefficient degree exceeds {MAX_DEGREE}")));
                }
            }
        }
        a.multiply(b)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.error("expected integer")
        })
    }

    fn int_list(&mut self, end: &[u8]) -> Result<Vec<i64>> {
        let mut out = vec![self.bounded()?];
        while self.eat(b',') {
            out.push(self.bounded()?);
        }
        self.skip_ws();
        if !self.peek().is_some_and(|c| end.contains(&c)) {
            return Err(self.error("unterminated index list"));
        }
        Ok(out)
    }

    fn bounded(&mut self) -> Result<i64> {
        let k = self.integer()?;
        if k.abs() > MAX_ENTRY {
            return Err(self.error(&format!("index entries are limited to ±{MAX_ENTRY}")));
        }
        Ok(k)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else if c == b'{' {
                match self.src[self.pos..].iter().position(|&d| d == b'}') {
                    Some(k) => self.pos += k + 1,
                    None => break,
                }
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RingElement> {
        self.skip_ws();
        let ring = &self.ctx.ring;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let k = self.integer()?;
                RingElement::scalar(ring, Poly::constant(ring.nvars(), rat(k)))
            }
            Some(_) => {
                let start = self.pos;
                let name = self.ident();
                if name.is_empty() {
                    return Err(self.error("unexpected character"));
                }
                if let Some(v) = ring.variable(&name) {
                    return RingElement::scalar(ring, v);
                }
                match name.as_str() {
                    "r0" => return Ok(RingElement::one(ring)),
                    "r" => return self.class(),
                    _ => {}
                }
                let Some(model) = &self.ctx.two_node else {
                    self.pos = start;
                    return Err(self.error(&format!("unknown name '{name}'")));
                };
                let named = self.named(&name, start)?;
                model.named(named)
            }
        }
    }

    fn class(&mut self) -> Result<RingElement> {
        let ring = &self.ctx.ring;
        self.expect(b'[')?;
        let gauge = self.int_list(b";")?;
        self.expect(b';')?;
        let mut flavor = self.int_list(b"]")?;
        self.expect(b']')?;
        let rank = ring.theory().flavor_rank;
        if flavor == [0] {
            flavor = vec![0; rank];
        }
        RingElement::basis(ring, ClassIndex::new(gauge, flavor))
    }

    fn section_arg(&mut self) -> Result<usize> {
        self.expect(b'[')?;
        let k = self.bounded()?;
        self.expect(b']')?;
        usize::try_from(k).map_err(|_| self.error("section index must be nonnegative"))
    }

    fn named(&mut self, name: &str, start: usize) -> Result<Named> {
        let section = {
            self.skip_ws();
            self.peek() == Some(b'[')
        };
        Ok(match (name, section) {
            ("y_j", false) => Named::Yj,
            ("y_i", false) => Named::Yi,
            ("y_ji" | "y_{j,i}", false) => Named::Yji,
            ("z_j", false) => Named::Zj,
            ("z_i", false) => Named::Zi,
            ("z_ji" | "z_{j,i}", false) => Named::Zji,
            ("y_j", true) => Named::YjSection(self.section_arg()?),
            ("'y_j" | "yp_j", true) => Named::YjiSection(self.section_arg()?),
            ("z_j", true) => Named::ZjSection(self.section_arg()?),
            ("z_i", true) => Named::ZiSection(self.section_arg()?),
            ("'z_i" | "zp_i", true) => Named::ZjiSection(self.section_arg()?),
            ("ra", true) => {
                self.expect(b'[')?;
                let m = self.bounded()?;
                self.expect(b',')?;
                let n = self.bounded()?;
                self.expect(b',')?;
                let a = self.bounded()?;
                self.expect(b']')?;
                let alpha = usize::try_from(a).map_err(|_| self.error("alpha must be nonnegative"))?;
                Named::R { m, n, alpha }
            }
            _ => {
                self.pos = start;
                return Err(self.error(&format!("unknown name '{name}'")));
            }
        })
    }
}

/// Parses `expr` in the ring of `theory`, enabling named elements when the
/// theory is a two-node preset.
pub fn parse_ring_expr(ctx: &ExprContext, expr: &str) -> Result<RingElement> {
    ctx.parse(expr)
}
