//! Sparse multivariate polynomials with rational coefficients.
//!
//! Used for equivariant-parameter coefficients of ring elements, for the
//! plane polynomials behind Kleinian semi-invariants and for the quadric
//! model. Monomials are exponent vectors compared lexicographically, so the
//! last entry of the `BTreeMap` is the lex-leading term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::series::{rat, Rational};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(exp, Rational::one())
    }

    pub fn monomial(exp: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Linear form `Σ coeffs[i] * var_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut exp = vec![0; n];
            exp[i] = 1;
            p.add_term(exp, rat(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_one() && m.iter().all(|&e| e == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: Monomial, c: Rational) {
        assert_eq!(exp.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Multiplies by the monomial `exp` with coefficient one.
    pub fn shift(&self, exp: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    term = term.mul(&img.pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Re-embeds into a ring with more (trailing) variables.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.resize(nvars, 0);
                    (m, c.clone())
                })
                .collect(),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder
    /// under the lexicographic order.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !m.iter().zip(&lm).all(|(a, b)| a >= b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let qc = c / &lc;
            let step = Poly::monomial(qm, qc);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut g = first.clone();
        for m in it {
            for (a, b) in g.iter_mut().zip(m) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Text rendering with the given variable names; positive terms first so
    /// a linear form `-w_j + w_i` prints as `w_i - w_j`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(ma, ca), (mb, cb)| {
            ca.is_negative()
                .cmp(&cb.is_negative())
                .then_with(|| {
                    mb.iter().sum::<u32>().cmp(&ma.iter().sum::<u32>())
                })
                .then_with(|| mb.cmp(ma))
        });
        let mut out = String::new();
        for (idx, (m, c)) in entries.into_iter().enumerate() {
            let body = render_monomial(m, names);
            let abs = c.abs();
            let text = match (body.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => body,
                (false, false) => format!("{}*{}", abs, body),
            };
            match (idx, c.is_negative()) {
                (0, false) => out.push_str(&text),
                (0, true) => out.push_str(&format!("-{}", text)),
                (_, false) => out.push_str(&format!(" + {}", text)),
                (_, true) => out.push_str(&format!(" - {}", text)),
            }
        }
        out
    }
}

pub fn render_monomial(m: &[u32], names: &[String]) -> String {
    m.iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{}^{}", n, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i + 1)).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["w_j".into(), "w_i".into()]
    }

    #[test]
    fn render_linear_form() {
        let p = Poly::linear(&[-1, 1]);
        assert_eq!(p.render(&names()), "w_i - w_j");
        let q = p.mul(&Poly::var(2, 0));
        assert_eq!(q.render(&names()), "w_j*w_i - w_j^2");
        assert_eq!(Poly::constant(2, rat(-3)).render(&names()), "-3");
    }

    #[test]
    fn exact_division() {
        let l = Poly::linear(&[-1, 1]);
        let p = l.pow(3).mul(&Poly::var(2, 1));
        assert_eq!(p.div_exact(&l).unwrap(), l.pow(2).mul(&Poly::var(2, 1)));
        assert!(Poly::var(2, 0).div_exact(&l).is_none());
    }

    #[test]
    fn substitution() {
        // (v1 + v2)^2 at v1 = a, v2 = -a is zero
        let p = Poly::linear(&[1, 1]).pow(2);
        let a = Poly::var(1, 0);
        assert!(p.substitute(&[a.clone(), a.neg()]).is_zero());
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(
            a in prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..5),
            b in prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4),
        ) {
            let build = |v: &[(u32, u32, i64)]| {
                let mut p = Poly::zero(2);
                for &(x, y, c) in v {
                    p.add_term(vec![x, y], rat(c));
                }
                p
            };
            let (pa, pb) = (build(&a), build(&b));
            prop_assume!(!pb.is_zero());
            let prod = pa.mul(&pb);
            prop_assert_eq!(prod.div_exact(&pb), Some(pa));
        }
    }
}
