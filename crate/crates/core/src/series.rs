//! Sparse bigraded Laurent series, truncated in `t`, with exact rational
//! coefficients.
//!
//! Every character in the crate is a [`TruncatedSeries`]: a finite map from
//! [`BiDegree`] (a power of `t` together with a vector of Laurent exponents in
//! the `x`-variables) to a nonzero rational. Truncation is tracked per series
//! and binary operations keep the smaller order, so a series never reports a
//! coefficient beyond the range where it is valid.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A power of `t` together with Laurent exponents of the `x`-variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub t: u32,
    pub x: Vec<i64>,
}

impl BiDegree {
    pub fn new(t: u32, x: Vec<i64>) -> Self {
        BiDegree { t, x }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    x_rank: usize,
    order: u32,
    terms: BTreeMap<BiDegree, Rational>,
}

impl TruncatedSeries {
    /// The zero series. `order` is the truncation `T`; only `t`-degrees
    /// strictly below it are kept.
    pub fn zero(x_rank: usize, order: u32) -> Self {
        assert!(order > 0, "truncation order must be positive");
        TruncatedSeries {
            x_rank,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(x_rank: usize, order: u32) -> Self {
        let mut s = Self::zero(x_rank, order);
        s.add_term(BiDegree::new(0, vec![0; x_rank]), Rational::one());
        s
    }

    /// `coeff * t^t * x^x`, with the x-rank taken from `x.len()`.
    pub fn monomial(coeff: Rational, t: u32, x: Vec<i64>, order: u32) -> Self {
        let mut s = Self::zero(x.len(), order);
        s.add_term(BiDegree::new(t, x), coeff);
        s
    }

    pub fn x_rank(&self) -> usize {
        self.x_rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiDegree, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: u32, x: &[i64]) -> Rational {
        self.terms
            .get(&BiDegree::new(t, x.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficients of `t^0, …, t^{order-1}` after summing over all x-degrees.
    pub fn t_coefficients(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.order as usize];
        for (deg, c) in &self.terms {
            out[deg.t as usize] += c;
        }
        out
    }

    /// Adds `coeff` at `deg`, dropping terms beyond the truncation and
    /// cancelled coefficients.
    pub(crate) fn add_term(&mut self, deg: BiDegree, coeff: Rational) {
        debug_assert_eq!(deg.x.len(), self.x_rank);
        if deg.t >= self.order || coeff.is_zero() {
            return;
        }
        match self.terms.entry(deg) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.x_rank != other.x_rank {
            return Err(Error::RankMismatch {
                left: self.x_rank,
                right: other.x_rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.truncate(self.order.min(other.order));
        for (deg, c) in &other.terms {
            out.add_term(deg.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            x_rank: self.x_rank,
            order: self.order,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.x_rank, self.order);
        }
        TruncatedSeries {
            x_rank: self.x_rank,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.clone(), c * factor))
                .collect(),
        }
    }

    /// Cauchy product, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.x_rank, order);
        for (da, ca) in &self.terms {
            if da.t >= order {
                continue;
            }
            for (db, cb) in &other.terms {
                let t = da.t + db.t;
                if t >= order {
                    continue;
                }
                let x = da.x.iter().zip(&db.x).map(|(a, b)| a + b).collect();
                out.add_term(BiDegree::new(t, x), ca * cb);
            }
        }
        Ok(out)
    }

    /// Adds `other * t^t_shift * x^x_shift` into `self` in place.
    pub fn add_shifted(&mut self, other: &Self, t_shift: u32, x_shift: &[i64]) -> Result<()> {
        self.check_rank(other)?;
        if x_shift.len() != self.x_rank {
            return Err(Error::Shape(format!(
                "x-shift of length {} for series of x-rank {}",
                x_shift.len(),
                self.x_rank
            )));
        }
        self.order = self.order.min(other.order);
        let order = self.order;
        self.terms.retain(|d, _| d.t < order);
        for (d, c) in &other.terms {
            let t = d.t + t_shift;
            if t >= self.order {
                continue;
            }
            let x = d.x.iter().zip(x_shift).map(|(a, b)| a + b).collect();
            self.add_term(BiDegree::new(t, x), c.clone());
        }
        Ok(())
    }

    /// Lowers the truncation order to `min(order, self.order)`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            x_rank: self.x_rank,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.t < order)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    /// Forgets the x-grading, leaving a series in `t` alone.
    pub fn collapse_x(&self) -> Self {
        let mut out = Self::zero(0, self.order);
        for (d, c) in &self.terms {
            out.add_term(BiDegree::new(d.t, Vec::new()), c.clone());
        }
        out
    }

    /// Applies the linear change of x-exponents `x' = M x`, where `matrix`
    /// lists the rows of `M`.
    pub fn substitute_x(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        if matrix.iter().any(|row| row.len() != self.x_rank) {
            return Err(Error::Shape(format!(
                "substitution matrix columns must equal x-rank {}",
                self.x_rank
            )));
        }
        let mut out = Self::zero(matrix.len(), self.order);
        for (d, c) in &self.terms {
            let x = matrix
                .iter()
                .map(|row| row.iter().zip(&d.x).map(|(a, b)| a * b).sum())
                .collect();
            out.add_term(BiDegree::new(d.t, x), c.clone());
        }
        Ok(out)
    }

    /// Expansion of `1 / (1 - t^t_step x^x_shift)` up to `t^order`.
    pub fn geom_expand(t_step: u32, x_shift: &[i64], order: u32) -> Result<Self> {
        if t_step == 0 {
            return Err(Error::NonConvergentGeometric);
        }
        let mut out = Self::zero(x_shift.len(), order);
        let mut k = 0u32;
        while k * t_step < order {
            let x = x_shift.iter().map(|v| v * k as i64).collect();
            out.add_term(BiDegree::new(k * t_step, x), Rational::one());
            k += 1;
        }
        Ok(out)
    }

    /// True iff `a` and `b` agree on every coefficient with `t`-degree below
    /// `order`.
    pub fn equal_upto(a: &Self, b: &Self, order: u32) -> Result<bool> {
        a.check_rank(b)?;
        let lhs = a.terms.iter().filter(|(d, _)| d.t < order);
        let rhs = b.terms.iter().filter(|(d, _)| d.t < order);
        Ok(lhs.eq(rhs))
    }

    /// Every coefficient is a nonnegative integer.
    pub fn is_graded_dimension(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Every stored coefficient equals one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    fn var_name(&self, i: usize) -> String {
        if self.x_rank == 1 {
            "x".to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    /// Canonical text, terms ordered by ascending `t` and, within one
    /// `t`-degree, by descending x-exponent vector.
    pub fn to_text(&self) -> String {
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| a.t.cmp(&b.t).then_with(|| b.x.cmp(&a.x)));
        if entries.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (deg, c)) in entries.into_iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in deg.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.var_name(i)),
                    e => factors.push(format!("{}^{}", self.var_name(i), e)),
                }
            }
            if deg.t == 1 {
                factors.push("t".to_string());
            } else if deg.t > 1 {
                factors.push(format!("t^{}", deg.t));
            }
            let negative = c.is_negative();
            let abs = c.abs();
            let body = if factors.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", abs, factors.join("*"))
            };
            match (idx, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            x_rank: self.x_rank,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    t: d.t,
                    x: d.x.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    /// Decodes the JSON form, validating every structural invariant.
    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.order == 0 {
            return Err(Error::Parse("order must be positive".into()));
        }
        let mut out = Self::zero(json.x_rank, json.order);
        for term in &json.terms {
            if term.x.len() != json.x_rank {
                return Err(Error::Parse(format!(
                    "term has {} x-exponents, expected {}",
                    term.x.len(),
                    json.x_rank
                )));
            }
            if term.t >= json.order {
                return Err(Error::Parse(format!(
                    "term t^{} lies beyond order {}",
                    term.t, json.order
                )));
            }
            let num: BigInt = term
                .num
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator {:?}", term.num)))?;
            let den: BigInt = term
                .den
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator {:?}", term.den)))?;
            if !den.is_positive() {
                return Err(Error::Parse("denominator must be positive".into()));
            }
            let c = Rational::new(num, den);
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient stored".into()));
            }
            let deg = BiDegree::new(term.t, term.x.clone());
            if out.terms.contains_key(&deg) {
                return Err(Error::Parse(format!("duplicate term at {:?}", deg)));
            }
            out.terms.insert(deg, c);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SeriesJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub t: u32,
    pub x: Vec<i64>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub x_rank: usize,
    pub order: u32,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t_poly(coeffs: &[(u32, i64)], order: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(0, order);
        for &(t, c) in coeffs {
            s.add_term(BiDegree::new(t, vec![]), rat(c));
        }
        s
    }

    fn x_mono(t: u32, x: i64, order: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(rat(1), t, vec![x], order)
    }

    #[test]
    fn add_examples() {
        let a = t_poly(&[(0, 1), (2, 1)], 10);
        let b = t_poly(&[(2, 1)], 10);
        assert_eq!(a.add(&b).unwrap(), t_poly(&[(0, 1), (2, 2)], 10));
        assert_eq!(a.add(&TruncatedSeries::zero(0, 10)).unwrap(), a);
        let s = x_mono(1, 1, 5).add(&x_mono(1, -1, 5)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_text(), "x*t + x^-1*t");
    }

    #[test]
    fn add_takes_min_order_and_drops_zeros() {
        let a = t_poly(&[(0, 1), (4, 3)], 10);
        let b = t_poly(&[(0, -1)], 3);
        let s = a.add(&b).unwrap();
        assert_eq!(s.order(), 3);
        assert!(s.is_zero());
    }

    #[test]
    fn mul_examples() {
        let a = t_poly(&[(0, 1), (1, 1)], 3);
        assert_eq!(a.mul(&a).unwrap(), t_poly(&[(0, 1), (1, 2), (2, 1)], 3));
        assert_eq!(a.mul(&TruncatedSeries::one(0, 3)).unwrap(), a);
        let p = x_mono(1, 1, 5).mul(&x_mono(1, -1, 5)).unwrap();
        assert_eq!(p, TruncatedSeries::monomial(rat(1), 2, vec![0], 5));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = TruncatedSeries::one(0, 3);
        let b = TruncatedSeries::one(1, 3);
        assert!(matches!(a.add(&b), Err(Error::RankMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::RankMismatch { .. })));
        assert!(TruncatedSeries::equal_upto(&a, &b, 2).is_err());
    }

    #[test]
    fn geom_examples() {
        let g = TruncatedSeries::geom_expand(2, &[], 7).unwrap();
        assert_eq!(g, t_poly(&[(0, 1), (2, 1), (4, 1), (6, 1)], 7));
        let g = TruncatedSeries::geom_expand(1, &[1], 3).unwrap();
        assert_eq!(g.to_text(), "1 + x*t + x^2*t^2");
        let g = TruncatedSeries::geom_expand(4, &[], 9).unwrap();
        assert_eq!(g, t_poly(&[(0, 1), (4, 1), (8, 1)], 9));
        assert_eq!(
            TruncatedSeries::geom_expand(0, &[], 4),
            Err(Error::NonConvergentGeometric)
        );
    }

    #[test]
    fn equal_upto_examples() {
        let a = t_poly(&[(0, 1), (2, 1)], 20);
        let b = t_poly(&[(0, 1), (2, 1), (9, 1)], 20);
        assert!(TruncatedSeries::equal_upto(&a, &b, 5).unwrap());
        let c = t_poly(&[(0, 1), (1, 1)], 20);
        assert!(!TruncatedSeries::equal_upto(&t_poly(&[(0, 1)], 20), &c, 2).unwrap());
        assert!(TruncatedSeries::equal_upto(&c, &c, 17).unwrap());
    }

    #[test]
    fn text_form() {
        let s = t_poly(&[(0, 1), (2, 3), (4, 5)], 6);
        assert_eq!(s.to_text(), "1 + 3*t^2 + 5*t^4");
        let mut s = TruncatedSeries::zero(2, 4);
        s.add_term(BiDegree::new(1, vec![1, -2]), Rational::new(3.into(), 2.into()));
        s.add_term(BiDegree::new(0, vec![0, 0]), rat(-1));
        assert_eq!(s.to_text(), "-1 + 3/2*x1*x2^-2*t");
        assert_eq!(TruncatedSeries::zero(0, 3).to_text(), "0");
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = r#"{"x_rank":1,"order":3,"terms":[{"t":5,"x":[0],"num":"1","den":"1"}]}"#;
        assert!(TruncatedSeries::from_json_str(bad).is_err());
        let bad = r#"{"x_rank":1,"order":3,"terms":[{"t":0,"x":[0],"num":"1","den":"0"}]}"#;
        assert!(TruncatedSeries::from_json_str(bad).is_err());
        let bad = r#"{"x_rank":1,"order":3,"terms":[{"t":0,"x":[],"num":"1","den":"1"}]}"#;
        assert!(TruncatedSeries::from_json_str(bad).is_err());
        let bad = r#"{"x_rank":0,"order":3,"terms":[{"t":0,"x":[],"num":"0","den":"1"}]}"#;
        assert!(TruncatedSeries::from_json_str(bad).is_err());
    }

    #[test]
    fn substitution_and_collapse() {
        let s = x_mono(2, 1, 5).add(&x_mono(2, -1, 5)).unwrap();
        let r = s.substitute_x(&[vec![-3]]).unwrap();
        assert_eq!(r.coefficient(2, &[3]), rat(1));
        assert_eq!(r.coefficient(2, &[-3]), rat(1));
        assert_eq!(s.collapse_x().coefficient(2, &[]), rat(2));
    }

    fn arb_series(order: u32) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((0..order, -3i64..=3, -4i64..=4), 0..6).prop_map(move |v| {
            let mut s = TruncatedSeries::zero(1, order);
            for (t, x, c) in v {
                s.add_term(BiDegree::new(t, vec![x]), rat(c));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            for s in [a.mul(&b).unwrap(), a.sub(&b).unwrap()] {
                prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn geometric_inverse(k in 1u32..5, v in -3i64..=3, order in 1u32..20) {
            let g = TruncatedSeries::geom_expand(k, &[v], order).unwrap();
            let one_minus = TruncatedSeries::one(1, order)
                .sub(&TruncatedSeries::monomial(rat(1), k, vec![v], order))
                .unwrap();
            prop_assert_eq!(g.mul(&one_minus).unwrap(), TruncatedSeries::one(1, order));
        }

        #[test]
        fn json_round_trip(a in arb_series(8)) {
            let text = serde_json::to_string(&a.to_json()).unwrap();
            prop_assert_eq!(TruncatedSeries::from_json_str(&text).unwrap(), a);
        }
    }
}
