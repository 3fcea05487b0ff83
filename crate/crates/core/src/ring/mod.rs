//! Abelian Coulomb-branch rings and their flavored costalk modules.
//!
//! Elements are finite sums `Σ p_λ(w) · r^λ` where `λ` runs over coweights of
//! the extended torus (gauge part and flavor part) and `p_λ` is a polynomial
//! in the equivariant parameters. Basis classes multiply by
//!
//! ```text
//! r^λ · r^μ = Π_χ ℓ_χ^{d_χ} · r^{λ+μ},   d_χ = (|⟨χ,λ⟩| + |⟨χ,μ⟩| − |⟨χ,λ+μ⟩|) / 2
//! ```
//!
//! with `ℓ_χ` the linear form of the matter weight `χ` in the parameters.
//! Flavor parameters are specialized to zero unless the ring is built with
//! `flavor_formal`.

pub mod expr;
pub mod two_node;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::TheorySpec;
use crate::poly::{render_monomial, Poly};
use crate::series::Rational;

pub type WPoly = Poly;

/// Coweight of the extended torus indexing a basis class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassIndex {
    pub gauge: Vec<i64>,
    pub flavor: Vec<i64>,
}

impl ClassIndex {
    pub fn new(gauge: Vec<i64>, flavor: Vec<i64>) -> Self {
        ClassIndex { gauge, flavor }
    }

    pub fn zero(gauge_rank: usize, flavor_rank: usize) -> Self {
        ClassIndex {
            gauge: vec![0; gauge_rank],
            flavor: vec![0; flavor_rank],
        }
    }

    pub fn add(&self, other: &ClassIndex) -> ClassIndex {
        ClassIndex {
            gauge: self.gauge.iter().zip(&other.gauge).map(|(a, b)| a + b).collect(),
            flavor: self.flavor.iter().zip(&other.flavor).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let flavor = if self.flavor.iter().all(|&k| k == 0) {
            "0".to_string()
        } else {
            join(&self.flavor)
        };
        let gauge = if self.gauge.is_empty() { "0".to_string() } else { join(&self.gauge) };
        write!(f, "r[{};{}]", gauge, flavor)
    }
}

/// Half the triangle defect `|a| + |b| − |a + b|`; always a nonnegative
/// integer since the defect is nonnegative and even.
pub fn pairing_defect(a: i64, b: i64) -> u32 {
    let defect = a.abs() + b.abs() - (a + b).abs();
    assert!(
        defect >= 0 && defect % 2 == 0,
        "pairing defect {defect} for ({a}, {b}) must be even and nonnegative"
    );
    (defect / 2) as u32
}

/// The coefficient ring and multiplication data of an abelian theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianRing {
    theory: TheorySpec,
    flavor_formal: bool,
    var_names: Vec<String>,
    forms: Vec<Poly>,
}

impl AbelianRing {
    /// Gauge parameters are named `w` (one factor) or `w_1, w_2, …`; formal
    /// flavor parameters `f_1, f_2, …`.
    pub fn new(theory: TheorySpec, flavor_formal: bool) -> Result<Self> {
        let names = match theory.num_factors() {
            1 => vec!["w".to_string()],
            k => (1..=k).map(|i| format!("w_{i}")).collect(),
        };
        Self::with_names(theory, flavor_formal, names)
    }

    pub fn with_names(theory: TheorySpec, flavor_formal: bool, gauge_names: Vec<String>) -> Result<Self> {
        if !theory.group.is_abelian() {
            return Err(Error::Unsupported(format!(
                "abelian ring needs rank-1 gauge factors, got {:?}",
                theory.group.factors
            )));
        }
        if gauge_names.len() != theory.num_factors() {
            return Err(Error::Shape("one name per gauge parameter".into()));
        }
        let mut var_names = gauge_names;
        if flavor_formal {
            var_names.extend((1..=theory.flavor_rank).map(|s| format!("f_{s}")));
        }
        let nvars = var_names.len();
        let forms = theory
            .matter
            .iter()
            .map(|chi| {
                let mut coeffs = chi.gauge_flat();
                if flavor_formal {
                    coeffs.extend(chi.flavor.iter().copied());
                }
                coeffs.resize(nvars, 0);
                Poly::linear(&coeffs)
            })
            .collect();
        Ok(AbelianRing {
            theory,
            flavor_formal,
            var_names,
            forms,
        })
    }

    pub fn theory(&self) -> &TheorySpec {
        &self.theory
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn is_flavor_formal(&self) -> bool {
        self.flavor_formal
    }

    /// `ℓ_χ` for each matter weight, in matter order.
    pub fn linear_forms(&self) -> &[Poly] {
        &self.forms
    }

    /// The variable named `name`, if any.
    pub fn variable(&self, name: &str) -> Option<Poly> {
        let i = self.var_names.iter().position(|n| n == name)?;
        Some(Poly::var(self.nvars(), i))
    }

    fn pairing(&self, k: usize, idx: &ClassIndex) -> i64 {
        let chi = &self.theory.matter[k];
        let gauge: i64 = chi.gauge_flat().iter().zip(&idx.gauge).map(|(a, b)| a * b).sum();
        let flavor: i64 = chi.flavor.iter().zip(&idx.flavor).map(|(a, b)| a * b).sum();
        gauge + flavor
    }

    /// `Σ_χ |⟨χ, λ⟩|`: the `t`-degree of the class `r^λ`.
    pub fn class_degree(&self, idx: &ClassIndex) -> i64 {
        (0..self.forms.len()).map(|k| self.pairing(k, idx).abs()).sum()
    }

    /// `(d_χ)_χ` for the product `r^λ · r^μ`.
    pub fn pairing_exponents(&self, a: &ClassIndex, b: &ClassIndex) -> Vec<u32> {
        (0..self.forms.len())
            .map(|k| pairing_defect(self.pairing(k, a), self.pairing(k, b)))
            .collect()
    }

    /// Coefficient of `r^{λ+μ}` in `r^λ · r^μ`.
    pub fn structure_constant(&self, a: &ClassIndex, b: &ClassIndex) -> Poly {
        let mut out = Poly::one(self.nvars());
        for (form, d) in self.forms.iter().zip(self.pairing_exponents(a, b)) {
            if d > 0 {
                out = out.mul(&form.pow(d));
            }
        }
        out
    }

    fn check_index(&self, idx: &ClassIndex) -> Result<()> {
        if idx.gauge.len() != self.theory.num_factors() || idx.flavor.len() != self.theory.flavor_rank {
            return Err(Error::Shape(format!(
                "class index {idx:?} does not fit {} gauge and {} flavor slots",
                self.theory.num_factors(),
                self.theory.flavor_rank
            )));
        }
        Ok(())
    }

    /// Non-monomial linear forms, deduplicated up to sign, used to factor
    /// coefficients for display.
    fn display_factors(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for f in &self.forms {
            if f.len() < 2 {
                continue;
            }
            if !out.iter().any(|g| g == f || *g == f.neg()) {
                out.push(f.clone());
            }
        }
        out
    }

    /// Renders a coefficient with linear-form factors pulled out, e.g.
    /// `(w_i - w_j)*w_j`.
    pub fn render_coefficient(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut rest = p.clone();
        let mut factors: Vec<String> = Vec::new();
        for form in self.display_factors() {
            let mut power = 0;
            while let Some(q) = rest.div_exact(&form) {
                rest = q;
                power += 1;
            }
            if power > 0 {
                let base = format!("({})", form.render(&self.var_names));
                factors.push(if power == 1 { base } else { format!("{base}^{power}") });
            }
        }
        let content = rest.monomial_content();
        if content.iter().any(|&e| e > 0) {
            let m = Poly::monomial(content.clone(), Rational::one());
            rest = rest.div_exact(&m).expect("content divides");
            factors.push(render_monomial(&content, &self.var_names));
        }
        let mut prefix = String::new();
        if rest.len() == 1 && rest.total_degree() == Some(0) {
            let c = rest.coefficient(&vec![0; rest.nvars()]);
            if factors.is_empty() {
                return c.to_string();
            }
            if c == -Rational::one() {
                prefix.push('-');
            } else if !c.is_one() {
                prefix = format!("{}*", c);
            }
        } else {
            let text = rest.render(&self.var_names);
            factors.push(if rest.len() > 1 { format!("({text})") } else { text });
        }
        format!("{}{}", prefix, factors.join("*"))
    }
}

#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<AbelianRing>,
    support: BTreeMap<ClassIndex, Poly>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.support == other.support
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn zero(ring: &Arc<AbelianRing>) -> Self {
        RingElement {
            ring: ring.clone(),
            support: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<AbelianRing>) -> Self {
        let t = ring.theory();
        RingElement::basis(ring, ClassIndex::zero(t.num_factors(), t.flavor_rank)).expect("shape fits")
    }

    /// `1 · r^idx`.
    pub fn basis(ring: &Arc<AbelianRing>, idx: ClassIndex) -> Result<Self> {
        ring.check_index(&idx)?;
        let mut support = BTreeMap::new();
        support.insert(idx, Poly::one(ring.nvars()));
        Ok(RingElement {
            ring: ring.clone(),
            support,
        })
    }

    /// `p · r^0`.
    pub fn scalar(ring: &Arc<AbelianRing>, p: Poly) -> Result<Self> {
        if p.nvars() != ring.nvars() {
            return Err(Error::Shape("coefficient polynomial arity".into()));
        }
        Ok(Self::one(ring).scale(&p))
    }

    pub fn ring(&self) -> &Arc<AbelianRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassIndex, &Poly)> {
        self.support.iter()
    }

    pub fn coefficient(&self, idx: &ClassIndex) -> Poly {
        self.support
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ring.nvars()))
    }

    /// Flavor parts of the support, deduplicated.
    pub fn flavor_sectors(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.support.keys().map(|k| k.flavor.clone()).collect();
        out.dedup();
        out.sort();
        out.dedup();
        out
    }

    fn insert(&mut self, idx: ClassIndex, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.support.remove(&idx) {
            Some(q) => q.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.support.insert(idx, merged);
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && *self.ring != *other.ring {
            return Err(Error::TheoryMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (k, p) in &other.support {
            out.insert(k.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Poly::constant(self.ring.nvars(), -Rational::one())))
    }

    pub fn scale(&self, p: &Poly) -> Self {
        let mut out = RingElement::zero(&self.ring);
        for (k, q) in &self.support {
            out.insert(k.clone(), q.mul(p));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = RingElement::zero(&self.ring);
        for (a, p) in &self.support {
            for (b, q) in &other.support {
                let c = self.ring.structure_constant(a, b);
                out.insert(a.add(b), c.mul(p).mul(q));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = RingElement::one(&self.ring);
        for _ in 0..e {
            out = out.multiply(self)?;
        }
        Ok(out)
    }

    /// The single `(index, coefficient)` pair of a one-term element.
    pub fn single_term(&self) -> Option<(&ClassIndex, &Poly)> {
        if self.support.len() == 1 {
            self.support.iter().next()
        } else {
            None
        }
    }

    /// Normalized text `poly*r[gauge;flavor] + …`.
    pub fn render(&self) -> String {
        if self.support.is_empty() {
            return "0".to_string();
        }
        self.support
            .iter()
            .map(|(k, p)| format!("{}*{}", self.ring.render_coefficient(p), k))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .support
            .iter()
            .map(|(k, p)| {
                let coeffs: Vec<serde_json::Value> = p
                    .terms()
                    .map(|(m, c)| {
                        serde_json::json!({
                            "exp": m,
                            "num": c.numer().to_string(),
                            "den": c.denom().to_string(),
                        })
                    })
                    .collect();
                serde_json::json!({
                    "gauge": k.gauge,
                    "flavor": k.flavor,
                    "coefficient": self.ring.render_coefficient(p),
                    "terms": coeffs,
                })
            })
            .collect();
        serde_json::json!({
            "variables": self.ring.var_names(),
            "terms": terms,
        })
    }

    /// `t`-degree of every term, with each parameter in degree 2.
    pub fn term_degrees(&self) -> Vec<Option<i64>> {
        self.support
            .iter()
            .map(|(k, p)| {
                let degs: Vec<u32> = p.terms().map(|(m, _)| m.iter().sum()).collect();
                let d = *degs.first()?;
                if degs.iter().any(|&e| e != d) {
                    return None;
                }
                Some(2 * d as i64 + self.ring.class_degree(k))
            })
            .collect()
    }

    /// True if some coefficient is a negative constant; used by callers that
    /// expect positive structure constants.
    pub fn has_negative_constant(&self) -> bool {
        self.support
            .values()
            .any(|p| p.total_degree() == Some(0) && p.terms().any(|(_, c)| c.is_negative()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Zero checks on an element's coefficients.
pub fn is_zero_poly(p: &Poly) -> bool {
    p.terms().all(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqed_ring(n: usize) -> Arc<AbelianRing> {
        Arc::new(AbelianRing::new(TheorySpec::sqed(n).unwrap(), false).unwrap())
    }

    #[test]
    fn defect_is_even() {
        assert_eq!(pairing_defect(1, -1), 1);
        assert_eq!(pairing_defect(3, -5), 3);
        assert_eq!(pairing_defect(2, 2), 0);
        assert_eq!(pairing_defect(0, -4), 0);
    }

    #[test]
    fn sqed_relation() {
        // r^{1} r^{-1} = w^N: the defining relation ZY = W^N.
        let ring = sqed_ring(3);
        let y = RingElement::basis(&ring, ClassIndex::new(vec![1], vec![0; 3])).unwrap();
        let z = RingElement::basis(&ring, ClassIndex::new(vec![-1], vec![0; 3])).unwrap();
        let w = ring.variable("w").unwrap();
        assert_eq!(y.multiply(&z).unwrap(), RingElement::scalar(&ring, w.pow(3)).unwrap());
        assert_eq!(y.multiply(&z).unwrap().render(), "w^3*r[0;0]");
    }

    #[test]
    fn identity_and_mismatch() {
        let ring = sqed_ring(2);
        let a = RingElement::basis(&ring, ClassIndex::new(vec![2], vec![1, 0])).unwrap();
        assert_eq!(RingElement::one(&ring).multiply(&a).unwrap(), a);
        let other = sqed_ring(3);
        let b = RingElement::one(&other);
        assert_eq!(a.multiply(&b), Err(Error::TheoryMismatch));
        assert!(RingElement::basis(&ring, ClassIndex::new(vec![1], vec![0])).is_err());
        let j = AbelianRing::new(TheorySpec::jordan(2).unwrap(), false);
        assert!(matches!(j, Err(Error::Unsupported(_))));
    }

    #[test]
    fn formal_flavor_parameters() {
        let ring = Arc::new(AbelianRing::new(TheorySpec::sqed(2).unwrap(), true).unwrap());
        assert_eq!(ring.var_names(), &["w", "f_1", "f_2"]);
        let y = RingElement::basis(&ring, ClassIndex::new(vec![1], vec![0, 0])).unwrap();
        let z = RingElement::basis(&ring, ClassIndex::new(vec![-1], vec![0, 0])).unwrap();
        // (w - f_1)(w - f_2)
        let expect = Poly::linear(&[1, -1, 0]).mul(&Poly::linear(&[1, 0, -1]));
        assert_eq!(y.multiply(&z).unwrap().coefficient(&ClassIndex::zero(1, 2)), expect);
    }

    fn arb_index(flavor_rank: usize) -> impl Strategy<Value = ClassIndex> {
        (-3i64..=3, prop::collection::vec(-2i64..=2, flavor_rank))
            .prop_map(|(m, f)| ClassIndex::new(vec![m], f))
    }

    proptest! {
        #[test]
        fn multiply_commutes_and_associates(a in arb_index(2), b in arb_index(2), c in arb_index(2)) {
            let ring = Arc::new(AbelianRing::new(TheorySpec::sqed(2).unwrap(), true).unwrap());
            let (a, b, c) = (
                RingElement::basis(&ring, a).unwrap(),
                RingElement::basis(&ring, b).unwrap(),
                RingElement::basis(&ring, c).unwrap(),
            );
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            prop_assert_eq!(
                a.multiply(&b).unwrap().multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn degrees_add(a in arb_index(2), b in arb_index(2)) {
            let ring = sqed_ring(2);
            let ea = RingElement::basis(&ring, a.clone()).unwrap();
            let eb = RingElement::basis(&ring, b.clone()).unwrap();
            let prod = ea.multiply(&eb).unwrap();
            let deg = prod.term_degrees()[0].unwrap();
            prop_assert_eq!(deg, ring.class_degree(&a) + ring.class_degree(&b));
            let mut sector = a.flavor.clone();
            for (s, f) in sector.iter_mut().zip(&b.flavor) { *s += f; }
            prop_assert_eq!(prod.flavor_sectors(), vec![sector]);
        }
    }
}
