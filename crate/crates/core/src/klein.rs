//! Semi-invariants of `ℤ/N` on the plane and the section modules of the
//! Kleinian surface `ZY = W^N`, with `Z = u^N`, `Y = v^N`, `W = uv`.
//!
//! Characters use `u ↦ x t`, `v ↦ x^{-1} t`, the same convention as the
//! monopole sums in [`crate::monopole`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gauge::TheorySpec;
use crate::monopole::{klein_generator, klein_generator_range};
use crate::poly::Poly;
use crate::report::CaseResult;
use crate::ring::{AbelianRing, ClassIndex, RingElement};
use crate::series::{BiDegree, Rational, TruncatedSeries};

const UV: [&str; 2] = ["u", "v"];

/// Polynomial in `u, v` on which `ℤ/N` acts through one character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInvariantPoly {
    n: usize,
    charge: usize,
    poly: Poly,
}

impl SemiInvariantPoly {
    pub fn new(n: usize, charge: usize, poly: Poly) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("N must be at least 1".into()));
        }
        if poly.nvars() != 2 {
            return Err(Error::Shape("semi-invariants live in two variables".into()));
        }
        let charge = charge % n;
        for (m, _) in poly.terms() {
            if charge_of(n, m[0], m[1]) != charge {
                return Err(Error::Precondition(format!(
                    "u^{} v^{} does not have charge {charge} mod {n}",
                    m[0], m[1]
                )));
            }
        }
        Ok(SemiInvariantPoly { n, charge, poly })
    }

    pub fn monomial(n: usize, p: u32, q: u32) -> Result<Self> {
        Self::new(n, charge_of(n.max(1), p, q), Poly::monomial(vec![p, q], Rational::one()))
    }

    pub fn u(n: usize) -> Result<Self> {
        Self::monomial(n, 1, 0)
    }

    pub fn v(n: usize) -> Result<Self> {
        Self::monomial(n, 0, 1)
    }

    pub fn w(n: usize) -> Result<Self> {
        Self::monomial(n, 1, 1)
    }

    pub fn z(n: usize) -> Result<Self> {
        Self::monomial(n, n as u32, 0)
    }

    pub fn y(n: usize) -> Result<Self> {
        Self::monomial(n, 0, n as u32)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charge(&self) -> usize {
        self.charge
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn pow(&self, e: u32) -> Self {
        SemiInvariantPoly {
            n: self.n,
            charge: (self.charge * e as usize) % self.n,
            poly: self.poly.pow(e),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> Result<Self> {
        Self::new(self.n, self.charge, self.poly.mul(p))
    }
}

impl fmt::Display for SemiInvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = UV.iter().map(|s| s.to_string()).collect();
        f.write_str(&self.poly.render(&names))
    }
}

fn charge_of(n: usize, p: u32, q: u32) -> usize {
    (p as i64 - q as i64).rem_euclid(n as i64) as usize
}

/// Polynomial product; charges add mod `N`.
pub fn module_multiply(f: &SemiInvariantPoly, g: &SemiInvariantPoly) -> Result<SemiInvariantPoly> {
    if f.n != g.n {
        return Err(Error::Precondition(format!("N mismatch: {} vs {}", f.n, g.n)));
    }
    Ok(SemiInvariantPoly {
        n: f.n,
        charge: (f.charge + g.charge) % f.n,
        poly: f.poly.mul(&g.poly),
    })
}

/// Weakly decreasing `λ_1 ≥ … ≥ λ_N`, shifted so that `λ_N = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantGLWeight {
    entries: Vec<i64>,
}

impl DominantGLWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let Some(&last) = entries.last() else {
            return Err(Error::InvalidSize("weight needs at least one entry".into()));
        };
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{entries:?} is not weakly decreasing")));
        }
        Ok(DominantGLWeight {
            entries: entries.into_iter().map(|e| e - last).collect(),
        })
    }

    pub fn zero(n: usize) -> Self {
        DominantGLWeight { entries: vec![0; n] }
    }

    /// `ω_i = (1^i, 0^{N−i})`.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        if i > n || n == 0 {
            return Err(Error::Precondition(format!("no fundamental weight {i} for N = {n}")));
        }
        Self::new((0..n).map(|k| i64::from(k < i)).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::Shape("weights of different rank".into()));
        }
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect())
    }

    /// `i` repeated `λ_i − λ_{i+1}` times, for `i = 1 … N−1`.
    pub fn fundamental_steps(&self) -> Vec<usize> {
        (1..self.n())
            .flat_map(|i| std::iter::repeat_n(i, (self.entries[i - 1] - self.entries[i]) as usize))
            .collect()
    }

    /// Every canonical weight of rank `n` with `λ_1 ≤ max`.
    pub fn all_up_to(n: usize, max: i64) -> Vec<Self> {
        fn rec(prefix: &mut Vec<i64>, left: usize, cap: i64, out: &mut Vec<Vec<i64>>) {
            if left == 1 {
                prefix.push(0);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=cap).rev() {
                prefix.push(e);
                rec(prefix, left - 1, e, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, max, &mut out);
        out.sort();
        out.into_iter().map(|entries| DominantGLWeight { entries }).collect()
    }
}

impl fmt::Display for DominantGLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Monomials `(p, q)` with `p + q ≤ max_tdeg` and `p − q ≡ i (mod N)`,
/// ordered by total degree, then by decreasing `p`.
pub fn semi_invariant_basis(n: usize, i: usize, max_tdeg: u32) -> Result<Vec<(u32, u32)>> {
    if n == 0 || i >= n {
        return Err(Error::Precondition(format!("charge {i} out of range for N = {n}")));
    }
    let mut out = Vec::new();
    for d in 0..=max_tdeg {
        for p in (0..=d).rev() {
            if charge_of(n, p, d - p) == i {
                out.push((p, d - p));
            }
        }
    }
    Ok(out)
}

/// The abelian ring of `GL(1)` with `N` fundamentals, parameter `w`.
pub fn sqed_ring(n: usize) -> Result<Arc<AbelianRing>> {
    Ok(Arc::new(AbelianRing::new(TheorySpec::sqed(n)?, false)?))
}

/// `r^{(m;κ)} ↦ u^{Σ(κ_k − m)_+} v^{Σ(m − κ_k)_+}`.
pub fn costalk_to_semiinvariant(n: usize, idx: &ClassIndex) -> Result<SemiInvariantPoly> {
    if idx.gauge.len() != 1 || idx.flavor.len() != n {
        return Err(Error::Shape(format!("{idx:?} is not a class of the rank-{n} theory")));
    }
    if idx.flavor.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!("flavor sector {:?} is not dominant", idx.flavor)));
    }
    let m = idx.gauge[0];
    let p: i64 = idx.flavor.iter().map(|k| (k - m).max(0)).sum();
    let q: i64 = idx.flavor.iter().map(|k| (m - k).max(0)).sum();
    SemiInvariantPoly::monomial(n, p as u32, q as u32)
}

/// `v^{N−i} Y^{m−1}` for `m > 0` and `u^i Z^{−m}` for `m ≤ 0`.
pub fn fundamental_section(n: usize, i: usize, m: i64) -> Result<SemiInvariantPoly> {
    if m > 0 {
        let base = SemiInvariantPoly::v(n)?.pow((n - i) as u32);
        module_multiply(&base, &SemiInvariantPoly::y(n)?.pow((m - 1) as u32))
    } else {
        let base = SemiInvariantPoly::u(n)?.pow(i as u32);
        module_multiply(&base, &SemiInvariantPoly::z(n)?.pow((-m) as u32))
    }
}

/// Applies the isomorphism term by term, with `w ↦ uv`.
pub fn map_element(n: usize, e: &RingElement) -> Result<SemiInvariantPoly> {
    if e.ring().nvars() != 1 {
        return Err(Error::Unsupported("only the specialized sqed ring maps to the plane".into()));
    }
    let w = Poly::monomial(vec![1, 1], Rational::one());
    let mut total: Option<SemiInvariantPoly> = None;
    for (idx, coeff) in e.terms() {
        let term = costalk_to_semiinvariant(n, idx)?.scale_poly(&coeff.substitute(std::slice::from_ref(&w)))?;
        total = Some(match total {
            None => term,
            Some(acc) => SemiInvariantPoly::new(n, acc.charge, acc.poly.add(&term.poly))?,
        });
    }
    match total {
        Some(t) => Ok(t),
        None => SemiInvariantPoly::new(n, 0, Poly::zero(2)),
    }
}

fn generators(lambda: &DominantGLWeight, order: u32) -> Vec<i64> {
    klein_generator_range(lambda.entries(), order)
        .filter(|&m| klein_generator(lambda.entries(), m).0 < order)
        .collect()
}

fn add_bidegree(a: (u32, i64), b: (u32, i64)) -> (u32, i64) {
    (a.0 + b.0, a.1 + b.1)
}

/// Factorizations of each generator of `λ + μ` below `order`: one case per
/// fundamental step using the explicit split, and one per generator from a
/// direct search over `m′ + m″ = m`.
pub fn tensor_surjectivity_cases(
    lambda: &DominantGLWeight,
    mu: &DominantGLWeight,
    order: u32,
) -> Result<Vec<CaseResult>> {
    if lambda.n() != mu.n() {
        return Err(Error::Shape("weights of different rank".into()));
    }
    let n = lambda.n();
    let mut cases = Vec::new();
    let mut current = lambda.clone();
    for k in mu.fundamental_steps() {
        let omega = DominantGLWeight::fundamental(n, k)?;
        let target = current.add(&omega)?;
        let threshold = current.entries()[k - 1];
        for m in generators(&target, order) {
            let (m1, m2) = if m > threshold { (m - 1, 1) } else { (m, 0) };
            let want = klein_generator(target.entries(), m);
            let got = add_bidegree(klein_generator(current.entries(), m1), klein_generator(omega.entries(), m2));
            cases.push(CaseResult::compare(
                format!("N={n} {current}+w{k} m={m} split=({m1},{m2})"),
                format!("{want:?}"),
                format!("{got:?}"),
            ));
        }
        current = target;
    }
    let total = lambda.add(mu)?;
    for m in generators(&total, order) {
        let want = klein_generator(total.entries(), m);
        let found = klein_generator_range(lambda.entries(), order).find(|&m1| {
            add_bidegree(klein_generator(lambda.entries(), m1), klein_generator(mu.entries(), m - m1)) == want
        });
        cases.push(CaseResult::check(
            format!("N={n} {lambda}+{mu} m={m} search"),
            found.is_some(),
            format!("{want:?}"),
            match found {
                Some(m1) => format!("m'={m1} m''={}", m - m1),
                None => "no factorization".into(),
            },
        ));
    }
    Ok(cases)
}

pub fn verify_tensor_surjectivity(lambda: &DominantGLWeight, mu: &DominantGLWeight, order: u32) -> Result<bool> {
    Ok(tensor_surjectivity_cases(lambda, mu, order)?.iter().all(|c| c.pass))
}

fn class(n: usize, m: i64, lambda: &DominantGLWeight) -> ClassIndex {
    debug_assert_eq!(lambda.n(), n);
    ClassIndex::new(vec![m], lambda.entries().to_vec())
}

/// Checks the normalized isomorphism from the costalk at `λ` of the rank-`N`
/// abelian theory to the semi-invariants.
pub fn iso_module_map_cases(lambda: &DominantGLWeight, order: u32) -> Result<Vec<CaseResult>> {
    let n = lambda.n();
    let ring = sqed_ring(n)?;
    let zero = DominantGLWeight::zero(n);
    let w_elem = RingElement::scalar(&ring, ring.variable("w").expect("gauge parameter"))?;
    let z_elem = RingElement::basis(&ring, class(n, -1, &zero))?;
    let y_elem = RingElement::basis(&ring, class(n, 1, &zero))?;
    let ring_gens = [
        ("W", &w_elem, SemiInvariantPoly::w(n)?),
        ("Z", &z_elem, SemiInvariantPoly::z(n)?),
        ("Y", &y_elem, SemiInvariantPoly::y(n)?),
    ];
    let mut cases = Vec::new();
    let tag = format!("N={n} lambda={lambda}");

    for (name, elem, image) in &ring_gens {
        cases.push(CaseResult::compare(
            format!("{tag} image of {name}"),
            image.to_string(),
            map_element(n, elem)?.to_string(),
        ));
    }

    let gens = generators(lambda, order);
    let steps = lambda.fundamental_steps();
    if let [only] = steps.as_slice() {
        for &m in &gens {
            let image = costalk_to_semiinvariant(n, &class(n, m, lambda))?;
            cases.push(CaseResult::compare(
                format!("{tag} m={m} fundamental formula"),
                fundamental_section(n, *only, m)?.to_string(),
                image.to_string(),
            ));
        }
    }

    if !steps.is_empty() {
        let mut product = RingElement::one(&ring);
        let mut image = SemiInvariantPoly::monomial(n, 0, 0)?;
        for &i in &steps {
            let omega = DominantGLWeight::fundamental(n, i)?;
            product = product.multiply(&RingElement::basis(&ring, class(n, 1, &omega))?)?;
            image = module_multiply(&image, &SemiInvariantPoly::v(n)?.pow((n - i) as u32))?;
        }
        let top = RingElement::basis(&ring, class(n, lambda.entries()[0], lambda))?;
        cases.push(CaseResult::compare(
            format!("{tag} product of fundamental classes"),
            top.render(),
            product.render(),
        ));
        cases.push(CaseResult::compare(
            format!("{tag} image of fundamental product"),
            image.to_string(),
            map_element(n, &product)?.to_string(),
        ));
    }

    for &m in &gens {
        let g = RingElement::basis(&ring, class(n, m, lambda))?;
        let phi_g = map_element(n, &g)?;
        for (name, elem, image) in &ring_gens {
            let lhs = map_element(n, &elem.multiply(&g)?)?;
            let rhs = module_multiply(image, &phi_g)?;
            cases.push(CaseResult::compare(
                format!("{tag} m={m} {name}-multiplication"),
                rhs.to_string(),
                lhs.to_string(),
            ));
        }
    }

    if let Some(&k) = steps.last() {
        let omega = DominantGLWeight::fundamental(n, k)?;
        let rest = lambda.sub(&omega)?;
        for m1 in generators(&rest, order) {
            for m2 in generators(&omega, order) {
                let a = RingElement::basis(&ring, class(n, m1, &rest))?;
                let b = RingElement::basis(&ring, class(n, m2, &omega))?;
                let lhs = map_element(n, &a.multiply(&b)?)?;
                let rhs = module_multiply(&map_element(n, &a)?, &map_element(n, &b)?)?;
                cases.push(CaseResult::compare(
                    format!("{tag} {rest}(m={m1}) * w{k}(m={m2})"),
                    rhs.to_string(),
                    lhs.to_string(),
                ));
            }
        }
    }
    Ok(cases)
}

pub fn verify_iso_module_map(lambda: &DominantGLWeight, order: u32) -> Result<bool> {
    Ok(iso_module_map_cases(lambda, order)?.iter().all(|c| c.pass))
}

/// Character of the span of products of fundamental semi-invariants, one
/// factor per fundamental step of `λ`, times the invariants.
pub fn character_from_semiinvariants(lambda: &DominantGLWeight, order: u32) -> Result<TruncatedSeries> {
    let n = lambda.n();
    let max = order.saturating_sub(1);
    let mut span: BTreeSet<(u32, u32)> = semi_invariant_basis(n, 0, max)?.into_iter().collect();
    for i in lambda.fundamental_steps() {
        let basis = semi_invariant_basis(n, i, max)?;
        let mut next = BTreeSet::new();
        for &(p, q) in &span {
            for &(p2, q2) in &basis {
                if p + q + p2 + q2 < order {
                    next.insert((p + p2, q + q2));
                }
            }
        }
        span = next;
    }
    let mut out = TruncatedSeries::zero(1, order);
    for (p, q) in span {
        out.add_term(BiDegree::new(p + q, vec![p as i64 - q as i64]), Rational::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monopole::klein_costalk_character;

    fn weight(e: &[i64]) -> DominantGLWeight {
        DominantGLWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            semi_invariant_basis(2, 1, 3).unwrap(),
            vec![(1, 0), (0, 1), (3, 0), (2, 1), (1, 2), (0, 3)]
        );
        assert_eq!(semi_invariant_basis(3, 0, 3).unwrap(), vec![(0, 0), (1, 1), (3, 0), (0, 3)]);
        for n in 1..5 {
            assert_eq!(semi_invariant_basis(n, 0, 0).unwrap(), vec![(0, 0)]);
        }
        assert!(semi_invariant_basis(2, 2, 3).is_err());
    }

    #[test]
    fn multiply_examples() {
        let n = 4;
        let prod = module_multiply(&SemiInvariantPoly::u(n).unwrap(), &SemiInvariantPoly::v(n).unwrap()).unwrap();
        assert_eq!(prod, SemiInvariantPoly::w(n).unwrap());
        let (i, j) = (1, 3);
        let a = SemiInvariantPoly::v(n).unwrap().pow((n - i) as u32);
        let b = SemiInvariantPoly::v(n).unwrap().pow((n - j) as u32);
        assert_eq!(module_multiply(&a, &b).unwrap().to_string(), "v^4");
        for i in 0..=n as u32 {
            let a = SemiInvariantPoly::u(n).unwrap().pow(i);
            let b = SemiInvariantPoly::u(n).unwrap().pow(n as u32 - i);
            let p = module_multiply(&a, &b).unwrap();
            assert_eq!(p, SemiInvariantPoly::z(n).unwrap());
            assert_eq!(p.charge(), 0);
        }
        assert!(module_multiply(&SemiInvariantPoly::u(2).unwrap(), &SemiInvariantPoly::u(3).unwrap()).is_err());
        assert!(SemiInvariantPoly::new(3, 1, Poly::monomial(vec![1, 1], Rational::one())).is_err());
    }

    #[test]
    fn costalk_map_examples() {
        let img = |n, i, m| {
            let omega = DominantGLWeight::fundamental(n, i).unwrap();
            costalk_to_semiinvariant(n, &class(n, m, &omega)).unwrap().to_string()
        };
        assert_eq!(img(2, 1, 1), "v");
        assert_eq!(img(3, 2, 0), "u^2");
        assert_eq!(img(2, 1, 2), "v^3");
        let bad = ClassIndex::new(vec![0], vec![0, 1]);
        assert!(costalk_to_semiinvariant(2, &bad).is_err());
    }

    #[test]
    fn canonical_weights() {
        assert_eq!(weight(&[4, 2, 1]).entries(), &[3, 1, 0]);
        assert!(DominantGLWeight::new(vec![0, 1]).is_err());
        assert_eq!(weight(&[3, 1, 1, 0]).fundamental_steps(), vec![1, 1, 3]);
        let all = DominantGLWeight::all_up_to(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|w| w.entries()[2] == 0 && w.entries()[0] <= 2));
    }

    #[test]
    fn surjectivity_examples() {
        let w1 = weight(&[1, 0]);
        assert!(verify_tensor_surjectivity(&w1, &w1, 10).unwrap());
        let lam = weight(&[3, 1, 1, 0]);
        let mu = DominantGLWeight::fundamental(4, 2).unwrap();
        assert!(verify_tensor_surjectivity(&lam, &mu, 16).unwrap());
        let zero = DominantGLWeight::zero(3);
        assert!(verify_tensor_surjectivity(&zero, &weight(&[2, 1, 0]), 10).unwrap());
        assert!(verify_tensor_surjectivity(&weight(&[2, 1, 0]), &zero, 10).unwrap());
    }

    #[test]
    fn iso_examples() {
        assert!(verify_iso_module_map(&weight(&[1, 0]), 12).unwrap());
        assert!(verify_iso_module_map(&weight(&[2, 1, 0]), 12).unwrap());
        assert!(verify_iso_module_map(&DominantGLWeight::zero(3), 12).unwrap());
    }

    #[test]
    fn character_examples() {
        let c = character_from_semiinvariants(&weight(&[1, 0]), 2).unwrap();
        assert_eq!(c.to_text(), "x*t + x^-1*t");
        let c = character_from_semiinvariants(&DominantGLWeight::zero(2), 3).unwrap();
        assert_eq!(c.to_text(), "1 + x^2*t^2 + t^2 + x^-2*t^2");
        for n in 1..=3 {
            for lam in DominantGLWeight::all_up_to(n, 2) {
                let a = character_from_semiinvariants(&lam, 12).unwrap();
                let b = klein_costalk_character(n, lam.entries(), 12, true).unwrap();
                assert_eq!(a, b, "N={n} lambda={lam}");
            }
        }
    }
}
