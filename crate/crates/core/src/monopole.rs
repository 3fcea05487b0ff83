//! The flavored monopole formula as an exact truncated lattice sum, together
//! with closed forms it is compared against.
//!
//! A summand sits at every dominant coweight `λ` of the gauge group:
//!
//! ```text
//! t^{Δ(λ, κ)} · x^{Σλ} · Π_blocks Π_{k=1}^{m} (1 − t^{2k})^{-1}
//! Δ(λ, κ) = −2 Σ_{a<b} |λ_a − λ_b| + Σ_χ |⟨χ_gauge, λ⟩ + ⟨χ_flavor, κ⟩|
//! ```
//!
//! where the classical factor runs over maximal blocks of equal consecutive
//! entries (of size `m`) inside each factor. The sum is evaluated by
//! enumerating coweights in growing radius shells until it stabilizes.

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gauge::{enumerate_dominant, DominantCoweight, FlavorCoweight, TheorySpec};
use crate::series::{BiDegree, Rational, TruncatedSeries};

pub const DEFAULT_MAX_RADIUS: i64 = 64;

/// One summand of the monopole sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonopoleTerm {
    pub coweight: DominantCoweight,
    pub t_exponent: i64,
    /// `Σ_a λ_a` for each gauge factor.
    pub x_exponent: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonopoleOptions {
    pub max_radius: i64,
}

impl Default for MonopoleOptions {
    fn default() -> Self {
        MonopoleOptions {
            max_radius: DEFAULT_MAX_RADIUS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonopoleSum {
    pub series: TruncatedSeries,
    /// Largest radius enumerated, guard shell included.
    pub radius: i64,
}

fn check_shapes(theory: &TheorySpec, lambda: &DominantCoweight, kappa: &FlavorCoweight) -> Result<()> {
    if lambda.parts.len() != theory.num_factors()
        || lambda.parts.iter().zip(&theory.group.factors).any(|(p, &n)| p.len() != n)
    {
        return Err(Error::Shape(format!(
            "coweight {:?} does not fit factors {:?}",
            lambda.parts, theory.group.factors
        )));
    }
    if kappa.len() != theory.flavor_rank {
        return Err(Error::Shape(format!(
            "flavor coweight has {} entries, theory has flavor rank {}",
            kappa.len(),
            theory.flavor_rank
        )));
    }
    Ok(())
}

pub fn delta_exponent(theory: &TheorySpec, lambda: &DominantCoweight, kappa: &FlavorCoweight) -> Result<i64> {
    check_shapes(theory, lambda, kappa)?;
    Ok(delta_unchecked(theory, lambda, kappa))
}

fn delta_unchecked(theory: &TheorySpec, lambda: &DominantCoweight, kappa: &FlavorCoweight) -> i64 {
    let roots: i64 = lambda
        .parts
        .iter()
        .map(|p| {
            let mut s = 0;
            for a in 0..p.len() {
                for b in a + 1..p.len() {
                    s += (p[a] - p[b]).abs();
                }
            }
            s
        })
        .sum();
    let matter: i64 = theory
        .matter
        .iter()
        .map(|chi| chi.pairing(&lambda.parts, &kappa.entries).abs())
        .sum();
    matter - 2 * roots
}

/// Sizes of the maximal runs of equal entries, factor by factor.
fn block_sizes(lambda: &DominantCoweight) -> Vec<usize> {
    let mut sizes = Vec::new();
    for part in &lambda.parts {
        let mut run = 0;
        for (i, v) in part.iter().enumerate() {
            run += 1;
            if i + 1 == part.len() || part[i + 1] != *v {
                sizes.push(run);
                run = 0;
            }
        }
    }
    sizes.sort_unstable();
    sizes
}

fn classical_from_blocks(blocks: &[usize], order: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(0, order);
    for &m in blocks {
        for k in 1..=m as u32 {
            let g = TruncatedSeries::geom_expand(2 * k, &[], order).expect("t-step is positive");
            out = out.mul(&g).expect("equal x-rank");
        }
    }
    out
}

/// `Π_blocks Π_{k=1}^{m} (1 − t^{2k})^{-1}`, expanded below `t^order`.
pub fn classical_factor(lambda: &DominantCoweight, order: u32) -> TruncatedSeries {
    classical_from_blocks(&block_sizes(lambda), order)
}

struct Accumulator<'a> {
    theory: &'a TheorySpec,
    kappa: &'a FlavorCoweight,
    order: u32,
    graded: bool,
    cache: HashMap<Vec<usize>, TruncatedSeries>,
    series: TruncatedSeries,
}

impl<'a> Accumulator<'a> {
    fn new(theory: &'a TheorySpec, kappa: &'a FlavorCoweight, order: u32, graded: bool) -> Self {
        let x_rank = if graded { theory.num_factors() } else { 0 };
        Accumulator {
            theory,
            kappa,
            order,
            graded,
            cache: HashMap::new(),
            series: TruncatedSeries::zero(x_rank, order),
        }
    }

    /// Terms of one shell `inner < max|λ| ≤ outer`, in enumeration order.
    fn shell(&self, inner: Option<i64>, outer: i64) -> Vec<MonopoleTerm> {
        let coweights: Vec<DominantCoweight> = enumerate_dominant(self.theory, outer)
            .into_iter()
            .filter(|c| inner.is_none_or(|r| c.max_abs() > r))
            .collect();
        coweights
            .into_par_iter()
            .map(|c| MonopoleTerm {
                t_exponent: delta_unchecked(self.theory, &c, self.kappa),
                x_exponent: c.factor_sums(),
                coweight: c,
            })
            .collect()
    }

    /// Adds the contributing terms of a shell. Returns the number added.
    fn absorb(&mut self, terms: &[MonopoleTerm]) -> Result<usize> {
        let mut added = 0;
        for term in terms {
            if term.t_exponent < 0 {
                return Err(Error::NegativeExponent {
                    coweight: term.coweight.parts.clone(),
                    exponent: term.t_exponent,
                });
            }
            if term.t_exponent >= self.order as i64 {
                continue;
            }
            let blocks = block_sizes(&term.coweight);
            let (order, x_rank) = (self.order, self.series.x_rank());
            let classical = self.cache.entry(blocks).or_insert_with_key(|b| {
                classical_from_blocks(b, order)
                    .substitute_x(&vec![vec![]; x_rank])
                    .expect("x-rank 0 source")
            });
            let x_shift: &[i64] = if self.graded { &term.x_exponent } else { &[] };
            self.series
                .add_shifted(classical, term.t_exponent as u32, x_shift)?;
            added += 1;
        }
        Ok(added)
    }
}

/// Monopole sum over all dominant coweights with entries in
/// `[-radius, radius]`, without any stabilization check.
pub fn monopole_sum_at_radius(
    theory: &TheorySpec,
    kappa: &FlavorCoweight,
    order: u32,
    graded: bool,
    radius: i64,
) -> Result<TruncatedSeries> {
    if kappa.len() != theory.flavor_rank {
        return Err(Error::Shape(format!(
            "flavor coweight has {} entries, theory has flavor rank {}",
            kappa.len(),
            theory.flavor_rank
        )));
    }
    let mut acc = Accumulator::new(theory, kappa, order, graded);
    let terms = acc.shell(None, radius);
    acc.absorb(&terms)?;
    Ok(acc.series)
}

pub fn monopole_series(
    theory: &TheorySpec,
    kappa: &FlavorCoweight,
    order: u32,
    graded: bool,
) -> Result<TruncatedSeries> {
    monopole_series_with(theory, kappa, order, graded, &MonopoleOptions::default()).map(|s| s.series)
}

/// Evaluates the monopole sum by doubling the enumeration radius. The sum is
/// accepted once a shell adds nothing below `t^order` and the following
/// guard shell adds nothing either. A contributing shell beyond
/// `opts.max_radius` is reported as non-convergence.
pub fn monopole_series_with(
    theory: &TheorySpec,
    kappa: &FlavorCoweight,
    order: u32,
    graded: bool,
    opts: &MonopoleOptions,
) -> Result<MonopoleSum> {
    if kappa.len() != theory.flavor_rank {
        return Err(Error::Shape(format!(
            "flavor coweight has {} entries, theory has flavor rank {}",
            kappa.len(),
            theory.flavor_rank
        )));
    }
    let mut acc = Accumulator::new(theory, kappa, order, graded);
    let origin = acc.shell(None, 0);
    acc.absorb(&origin)?;

    let mut inner = 0i64;
    let mut outer = 1i64;
    let mut quiet_shells = 0;
    loop {
        let terms = acc.shell(Some(inner), outer);
        let added = acc.absorb(&terms)?;
        if added == 0 {
            quiet_shells += 1;
            if quiet_shells == 2 {
                return Ok(MonopoleSum {
                    series: acc.series,
                    radius: outer,
                });
            }
        } else {
            quiet_shells = 0;
            if outer >= opts.max_radius {
                let worst = terms
                    .iter()
                    .filter(|t| t.t_exponent < order as i64)
                    .min_by_key(|t| t.t_exponent)
                    .expect("shell contributed");
                return Err(Error::NonConvergence {
                    radius: outer,
                    ray: worst.coweight.parts.clone(),
                    exponent: worst.t_exponent,
                });
            }
        }
        inner = outer;
        outer *= 2;
    }
}

/// `t^{2l} (1 − t²)^{-1} (1 − t)^{-2} Σ_{m∈ℤ} t^{|l − m| + |m|}`.
pub fn hilb2_closed_form(l: u32, order: u32) -> TruncatedSeries {
    let l = l as i64;
    let mut lattice = TruncatedSeries::zero(0, order);
    let reach = order as i64 + l + 1;
    for m in -reach..=reach {
        let e = 2 * l + (l - m).abs() + m.abs();
        if e < order as i64 {
            lattice.add_term(BiDegree::new(e as u32, vec![]), Rational::one());
        }
    }
    let g1 = TruncatedSeries::geom_expand(1, &[], order).expect("positive step");
    let g2 = TruncatedSeries::geom_expand(2, &[], order).expect("positive step");
    lattice
        .mul(&g2)
        .and_then(|s| s.mul(&g1))
        .and_then(|s| s.mul(&g1))
        .expect("x-rank 0 throughout")
}

/// Compares the monopole sum of `jordan(2)` at flavor charge `l` with the
/// closed form, ungraded.
pub fn verify_monopole_hilbert(l: u32, order: u32) -> Result<bool> {
    let theory = TheorySpec::jordan(2)?;
    let lhs = monopole_series(&theory, &FlavorCoweight::new(vec![l as i64]), order, false)?;
    let rhs = hilb2_closed_form(l, order);
    TruncatedSeries::equal_upto(&lhs, &rhs, order)
}

fn check_decreasing(lambda: &[i64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!("{lambda:?} is not weakly decreasing")));
    }
    Ok(())
}

/// Generator index `m` of the costalk at `λ` and its bidegree
/// `(x^{Σ(λ_i − m)}, t^{Σ|λ_i − m|})`.
pub fn klein_generator(lambda: &[i64], m: i64) -> (u32, i64) {
    let t: i64 = lambda.iter().map(|l| (l - m).abs()).sum();
    let x: i64 = lambda.iter().map(|l| l - m).sum();
    (t as u32, x)
}

/// Range of generator indices `m` whose `t`-degree can lie below `order`.
pub fn klein_generator_range(lambda: &[i64], order: u32) -> std::ops::RangeInclusive<i64> {
    let lo = lambda.iter().copied().min().unwrap_or(0);
    let hi = lambda.iter().copied().max().unwrap_or(0);
    let slack = order as i64 + 1;
    (lo - slack)..=(hi + slack)
}

/// `Σ_{m∈ℤ} x^{Σ(λ_i − m)} t^{Σ|λ_i − m|}`, optionally times `(1 − t²)^{-1}`.
pub fn klein_costalk_character(
    n: usize,
    lambda: &[i64],
    order: u32,
    with_classical: bool,
) -> Result<TruncatedSeries> {
    if lambda.len() != n || n == 0 {
        return Err(Error::Shape(format!("λ = {lambda:?} must have {n} > 0 entries")));
    }
    check_decreasing(lambda)?;
    let mut gens = TruncatedSeries::zero(1, order);
    for m in klein_generator_range(lambda, order) {
        let (t, x) = klein_generator(lambda, m);
        gens.add_term(BiDegree::new(t, vec![x]), Rational::one());
    }
    if with_classical {
        gens = gens.mul(&TruncatedSeries::geom_expand(2, &[0], order)?)?;
    }
    Ok(gens)
}

/// Bigraded Hilbert series of `ℂ[Z, Y, W]/(ZY − W^N)` by monomial count:
/// basis `W^a Z^b` and `W^a Y^c`, with `Z ↦ x^N t^N`, `Y ↦ x^{-N} t^N`,
/// `W ↦ t²`.
pub fn sn_ring_character(n: usize, order: u32) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidSize("N must be at least 1".into()));
    }
    let n = n as i64;
    let order_i = order as i64;
    let mut out = TruncatedSeries::zero(1, order);
    let mut a = 0;
    while 2 * a < order_i {
        out.add_term(BiDegree::new((2 * a) as u32, vec![0]), Rational::one());
        let mut b = 1;
        while 2 * a + n * b < order_i {
            let t = (2 * a + n * b) as u32;
            out.add_term(BiDegree::new(t, vec![n * b]), Rational::one());
            out.add_term(BiDegree::new(t, vec![-n * b]), Rational::one());
            b += 1;
        }
        a += 1;
    }
    Ok(out)
}

/// Rescales the single `x`-variable of a graded `sqed(N)` monopole series
/// (`x^m`, `m` the gauge coweight) to the `x^{-Nm}` convention in which `u`
/// carries `x` and `v` carries `x^{-1}`.
pub fn sqed_to_plane_grading(series: &TruncatedSeries, n: usize) -> Result<TruncatedSeries> {
    series.substitute_x(&[vec![-(n as i64)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn t_series(coeffs: &[i64], order: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(0, order);
        for (t, &c) in coeffs.iter().enumerate() {
            s.add_term(BiDegree::new(t as u32, vec![]), rat(c));
        }
        s
    }

    /// Product of geometric series by repeated convolution on plain vectors.
    fn oracle_inverse_product(steps: &[usize], order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order];
        c[0] = 1;
        for &k in steps {
            for i in k..order {
                c[i] += c[i - k];
            }
        }
        c
    }

    #[test]
    fn delta_examples() {
        let j2 = TheorySpec::jordan(2).unwrap();
        let lam = DominantCoweight::new(vec![vec![1, 0]]).unwrap();
        assert_eq!(delta_exponent(&j2, &lam, &FlavorCoweight::new(vec![1])).unwrap(), 5);
        let zero = DominantCoweight::new(vec![vec![0, 0]]).unwrap();
        assert_eq!(delta_exponent(&j2, &zero, &FlavorCoweight::new(vec![0])).unwrap(), 0);
        let s3 = TheorySpec::sqed(3).unwrap();
        for m in -4..=4 {
            let lam = DominantCoweight::new(vec![vec![m]]).unwrap();
            assert_eq!(delta_exponent(&s3, &lam, &FlavorCoweight::zero(3)).unwrap(), 3 * m.abs());
        }
        assert!(delta_exponent(&s3, &lam, &FlavorCoweight::zero(2)).is_err());
    }

    #[test]
    fn delta_matches_displayed_gl2_exponent() {
        let j2 = TheorySpec::jordan(2).unwrap();
        for l in 0..4i64 {
            for a in -5..=5i64 {
                for b in -5..=a {
                    let lam = DominantCoweight::new(vec![vec![a, b]]).unwrap();
                    let d = delta_exponent(&j2, &lam, &FlavorCoweight::new(vec![l])).unwrap();
                    let displayed = if a > b {
                        -2 * (a - b).abs() + (a - b + l).abs() + (b - a + l).abs() + 2 * l
                            + (a + l).abs()
                            + (b + l).abs()
                    } else {
                        4 * l + 2 * (a + l).abs()
                    };
                    assert_eq!(d, displayed);
                }
            }
        }
    }

    #[test]
    fn classical_examples() {
        let order = 12;
        let f = |parts: Vec<i64>| classical_factor(&DominantCoweight::new(vec![parts]).unwrap(), order);
        let expect = |steps: &[usize]| {
            let c = oracle_inverse_product(steps, order as usize);
            t_series(&c, order)
        };
        assert_eq!(f(vec![1, 0]), expect(&[2, 2]));
        assert_eq!(f(vec![1, 1]), expect(&[2, 4]));
        assert_eq!(f(vec![2, 2, 1]), expect(&[2, 4, 2]));
    }

    #[test]
    fn monopole_examples() {
        let s = monopole_series(&TheorySpec::sqed(2).unwrap(), &FlavorCoweight::zero(2), 6, false).unwrap();
        assert_eq!(s, t_series(&[1, 0, 3, 0, 5, 0], 6));
        // GL(1) with weights m and 0: Σ t^{|m|} / (1 - t²) = 1 / (1 - t)².
        let s = monopole_series(&TheorySpec::jordan(1).unwrap(), &FlavorCoweight::new(vec![0]), 4, false).unwrap();
        assert_eq!(s, t_series(&[1, 2, 3, 4], 4));
        let s = monopole_series(&TheorySpec::trivial(), &FlavorCoweight::zero(0), 5, true).unwrap();
        assert_eq!(s, TruncatedSeries::one(0, 5));
    }

    #[test]
    fn bad_theory_fails_loudly() {
        // GL(1) with no matter: every coweight contributes at t^0.
        let theory = TheorySpec::new(crate::gauge::GaugeGroup::new(vec![1]).unwrap(), 0, vec![]).unwrap();
        let err = monopole_series(&theory, &FlavorCoweight::zero(0), 4, false).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { exponent: 0, .. }));
        // pure GL(2): negative exponents
        let theory = TheorySpec::new(crate::gauge::GaugeGroup::new(vec![2]).unwrap(), 0, vec![]).unwrap();
        let err = monopole_series(&theory, &FlavorCoweight::zero(0), 4, false).unwrap_err();
        assert!(matches!(err, Error::NegativeExponent { .. }));
    }

    #[test]
    fn hilb2_examples() {
        // l = 0: (1 + 2t² + 2t⁴ + …)/((1 - t²)(1 - t)²) by convolution.
        let s = hilb2_closed_form(0, 4);
        let mut lattice = vec![1i64, 0, 2, 0];
        for k in [2usize, 1, 1] {
            for i in k..4 {
                lattice[i] += lattice[i - k];
            }
        }
        assert_eq!(s, t_series(&lattice, 4));
        assert_eq!(s.coefficient(0, &[]), rat(1));
        // l = 1: lowest term t^{2l + l} = t^3 with coefficient |{m : |1-m|+|m| = 1}| = 2.
        let s = hilb2_closed_form(1, 8);
        assert_eq!(s.coefficient(0, &[]), rat(0));
        assert_eq!(s.coefficient(2, &[]), rat(0));
        assert_eq!(s.coefficient(3, &[]), rat(2));
    }

    #[test]
    fn monopole_hilbert_identity() {
        assert!(verify_monopole_hilbert(0, 20).unwrap());
        assert!(verify_monopole_hilbert(1, 20).unwrap());
        assert!(verify_monopole_hilbert(3, 30).unwrap());
    }

    #[test]
    fn klein_examples() {
        let g = klein_costalk_character(2, &[1, 0], 4, false).unwrap();
        assert_eq!(g.to_text(), "x*t + x^-1*t + x^3*t^3 + x^-3*t^3");
        let g = klein_costalk_character(2, &[0, 0], 1, false).unwrap();
        assert_eq!(g, TruncatedSeries::one(1, 1));
        let g = klein_costalk_character(3, &[0, 0, 0], 4, true).unwrap();
        assert_eq!(g.to_text(), "1 + t^2 + x^3*t^3 + x^-3*t^3");
        assert!(klein_costalk_character(2, &[0, 1], 4, false).is_err());
    }

    #[test]
    fn sn_ring_examples() {
        assert_eq!(sn_ring_character(2, 3).unwrap().collapse_x(), t_series(&[1, 0, 3], 3));
        assert_eq!(sn_ring_character(1, 3).unwrap().collapse_x(), t_series(&[1, 2, 3], 3));
        assert_eq!(sn_ring_character(4, 9).unwrap().coefficient(0, &[0]), rat(1));
    }

    #[test]
    fn sqed_matches_sn_ring() {
        for n in 1..=5 {
            let m = monopole_series(&TheorySpec::sqed(n).unwrap(), &FlavorCoweight::zero(n), 16, true).unwrap();
            let m = sqed_to_plane_grading(&m, n).unwrap();
            assert_eq!(m, sn_ring_character(n, 16).unwrap(), "N = {n}");
            let k = klein_costalk_character(n, &vec![0; n], 16, true).unwrap();
            assert_eq!(k, sn_ring_character(n, 16).unwrap());
        }
    }

    #[test]
    fn radius_is_stable() {
        let theory = TheorySpec::jordan(2).unwrap();
        let kappa = FlavorCoweight::new(vec![2]);
        let sum = monopole_series_with(&theory, &kappa, 16, true, &MonopoleOptions::default()).unwrap();
        let again = monopole_sum_at_radius(&theory, &kappa, 16, true, 2 * sum.radius).unwrap();
        assert_eq!(sum.series, again);
        assert!(sum.series.is_graded_dimension());
    }
}
