//! The two-node model at `wj = wi = 1` realized on the incidence quadric
//! `a1 b1 + a2 b2 + a3 b3 = 0` in `V × V*`.

use std::collections::HashMap;

use crate::poly::Poly;
use crate::report::CaseResult;
use crate::ring::two_node::{relations, Coefficient, Named, Side};

/// Polynomial in `a1, a2, a3, b1, b2, b3` (in that variable order).
pub type QuadricPoly = Poly;

pub const VARIABLES: [&str; 6] = ["a1", "a2", "a3", "b1", "b2", "b3"];

pub fn var(name: &str) -> QuadricPoly {
    let i = VARIABLES.iter().position(|&v| v == name).expect("quadric variable");
    Poly::var(6, i)
}

fn names() -> Vec<String> {
    VARIABLES.iter().map(|s| s.to_string()).collect()
}

pub fn render(p: &QuadricPoly) -> String {
    p.render(&names())
}

pub fn quadric() -> QuadricPoly {
    var("a1").mul(&var("b1")).add(&var("a2").mul(&var("b2"))).add(&var("a3").mul(&var("b3")))
}

/// Rewrites `a2 b2 ↦ −a1 b1 − a3 b3` until no monomial holds both.
pub fn reduce_mod_quadric(p: &QuadricPoly) -> QuadricPoly {
    let replacement = var("a1").mul(&var("b1")).add(&var("a3").mul(&var("b3"))).neg();
    let mut current = p.clone();
    loop {
        let mut done = Poly::zero(6);
        let mut pending = Poly::zero(6);
        for (m, c) in current.terms() {
            if m[1] > 0 && m[4] > 0 {
                let mut rest = m.clone();
                rest[1] -= 1;
                rest[4] -= 1;
                pending = pending.add(&replacement.shift(&rest).scale(c));
            } else {
                done.add_term(m.clone(), c.clone());
            }
        }
        if pending.is_zero() {
            return done;
        }
        current = done.add(&pending);
    }
}

/// Exact quotient of `p − reduce(p)` by the quadric.
pub fn reduction_quotient(p: &QuadricPoly) -> Option<QuadricPoly> {
    p.sub(&reduce_mod_quadric(p)).div_exact(&quadric())
}

pub fn equal_mod_quadric(a: &QuadricPoly, b: &QuadricPoly) -> bool {
    reduce_mod_quadric(&a.sub(b)).is_zero()
}

fn images() -> HashMap<Named, QuadricPoly> {
    let (a1, a2, a3) = (var("a1"), var("a2"), var("a3"));
    let (b1, b2, b3) = (var("b1"), var("b2"), var("b3"));
    HashMap::from([
        (Named::Yi, a1.mul(&b2)),
        (Named::Yj, a2.mul(&b3)),
        (Named::Yji, a1.mul(&b3)),
        (Named::Zi, a2.mul(&b1).neg()),
        (Named::Zj, a3.mul(&b2)),
        (Named::Zji, a3.mul(&b1).neg()),
        (Named::YjSection(1), a2.clone()),
        (Named::YjiSection(1), a1.clone()),
        (Named::ZjSection(1), a3.clone()),
    ])
}

pub fn w_i() -> QuadricPoly {
    var("a1").mul(&var("b1")).neg()
}

pub fn w_j() -> QuadricPoly {
    var("a3").mul(&var("b3"))
}

fn coefficient(c: &Coefficient) -> QuadricPoly {
    w_i()
        .sub(&w_j())
        .pow(c.diff)
        .mul(&w_i().pow(c.wi_pow))
        .mul(&w_j().pow(c.wj_pow))
}

fn side(s: &Side, table: &HashMap<Named, QuadricPoly>) -> QuadricPoly {
    s.factors
        .iter()
        .fold(coefficient(&s.coeff), |acc, (n, e)| acc.mul(&table[n].pow(*e)))
}

/// Each relation at `wj = wi = 1, α = 1` under the quadric substitution,
/// plus `w_i − w_j ≡ a2 b2`. Each case also checks that the discarded part
/// is an exact multiple of the quadric.
pub fn verify_example_relations() -> Vec<CaseResult> {
    let table = images();
    let mut cases: Vec<CaseResult> = relations(1, 1, &[1])
        .into_iter()
        .map(|r| {
            let diff = side(&r.lhs, &table).sub(&side(&r.rhs, &table));
            let reduced = reduce_mod_quadric(&diff);
            let divisible = reduction_quotient(&diff).is_some();
            CaseResult::check(
                format!("quadric: {}", r.label),
                reduced.is_zero() && divisible,
                "0",
                render(&reduced),
            )
        })
        .collect();
    let diff = w_i().sub(&w_j()).sub(&var("a2").mul(&var("b2")));
    let reduced = reduce_mod_quadric(&diff);
    cases.push(CaseResult::check(
        "quadric: w_i - w_j = a2 b2".into(),
        reduced.is_zero() && reduction_quotient(&diff).is_some(),
        "0",
        render(&reduced),
    ));
    let anchor = images()[&Named::ZjSection(1)].clone();
    cases.push(CaseResult::compare(
        "quadric: ^1r^{0,0} = z_j^1 = a3".into(),
        "a3".into(),
        render(&anchor),
    ));
    cases
}

/// The section times the cosection `b3` gives the stated coordinate.
pub fn verify_section_vanishing() -> Vec<CaseResult> {
    let table = images();
    let b3 = var("b3");
    [
        ("a2 * b3 = y_j", var("a2").mul(&b3), table[&Named::Yj].clone()),
        ("a3 * b3 = w_j", var("a3").mul(&b3), w_j()),
        ("a1 * b3 = y_{j,i}", var("a1").mul(&b3), table[&Named::Yji].clone()),
    ]
    .into_iter()
    .map(|(label, lhs, rhs)| CaseResult::compare(format!("section: {label}"), render(&rhs), render(&lhs)))
    .collect()
}
