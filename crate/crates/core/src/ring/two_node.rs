//! The `GL(1) × GL(1)` local model with `wj + wi` fundamentals and one
//! bifundamental, its named elements and their relations.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::{AbelianRing, ClassIndex, RingElement};
use crate::error::{Error, Result};
use crate::gauge::TheorySpec;
use crate::poly::Poly;
use crate::report::CaseResult;

/// Named elements of the two-node model. Sections carry their `α`/`β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    Yj,
    Yi,
    Yji,
    Zj,
    Zi,
    Zji,
    /// `y_j^α`
    YjSection(usize),
    /// `'y_j^α`
    YjiSection(usize),
    /// `z_j^α`
    ZjSection(usize),
    /// `z_i^β`
    ZiSection(usize),
    /// `'z_i^β`
    ZjiSection(usize),
    /// `^α r^{m,n}`
    R { m: i64, n: i64, alpha: usize },
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Yj => write!(f, "y_j"),
            Named::Yi => write!(f, "y_i"),
            Named::Yji => write!(f, "y_{{j,i}}"),
            Named::Zj => write!(f, "z_j"),
            Named::Zi => write!(f, "z_i"),
            Named::Zji => write!(f, "z_{{j,i}}"),
            Named::YjSection(a) => write!(f, "y_j[{a}]"),
            Named::YjiSection(a) => write!(f, "'y_j[{a}]"),
            Named::ZjSection(a) => write!(f, "z_j[{a}]"),
            Named::ZiSection(b) => write!(f, "z_i[{b}]"),
            Named::ZjiSection(b) => write!(f, "'z_i[{b}]"),
            Named::R { m, n, alpha } => write!(f, "ra[{m},{n},{alpha}]"),
        }
    }
}

/// Two-node ring with gauge parameters named `w_j`, `w_i`.
#[derive(Clone, Debug)]
pub struct TwoNode {
    wj: usize,
    wi: usize,
    ring: Arc<AbelianRing>,
}

impl TwoNode {
    pub fn new(wj: usize, wi: usize) -> Result<Self> {
        Self::with_flavor(wj, wi, false)
    }

    pub fn with_flavor(wj: usize, wi: usize, flavor_formal: bool) -> Result<Self> {
        let theory = TheorySpec::two_node(wj, wi)?;
        let ring = AbelianRing::with_names(theory, flavor_formal, vec!["w_j".into(), "w_i".into()])?;
        Ok(TwoNode {
            wj,
            wi,
            ring: Arc::new(ring),
        })
    }

    pub fn ring(&self) -> &Arc<AbelianRing> {
        &self.ring
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.wj, self.wi)
    }

    pub fn w_j(&self) -> Poly {
        Poly::var(self.ring.nvars(), 0)
    }

    pub fn w_i(&self) -> Poly {
        Poly::var(self.ring.nvars(), 1)
    }

    /// `j`-slots `1^α 0^{wj−α}`, `i`-slots zero.
    fn j_flavor(&self, alpha: usize) -> Result<Vec<i64>> {
        if alpha > self.wj {
            return Err(Error::Precondition(format!("alpha {alpha} exceeds wj = {}", self.wj)));
        }
        let mut f = vec![0; self.wj + self.wi];
        f[..alpha].iter_mut().for_each(|k| *k = 1);
        Ok(f)
    }

    /// `j`-slots zero, `i`-slots `0^β (−1)^{wi−β}`.
    fn i_flavor(&self, beta: usize) -> Result<Vec<i64>> {
        if beta > self.wi {
            return Err(Error::Precondition(format!("beta {beta} exceeds wi = {}", self.wi)));
        }
        let mut f = vec![0; self.wj + self.wi];
        f[self.wj + beta..].iter_mut().for_each(|k| *k = -1);
        Ok(f)
    }

    pub fn class_of(&self, name: Named) -> Result<ClassIndex> {
        let zero = vec![0; self.wj + self.wi];
        let idx = |m: i64, n: i64, f: Vec<i64>| ClassIndex::new(vec![m, n], f);
        Ok(match name {
            Named::Yj => idx(1, 0, zero),
            Named::Yi => idx(0, 1, zero),
            Named::Yji => idx(1, 1, zero),
            Named::Zj => idx(-1, 0, zero),
            Named::Zi => idx(0, -1, zero),
            Named::Zji => idx(-1, -1, zero),
            Named::YjSection(a) => idx(1, 0, self.j_flavor(a)?),
            Named::YjiSection(a) => idx(1, 1, self.j_flavor(a)?),
            Named::ZjSection(a) => idx(0, 0, self.j_flavor(a)?),
            Named::ZiSection(b) => idx(0, -1, self.i_flavor(b)?),
            Named::ZjiSection(b) => idx(-1, -1, self.i_flavor(b)?),
            Named::R { m, n, alpha } => idx(m, n, self.j_flavor(alpha)?),
        })
    }

    pub fn named(&self, name: Named) -> Result<RingElement> {
        RingElement::basis(&self.ring, self.class_of(name)?)
    }

    /// `Π name^e`; an empty product is the identity.
    pub fn product(&self, factors: &[(Named, u32)]) -> Result<RingElement> {
        let mut out = RingElement::one(&self.ring);
        for &(name, e) in factors {
            out = out.multiply(&self.named(name)?.pow(e)?)?;
        }
        Ok(out)
    }

    fn coefficient(&self, c: &Coefficient) -> Poly {
        self.w_i()
            .sub(&self.w_j())
            .pow(c.diff)
            .mul(&self.w_i().pow(c.wi_pow))
            .mul(&self.w_j().pow(c.wj_pow))
    }

    pub fn eval_side(&self, side: &Side) -> Result<RingElement> {
        Ok(self.product(&side.factors)?.scale(&self.coefficient(&side.coeff)))
    }
}

/// `(w_i − w_j)^diff · w_i^wi_pow · w_j^wj_pow`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Coefficient {
    pub diff: u32,
    pub wi_pow: u32,
    pub wj_pow: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub coeff: Coefficient,
    pub factors: Vec<(Named, u32)>,
}

impl Side {
    fn of(factors: &[Named]) -> Self {
        Side {
            coeff: Coefficient::default(),
            factors: factors.iter().map(|&n| (n, 1)).collect(),
        }
    }

    fn with(coeff: Coefficient, factors: &[Named]) -> Self {
        Side {
            coeff,
            ..Side::of(factors)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: Side,
    pub rhs: Side,
}

/// Every relation among the named elements for the given `α` values. The
/// first nine do not involve sections; the remaining six repeat per `α`.
pub fn relations(wj: usize, wi: usize, alphas: &[usize]) -> Vec<Relation> {
    use Named::*;
    let (wj32, wi32) = (wj as u32, wi as u32);
    let c = |diff, wi_pow, wj_pow| Coefficient { diff, wi_pow, wj_pow };
    let rel = |label: &str, lhs, rhs| Relation {
        label: label.to_string(),
        lhs,
        rhs,
    };
    let mut out = vec![
        rel("z_j z_i = (w_i - w_j) z_{j,i}", Side::of(&[Zj, Zi]), Side::with(c(1, 0, 0), &[Zji])),
        rel("y_j y_i = (w_i - w_j) y_{j,i}", Side::of(&[Yj, Yi]), Side::with(c(1, 0, 0), &[Yji])),
        rel("z_{j,i} y_{j,i} = w_i^wi w_j^wj", Side::of(&[Zji, Yji]), Side::with(c(0, wi32, wj32), &[])),
        rel("z_i y_i = (w_i - w_j) w_i^wi", Side::of(&[Zi, Yi]), Side::with(c(1, wi32, 0), &[])),
        rel("z_j y_j = (w_i - w_j) w_j^wj", Side::of(&[Zj, Yj]), Side::with(c(1, 0, wj32), &[])),
        rel("z_i y_{j,i} = w_i^wi y_j", Side::of(&[Zi, Yji]), Side::with(c(0, wi32, 0), &[Yj])),
        rel("z_j y_{j,i} = w_j^wj y_i", Side::of(&[Zj, Yji]), Side::with(c(0, 0, wj32), &[Yi])),
        rel("y_i z_{j,i} = w_i^wi z_j", Side::of(&[Yi, Zji]), Side::with(c(0, wi32, 0), &[Zj])),
        rel("y_j z_{j,i} = w_j^wj z_i", Side::of(&[Yj, Zji]), Side::with(c(0, 0, wj32), &[Zi])),
    ];
    for &a in alphas {
        let a32 = a as u32;
        let rest = wj32.saturating_sub(a32);
        let tag = |s: &str| format!("{s} [alpha={a}]");
        out.extend([
            rel(&tag("y_j 'y_j^a = y_{j,i} y_j^a"), Side::of(&[Yj, YjiSection(a)]), Side::of(&[Yji, YjSection(a)])),
            rel(
                &tag("z_j y_j^a = (w_i - w_j) w_j^(wj-a) z_j^a"),
                Side::of(&[Zj, YjSection(a)]),
                Side::with(c(1, 0, rest), &[ZjSection(a)]),
            ),
            rel(
                &tag("y_i y_j^a = (w_i - w_j) 'y_j^a"),
                Side::of(&[Yi, YjSection(a)]),
                Side::with(c(1, 0, 0), &[YjiSection(a)]),
            ),
            rel(
                &tag("z_{j,i} y_j^a = w_j^(wj-a) z_i z_j^a"),
                Side::of(&[Zji, YjSection(a)]),
                Side::with(c(0, 0, rest), &[Zi, ZjSection(a)]),
            ),
            rel(
                &tag("y_j z_j^a = w_j^a y_j^a"),
                Side::of(&[Yj, ZjSection(a)]),
                Side::with(c(0, 0, a32), &[YjSection(a)]),
            ),
            rel(
                &tag("y_{j,i} z_j^a = w_j^a 'y_j^a"),
                Side::of(&[Yji, ZjSection(a)]),
                Side::with(c(0, 0, a32), &[YjiSection(a)]),
            ),
        ]);
    }
    out
}

/// Checks every relation by multiplying out both sides.
pub fn verify_computation_relations(wj: usize, wi: usize, alphas: &[usize]) -> Result<Vec<CaseResult>> {
    let model = TwoNode::new(wj, wi)?;
    relations(wj, wi, alphas)
        .into_par_iter()
        .map(|r| {
            let lhs = model.eval_side(&r.lhs)?;
            let rhs = model.eval_side(&r.rhs)?;
            Ok(CaseResult::compare(
                format!("wj={wj} wi={wi}: {}", r.label),
                rhs.render(),
                lhs.render(),
            ))
        })
        .collect()
}

/// The factorizations of `^α r^{m,n}` whose conditions hold; boundary cells
/// satisfy more than one.
pub fn rmn_factorizations(m: i64, n: i64, alpha: usize) -> Vec<(usize, Vec<(Named, u32)>)> {
    use Named::*;
    let e = |k: i64| k as u32;
    let mut out = Vec::new();
    if m > n && n >= 0 {
        out.push((1, vec![(Yj, e(m - n - 1)), (Yji, e(n)), (YjSection(alpha), 1)]));
    }
    if m > 0 && 0 >= n {
        out.push((2, vec![(Zi, e(-n)), (Yj, e(m - 1)), (YjSection(alpha), 1)]));
    }
    if n >= m && m > 0 {
        out.push((3, vec![(Yi, e(n - m)), (Yji, e(m - 1)), (YjiSection(alpha), 1)]));
    }
    if n >= 0 && 0 >= m {
        out.push((4, vec![(Yi, e(n)), (Zj, e(-m)), (ZjSection(alpha), 1)]));
    }
    if 0 >= m && m >= n {
        out.push((5, vec![(Zi, e(m - n)), (Zji, e(-m)), (ZjSection(alpha), 1)]));
    }
    if 0 >= n && n >= m {
        out.push((6, vec![(Zj, e(n - m)), (Zji, e(-n)), (ZjSection(alpha), 1)]));
    }
    out
}

/// Compares each applicable factorization of `^α r^{m,n}` with the basis
/// class.
pub fn verify_rmn(
    wj: usize,
    wi: usize,
    alphas: &[usize],
    ms: &[i64],
    ns: &[i64],
) -> Result<Vec<CaseResult>> {
    let model = TwoNode::new(wj, wi)?;
    let cells: Vec<(usize, i64, i64)> = alphas
        .iter()
        .flat_map(|&a| ms.iter().flat_map(move |&m| ns.iter().map(move |&n| (a, m, n))))
        .collect();
    let nested: Vec<Vec<CaseResult>> = cells
        .into_par_iter()
        .map(|(alpha, m, n)| {
            let expected = model.named(Named::R { m, n, alpha })?;
            rmn_factorizations(m, n, alpha)
                .into_iter()
                .map(|(case, factors)| {
                    let actual = model.product(&factors)?;
                    Ok(CaseResult::compare(
                        format!("wj={wj} wi={wi} alpha={alpha} m={m} n={n} case={case}"),
                        expected.render(),
                        actual.render(),
                    ))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// The relations at `wj = wi = 1` checked in the ring and in the quadric model.
pub fn sl3_cross_check() -> Result<Vec<CaseResult>> {
    let mut cases: Vec<CaseResult> = verify_computation_relations(1, 1, &[1])?
        .into_iter()
        .map(|mut c| {
            c.id = format!("ring: {}", c.id);
            c
        })
        .collect();
    cases.extend(crate::slice::verify_example_relations());
    cases.extend(crate::slice::verify_section_vanishing());
    Ok(cases)
}
