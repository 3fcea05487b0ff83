//! Named verification suites over parameter grids.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gauge::{FlavorCoweight, TheorySpec};
use crate::klein::{
    character_from_semiinvariants, iso_module_map_cases, tensor_surjectivity_cases, DominantGLWeight,
};
use crate::monopole::{
    hilb2_closed_form, klein_costalk_character, monopole_series_with, sn_ring_character, sqed_to_plane_grading,
    MonopoleOptions,
};
use crate::report::{CaseResult, SuiteReport};
use crate::ring::two_node::{sl3_cross_check, verify_computation_relations, verify_rmn};
use crate::slice::{verify_example_relations, verify_section_vanishing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    MonopoleHilbert,
    KleinMultiplicity,
    KleinSurjectivity,
    KleinIso,
    RingComputation,
    RingRmn,
    Sl3Example,
    SnCoincidence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::MonopoleHilbert,
        Suite::KleinMultiplicity,
        Suite::KleinSurjectivity,
        Suite::KleinIso,
        Suite::RingComputation,
        Suite::RingRmn,
        Suite::Sl3Example,
        Suite::SnCoincidence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MonopoleHilbert => "monopole-hilbert",
            Suite::KleinMultiplicity => "klein-multiplicity",
            Suite::KleinSurjectivity => "klein-surjectivity",
            Suite::KleinIso => "klein-iso",
            Suite::RingComputation => "ring-computation",
            Suite::RingRmn => "ring-rmn",
            Suite::Sl3Example => "sl3-example",
            Suite::SnCoincidence => "sn-coincidence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || Error::Parse(format!("expected an integer or a range a..b, got '{s}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Grid parameters; `None` selects the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub order: Option<u32>,
    pub l: Option<RangeInclusive<i64>>,
    pub rank: Option<RangeInclusive<i64>>,
    pub lambda_max: Option<i64>,
    pub wj: Option<RangeInclusive<i64>>,
    pub wi: Option<RangeInclusive<i64>>,
    pub alpha: Option<RangeInclusive<i64>>,
    pub m: Option<RangeInclusive<i64>>,
    pub n: Option<RangeInclusive<i64>>,
    pub monopole: MonopoleOptions,
}

fn nonneg(r: RangeInclusive<i64>, what: &str) -> Result<Vec<usize>> {
    if *r.start() < 0 {
        return Err(Error::Precondition(format!("{what} must be nonnegative")));
    }
    Ok(r.map(|k| k as usize).collect())
}

fn positive(r: RangeInclusive<i64>, what: &str) -> Result<Vec<usize>> {
    if *r.start() < 1 {
        return Err(Error::Precondition(format!("{what} must be at least 1")));
    }
    Ok(r.map(|k| k as usize).collect())
}

fn alphas(params: &SuiteParams, wj: usize) -> Vec<usize> {
    match &params.alpha {
        Some(r) => r.clone().filter(|&a| a >= 0 && a as usize <= wj).map(|a| a as usize).collect(),
        None => (0..=wj).collect(),
    }
}

fn weights(params: &SuiteParams, default_ranks: RangeInclusive<i64>) -> Result<Vec<DominantGLWeight>> {
    let ranks = positive(params.rank.clone().unwrap_or(default_ranks), "rank")?;
    let max = params.lambda_max.unwrap_or(3);
    if max < 0 {
        return Err(Error::Precondition("lambda-max must be nonnegative".into()));
    }
    Ok(ranks
        .into_iter()
        .flat_map(|n| DominantGLWeight::all_up_to(n, max))
        .collect())
}

fn flatten(nested: Result<Vec<Vec<CaseResult>>>) -> Result<Vec<CaseResult>> {
    Ok(nested?.into_iter().flatten().collect())
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match suite {
        Suite::MonopoleHilbert => {
            let order = params.order.unwrap_or(30);
            let theory = TheorySpec::jordan(2)?;
            let ls = nonneg(params.l.clone().unwrap_or(0..=5), "l")?;
            ls.into_par_iter()
                .map(|l| {
                    let kappa = FlavorCoweight::new(vec![l as i64]);
                    let lhs = monopole_series_with(&theory, &kappa, order, false, &params.monopole)?.series;
                    let rhs = hilb2_closed_form(l as u32, order);
                    Ok(CaseResult::compare(format!("l={l} order={order}"), rhs.to_text(), lhs.to_text()))
                })
                .collect::<Result<Vec<_>>>()?
        }
        Suite::SnCoincidence => {
            let order = params.order.unwrap_or(24);
            let ranks = positive(params.rank.clone().unwrap_or(1..=5), "rank")?;
            let nested = ranks
                .into_par_iter()
                .map(|n| {
                    let theory = TheorySpec::sqed(n)?;
                    let kappa = FlavorCoweight::zero(n);
                    let ring = sn_ring_character(n, order)?;
                    let plain = monopole_series_with(&theory, &kappa, order, false, &params.monopole)?.series;
                    let graded = monopole_series_with(&theory, &kappa, order, true, &params.monopole)?.series;
                    Ok(vec![
                        CaseResult::compare(
                            format!("N={n} order={order} ungraded"),
                            ring.collapse_x().to_text(),
                            plain.to_text(),
                        ),
                        CaseResult::compare(
                            format!("N={n} order={order} graded"),
                            ring.to_text(),
                            sqed_to_plane_grading(&graded, n)?.to_text(),
                        ),
                    ])
                })
                .collect();
            flatten(nested)?
        }
        Suite::KleinMultiplicity => {
            let order = params.order.unwrap_or(20);
            let nested = weights(params, 1..=5)?
                .into_par_iter()
                .map(|lam| {
                    let n = lam.n();
                    let ours = character_from_semiinvariants(&lam, order)?;
                    let reference = klein_costalk_character(n, lam.entries(), order, true)?;
                    Ok(vec![
                        CaseResult::compare(
                            format!("N={n} lambda={lam} character"),
                            reference.to_text(),
                            ours.to_text(),
                        ),
                        CaseResult::check(
                            format!("N={n} lambda={lam} multiplicity free"),
                            reference.is_multiplicity_free() && ours.is_multiplicity_free(),
                            "coefficients in {0,1}",
                            if reference.is_multiplicity_free() { "coefficients in {0,1}" } else { "repeated bidegree" },
                        ),
                    ])
                })
                .collect();
            flatten(nested)?
        }
        Suite::KleinSurjectivity => {
            let order = params.order.unwrap_or(20);
            let pairs: Vec<(DominantGLWeight, DominantGLWeight)> = weights(params, 1..=5)?
                .into_iter()
                .flat_map(|lam| {
                    let n = lam.n();
                    (1..n).map(move |i| (lam.clone(), DominantGLWeight::fundamental(n, i).expect("i < n")))
                })
                .collect();
            flatten(
                pairs
                    .into_par_iter()
                    .map(|(lam, mu)| tensor_surjectivity_cases(&lam, &mu, order))
                    .collect(),
            )?
        }
        Suite::KleinIso => {
            let order = params.order.unwrap_or(12);
            flatten(
                weights(params, 1..=4)?
                    .into_par_iter()
                    .map(|lam| iso_module_map_cases(&lam, order))
                    .collect(),
            )?
        }
        Suite::RingComputation => {
            let grid = grid(params, 0..=3)?;
            flatten(
                grid.into_par_iter()
                    .map(|(wj, wi)| verify_computation_relations(wj, wi, &alphas(params, wj)))
                    .collect(),
            )?
        }
        Suite::RingRmn => {
            let grid = grid(params, 1..=3)?;
            let ms: Vec<i64> = params.m.clone().unwrap_or(-4..=4).collect();
            let ns: Vec<i64> = params.n.clone().unwrap_or(-4..=4).collect();
            flatten(
                grid.into_par_iter()
                    .map(|(wj, wi)| verify_rmn(wj, wi, &alphas(params, wj), &ms, &ns))
                    .collect(),
            )?
        }
        Suite::Sl3Example => {
            let mut cases = verify_example_relations();
            cases.extend(verify_section_vanishing());
            cases.extend(
                sl3_cross_check()?
                    .into_iter()
                    .filter(|c| c.id.starts_with("ring: ")),
            );
            cases
        }
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        cases,
        wall_time: start.elapsed(),
    })
}

fn grid(params: &SuiteParams, default: RangeInclusive<i64>) -> Result<Vec<(usize, usize)>> {
    let wjs = nonneg(params.wj.clone().unwrap_or(default.clone()), "wj")?;
    let wis = nonneg(params.wi.clone().unwrap_or(default), "wi")?;
    Ok(wjs
        .iter()
        .flat_map(|&wj| wis.iter().map(move |&wi| (wj, wi)))
        .collect())
}
