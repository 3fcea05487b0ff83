//! Gauge theories with flavor symmetry: groups, matter weights, presets,
//! dominant coweights and flavor-coweight combinatorics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Product of general linear groups, one entry per factor rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaugeGroup {
    pub factors: Vec<usize>,
}

impl GaugeGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidSize("gauge factor ranks must be at least 1".into()));
        }
        Ok(GaugeGroup { factors })
    }

    pub fn total_rank(&self) -> usize {
        self.factors.iter().sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.factors.iter().all(|&n| n == 1)
    }
}

/// A weight of the matter representation: per-factor torus weights plus its
/// flavor charge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatterWeight {
    pub gauge: Vec<Vec<i64>>,
    pub flavor: Vec<i64>,
}

impl MatterWeight {
    /// Pairing with a coweight `λ` of the gauge torus and `κ` of the flavor torus.
    pub fn pairing(&self, lambda: &[Vec<i64>], kappa: &[i64]) -> i64 {
        let gauge: i64 = self
            .gauge
            .iter()
            .zip(lambda)
            .map(|(w, l)| w.iter().zip(l).map(|(a, b)| a * b).sum::<i64>())
            .sum();
        let flavor: i64 = self.flavor.iter().zip(kappa).map(|(a, b)| a * b).sum();
        gauge + flavor
    }

    /// Gauge part flattened over all factors.
    pub fn gauge_flat(&self) -> Vec<i64> {
        self.gauge.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TheorySpec {
    pub group: GaugeGroup,
    pub flavor_rank: usize,
    pub matter: Vec<MatterWeight>,
}

impl TheorySpec {
    pub fn new(group: GaugeGroup, flavor_rank: usize, matter: Vec<MatterWeight>) -> Result<Self> {
        for (k, w) in matter.iter().enumerate() {
            if w.gauge.len() != group.factors.len()
                || w.gauge.iter().zip(&group.factors).any(|(g, &n)| g.len() != n)
            {
                return Err(Error::Shape(format!(
                    "matter weight {k} has gauge part {:?}, incompatible with factors {:?}",
                    w.gauge, group.factors
                )));
            }
            if w.flavor.len() != flavor_rank {
                return Err(Error::Shape(format!(
                    "matter weight {k} has {} flavor charges, expected {flavor_rank}",
                    w.flavor.len()
                )));
            }
        }
        Ok(TheorySpec {
            group,
            flavor_rank,
            matter,
        })
    }

    pub fn trivial() -> Self {
        TheorySpec {
            group: GaugeGroup { factors: vec![] },
            flavor_rank: 0,
            matter: vec![],
        }
    }

    pub fn num_factors(&self) -> usize {
        self.group.factors.len()
    }

    /// `GL(1)` with `n` fundamentals; flavor charges `−e_r`.
    pub fn sqed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("sqed needs N >= 1".into()));
        }
        let matter = (0..n)
            .map(|r| MatterWeight {
                gauge: vec![vec![1]],
                flavor: unit(n, r, -1),
            })
            .collect();
        Self::new(GaugeGroup::new(vec![1])?, n, matter)
    }

    /// `GL(n)` with matter `V ⊕ gl(V)`, one dilatation flavor charge.
    pub fn jordan(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("jordan needs n >= 1".into()));
        }
        let mut matter: Vec<MatterWeight> = (0..n)
            .map(|a| MatterWeight {
                gauge: vec![unit(n, a, 1)],
                flavor: vec![1],
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                let mut g = vec![0; n];
                g[a] += 1;
                g[b] -= 1;
                matter.push(MatterWeight {
                    gauge: vec![g],
                    flavor: vec![1],
                });
            }
        }
        Self::new(GaugeGroup::new(vec![n])?, 1, matter)
    }

    /// `GL(1) × GL(1)` with `wj + wi` fundamentals and one bifundamental.
    /// Flavor slots list the `j` node first.
    pub fn two_node(wj: usize, wi: usize) -> Result<Self> {
        let rank = wj + wi;
        let mut matter = Vec::with_capacity(rank + 1);
        for beta in 0..wj {
            matter.push(MatterWeight {
                gauge: vec![vec![1], vec![0]],
                flavor: unit(rank, beta, -1),
            });
        }
        for beta in 0..wi {
            matter.push(MatterWeight {
                gauge: vec![vec![0], vec![1]],
                flavor: unit(rank, wj + beta, -1),
            });
        }
        matter.push(MatterWeight {
            gauge: vec![vec![-1], vec![1]],
            flavor: vec![0; rank],
        });
        Self::new(GaugeGroup::new(vec![1, 1])?, rank, matter)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: TheoryFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_theory()
    }

    pub fn to_json(&self) -> TheoryFile {
        TheoryFile {
            factors: self.group.factors.clone(),
            flavor_rank: self.flavor_rank,
            matter: self.matter.clone(),
        }
    }
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = v;
    e
}

/// On-disk theory description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    pub factors: Vec<usize>,
    #[serde(default)]
    pub flavor_rank: usize,
    #[serde(default)]
    pub matter: Vec<MatterWeight>,
}

impl TheoryFile {
    pub fn into_theory(self) -> Result<TheorySpec> {
        TheorySpec::new(GaugeGroup::new(self.factors)?, self.flavor_rank, self.matter)
    }
}

/// Named theories accepted wherever a spec is expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Trivial,
    Sqed(usize),
    Jordan(usize),
    TwoNode { wj: usize, wi: usize },
}

impl Preset {
    pub fn theory(self) -> Result<TheorySpec> {
        match self {
            Preset::Trivial => Ok(TheorySpec::trivial()),
            Preset::Sqed(n) => TheorySpec::sqed(n),
            Preset::Jordan(n) => TheorySpec::jordan(n),
            Preset::TwoNode { wj, wi } => TheorySpec::two_node(wj, wi),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(Preset::Trivial);
        }
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown preset {s:?}")))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad preset arguments {args:?}")))?;
        let preset = match (name, nums.as_slice()) {
            ("sqed", [n]) => Preset::Sqed(*n),
            ("jordan", [n]) => Preset::Jordan(*n),
            ("two-node", [wj, wi]) => Preset::TwoNode { wj: *wj, wi: *wi },
            _ => return Err(Error::Parse(format!("unknown preset {s:?}"))),
        };
        // Sizes are validated here so a parsed preset always builds.
        match preset {
            Preset::Sqed(0) | Preset::Jordan(0) => {
                Err(Error::InvalidSize(format!("preset {s:?} needs a positive size")))
            }
            Preset::Sqed(n) | Preset::Jordan(n) if n > 64 => {
                Err(Error::InvalidSize(format!("preset {s:?} is too large")))
            }
            Preset::TwoNode { wj, wi } if wj.saturating_add(wi) > 64 => {
                Err(Error::InvalidSize(format!("preset {s:?} is too large")))
            }
            p => Ok(p),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Trivial => write!(f, "trivial"),
            Preset::Sqed(n) => write!(f, "sqed:{n}"),
            Preset::Jordan(n) => write!(f, "jordan:{n}"),
            Preset::TwoNode { wj, wi } => write!(f, "two-node:{wj},{wi}"),
        }
    }
}

/// A parsed spec argument: either a preset or an explicit theory file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedSpec {
    pub theory: TheorySpec,
    pub preset: Option<Preset>,
}

/// Accepts a preset shorthand or inline JSON.
pub fn parse_spec(s: &str) -> Result<ResolvedSpec> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('{') {
        return Ok(ResolvedSpec {
            theory: TheorySpec::from_json_str(trimmed)?,
            preset: None,
        });
    }
    let preset: Preset = s.parse()?;
    Ok(ResolvedSpec {
        theory: preset.theory()?,
        preset: Some(preset),
    })
}

/// Per-factor weakly decreasing integer tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantCoweight {
    pub parts: Vec<Vec<i64>>,
}

impl DominantCoweight {
    pub fn new(parts: Vec<Vec<i64>>) -> Result<Self> {
        if parts.iter().any(|p| p.windows(2).any(|w| w[0] < w[1])) {
            return Err(Error::Precondition(format!("{parts:?} is not dominant")));
        }
        Ok(DominantCoweight { parts })
    }

    pub fn max_abs(&self) -> i64 {
        self.parts.iter().flatten().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// `Σ_a λ_a` for each factor.
    pub fn factor_sums(&self) -> Vec<i64> {
        self.parts.iter().map(|p| p.iter().sum()).collect()
    }
}

/// Weakly decreasing tuples of length `n` with entries in `[lo, hi]`,
/// lexicographically increasing.
fn decreasing_tuples(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, lo: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in lo..=cap {
            prefix.push(v);
            rec(n, lo, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi || n == 0 {
        rec(n, lo, hi, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// All dominant coweights with entries in `[-radius, radius]`, in
/// lexicographic order of the concatenated tuples.
pub fn enumerate_dominant(theory: &TheorySpec, radius: i64) -> Vec<DominantCoweight> {
    let per_factor: Vec<Vec<Vec<i64>>> = theory
        .group
        .factors
        .iter()
        .map(|&n| decreasing_tuples(n, -radius, radius))
        .collect();
    let mut out = vec![Vec::new()];
    for choices in &per_factor {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut p: Vec<Vec<i64>> = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(|parts| DominantCoweight { parts }).collect()
}

/// Flavor coweight `κ = (k_1, …, k_N)` with the node each slot belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlavorCoweight {
    pub entries: Vec<i64>,
    pub nodes: Vec<usize>,
}

impl FlavorCoweight {
    /// All slots on a single node.
    pub fn new(entries: Vec<i64>) -> Self {
        let nodes = vec![0; entries.len()];
        FlavorCoweight { entries, nodes }
    }

    pub fn with_nodes(entries: Vec<i64>, nodes: Vec<usize>) -> Result<Self> {
        if entries.len() != nodes.len() {
            return Err(Error::Shape("one node index per flavor slot".into()));
        }
        Ok(FlavorCoweight { entries, nodes })
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Slots `s^{(i)}_1 < … < s^{(i)}_{N_i}` of node `i` (zero-based).
    pub fn node_slots(&self, node: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&s| self.nodes[s] == node).collect()
    }

    /// `N_i`.
    pub fn node_size(&self, node: usize) -> usize {
        self.nodes.iter().filter(|&&n| n == node).count()
    }

    fn node_entries(&self, node: usize) -> Vec<i64> {
        self.node_slots(node).into_iter().map(|s| self.entries[s]).collect()
    }

    /// Membership in `Λ_F^+`: dominant restriction on every node.
    pub fn is_node_dominant(&self) -> bool {
        let mut nodes: Vec<usize> = self.nodes.clone();
        nodes.sort_unstable();
        nodes.dedup();
        nodes
            .into_iter()
            .all(|i| self.node_entries(i).windows(2).all(|w| w[0] >= w[1]))
    }

    /// Membership in `Λ_F^{++}`: globally weakly decreasing and nonnegative.
    pub fn is_globally_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
            && self.entries.last().is_none_or(|&k| k >= 0)
    }
}

/// Coefficients of `κ^{(i)}` in the fundamental coweights `ω_1 … ω_{N_i − 1}`.
pub fn kappa_node_coweight(kappa: &FlavorCoweight, node: usize) -> Result<Vec<i64>> {
    let vals = kappa.node_entries(node);
    if vals.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!(
            "restriction {vals:?} of κ to node {node} is not dominant"
        )));
    }
    Ok(vals.windows(2).map(|w| w[0] - w[1]).collect())
}

/// Writes `κ ∈ Λ_F^{++}` as a sum of layers `(1,…,1,0,…,0)`; the `l`-th layer
/// has ones exactly where `k_s ≥ l`.
pub fn decompose_lambda_plus_plus(kappa: &FlavorCoweight) -> Result<Vec<FlavorCoweight>> {
    if !kappa.is_globally_dominant() {
        return Err(Error::Precondition(format!(
            "{:?} is not weakly decreasing and nonnegative",
            kappa.entries
        )));
    }
    let top = kappa.entries.first().copied().unwrap_or(0);
    Ok((1..=top)
        .map(|l| FlavorCoweight {
            entries: kappa.entries.iter().map(|&k| i64::from(k >= l)).collect(),
            nodes: kappa.nodes.clone(),
        })
        .collect())
}
