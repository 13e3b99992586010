//! Canonical enumeration of oval forests and of real schemes up to a size cap, and
//! censuses that run every enumerated scheme through the verdict engine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorCode, Result};
use crate::forest::{Oval, OvalForest};
use crate::scheme::{minimal_cyclic_arrangement, CurveType, RealScheme, SchemeComponent};
use crate::surface::{CurveClass, RealTopology, SurfaceModel};
use crate::verdict::{check, FinalStatus, Overrides, Verdict};

pub const MAX_OVALS_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_ovals: usize,
    pub max_essential_circles: u32,
    /// Components to populate; `None` uses the surface's real part.
    pub component_templates: Option<Vec<RealTopology>>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_ovals: 8,
            max_essential_circles: 4,
            component_templates: None,
        }
    }
}

impl EnumerationLimits {
    pub fn with_max_ovals(max_ovals: usize) -> Self {
        EnumerationLimits {
            max_ovals,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_ovals == 0 || self.max_ovals > MAX_OVALS_CAP {
            return Err(Error::new(
                ErrorCode::CapExceeded,
                "max_ovals",
                format!("max_ovals must lie in 1..={MAX_OVALS_CAP}, got {}", self.max_ovals),
            ));
        }
        Ok(())
    }
}

/// Canonical forests grouped by size, built bottom-up: a tree of size k is an oval around
/// a forest of size k−1, and a forest is a multiset of trees listed in key order.
#[derive(Debug, Default)]
struct ForestTable {
    by_size: Vec<Vec<OvalForest>>,
}

impl ForestTable {
    fn build(n_max: usize) -> Self {
        let mut by_size: Vec<Vec<OvalForest>> = vec![vec![OvalForest::empty()]];
        // (key, size, tree), kept sorted by key
        let mut trees: Vec<(String, usize, Oval)> = Vec::new();
        for n in 1..=n_max {
            for f in &by_size[n - 1] {
                trees.push((format!("({})", f.encoding()), n, Oval(f.clone())));
            }
            trees.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Vec::new();
            let mut acc = Vec::new();
            multisets(&trees, 0, n, &mut acc, &mut out);
            out.sort_by_key(|f: &OvalForest| f.encoding());
            by_size.push(out);
        }
        ForestTable { by_size }
    }
}

fn multisets(
    trees: &[(String, usize, Oval)],
    start: usize,
    remaining: usize,
    acc: &mut Vec<Oval>,
    out: &mut Vec<OvalForest>,
) {
    if remaining == 0 {
        out.push(OvalForest(acc.clone()));
        return;
    }
    for i in start..trees.len() {
        if trees[i].1 <= remaining {
            acc.push(trees[i].2.clone());
            multisets(trees, i, remaining - trees[i].1, acc, out);
            acc.pop();
        }
    }
}

/// All canonical forests with 0..=n_max ovals, by size and then by encoding.
pub fn enumerate_forests(n_max: usize) -> Result<impl Iterator<Item = OvalForest>> {
    if n_max > MAX_OVALS_CAP {
        return Err(Error::new(
            ErrorCode::CapExceeded,
            "n_max",
            format!("at most {MAX_OVALS_CAP} ovals can be enumerated, got {n_max}"),
        ));
    }
    Ok(ForestTable::build(n_max).by_size.into_iter().flatten())
}

/// Number of canonical forests with exactly `n` ovals.
pub fn forest_count(n: usize) -> Result<usize> {
    Ok(enumerate_forests(n)?.filter(|f| f.size() == n).count())
}

fn resolve_templates(surface: &SurfaceModel, xi: &CurveClass, limits: &EnumerationLimits) -> Result<Vec<RealTopology>> {
    let templates: Vec<RealTopology> = match (&limits.component_templates, surface.real_part()) {
        (Some(t), _) => t.clone(),
        (None, Some(r)) => r.to_vec(),
        (None, None) => {
            return Err(Error::new(
                ErrorCode::MissingRealPart,
                "surface.real_part",
                "enumeration needs the surface's real part",
            ))
        }
    };
    let forced = surface.odd_branch_default(xi);
    let mut out = Vec::with_capacity(templates.len());
    for (i, t) in templates.into_iter().enumerate() {
        let t = match t {
            RealTopology::ProjectivePlane { odd_branch } => RealTopology::ProjectivePlane {
                odd_branch: forced.or(odd_branch),
            },
            RealTopology::Other { .. } => {
                return Err(Error::new(
                    ErrorCode::Unsupported,
                    format!("surface.real_part[{i}]"),
                    "components given only by orientability and Euler characteristic cannot be enumerated",
                ))
            }
            other => other,
        };
        out.push(t);
    }
    out.sort_by_key(|t| serde_json::to_string(t).expect("topology serializes"));
    Ok(out)
}

/// Torus annulus sequences of length ℓ with at most `budget` ovals, one per dihedral class.
fn annulus_sequences(table: &ForestTable, l: usize, budget: usize) -> Vec<Vec<OvalForest>> {
    fn go(table: &ForestTable, l: usize, budget: usize, acc: &mut Vec<OvalForest>, out: &mut Vec<Vec<OvalForest>>) {
        if acc.len() == l {
            if minimal_cyclic_arrangement(acc) == *acc {
                out.push(acc.clone());
            }
            return;
        }
        for size in 0..=budget {
            for f in &table.by_size[size] {
                acc.push(f.clone());
                go(table, l, budget - size, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(table, l, budget, &mut Vec::with_capacity(l), &mut out);
    out
}

/// Every way to fill one component, sorted by oval count; the empty filling comes first.
fn fillings(table: &ForestTable, template: &RealTopology, limits: &EnumerationLimits) -> Vec<SchemeComponent> {
    let forests = || table.by_size.iter().flatten().cloned();
    let mut out: Vec<SchemeComponent> = match *template {
        RealTopology::Sphere => forests().map(|ovals| SchemeComponent::Sphere { ovals }).collect(),
        RealTopology::OrientableGenus { genus } => forests()
            .map(|ovals| SchemeComponent::OrientableGenus { genus, ovals })
            .collect(),
        RealTopology::ProjectivePlane { odd_branch } => {
            let branches: &[bool] = match odd_branch {
                Some(true) => &[true],
                Some(false) => &[false],
                None => &[false, true],
            };
            branches
                .iter()
                .flat_map(|&b| {
                    forests().map(move |ovals| SchemeComponent::ProjectivePlane { odd_branch: b, ovals })
                })
                .collect()
        }
        RealTopology::Torus => {
            let mut v = Vec::new();
            for l in 0..=limits.max_essential_circles {
                for annuli in annulus_sequences(table, l.max(1) as usize, limits.max_ovals) {
                    v.push(SchemeComponent::Torus {
                        essential_circles: l,
                        annuli,
                    });
                }
            }
            v
        }
        RealTopology::Other { .. } => Vec::new(),
    };
    out.sort_by_key(|c| (c.oval_count(), c.circle_count()));
    out
}

/// Lazy stream of canonical schemes, driven by an odometer over per-template fillings.
/// Identical templates take nondecreasing filling indices so each multiset appears once.
pub struct SchemeStream {
    fillings: Vec<Vec<SchemeComponent>>,
    same_as_previous: Vec<bool>,
    budget: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl SchemeStream {
    fn minimum(&self, j: usize) -> usize {
        if j > 0 && self.same_as_previous[j] {
            self.idx[j - 1]
        } else {
            0
        }
    }

    fn ovals(&self) -> usize {
        self.idx
            .iter()
            .zip(&self.fillings)
            .map(|(&i, f)| f[i].oval_count())
            .sum()
    }

    fn advance(&mut self) -> bool {
        let k = self.idx.len();
        if k == 0 {
            return false;
        }
        let mut pos = k - 1;
        loop {
            self.idx[pos] += 1;
            if self.idx[pos] < self.fillings[pos].len() {
                for j in pos + 1..k {
                    self.idx[j] = self.minimum(j);
                }
                if self.ovals() <= self.budget {
                    return true;
                }
            }
            if pos == 0 {
                return false;
            }
            pos -= 1;
        }
    }

    fn current(&self) -> Option<RealScheme> {
        let components: Vec<SchemeComponent> = self
            .idx
            .iter()
            .zip(&self.fillings)
            .map(|(&i, f)| f[i].clone())
            .filter(|c| c.circle_count() > 0)
            .collect();
        if components.is_empty() {
            return None;
        }
        let scheme = RealScheme::new(components, CurveType::Unknown).expect("enumerated components are valid");
        Some(scheme.canonical())
    }
}

impl Iterator for SchemeStream {
    type Item = RealScheme;

    fn next(&mut self) -> Option<RealScheme> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
                if self.idx.is_empty() {
                    self.done = true;
                    return None;
                }
            }
            if let Some(s) = self.current() {
                return Some(s);
            }
        }
    }
}

/// All nonempty schemes on the surface's real part with at most `max_ovals` ovals in
/// total, curve type unknown, canonical and duplicate-free.
pub fn enumerate_schemes(surface: &SurfaceModel, xi: &CurveClass, limits: &EnumerationLimits) -> Result<SchemeStream> {
    limits.validate()?;
    let templates = resolve_templates(surface, xi, limits)?;
    let table = ForestTable::build(limits.max_ovals);
    let fillings: Vec<Vec<SchemeComponent>> = templates.iter().map(|t| fillings(&table, t, limits)).collect();
    let same_as_previous = (0..templates.len())
        .map(|j| j > 0 && templates[j] == templates[j - 1])
        .collect();
    Ok(SchemeStream {
        idx: vec![0; fillings.len()],
        fillings,
        same_as_previous,
        budget: limits.max_ovals,
        started: false,
        done: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub scheme: String,
    pub circles: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub total: usize,
    pub admissible: usize,
    pub prohibited: usize,
    pub conditionally_admissible: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub summary: CensusSummary,
    /// Admissible counts keyed by total circle count.
    pub admissible_by_circles: BTreeMap<usize, usize>,
}

pub fn census(
    surface: &SurfaceModel,
    xi: &CurveClass,
    limits: &EnumerationLimits,
    overrides: &Overrides,
) -> Result<Census> {
    let mut rows = Vec::new();
    let mut summary = CensusSummary::default();
    let mut admissible_by_circles = BTreeMap::new();
    for scheme in enumerate_schemes(surface, xi, limits)? {
        let verdict = check(surface, xi, &scheme, overrides)?;
        summary.total += 1;
        match verdict.final_status {
            FinalStatus::Admissible => {
                summary.admissible += 1;
                *admissible_by_circles.entry(scheme.circle_count()).or_default() += 1;
            }
            FinalStatus::Prohibited => summary.prohibited += 1,
            FinalStatus::ConditionallyAdmissible => summary.conditionally_admissible += 1,
        }
        rows.push(CensusRow {
            scheme: scheme.encoding(),
            circles: scheme.circle_count(),
            verdict,
        });
    }
    rows.sort_by(|a, b| a.circles.cmp(&b.circles).then_with(|| a.scheme.cmp(&b.scheme)));
    Ok(Census {
        rows,
        summary,
        admissible_by_circles,
    })
}
