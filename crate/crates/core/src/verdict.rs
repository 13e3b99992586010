//! Prohibition verdicts: Harnack, the hyperbolic bound, the non-elliptic bound for every
//! prime-power candidate and δ branch, and the extremality refuters at equality.
//!
//! Extremality is only ever used to refute. At equality with δ = 1 the fundamental class
//! of A^c, under some choice of circle orientations, must be the boundary of a Z_p
//! combination of parabolic membranes; if no sign choice works the branch is impossible.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::rhs_non_elliptic;
use crate::bounds::rhs_hyperbolic;
use crate::error::{Error, ErrorCode, Result};
use crate::rational::{self, int, Rational};
use crate::scheme::{
    boundary_matrix, membranes, BoundaryMatrix, CurveType, MembraneSummary, RealScheme, SchemeComponent,
};
use crate::surface::{CurveClass, RealTopology, SurfaceModel};
use crate::zp;

/// Largest number of circles for which sign assignments are enumerated.
pub const MAX_SIGN_CIRCLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    Feasible,
    Infeasible,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIOutcome {
    pub p: u64,
    pub feasibility: Feasibility,
    /// Circle orientations (±1) realizing the fundamental class, when feasible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    /// Coefficients over Z_p on all membranes (zero off the parabolic ones).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u64>>,
}

/// Searches sign vectors ε (first circle fixed to +1) for a solution of `a·x = ε` over Z_p.
/// `a` has one row per circle. A row that is zero in every column rules out all ε at once.
pub fn signed_class_in_span(a: &[Vec<u64>], p: u64) -> (Feasibility, Option<(Vec<i8>, Vec<u64>)>) {
    let n = a.len();
    if n == 0 {
        return (Feasibility::Feasible, Some((vec![], vec![])));
    }
    if a.iter().any(|row| row.iter().all(|&v| v == 0)) {
        return (Feasibility::Infeasible, None);
    }
    if n > MAX_SIGN_CIRCLES {
        return (Feasibility::Undecided, None);
    }
    for mask in 0u32..(1 << (n - 1)) {
        let signs: Vec<i8> = (0..n)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 })
            .collect();
        let target: Vec<u64> = signs.iter().map(|&s| zp::from_i64(s as i64, p)).collect();
        if let Some(x) = zp::solve(a, &target, p) {
            return (Feasibility::Feasible, Some((signs, x)));
        }
    }
    (Feasibility::Infeasible, None)
}

pub fn type_i_from_matrix(bm: &BoundaryMatrix) -> TypeIOutcome {
    let cols = bm.parabolic_columns();
    let restricted: Vec<Vec<u64>> = bm
        .rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect();
    let (feasibility, found) = signed_class_in_span(&restricted, bm.p);
    let (signs, witness) = match found {
        Some((signs, x)) => {
            let mut full = vec![0u64; bm.column_chi.len()];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = x[k];
            }
            (Some(signs), Some(full))
        }
        None => (None, None),
    };
    TypeIOutcome {
        p: bm.p,
        feasibility,
        signs,
        witness,
    }
}

/// Necessary condition for equality with δ = 1: some complex orientation of A^c bounds a
/// Z_p combination of parabolic membranes.
pub fn extremality_type_i(scheme: &RealScheme, p: u64) -> Result<TypeIOutcome> {
    Ok(type_i_from_matrix(&boundary_matrix(scheme, p)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIIOutcome {
    pub p: u64,
    pub rho: u32,
    pub consistent: bool,
}

/// Necessary condition for equality with δ = 0 and ρ > 0: a kernel combination of
/// components can only be supported on orientable components with χ = 0, so at least
/// one must exist. With ρ = 0 there is nothing to check.
pub fn extremality_type_ii(summary: &MembraneSummary, p: u64, rho: u32) -> TypeIIOutcome {
    let consistent = rho == 0 || summary.components_y.iter().any(|y| y.orientable && y.chi == 0);
    TypeIIOutcome { p, rho, consistent }
}

pub fn harnack_check(scheme: &RealScheme, genus: u64) -> bool {
    scheme.circle_count() as u64 <= genus + 1
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1_abelian: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalStatus {
    Admissible,
    Prohibited,
    ConditionallyAdmissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoSource {
    Override,
    ComponentBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnackCheck {
    pub circles: usize,
    pub genus: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicCheck {
    pub m: u64,
    pub lhs: usize,
    #[serde(with = "rational")]
    pub rhs: Rational,
    pub satisfied: bool,
    pub equality: bool,
    /// False when m = 1; the row is then informational only.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonEllipticCheck {
    pub p: u64,
    pub h: u64,
    pub delta: u8,
    pub rho: u32,
    pub rho_source: RhoSource,
    pub lhs: usize,
    #[serde(with = "rational")]
    pub rhs: Rational,
    pub satisfied: bool,
    pub equality: bool,
    pub holds_at_rho_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum ExtremalityCheck {
    #[serde(rename = "I")]
    TypeI { h: u64, outcome: TypeIOutcome },
    #[serde(rename = "II")]
    TypeII { h: u64, outcome: TypeIIOutcome },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub delta: u8,
    pub refuted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Admissible only if ρ actually attains its component bound.
    pub relies_on_rho: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub harnack: HarnackCheck,
    pub i1: HyperbolicCheck,
    pub i2_per_h: Vec<NonEllipticCheck>,
    pub extremality: Vec<ExtremalityCheck>,
    pub branches: Vec<Branch>,
    #[serde(rename = "final")]
    pub final_status: FinalStatus,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_prohibited(&self) -> bool {
        self.final_status == FinalStatus::Prohibited
    }
}

fn topology_key(t: &RealTopology) -> (bool, i64) {
    (t.orientable(), t.euler_characteristic())
}

/// The scheme's components must be among the surface's real components, and a plane
/// curve has a one-sided branch exactly when its degree is odd.
pub fn check_compatibility(surface: &SurfaceModel, xi: &CurveClass, scheme: &RealScheme) -> Result<()> {
    if let Some(expected) = surface.odd_branch_default(xi) {
        for (i, c) in scheme.components().iter().enumerate() {
            if let SchemeComponent::ProjectivePlane { odd_branch, .. } = c {
                if *odd_branch != expected {
                    return Err(Error::new(
                        ErrorCode::InvalidScheme,
                        format!("scheme.components[{i}].odd_branch"),
                        format!("a plane curve of this degree has odd_branch = {expected}"),
                    ));
                }
            }
        }
    }
    let Some(real_part) = surface.real_part() else {
        return Ok(());
    };
    let mut available: BTreeMap<(bool, i64), usize> = BTreeMap::new();
    for t in real_part {
        *available.entry(topology_key(t)).or_default() += 1;
    }
    for (i, c) in scheme.components().iter().enumerate() {
        let key = topology_key(&c.topology());
        match available.get_mut(&key) {
            Some(n) if *n > 0 => *n -= 1,
            _ => {
                return Err(Error::new(
                    ErrorCode::InvalidScheme,
                    format!("scheme.components[{i}]"),
                    format!(
                        "component ({}, χ = {}) is not among the surface's unused real components",
                        if key.0 { "orientable" } else { "nonorientable" },
                        key.1
                    ),
                ))
            }
        }
    }
    Ok(())
}

/// Full prohibition check. The scheme is canonicalized first, so circle and membrane
/// indices in the verdict refer to the canonical labelling.
pub fn check(
    surface: &SurfaceModel,
    xi: &CurveClass,
    scheme: &RealScheme,
    overrides: &Overrides,
) -> Result<Verdict> {
    surface.check_class(xi)?;
    let genus = surface.genus(xi)?;
    let div = surface.divisibility(xi)?;
    check_compatibility(surface, xi, scheme)?;
    let scheme = scheme.canonical();
    let summary = membranes(&scheme)?;
    let mut notes = Vec::new();

    let harnack = HarnackCheck {
        circles: scheme.circle_count(),
        genus,
        ok: harnack_check(&scheme, genus),
    };

    let rhs1 = rhs_hyperbolic(surface, xi, div.m)?;
    let lhs1 = summary.k_minus;
    let i1 = HyperbolicCheck {
        m: div.m,
        lhs: lhs1,
        satisfied: int(lhs1 as i64) <= rhs1,
        equality: int(lhs1 as i64) == rhs1,
        rhs: rhs1,
        applicable: !div.theorems_inapplicable,
    };
    if div.theorems_inapplicable {
        notes.push("m = 1: only the Harnack bound applies (harnack_only)".to_string());
    }

    if let Some(rho) = overrides.rho {
        for c in &div.candidates {
            let bound = summary.rho_bound(c.p);
            if rho > bound {
                return Err(Error::new(
                    ErrorCode::RhoOverride,
                    "overrides.rho",
                    format!(
                        "rho = {rho} exceeds the component bound {bound} at p = {}",
                        c.p
                    ),
                ));
            }
        }
    }

    let pi1_abelian = overrides
        .pi1_abelian
        .unwrap_or_else(|| surface.default_pi1_abelian(xi));
    let deltas: &[u8] = match scheme.curve_type() {
        CurveType::I => &[1],
        CurveType::II => &[0],
        CurveType::Unknown => &[0, 1],
    };

    let mut i2_per_h = Vec::new();
    let mut extremality = Vec::new();
    let mut branches = Vec::new();
    let mut type_i_cache: BTreeMap<u64, TypeIOutcome> = BTreeMap::new();

    if !pi1_abelian && !div.candidates.is_empty() {
        notes.push("π₁(X∖A) not asserted abelian: the non-elliptic bound was not evaluated".to_string());
    }
    if pi1_abelian && !div.candidates.is_empty() {
        let lhs = summary.non_elliptic();
        for &delta in deltas {
            let mut refuted: Option<String> = None;
            let mut relies_on_rho = false;
            for c in &div.candidates {
                let (rho, rho_source) = match overrides.rho {
                    Some(r) => (r, RhoSource::Override),
                    None => (summary.rho_bound(c.p), RhoSource::ComponentBound),
                };
                let rhs = rhs_non_elliptic(surface, xi, c.h, rho, delta)?;
                let l = int(lhs as i64);
                let row = NonEllipticCheck {
                    p: c.p,
                    h: c.h,
                    delta,
                    rho,
                    rho_source,
                    lhs,
                    satisfied: l <= rhs,
                    equality: l == rhs,
                    holds_at_rho_zero: l <= rhs - int(rho),
                    rhs,
                };
                if !row.satisfied {
                    refuted.get_or_insert(format!(
                        "k⁻+k⁰ = {lhs} exceeds {} at h = {}",
                        rational::decimal(&row.rhs),
                        c.h
                    ));
                } else if row.equality && delta == 1 {
                    let outcome = match type_i_cache.get(&c.p) {
                        Some(o) => o.clone(),
                        None => {
                            let o = extremality_type_i(&scheme, c.p)?;
                            type_i_cache.insert(c.p, o.clone());
                            o
                        }
                    };
                    match outcome.feasibility {
                        Feasibility::Infeasible => {
                            refuted.get_or_insert(format!(
                                "equality at h = {} with δ = 1 but no complex orientation bounds parabolic membranes mod {}",
                                c.h, c.p
                            ));
                        }
                        Feasibility::Undecided => notes.push(format!(
                            "extremality check at p = {} undecided: more than {MAX_SIGN_CIRCLES} circles",
                            c.p
                        )),
                        Feasibility::Feasible => {}
                    }
                    extremality.push(ExtremalityCheck::TypeI { h: c.h, outcome });
                } else if row.equality && delta == 0 && rho > 0 {
                    let outcome = extremality_type_ii(&summary, c.p, rho);
                    if !outcome.consistent {
                        refuted.get_or_insert(format!(
                            "equality at h = {} with δ = 0, ρ = {rho} but no orientable component has χ = 0",
                            c.h
                        ));
                    }
                    extremality.push(ExtremalityCheck::TypeII { h: c.h, outcome });
                }
                if rho_source == RhoSource::ComponentBound && !row.holds_at_rho_zero {
                    relies_on_rho = true;
                }
                i2_per_h.push(row);
            }
            branches.push(Branch {
                delta,
                refuted: refuted.is_some(),
                relies_on_rho: refuted.is_none() && relies_on_rho,
                reason: refuted,
            });
        }
    }

    let final_status = if !harnack.ok || (i1.applicable && !i1.satisfied) {
        FinalStatus::Prohibited
    } else if branches.is_empty() {
        FinalStatus::Admissible
    } else {
        let alive: Vec<&Branch> = branches.iter().filter(|b| !b.refuted).collect();
        if alive.is_empty() {
            FinalStatus::Prohibited
        } else if alive.len() < branches.len() || alive.iter().all(|b| b.relies_on_rho) {
            FinalStatus::ConditionallyAdmissible
        } else {
            FinalStatus::Admissible
        }
    };
    if !harnack.ok {
        notes.push(format!(
            "Harnack: {} circles exceed g + 1 = {}",
            harnack.circles,
            genus + 1
        ));
    }

    Ok(Verdict {
        harnack,
        i1,
        i2_per_h,
        extremality,
        branches,
        final_status,
        notes,
    })
}
