//! Reports: everything computed for one document, as stable JSON or as text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{best_bounds, BoundReport, DeltaChoice};
use crate::error::{Error, ErrorCode, Result};
use crate::input::{InputDocument, SCHEMA_VERSION};
use crate::rational::decimal;
use crate::scheme::{membranes, CurveType, MembraneSummary};
use crate::surface::DivisibilityData;
use crate::verdict::{check, check_compatibility, ExtremalityCheck, FinalStatus, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub self_intersection: i128,
    pub canonical_pairing: i128,
    pub genus: u64,
    pub pi1_abelian: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoBound {
    pub p: u64,
    pub bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputDocument,
    pub class: ClassData,
    pub divisibility: DivisibilityData,
    pub bounds: BoundReport,
    /// ρ upper bounds per candidate prime, from the components met by the curve (or all
    /// real components when no scheme is given).
    pub rho_bounds: Vec<RhoBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membranes: Option<MembraneSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::new(ErrorCode::Syntax, "$", e.to_string()))
    }

    pub fn final_status(&self) -> Option<FinalStatus> {
        self.verdict.as_ref().map(|v| v.final_status)
    }
}

/// Builds the report. With `with_scheme = false` only class data and bounds are computed.
pub fn build_report(doc: &InputDocument, with_scheme: bool) -> Result<Report> {
    let surface = doc.surface_model()?;
    let xi = doc.curve_class()?;
    surface.check_class(&xi).map_err(|e| relocate(e, "curve_class"))?;
    let genus = surface.genus(&xi).map_err(|e| relocate(e, "curve_class"))?;
    let divisibility = surface.divisibility(&xi)?;
    let overrides = doc.overrides();
    let pi1_abelian = overrides
        .pi1_abelian
        .unwrap_or_else(|| surface.default_pi1_abelian(&xi));
    let class = ClassData {
        self_intersection: surface.self_intersection(&xi)?,
        canonical_pairing: surface.canonical_pairing(&xi)?,
        genus,
        pi1_abelian,
    };

    let scheme = if with_scheme { doc.real_scheme()? } else { None };
    if let Some(s) = &scheme {
        check_compatibility(&surface, &xi, s)?;
    }
    let summary = scheme.as_ref().map(|s| membranes(&s.canonical())).transpose()?;
    let component_bound = |p: u64| -> u32 {
        match (&summary, surface.real_part()) {
            (Some(s), _) => s.rho_bound(p),
            (None, Some(parts)) => parts
                .iter()
                .filter(|t| t.orientable() && t.euler_characteristic().rem_euclid(p as i64) == 0)
                .count() as u32,
            (None, None) => 0,
        }
    };
    let rho_bounds: Vec<RhoBound> = divisibility
        .candidates
        .iter()
        .map(|c| RhoBound {
            p: c.p,
            bound: component_bound(c.p),
        })
        .collect();
    if let Some(rho) = overrides.rho {
        if let Some(b) = rho_bounds.iter().find(|b| rho > b.bound) {
            return Err(Error::new(
                ErrorCode::RhoOverride,
                "overrides.rho",
                format!("rho = {rho} exceeds the component bound {} at p = {}", b.bound, b.p),
            ));
        }
    }
    let delta = match scheme.as_ref().map(|s| s.curve_type()) {
        Some(CurveType::I) => DeltaChoice::One,
        Some(CurveType::II) => DeltaChoice::Zero,
        _ => DeltaChoice::Both,
    };
    let bounds = best_bounds(&surface, &xi, |p| overrides.rho.unwrap_or_else(|| component_bound(p)), delta)?;
    let verdict = scheme
        .as_ref()
        .map(|s| check(&surface, &xi, s, &overrides))
        .transpose()?;

    Ok(Report {
        schema: SCHEMA_VERSION,
        input: doc.clone(),
        class,
        divisibility,
        bounds,
        rho_bounds,
        membranes: summary,
        verdict,
    })
}

fn relocate(e: Error, path: &str) -> Error {
    if e.path.starts_with(path) {
        e
    } else {
        Error { path: path.to_string(), ..e }
    }
}

fn status_label(s: FinalStatus) -> &'static str {
    match s {
        FinalStatus::Admissible => "admissible",
        FinalStatus::Prohibited => "prohibited",
        FinalStatus::ConditionallyAdmissible => "conditionally admissible",
    }
}

pub fn render_bounds(r: &Report) -> String {
    let mut out = String::new();
    let d = &r.divisibility;
    let _ = writeln!(
        out,
        "class: ξ² = {}, ξ·K = {}, genus {}",
        r.class.self_intersection, r.class.canonical_pairing, r.class.genus
    );
    let hs: Vec<String> = d.candidates.iter().map(|c| c.h.to_string()).collect();
    let _ = writeln!(
        out,
        "divisibility: n = {}, m = {}, candidates h = [{}]",
        d.n,
        d.m,
        hs.join(", ")
    );
    let b = &r.bounds;
    let _ = writeln!(
        out,
        "(i1) k⁻ ≤ {} (= {}, floor {}){}",
        b.rhs_i1,
        decimal(&b.rhs_i1),
        b.floor_i1,
        if b.flags.harnack_only { "  [m = 1: not applicable]" } else { "" }
    );
    for row in &b.per_h {
        let _ = writeln!(
            out,
            "(i2) h = {:<4} ρ = {} δ = {}: k⁻+k⁰ ≤ {} (= {}, floor {}){}",
            row.h,
            row.rho,
            row.delta,
            row.rhs_i2,
            decimal(&row.rhs_i2),
            row.floor_i2,
            if row.binding { "  *binding" } else { "" }
        );
    }
    if b.flags.pi1_abelian_required {
        let _ = writeln!(
            out,
            "(i2) assumes π₁(X∖A) abelian: {}",
            if r.class.pi1_abelian { "asserted" } else { "NOT asserted" }
        );
    }
    out
}

pub fn render_text(r: &Report) -> String {
    let mut out = render_bounds(r);
    if let Some(m) = &r.membranes {
        let _ = writeln!(
            out,
            "membranes: k⁺ = {}, k⁰ = {}, k⁻ = {} ({} nonorientable regions excluded), {} circles",
            m.k_plus, m.k_zero, m.k_minus, m.excluded_nonorientable, m.circles
        );
    }
    for b in &r.rho_bounds {
        let _ = writeln!(out, "ρ ≤ {} at p = {}", b.bound, b.p);
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(
            out,
            "Harnack: {} circles, g + 1 = {}: {}",
            v.harnack.circles,
            v.harnack.genus + 1,
            if v.harnack.ok { "ok" } else { "VIOLATED" }
        );
        let _ = writeln!(
            out,
            "(i1) {} ≤ {}: {}{}",
            v.i1.lhs,
            decimal(&v.i1.rhs),
            if v.i1.satisfied { "ok" } else { "VIOLATED" },
            if v.i1.equality { " (equality)" } else { "" }
        );
        for row in &v.i2_per_h {
            let _ = writeln!(
                out,
                "(i2) h = {} δ = {} ρ = {}: {} ≤ {}: {}{}",
                row.h,
                row.delta,
                row.rho,
                row.lhs,
                decimal(&row.rhs),
                if row.satisfied { "ok" } else { "VIOLATED" },
                if row.equality { " (equality)" } else { "" }
            );
        }
        for e in &v.extremality {
            let line = match e {
                ExtremalityCheck::TypeI { h, outcome } => {
                    format!("extremality I at h = {h}, p = {}: {:?}", outcome.p, outcome.feasibility)
                }
                ExtremalityCheck::TypeII { h, outcome } => format!(
                    "extremality II at h = {h}, p = {}: {}",
                    outcome.p,
                    if outcome.consistent { "consistent" } else { "inconsistent" }
                ),
            };
            let _ = writeln!(out, "{line}");
        }
        for b in &v.branches {
            let _ = writeln!(
                out,
                "branch δ = {}: {}",
                b.delta,
                match &b.reason {
                    Some(r) => format!("refuted ({r})"),
                    None if b.relies_on_rho => "alive if ρ attains its bound".to_string(),
                    None => "alive".to_string(),
                }
            );
        }
        for n in &v.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "final: {}", status_label(v.final_status));
    }
    out
}
