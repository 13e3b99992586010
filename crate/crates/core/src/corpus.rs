//! Bundled example documents with the results each one is expected to produce.

use crate::error::Result;
use crate::input::parse_input_str;
use crate::rational::int;
use crate::report::{build_report, Report};
use crate::verdict::{ExtremalityCheck, Feasibility, FinalStatus};

pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub document: &'static str,
    /// Expected final status, or `None` for bounds-only entries.
    pub expected: Option<FinalStatus>,
    checks: fn(&Report) -> Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub name: &'static str,
    pub report: Report,
    pub assertions: Vec<Assertion>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

fn i1_equality(r: &Report) -> bool {
    r.verdict.as_ref().is_some_and(|v| v.i1.equality)
}

fn k_minus(r: &Report) -> usize {
    r.membranes.as_ref().map_or(usize::MAX, |m| m.k_minus)
}

fn cubic(r: &Report) -> Vec<(String, bool)> {
    vec![
        ("k⁻ = 0".into(), k_minus(r) == 0),
        ("(i1) equality 0 = 0".into(), i1_equality(r) && r.bounds.rhs_i1 == int(0)),
    ]
}

fn quintic_two(r: &Report) -> Vec<(String, bool)> {
    let row = r.verdict.as_ref().and_then(|v| v.i2_per_h.first());
    vec![
        (
            "k⁻ + k⁰ = 1".into(),
            r.membranes.as_ref().is_some_and(|m| m.non_elliptic() == 1),
        ),
        (
            "(i2) equality 1 = 1 at h = 5, δ = 0".into(),
            row.is_some_and(|x| x.h == 5 && x.delta == 0 && x.equality && x.rhs == int(1)),
        ),
    ]
}

fn quintic_three(r: &Report) -> Vec<(String, bool)> {
    let v = r.verdict.as_ref();
    let row = |d: u8| v.and_then(|v| v.i2_per_h.iter().find(|x| x.delta == d));
    vec![
        (
            "δ = 0 violates (i2): 2 > 1".into(),
            row(0).is_some_and(|x| x.lhs == 2 && x.rhs == int(1) && !x.satisfied),
        ),
        ("δ = 1 reaches equality".into(), row(1).is_some_and(|x| x.equality)),
        (
            "extremality type I infeasible at p = 5".into(),
            v.is_some_and(|v| {
                v.extremality.iter().any(|e| {
                    matches!(e, ExtremalityCheck::TypeI { outcome, .. }
                        if outcome.p == 5 && outcome.feasibility == Feasibility::Infeasible)
                })
            }),
        ),
    ]
}

fn hyperboloid_ovals(r: &Report) -> Vec<(String, bool)> {
    vec![
        ("k⁻ = 1".into(), k_minus(r) == 1),
        ("(i1) equality 1 = 1".into(), i1_equality(r) && r.bounds.rhs_i1 == int(1)),
    ]
}

fn three_planes(r: &Report) -> Vec<(String, bool)> {
    let v = r.verdict.as_ref();
    vec![
        (
            "k⁰ = 3".into(),
            r.membranes.as_ref().is_some_and(|m| m.k_zero == 3),
        ),
        (
            "(i2) equality 3 = 3".into(),
            v.is_some_and(|v| v.i2_per_h.iter().any(|x| x.equality && x.lhs == 3 && x.rhs == int(3))),
        ),
        (
            "extremality type I feasible at p = 3".into(),
            v.is_some_and(|v| {
                v.extremality.iter().any(|e| {
                    matches!(e, ExtremalityCheck::TypeI { outcome, .. }
                        if outcome.p == 3 && outcome.feasibility == Feasibility::Feasible)
                })
            }),
        ),
    ]
}

fn del_pezzo_nest(r: &Report) -> Vec<(String, bool)> {
    let m = r.membranes.as_ref();
    vec![
        (
            "k⁺ = 4, k⁰ = 3, k⁻ = 1".into(),
            m.is_some_and(|m| (m.k_plus, m.k_zero, m.k_minus) == (4, 3, 1)),
        ),
        (
            "(i2) equality 4 = 4".into(),
            r.verdict
                .as_ref()
                .is_some_and(|v| v.i2_per_h.iter().any(|x| x.equality && x.lhs == 4 && x.rhs == int(4))),
        ),
    ]
}

fn del_pezzo_bound(r: &Report) -> Vec<(String, bool)> {
    vec![(
        "bound k⁻ + k⁰ ≤ 6 at h = 3, ρ = 1, δ = 1".into(),
        r.bounds
            .per_h
            .iter()
            .any(|x| x.h == 3 && x.rho == 1 && x.delta == 1 && x.rhs_i2 == int(6)),
    )]
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "cubic_one_oval",
        description: "plane cubic with one oval",
        document: include_str!("../corpus/cubic_one_oval.json"),
        expected: Some(FinalStatus::Admissible),
        checks: cubic,
    },
    CorpusEntry {
        name: "quintic_nest_of_two",
        description: "plane quintic, nest of two ovals, type II",
        document: include_str!("../corpus/quintic_nest_of_two.json"),
        expected: Some(FinalStatus::Admissible),
        checks: quintic_two,
    },
    CorpusEntry {
        name: "hyperboloid_essential_and_1_ovals",
        description: "(3,3) on the hyperboloid: one essential circle and one oval",
        document: include_str!("../corpus/hyperboloid_essential_and_1_ovals.json"),
        expected: Some(FinalStatus::Admissible),
        checks: hyperboloid_ovals,
    },
    CorpusEntry {
        name: "hyperboloid_essential_and_2_ovals",
        description: "(3,3) on the hyperboloid: one essential circle and two ovals",
        document: include_str!("../corpus/hyperboloid_essential_and_2_ovals.json"),
        expected: Some(FinalStatus::Admissible),
        checks: hyperboloid_ovals,
    },
    CorpusEntry {
        name: "hyperboloid_essential_and_3_ovals",
        description: "(3,3) on the hyperboloid: one essential circle and three ovals",
        document: include_str!("../corpus/hyperboloid_essential_and_3_ovals.json"),
        expected: Some(FinalStatus::Admissible),
        checks: hyperboloid_ovals,
    },
    CorpusEntry {
        name: "hyperboloid_essential_and_4_ovals",
        description: "(3,3) on the hyperboloid: one essential circle and four ovals",
        document: include_str!("../corpus/hyperboloid_essential_and_4_ovals.json"),
        expected: Some(FinalStatus::Admissible),
        checks: hyperboloid_ovals,
    },
    CorpusEntry {
        name: "hyperboloid_three_planes",
        description: "(3,3) on the hyperboloid: three parallel essential circles, type I",
        document: include_str!("../corpus/hyperboloid_three_planes.json"),
        expected: Some(FinalStatus::Admissible),
        checks: three_planes,
    },
    CorpusEntry {
        name: "del_pezzo_nest_of_four",
        description: "degree 2 del Pezzo, 3c₁ on a sphere: nest of four around three ovals",
        document: include_str!("../corpus/del_pezzo_nest_of_four.json"),
        expected: Some(FinalStatus::Admissible),
        checks: del_pezzo_nest,
    },
    CorpusEntry {
        name: "del_pezzo_torus_bound",
        description: "degree 2 del Pezzo, 3c₁ with a torus component: bound only",
        document: include_str!("../corpus/del_pezzo_torus_bound.json"),
        expected: None,
        checks: del_pezzo_bound,
    },
    CorpusEntry {
        name: "quintic_nest_of_three",
        description: "plane quintic, nest of three ovals, type unknown",
        document: include_str!("../corpus/quintic_nest_of_three.json"),
        expected: Some(FinalStatus::Prohibited),
        checks: quintic_three,
    },
];

impl CorpusEntry {
    pub fn report(&self) -> Result<Report> {
        build_report(&parse_input_str(self.document)?, true)
    }

    pub fn run(&self) -> Result<EntryOutcome> {
        let report = self.report()?;
        let mut assertions = Vec::new();
        if let Some(expected) = self.expected {
            assertions.push(Assertion {
                label: format!("final = {expected:?}"),
                passed: report.final_status() == Some(expected),
            });
        }
        assertions.extend(
            (self.checks)(&report)
                .into_iter()
                .map(|(label, passed)| Assertion { label, passed }),
        );
        Ok(EntryOutcome {
            name: self.name,
            report,
            assertions,
        })
    }
}

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
