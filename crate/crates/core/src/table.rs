//! Sweeps comparing the general bounds with the per-family closed forms.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, odd_divisors};
use crate::bounds::{closed_form, covering_invariants, rhs_hyperbolic, rhs_non_elliptic};
use crate::error::Result;
use crate::rational::{self, int, Rational};
use crate::surface::{CurveClass, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepFamily {
    /// Odd degrees; even entries are skipped.
    Plane { degrees: Vec<u64> },
    Quadric { a: u64, b: u64 },
    Hirzebruch { e: u64, a: u64, b: u64 },
    DelPezzo { d: u8, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub surface: String,
    pub class: Vec<i64>,
    pub m: u64,
    pub h: u64,
    pub rho: u32,
    pub delta: u8,
    #[serde(with = "rational")]
    pub general_i1: Rational,
    #[serde(with = "rational")]
    pub closed_i1: Rational,
    /// The general non-elliptic bound when `h` is a candidate of the class itself;
    /// otherwise the covering assembly at q = h.
    #[serde(with = "rational")]
    pub general_i2: Rational,
    #[serde(with = "rational")]
    pub closed_i2: Rational,
    pub agree: bool,
}

fn exact_powers(m: u64) -> Vec<u64> {
    factorize(m).into_iter().map(|(p, a)| p.pow(a)).collect()
}

/// ρ is fixed by the family's closed form: 0 on the plane, 1 on the quadric.
pub fn sweep(family: &SweepFamily, rho: u32, deltas: &[u8]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let cases: Vec<(String, SurfaceModel, Vec<i64>, Vec<u64>, u32)> = match family {
        SweepFamily::Plane { degrees } => degrees
            .iter()
            .filter(|&&m| m % 2 == 1 && m > 1)
            .map(|&m| ("plane".to_string(), SurfaceModel::plane(), vec![m as i64], vec![m], 0))
            .collect(),
        SweepFamily::Quadric { a, b } => {
            let ms = odd_divisors(num_integer::gcd(*a, *b)).into_iter().filter(|&m| m > 1).collect();
            vec![("quadric".to_string(), SurfaceModel::quadric(), vec![*a as i64, *b as i64], ms, 1)]
        }
        SweepFamily::Hirzebruch { e, a, b } => {
            let ms = odd_divisors(num_integer::gcd(*a, *b)).into_iter().filter(|&m| m > 1).collect();
            vec![(
                format!("hirzebruch e={e}"),
                SurfaceModel::hirzebruch(*e as u32),
                vec![*a as i64, *b as i64],
                ms,
                rho,
            )]
        }
        SweepFamily::DelPezzo { d, n } => {
            let surface = SurfaceModel::del_pezzo(*d)?;
            let content = surface.divisibility(&CurveClass::new(vec![*n as i64])?)?.n;
            let ms = odd_divisors(content).into_iter().filter(|&m| m > 1).collect();
            vec![(format!("del_pezzo d={d}"), surface, vec![*n as i64], ms, rho)]
        }
    };
    for (label, surface, coords, ms, rho) in cases {
        let xi = CurveClass::new(coords.clone())?;
        let class_div = surface.divisibility(&xi)?;
        for m in ms {
            let general_i1 = rhs_hyperbolic(&surface, &xi, m)?;
            for h in exact_powers(m) {
                for &delta in deltas {
                    let (closed_i1, closed_i2) = match family {
                        SweepFamily::Plane { .. } => closed_form::plane(m, h, delta)?,
                        SweepFamily::Quadric { a, b } => closed_form::quadric(*a, *b, m, h, delta)?,
                        SweepFamily::Hirzebruch { e, a, b } => closed_form::hirzebruch(*e, *a, *b, m, h, rho, delta)?,
                        SweepFamily::DelPezzo { d, n } => closed_form::del_pezzo(*d, *n, m, h, rho, delta)?,
                    };
                    let general_i2 = if class_div.candidate(h).is_some() {
                        rhs_non_elliptic(&surface, &xi, h, rho, delta)?
                    } else {
                        covering_invariants(&surface, &xi, h)?.half_positive() + int(rho) + int(delta)
                    };
                    rows.push(TableRow {
                        surface: label.clone(),
                        class: coords.clone(),
                        m,
                        h,
                        rho,
                        delta,
                        agree: general_i1 == closed_i1 && general_i2 == closed_i2,
                        general_i1,
                        closed_i1,
                        general_i2,
                        closed_i2,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:<16} {:>10} {:>5} {:>5} {:>3} {:>3} {:>14} {:>14} {:>14} {:>14}  ok\n",
        "surface", "class", "m", "h", "ρ", "δ", "i1 general", "i1 closed", "i2 general", "i2 closed"
    );
    for r in rows {
        let class: Vec<String> = r.class.iter().map(i64::to_string).collect();
        out.push_str(&format!(
            "{:<16} {:>10} {:>5} {:>5} {:>3} {:>3} {:>14} {:>14} {:>14} {:>14}  {}\n",
            r.surface,
            class.join(","),
            r.m,
            r.h,
            r.rho,
            r.delta,
            r.general_i1.to_string(),
            r.closed_i1.to_string(),
            r.general_i2.to_string(),
            r.closed_i2.to_string(),
            if r.agree { "yes" } else { "NO" }
        ));
    }
    out
}
