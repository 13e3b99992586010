//! Covering-form invariants and the right-hand sides of the hyperbolic and
//! non-elliptic membrane bounds.
//!
//! For the q-sheeted cyclic cover branched along A, the distinguished eigenspace M has
//! `dim M = b₂ + 2g` and its Hermitian form has signature `σ − ξ²(q²−1)/(2q²)`. The
//! hyperbolic bound at `q = m` and the non-elliptic bound at `q = h` are evaluated here
//! from their closed general expressions; [`closed_form`] holds the per-family
//! specializations used as independent cross-checks.

use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, ErrorCode, Result};
use crate::rational::{self, int, Rational};
use crate::surface::{CurveClass, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringInvariants {
    pub q: u64,
    pub dim_m: i64,
    #[serde(with = "rational")]
    pub sign_q: Rational,
}

impl CoveringInvariants {
    /// `(dim M + sign Q)/2`, the bound on a nonnegative subspace of M.
    pub fn half_positive(&self) -> Rational {
        (int(self.dim_m) + self.sign_q) / int(2)
    }
}

pub fn covering_invariants(surface: &SurfaceModel, xi: &CurveClass, q: u64) -> Result<CoveringInvariants> {
    if q == 0 {
        return Err(Error::new(ErrorCode::Schema, "q", "sheet count must be at least 1"));
    }
    let g = surface.genus(xi)?;
    let xi2 = surface.self_intersection(xi)?;
    let q2 = (q as i128) * (q as i128);
    Ok(CoveringInvariants {
        q,
        dim_m: surface.b2() as i64 + 2 * g as i64,
        sign_q: int(surface.sigma()) - Rational::new(xi2 * (q2 - 1), 2 * q2),
    })
}

/// `(b₂+σ)/2 + g − ξ²(q²−1)/(4q²)`
fn base_bound(surface: &SurfaceModel, xi: &CurveClass, q: u64) -> Result<Rational> {
    let g = surface.genus(xi)?;
    let xi2 = surface.self_intersection(xi)?;
    let q2 = (q as i128) * (q as i128);
    Ok(Rational::new(surface.b2() as i128 + surface.sigma() as i128, 2) + int(g as i128)
        - Rational::new(xi2 * (q2 - 1), 4 * q2))
}

/// Upper bound on k⁻ for an odd `m` dividing ξ.
pub fn rhs_hyperbolic(surface: &SurfaceModel, xi: &CurveClass, m: u64) -> Result<Rational> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::new(ErrorCode::EvenModulus, "m", format!("m must be odd and positive, got {m}")));
    }
    let div = surface.divisibility(xi)?;
    if div.n % m != 0 {
        return Err(Error::new(
            ErrorCode::Divisibility,
            "m",
            format!("m = {m} does not divide the class (divisibility {})", div.n),
        ));
    }
    base_bound(surface, xi, m)
}

/// Upper bound on k⁻ + k⁰ for a prime-power candidate `h`.
pub fn rhs_non_elliptic(
    surface: &SurfaceModel,
    xi: &CurveClass,
    h: u64,
    rho: u32,
    delta: u8,
) -> Result<Rational> {
    if delta > 1 {
        return Err(Error::new(ErrorCode::Schema, "delta", "delta must be 0 or 1"));
    }
    let div = surface.divisibility(xi)?;
    if div.candidate(h).is_none() {
        return Err(Error::new(
            ErrorCode::NotACandidate,
            "h",
            format!(
                "h = {h} is not an exact odd prime-power divisor of m = {}",
                div.m
            ),
        ));
    }
    Ok(base_bound(surface, xi, h)? + int(rho) + int(delta))
}

/// Which values of δ a bound row was evaluated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaChoice {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "both")]
    Both,
}

impl DeltaChoice {
    pub fn values(self) -> &'static [u8] {
        match self {
            DeltaChoice::Zero => &[0],
            DeltaChoice::One => &[1],
            DeltaChoice::Both => &[0, 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBound {
    pub p: u64,
    pub h: u64,
    pub rho: u32,
    pub delta: u8,
    #[serde(with = "rational")]
    pub rhs_i2: Rational,
    pub floor_i2: i128,
    /// Smallest right-hand side among the rows sharing this δ.
    pub binding: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionFlags {
    pub pi1_abelian_required: bool,
    pub harnack_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: u64,
    #[serde(with = "rational")]
    pub rhs_i1: Rational,
    pub floor_i1: i128,
    pub per_h: Vec<HBound>,
    pub delta_used: DeltaChoice,
    pub flags: AssumptionFlags,
}

impl BoundReport {
    pub fn binding(&self, delta: u8) -> Option<&HBound> {
        self.per_h.iter().find(|r| r.delta == delta && r.binding)
    }
}

/// Evaluates the hyperbolic bound at m and the non-elliptic bound at every candidate h.
/// `rho` supplies ρ for each odd prime p.
pub fn best_bounds(
    surface: &SurfaceModel,
    xi: &CurveClass,
    rho: impl Fn(u64) -> u32,
    delta: DeltaChoice,
) -> Result<BoundReport> {
    let div = surface.divisibility(xi)?;
    let rhs_i1 = rhs_hyperbolic(surface, xi, div.m)?;
    let mut per_h = Vec::new();
    for &d in delta.values() {
        let start = per_h.len();
        for c in &div.candidates {
            let r = rho(c.p);
            let rhs = rhs_non_elliptic(surface, xi, c.h, r, d)?;
            per_h.push(HBound {
                p: c.p,
                h: c.h,
                rho: r,
                delta: d,
                floor_i2: rational::floor(&rhs),
                rhs_i2: rhs,
                binding: false,
            });
        }
        let rows = &mut per_h[start..];
        if let Some(min) = rows.iter().map(|r| r.rhs_i2).min() {
            if let Some(row) = rows.iter_mut().find(|r| r.rhs_i2 == min) {
                row.binding = true;
            }
        }
    }
    Ok(BoundReport {
        m: div.m,
        floor_i1: rational::floor(&rhs_i1),
        rhs_i1,
        flags: AssumptionFlags {
            pi1_abelian_required: !per_h.is_empty(),
            harnack_only: div.theorems_inapplicable,
        },
        per_h,
        delta_used: delta,
    })
}

fn exact_prime_power_of(h: u64, m: u64) -> bool {
    if h < 3 || m % h != 0 {
        return false;
    }
    match factorize(h).as_slice() {
        [(p, _)] if *p > 2 => (m / h) % p != 0,
        _ => false,
    }
}

/// Per-family closed forms `(hyperbolic bound, non-elliptic bound)`, transcribed as
/// printed for each family. The quadric form carries a fixed `+3`, i.e. ρ = 1.
pub mod closed_form {
    use super::*;

    fn check_odd(m: u64, path: &str) -> Result<()> {
        if m == 0 || m % 2 == 0 {
            return Err(Error::new(ErrorCode::EvenModulus, path, format!("{path} must be odd, got {m}")));
        }
        Ok(())
    }

    fn check_h(h: u64, m: u64) -> Result<()> {
        if !exact_prime_power_of(h, m) {
            return Err(Error::new(
                ErrorCode::NotACandidate,
                "h",
                format!("h = {h} is not an exact odd prime-power divisor of m = {m}"),
            ));
        }
        Ok(())
    }

    fn check_divides(m: u64, n: u64) -> Result<()> {
        if n == 0 || n % m != 0 {
            return Err(Error::new(
                ErrorCode::Divisibility,
                "m",
                format!("m = {m} does not divide {n}"),
            ));
        }
        Ok(())
    }

    fn sq(v: u64) -> i128 {
        (v as i128) * (v as i128)
    }

    /// Plane curve of odd degree `m`.
    pub fn plane(m: u64, h: u64, delta: u8) -> Result<(Rational, Rational)> {
        check_odd(m, "m")?;
        check_h(h, m)?;
        let mi = m as i128;
        let lead = Rational::new((mi - 3) * (mi - 3), 4);
        Ok((
            lead,
            lead + Rational::new(sq(m) - sq(h), 4 * sq(h)) + int(delta),
        ))
    }

    /// Bidegree (a, b) on a hyperboloid or ellipsoid.
    pub fn quadric(a: u64, b: u64, m: u64, h: u64, delta: u8) -> Result<(Rational, Rational)> {
        check_odd(m, "m")?;
        check_divides(m, num_integer::gcd(a, b))?;
        check_h(h, m)?;
        let (a, b) = (a as i128, b as i128);
        let i1 = Rational::new(a * b * (sq(m) + 1), 2 * sq(m)) - int(a) - int(b) + int(2);
        let i2 = Rational::new(a * b * (sq(h) + 1), 2 * sq(h)) - int(a) - int(b) + int(3) + int(delta);
        Ok((i1, i2))
    }

    /// aY + bF on Σ_e.
    pub fn hirzebruch(
        e: u64,
        a: u64,
        b: u64,
        m: u64,
        h: u64,
        rho: u32,
        delta: u8,
    ) -> Result<(Rational, Rational)> {
        check_odd(m, "m")?;
        check_divides(m, num_integer::gcd(a, b))?;
        check_h(h, m)?;
        let (e, a, b) = (e as i128, a as i128, b as i128);
        let i1 = Rational::new((a * e + 2 * b) * (a * sq(m) - 2 * sq(m) + a), 4 * sq(m)) - int(a) + int(2);
        let i2 = Rational::new((a * e + 2 * b) * (a * sq(h) - 2 * sq(h) + a), 4 * sq(h)) - int(a)
            + int(2)
            + int(rho)
            + int(delta);
        Ok((i1, i2))
    }

    /// n·c₁ on a del Pezzo surface of degree d. `m` must divide the class, whose
    /// divisibility is n times the content of c₁ (3 for d = 9, 2 for d = 8).
    pub fn del_pezzo(d: u8, n: u64, m: u64, h: u64, rho: u32, delta: u8) -> Result<(Rational, Rational)> {
        check_odd(m, "m")?;
        let content = SurfaceModel::del_pezzo(d)?
            .divisibility(&CurveClass::new(vec![n as i64])?)?
            .n;
        check_divides(m, content)?;
        check_h(h, m)?;
        let (dd, ni) = (d as i128, n as i128);
        let lead = Rational::new((ni - 1) * (ni - 1) * dd, 4) + int(2);
        let i1 = lead + Rational::new((sq(n) - sq(m)) * dd, 4 * sq(m));
        let i2 = lead + Rational::new((sq(n) - sq(h)) * dd, 4 * sq(h)) + int(rho) + int(delta);
        Ok((i1, i2))
    }
}
