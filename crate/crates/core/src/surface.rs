//! Catalogued real surfaces as intersection-lattice data, and curve-class arithmetic.
//!
//! A [`SurfaceModel`] carries the second Betti number, the signature, the pairing on
//! H_2 and the canonical class. Classes on a del Pezzo surface are restricted to
//! multiples `n·c_1` and use the pairing rules `ξ² = n²d`, `ξ·K = −nd`.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd_all, odd_part};
use crate::error::{Error, ErrorCode, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Family {
    Plane,
    Quadric,
    Hirzebruch { e: u32 },
    DelPezzo { d: u8 },
    Custom,
}

/// Symmetric integer Gram matrix with labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
    basis_labels: Vec<String>,
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>, basis_labels: Vec<String>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::new(ErrorCode::Schema, "gram", "lattice rank must be positive"));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::new(
                    ErrorCode::DimensionMismatch,
                    format!("gram[{i}]"),
                    format!("expected {rank} entries, found {}", row.len()),
                ));
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::new(
                        ErrorCode::Schema,
                        format!("gram[{i}][{j}]"),
                        "gram matrix is not symmetric",
                    ));
                }
            }
        }
        if basis_labels.len() != rank {
            return Err(Error::new(
                ErrorCode::DimensionMismatch,
                "basis_labels",
                format!("expected {rank} labels, found {}", basis_labels.len()),
            ));
        }
        Ok(IntersectionLattice { gram, basis_labels })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i128> {
        let rank = self.rank();
        for (name, v) in [("x", x), ("y", y)] {
            if v.len() != rank {
                return Err(Error::new(
                    ErrorCode::DimensionMismatch,
                    name,
                    format!("class has {} coordinates, lattice rank is {rank}", v.len()),
                ));
            }
        }
        let mut acc = 0i128;
        for i in 0..rank {
            for j in 0..rank {
                acc += x[i] as i128 * self.gram[i][j] as i128 * y[j] as i128;
            }
        }
        Ok(acc)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.rank();
        let mut a: Vec<Vec<i128>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == 1
    }
}

/// How curve classes pair on this surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassArithmetic {
    Lattice {
        lattice: IntersectionLattice,
        canonical: Vec<i64>,
    },
    /// Multiples of c_1 on a del Pezzo surface of degree `degree`; `c1_content` is the
    /// divisibility of c_1 itself in H_2 (3 on P², 2 on P¹×P¹, 1 otherwise).
    AnticanonicalMultiples { degree: u8, c1_content: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "topology", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealTopology {
    Sphere,
    Torus,
    ProjectivePlane {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        odd_branch: Option<bool>,
    },
    OrientableGenus {
        genus: u32,
    },
    Other {
        orientable: bool,
        euler_characteristic: i64,
    },
}

impl RealTopology {
    pub fn euler_characteristic(&self) -> i64 {
        match *self {
            RealTopology::Sphere => 2,
            RealTopology::Torus => 0,
            RealTopology::ProjectivePlane { .. } => 1,
            RealTopology::OrientableGenus { genus } => 2 - 2 * genus as i64,
            RealTopology::Other {
                euler_characteristic,
                ..
            } => euler_characteristic,
        }
    }

    pub fn orientable(&self) -> bool {
        match *self {
            RealTopology::ProjectivePlane { .. } => false,
            RealTopology::Other { orientable, .. } => orientable,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    family: Family,
    b2: u32,
    sigma: i64,
    arithmetic: ClassArithmetic,
    real_part: Option<Vec<RealTopology>>,
}

/// Integer vector in the surface's homology basis (for del Pezzo: the single multiple `n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(Vec<i64>);

impl CurveClass {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|&c| c == 0) {
            return Err(Error::new(
                ErrorCode::ZeroClass,
                "curve_class",
                "the curve class must be nonzero",
            ));
        }
        Ok(CurveClass(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub alpha: u32,
    pub h: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityData {
    pub n: u64,
    pub m: u64,
    pub candidates: Vec<PrimePower>,
    /// Set when `m = 1`: only the Harnack bound applies.
    pub theorems_inapplicable: bool,
}

impl DivisibilityData {
    pub fn from_content(n: u64) -> Self {
        let m = odd_part(n);
        let candidates: Vec<PrimePower> = factorize(m)
            .into_iter()
            .map(|(p, alpha)| PrimePower {
                p,
                alpha,
                h: p.pow(alpha),
            })
            .collect();
        DivisibilityData {
            n,
            m,
            theorems_inapplicable: m == 1,
            candidates,
        }
    }

    pub fn candidate(&self, h: u64) -> Option<PrimePower> {
        self.candidates.iter().copied().find(|c| c.h == h)
    }
}

/// Content of ξ (gcd of coordinates), its odd part, and the odd prime-power exact divisors.
pub fn divisibility(xi: &CurveClass) -> Result<DivisibilityData> {
    let n = gcd_all(xi.coords());
    if n == 0 {
        return Err(Error::new(ErrorCode::ZeroClass, "curve_class", "zero class"));
    }
    Ok(DivisibilityData::from_content(n))
}

fn lattice_model(
    family: Family,
    sigma: i64,
    gram: Vec<Vec<i64>>,
    labels: &[&str],
    canonical: Vec<i64>,
) -> SurfaceModel {
    let lattice = IntersectionLattice::new(gram, labels.iter().map(|s| s.to_string()).collect())
        .expect("catalog lattice is well formed");
    SurfaceModel {
        family,
        b2: lattice.rank() as u32,
        sigma,
        arithmetic: ClassArithmetic::Lattice { lattice, canonical },
        real_part: None,
    }
}

impl SurfaceModel {
    /// The projective plane: basis `H`, `H² = 1`, `K = −3H`, real part RP².
    pub fn plane() -> Self {
        let mut s = lattice_model(Family::Plane, 1, vec![vec![1]], &["H"], vec![-3]);
        s.real_part = Some(vec![RealTopology::ProjectivePlane { odd_branch: None }]);
        s
    }

    /// P¹×P¹ with the hyperbolic lattice on the two rulings.
    pub fn quadric() -> Self {
        lattice_model(
            Family::Quadric,
            0,
            vec![vec![0, 1], vec![1, 0]],
            &["L1", "L2"],
            vec![-2, -2],
        )
    }

    /// Σ_e in the basis (Y, F) with `Y² = e` the zero section and `F` a fiber.
    pub fn hirzebruch(e: u32) -> Self {
        let e = e as i64;
        lattice_model(
            Family::Hirzebruch { e: e as u32 },
            0,
            vec![vec![e, 1], vec![1, 0]],
            &["Y", "F"],
            vec![-2, e - 2],
        )
    }

    pub fn del_pezzo(d: u8) -> Result<Self> {
        if !(1..=9).contains(&d) {
            return Err(Error::new(
                ErrorCode::Schema,
                "surface.d",
                format!("del Pezzo degree must lie in 1..=9, got {d}"),
            ));
        }
        let c1_content = match d {
            9 => 3,
            8 => 2,
            _ => 1,
        };
        Ok(SurfaceModel {
            family: Family::DelPezzo { d },
            b2: 10 - d as u32,
            sigma: d as i64 - 8,
            arithmetic: ClassArithmetic::AnticanonicalMultiples {
                degree: d,
                c1_content,
            },
            real_part: None,
        })
    }

    pub fn custom(
        lattice: IntersectionLattice,
        canonical: Vec<i64>,
        b2: u32,
        sigma: i64,
    ) -> Result<Self> {
        if canonical.len() != lattice.rank() {
            return Err(Error::new(
                ErrorCode::DimensionMismatch,
                "surface.canonical",
                format!(
                    "canonical class has {} coordinates, lattice rank is {}",
                    canonical.len(),
                    lattice.rank()
                ),
            ));
        }
        if sigma.unsigned_abs() > b2 as u64 {
            return Err(Error::new(
                ErrorCode::Schema,
                "surface.sigma",
                format!("|sigma| = {} exceeds b2 = {b2}", sigma.abs()),
            ));
        }
        Ok(SurfaceModel {
            family: Family::Custom,
            b2,
            sigma,
            arithmetic: ClassArithmetic::Lattice { lattice, canonical },
            real_part: None,
        })
    }

    pub fn with_real_part(mut self, real_part: Vec<RealTopology>) -> Self {
        self.real_part = Some(real_part);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn b2(&self) -> u32 {
        self.b2
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn arithmetic(&self) -> &ClassArithmetic {
        &self.arithmetic
    }

    pub fn lattice(&self) -> Option<&IntersectionLattice> {
        match &self.arithmetic {
            ClassArithmetic::Lattice { lattice, .. } => Some(lattice),
            ClassArithmetic::AnticanonicalMultiples { .. } => None,
        }
    }

    pub fn real_part(&self) -> Option<&[RealTopology]> {
        self.real_part.as_deref()
    }

    fn class_dimension(&self) -> usize {
        match &self.arithmetic {
            ClassArithmetic::Lattice { lattice, .. } => lattice.rank(),
            ClassArithmetic::AnticanonicalMultiples { .. } => 1,
        }
    }

    pub fn check_class(&self, xi: &CurveClass) -> Result<()> {
        let dim = self.class_dimension();
        if xi.coords().len() != dim {
            return Err(Error::new(
                ErrorCode::DimensionMismatch,
                "curve_class",
                format!(
                    "class has {} coordinates, surface expects {dim}",
                    xi.coords().len()
                ),
            ));
        }
        Ok(())
    }

    /// ξ·ξ.
    pub fn self_intersection(&self, xi: &CurveClass) -> Result<i128> {
        self.check_class(xi)?;
        match &self.arithmetic {
            ClassArithmetic::Lattice { lattice, .. } => lattice.pairing(xi.coords(), xi.coords()),
            ClassArithmetic::AnticanonicalMultiples { degree, .. } => {
                let n = xi.coords()[0] as i128;
                Ok(n * n * *degree as i128)
            }
        }
    }

    /// ξ·K.
    pub fn canonical_pairing(&self, xi: &CurveClass) -> Result<i128> {
        self.check_class(xi)?;
        match &self.arithmetic {
            ClassArithmetic::Lattice { lattice, canonical } => {
                lattice.pairing(xi.coords(), canonical)
            }
            ClassArithmetic::AnticanonicalMultiples { degree, .. } => {
                Ok(-(xi.coords()[0] as i128) * *degree as i128)
            }
        }
    }

    /// Genus of a nonsingular curve in class ξ, by adjunction `g = (ξ² + ξ·K)/2 + 1`.
    pub fn genus(&self, xi: &CurveClass) -> Result<u64> {
        self.check_class(xi)?;
        let effective = match self.family {
            Family::Custom => true,
            Family::DelPezzo { .. } => xi.coords()[0] >= 1,
            _ => xi.coords().iter().all(|&c| c >= 0),
        };
        if !effective {
            return Err(Error::new(
                ErrorCode::NotRepresentable,
                "curve_class",
                "class is not effective in this catalog family",
            ));
        }
        let twice = self.self_intersection(xi)? + self.canonical_pairing(xi)?;
        if twice % 2 != 0 || twice + 2 < 0 {
            return Err(Error::new(
                ErrorCode::NotRepresentable,
                "curve_class",
                format!("adjunction gives 2g - 2 = {twice}; no nonsingular curve in this class"),
            ));
        }
        Ok((twice / 2 + 1) as u64)
    }

    /// Divisibility of ξ in H_2. On a del Pezzo surface this accounts for the content of c_1.
    pub fn divisibility(&self, xi: &CurveClass) -> Result<DivisibilityData> {
        self.check_class(xi)?;
        let base = divisibility(xi)?;
        match self.arithmetic {
            ClassArithmetic::AnticanonicalMultiples { c1_content, .. } if c1_content > 1 => {
                Ok(DivisibilityData::from_content(base.n * c1_content))
            }
            _ => Ok(base),
        }
    }

    /// Whether the catalog asserts π₁(X∖A) abelian: ample classes on the simply connected
    /// catalogued surfaces.
    pub fn default_pi1_abelian(&self, xi: &CurveClass) -> bool {
        let c = xi.coords();
        match self.family {
            Family::Plane => c[0] > 0,
            Family::Quadric | Family::Hirzebruch { .. } => c.iter().all(|&v| v > 0),
            Family::DelPezzo { .. } => c[0] >= 1,
            Family::Custom => false,
        }
    }

    /// Whether a curve in class ξ meets RP² in a one-sided component (odd degree on the plane).
    pub fn odd_branch_default(&self, xi: &CurveClass) -> Option<bool> {
        match self.family {
            Family::Plane => Some(xi.coords()[0] % 2 != 0),
            _ => None,
        }
    }
}
