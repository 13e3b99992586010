//! Real schemes: how the real curve A^c sits in the components B of the real surface.
//!
//! A scheme is expanded into the regions of B∖A^c (closures, so a region touching the
//! one-sided branch of a plane curve is nonorientable). Orientable regions are the
//! membranes; their Euler characteristics give the counts k⁺, k⁰, k⁻.
//!
//! Circle ids are global across the scheme. Within a component the order is: the odd
//! branch or the essential circles first, then ovals in preorder (annulus by annulus on
//! a torus). Regions are listed outer region(s) first, then one region per oval in the
//! same preorder.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorCode, Result};
use crate::forest::OvalForest;
use crate::surface::RealTopology;
use crate::zp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitRegion {
    pub chi: i64,
    pub orientable: bool,
    /// Circle ids (local to the component); a circle bordering this region on both sides
    /// is listed twice.
    pub boundary: Vec<u32>,
}

/// Escape hatch for arrangements outside the built-in families: the region list is
/// taken as given after validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitComponent {
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub circles: u32,
    pub regions: Vec<ExplicitRegion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SchemeComponent {
    Sphere { ovals: OvalForest },
    /// `annuli` holds one forest per annulus between consecutive parallel essential
    /// circles, or a single forest when there are none.
    Torus { essential_circles: u32, annuli: Vec<OvalForest> },
    ProjectivePlane { odd_branch: bool, ovals: OvalForest },
    OrientableGenus { genus: u32, ovals: OvalForest },
    Explicit(ExplicitComponent),
}

impl SchemeComponent {
    pub fn torus(essential_circles: u32, annuli: Vec<OvalForest>) -> Result<Self> {
        let expected = essential_circles.max(1) as usize;
        if annuli.len() != expected {
            return Err(Error::new(
                ErrorCode::InvalidScheme,
                "annuli",
                format!(
                    "a torus with {essential_circles} essential circles needs {expected} oval forests, got {}",
                    annuli.len()
                ),
            ));
        }
        Ok(SchemeComponent::Torus {
            essential_circles,
            annuli,
        })
    }

    pub fn topology(&self) -> RealTopology {
        match self {
            SchemeComponent::Sphere { .. } => RealTopology::Sphere,
            SchemeComponent::Torus { .. } => RealTopology::Torus,
            SchemeComponent::ProjectivePlane { odd_branch, .. } => RealTopology::ProjectivePlane {
                odd_branch: Some(*odd_branch),
            },
            SchemeComponent::OrientableGenus { genus, .. } => RealTopology::OrientableGenus { genus: *genus },
            SchemeComponent::Explicit(x) => RealTopology::Other {
                orientable: x.orientable,
                euler_characteristic: x.euler_characteristic,
            },
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.topology().euler_characteristic()
    }

    pub fn orientable(&self) -> bool {
        self.topology().orientable()
    }

    pub fn oval_count(&self) -> usize {
        match self {
            SchemeComponent::Sphere { ovals }
            | SchemeComponent::ProjectivePlane { ovals, .. }
            | SchemeComponent::OrientableGenus { ovals, .. } => ovals.size(),
            SchemeComponent::Torus { annuli, .. } => annuli.iter().map(OvalForest::size).sum(),
            SchemeComponent::Explicit(x) => x.circles as usize,
        }
    }

    pub fn circle_count(&self) -> usize {
        match self {
            SchemeComponent::Torus {
                essential_circles, ..
            } => *essential_circles as usize + self.oval_count(),
            SchemeComponent::ProjectivePlane { odd_branch, .. } => {
                *odd_branch as usize + self.oval_count()
            }
            _ => self.oval_count(),
        }
    }

    /// Canonical representative: forests sorted recursively; on a torus the annulus
    /// sequence is rotated or reflected to its least encoding.
    pub fn canonical(&self) -> SchemeComponent {
        match self {
            SchemeComponent::Sphere { ovals } => SchemeComponent::Sphere {
                ovals: ovals.canonical(),
            },
            SchemeComponent::ProjectivePlane { odd_branch, ovals } => SchemeComponent::ProjectivePlane {
                odd_branch: *odd_branch,
                ovals: ovals.canonical(),
            },
            SchemeComponent::OrientableGenus { genus, ovals } => SchemeComponent::OrientableGenus {
                genus: *genus,
                ovals: ovals.canonical(),
            },
            SchemeComponent::Torus {
                essential_circles,
                annuli,
            } => {
                let forests: Vec<OvalForest> = annuli.iter().map(OvalForest::canonical).collect();
                SchemeComponent::Torus {
                    essential_circles: *essential_circles,
                    annuli: minimal_cyclic_arrangement(&forests),
                }
            }
            SchemeComponent::Explicit(x) => SchemeComponent::Explicit(x.clone()),
        }
    }

    /// Sort key for canonical component order.
    pub fn encoding(&self) -> String {
        match self {
            SchemeComponent::Sphere { ovals } => format!("S:{}", ovals.encoding()),
            SchemeComponent::ProjectivePlane { odd_branch, ovals } => {
                format!("P{}:{}", if *odd_branch { "J" } else { "" }, ovals.encoding())
            }
            SchemeComponent::OrientableGenus { genus, ovals } => format!("G{genus}:{}", ovals.encoding()),
            SchemeComponent::Torus {
                essential_circles,
                annuli,
            } => {
                let parts: Vec<String> = annuli.iter().map(OvalForest::encoding).collect();
                format!("T{essential_circles}:{}", parts.join("|"))
            }
            SchemeComponent::Explicit(x) => {
                format!("X:{}", serde_json::to_string(x).expect("explicit component serializes"))
            }
        }
    }
}

/// Least sequence (by encodings) among the rotations and reflections of `forests`.
pub fn minimal_cyclic_arrangement(forests: &[OvalForest]) -> Vec<OvalForest> {
    let n = forests.len();
    if n <= 1 {
        return forests.to_vec();
    }
    let keys: Vec<String> = forests.iter().map(OvalForest::encoding).collect();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for reflect in [false, true] {
            let order: Vec<usize> = (0..n)
                .map(|i| if reflect { (start + n - i) % n } else { (start + i) % n })
                .collect();
            let better = match &best {
                None => true,
                Some(b) => order
                    .iter()
                    .map(|&i| &keys[i])
                    .cmp(b.iter().map(|&i| &keys[i]))
                    == Ordering::Less,
            };
            if better {
                best = Some(order);
            }
        }
    }
    best.expect("n > 0")
        .into_iter()
        .map(|i| forests[i].clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealScheme {
    components: Vec<SchemeComponent>,
    curve_type: CurveType,
}

impl RealScheme {
    pub fn new(components: Vec<SchemeComponent>, curve_type: CurveType) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::new(
                ErrorCode::InvalidScheme,
                "components",
                "a scheme needs at least one component",
            ));
        }
        let scheme = RealScheme {
            components,
            curve_type,
        };
        if scheme.circle_count() == 0 {
            return Err(Error::new(
                ErrorCode::InvalidScheme,
                "components",
                "the real curve is empty; at least one circle is required",
            ));
        }
        for (i, c) in scheme.components.iter().enumerate() {
            expand_component(c).map_err(|e| e.under(&format!("components[{i}]")))?;
        }
        Ok(scheme)
    }

    pub fn components(&self) -> &[SchemeComponent] {
        &self.components
    }

    pub fn curve_type(&self) -> CurveType {
        self.curve_type
    }

    pub fn with_curve_type(mut self, curve_type: CurveType) -> Self {
        self.curve_type = curve_type;
        self
    }

    pub fn circle_count(&self) -> usize {
        self.components.iter().map(SchemeComponent::circle_count).sum()
    }

    pub fn canonical(&self) -> RealScheme {
        let mut comps: Vec<(String, SchemeComponent)> = self
            .components
            .iter()
            .map(|c| {
                let c = c.canonical();
                (c.encoding(), c)
            })
            .collect();
        comps.sort_by(|a, b| a.0.cmp(&b.0));
        RealScheme {
            components: comps.into_iter().map(|(_, c)| c).collect(),
            curve_type: self.curve_type,
        }
    }

    pub fn encoding(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(SchemeComponent::encoding).collect();
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleKind {
    Oval,
    Essential,
    OddBranch,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleInfo {
    pub id: usize,
    pub component: usize,
    pub kind: CircleKind,
}

/// One side of a circle seen from a region; `sign` is the induced boundary orientation
/// (±1), or 0 when the region is nonorientable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub circle: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub chi: i64,
    pub orientable: bool,
    pub incidences: Vec<Incidence>,
    pub component: usize,
}

struct Builder {
    component: usize,
    regions: Vec<Region>,
    circles: Vec<CircleInfo>,
    circle_offset: usize,
}

impl Builder {
    fn new(component: usize, circle_offset: usize) -> Self {
        Builder {
            component,
            regions: Vec::new(),
            circles: Vec::new(),
            circle_offset,
        }
    }

    fn circle(&mut self, kind: CircleKind) -> usize {
        let id = self.circle_offset + self.circles.len();
        self.circles.push(CircleInfo {
            id,
            component: self.component,
            kind,
        });
        id
    }

    fn region(&mut self, chi: i64, orientable: bool) -> usize {
        self.regions.push(Region {
            chi,
            orientable,
            incidences: Vec::new(),
            component: self.component,
        });
        self.regions.len() - 1
    }

    fn touch(&mut self, region: usize, circle: usize, sign: i8) {
        let r = &mut self.regions[region];
        let sign = if r.orientable { sign } else { 0 };
        r.incidences.push(Incidence { circle, sign });
    }

    /// Disk-side regions for every oval of `forest`, nested under `outer`.
    fn forest(&mut self, forest: &OvalForest, outer: usize) {
        for oval in forest.roots() {
            let c = self.circle(CircleKind::Oval);
            let inside = self.region(1 - oval.children().len() as i64, true);
            self.touch(inside, c, 1);
            self.touch(outer, c, -1);
            self.forest(&oval.0, inside);
        }
    }
}

fn expand_into(component: &SchemeComponent, index: usize, circle_offset: usize) -> Result<Builder> {
    let mut b = Builder::new(index, circle_offset);
    match component {
        SchemeComponent::Sphere { ovals } => {
            let outer = b.region(2 - ovals.roots().len() as i64, true);
            b.forest(ovals, outer);
        }
        SchemeComponent::OrientableGenus { genus, ovals } => {
            let outer = b.region(2 - 2 * *genus as i64 - ovals.roots().len() as i64, true);
            b.forest(ovals, outer);
        }
        SchemeComponent::ProjectivePlane { odd_branch, ovals } => {
            let j = odd_branch.then(|| b.circle(CircleKind::OddBranch));
            let outer = b.region(1 - ovals.roots().len() as i64, false);
            if let Some(j) = j {
                b.touch(outer, j, 0);
                b.touch(outer, j, 0);
            }
            b.forest(ovals, outer);
        }
        SchemeComponent::Torus {
            essential_circles,
            annuli,
        } => {
            let l = *essential_circles as usize;
            if annuli.len() != l.max(1) {
                return Err(Error::new(
                    ErrorCode::InvalidScheme,
                    "annuli",
                    format!("expected {} oval forests, got {}", l.max(1), annuli.len()),
                ));
            }
            if l == 0 {
                let outer = b.region(-(annuli[0].roots().len() as i64), true);
                b.forest(&annuli[0], outer);
            } else {
                let ess: Vec<usize> = (0..l).map(|_| b.circle(CircleKind::Essential)).collect();
                let outers: Vec<usize> = annuli
                    .iter()
                    .map(|f| b.region(-(f.roots().len() as i64), true))
                    .collect();
                for j in 0..l {
                    b.touch(outers[j], ess[(j + 1) % l], 1);
                    b.touch(outers[j], ess[j], -1);
                }
                for (j, f) in annuli.iter().enumerate() {
                    b.forest(f, outers[j]);
                }
            }
        }
        SchemeComponent::Explicit(x) => {
            validate_explicit(x)?;
            let ids: Vec<usize> = (0..x.circles).map(|_| b.circle(CircleKind::Explicit)).collect();
            let mut seen = vec![0usize; ids.len()];
            for r in &x.regions {
                let idx = b.region(r.chi, r.orientable);
                for &c in &r.boundary {
                    let c = c as usize;
                    let sign = if seen[c] == 0 { 1 } else { -1 };
                    seen[c] += 1;
                    b.touch(idx, ids[c], sign);
                }
            }
        }
    }
    Ok(b)
}

fn validate_explicit(x: &ExplicitComponent) -> Result<()> {
    if x.regions.is_empty() {
        return Err(Error::new(ErrorCode::InvalidScheme, "regions", "at least one region is required"));
    }
    let mut counts = vec![0usize; x.circles as usize];
    for (i, r) in x.regions.iter().enumerate() {
        if x.orientable && !r.orientable {
            return Err(Error::new(
                ErrorCode::InvalidScheme,
                format!("regions[{i}].orientable"),
                "a region of an orientable surface must be orientable",
            ));
        }
        for (k, &c) in r.boundary.iter().enumerate() {
            match counts.get_mut(c as usize) {
                Some(n) => *n += 1,
                None => {
                    return Err(Error::new(
                        ErrorCode::Incidence,
                        format!("regions[{i}].boundary[{k}]"),
                        format!("circle id {c} out of range (component has {} circles)", x.circles),
                    ))
                }
            }
        }
    }
    if let Some(c) = counts.iter().position(|&n| n != 2) {
        return Err(Error::new(
            ErrorCode::Incidence,
            "regions",
            format!("circle {c} has {} side incidences; every circle has exactly two", counts[c]),
        ));
    }
    let total: i64 = x.regions.iter().map(|r| r.chi).sum();
    if total != x.euler_characteristic {
        return Err(Error::new(
            ErrorCode::EulerMismatch,
            "regions",
            format!(
                "region Euler characteristics sum to {total}, the component has {}",
                x.euler_characteristic
            ),
        ));
    }
    Ok(())
}

/// Regions of a single component (component index 0, circle ids from 0).
pub fn expand_component(component: &SchemeComponent) -> Result<Vec<Region>> {
    let b = expand_into(component, 0, 0)?;
    let total: i64 = b.regions.iter().map(|r| r.chi).sum();
    debug_assert_eq!(total, component.euler_characteristic());
    Ok(b.regions)
}

/// Full expansion of a scheme: every region (including nonorientable ones) and circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeExpansion {
    pub regions: Vec<Region>,
    pub circles: Vec<CircleInfo>,
}

pub fn expand_scheme(scheme: &RealScheme) -> Result<SchemeExpansion> {
    let mut regions = Vec::new();
    let mut circles = Vec::new();
    for (i, c) in scheme.components().iter().enumerate() {
        let b = expand_into(c, i, circles.len()).map_err(|e| e.under(&format!("components[{i}]")))?;
        regions.extend(b.regions);
        circles.extend(b.circles);
    }
    Ok(SchemeExpansion { regions, circles })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembraneKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl MembraneKind {
    pub fn of(chi: i64) -> Self {
        match chi.cmp(&0) {
            Ordering::Greater => MembraneKind::Elliptic,
            Ordering::Equal => MembraneKind::Parabolic,
            Ordering::Less => MembraneKind::Hyperbolic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membrane {
    pub chi: i64,
    pub orientable: bool,
    pub kind: MembraneKind,
    pub boundary: Vec<usize>,
    pub component_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub orientable: bool,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembraneSummary {
    pub membranes: Vec<Membrane>,
    pub excluded_nonorientable: usize,
    pub k_plus: usize,
    pub k_zero: usize,
    pub k_minus: usize,
    pub components_y: Vec<ComponentData>,
    pub circles: usize,
}

impl MembraneSummary {
    /// Number of orientable components Y_j with χ(Y_j) ≡ 0 mod p; bounds ρ from above.
    pub fn rho_bound(&self, p: u64) -> u32 {
        self.components_y
            .iter()
            .filter(|y| y.orientable && y.chi.rem_euclid(p as i64) == 0)
            .count() as u32
    }

    pub fn non_elliptic(&self) -> usize {
        self.k_zero + self.k_minus
    }
}

pub fn membranes(scheme: &RealScheme) -> Result<MembraneSummary> {
    let exp = expand_scheme(scheme)?;
    Ok(summarize(scheme, &exp))
}

fn summarize(scheme: &RealScheme, exp: &SchemeExpansion) -> MembraneSummary {
    let mut membranes = Vec::new();
    let mut excluded = 0;
    for r in &exp.regions {
        if !r.orientable {
            excluded += 1;
            continue;
        }
        let mut boundary: Vec<usize> = r.incidences.iter().map(|i| i.circle).collect();
        boundary.sort_unstable();
        boundary.dedup();
        membranes.push(Membrane {
            chi: r.chi,
            orientable: true,
            kind: MembraneKind::of(r.chi),
            boundary,
            component_index: r.component,
        });
    }
    let count = |k: MembraneKind| membranes.iter().filter(|m| m.kind == k).count();
    MembraneSummary {
        k_plus: count(MembraneKind::Elliptic),
        k_zero: count(MembraneKind::Parabolic),
        k_minus: count(MembraneKind::Hyperbolic),
        excluded_nonorientable: excluded,
        components_y: scheme
            .components()
            .iter()
            .map(|c| ComponentData {
                orientable: c.orientable(),
                chi: c.euler_characteristic(),
            })
            .collect(),
        circles: exp.circles.len(),
        membranes,
    }
}

/// Matrix of the boundary map from membrane classes to circle classes over Z_p.
/// Rows are circles, columns are membranes in summary order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub p: u64,
    pub circles: Vec<CircleInfo>,
    pub column_chi: Vec<i64>,
    pub rows: Vec<Vec<u64>>,
}

impl BoundaryMatrix {
    pub fn column_support(&self, col: usize) -> Vec<usize> {
        (0..self.rows.len()).filter(|&r| self.rows[r][col] != 0).collect()
    }

    pub fn parabolic_columns(&self) -> Vec<usize> {
        (0..self.column_chi.len()).filter(|&c| self.column_chi[c] == 0).collect()
    }
}

pub fn boundary_matrix(scheme: &RealScheme, p: u64) -> Result<BoundaryMatrix> {
    if !crate::arith::is_odd_prime(p) {
        return Err(Error::new(ErrorCode::Schema, "p", format!("{p} is not an odd prime")));
    }
    let exp = expand_scheme(scheme)?;
    let orientable: Vec<&Region> = exp.regions.iter().filter(|r| r.orientable).collect();
    let mut rows = vec![vec![0u64; orientable.len()]; exp.circles.len()];
    for (col, r) in orientable.iter().enumerate() {
        for inc in &r.incidences {
            let cell = &mut rows[inc.circle][col];
            *cell = zp::add(*cell, zp::from_i64(inc.sign as i64, p), p);
        }
    }
    Ok(BoundaryMatrix {
        p,
        circles: exp.circles,
        column_chi: orientable.iter().map(|r| r.chi).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_chis(regions: &[Region], orientable: bool) -> Vec<i64> {
        let mut v: Vec<i64> = regions
            .iter()
            .filter(|r| r.orientable == orientable)
            .map(|r| r.chi)
            .collect();
        v.sort_unstable();
        v
    }

    fn nest(depth: usize) -> OvalForest {
        OvalForest::nest(depth, OvalForest::empty())
    }

    #[test]
    fn sphere_nest_of_two() {
        let regions = expand_component(&SchemeComponent::Sphere { ovals: nest(2) }).unwrap();
        let chis: Vec<i64> = regions.iter().map(|r| r.chi).collect();
        assert_eq!(chis, vec![1, 0, 1]);
        assert!(regions.iter().all(|r| r.orientable));
    }

    #[test]
    fn projective_plane_odd_branch_nest_of_two() {
        let regions = expand_component(&SchemeComponent::ProjectivePlane {
            odd_branch: true,
            ovals: nest(2),
        })
        .unwrap();
        assert_eq!(sorted_chis(&regions, true), vec![0, 1]);
        assert_eq!(sorted_chis(&regions, false), vec![0]);
        assert_eq!(regions.iter().map(|r| r.chi).sum::<i64>(), 1);
    }

    #[test]
    fn torus_annulus_with_three_ovals() {
        let c = SchemeComponent::torus(1, vec![OvalForest::empty_ovals(3)]).unwrap();
        let regions = expand_component(&c).unwrap();
        let chis: Vec<i64> = regions.iter().map(|r| r.chi).collect();
        assert_eq!(chis, vec![-3, 1, 1, 1]);
    }

    #[test]
    fn membrane_examples() {
        let quintic = RealScheme::new(
            vec![SchemeComponent::ProjectivePlane {
                odd_branch: true,
                ovals: nest(2),
            }],
            CurveType::II,
        )
        .unwrap();
        let s = membranes(&quintic).unwrap();
        assert_eq!((s.k_plus, s.k_zero, s.k_minus), (1, 1, 0));
        assert_eq!(s.excluded_nonorientable, 1);

        let hyperboloid = RealScheme::new(
            vec![SchemeComponent::torus(1, vec![OvalForest::empty_ovals(3)]).unwrap()],
            CurveType::Unknown,
        )
        .unwrap();
        let s = membranes(&hyperboloid).unwrap();
        assert_eq!((s.k_plus, s.k_zero, s.k_minus), (3, 0, 1));

        let dp = RealScheme::new(
            vec![SchemeComponent::Sphere {
                ovals: OvalForest::nest(4, OvalForest::empty_ovals(3)),
            }],
            CurveType::II,
        )
        .unwrap();
        let regions = expand_component(&dp.components()[0]).unwrap();
        let chis: Vec<i64> = regions.iter().map(|r| r.chi).collect();
        assert_eq!(chis, vec![1, 0, 0, 0, -2, 1, 1, 1]);
        let s = membranes(&dp).unwrap();
        assert_eq!((s.k_plus, s.k_zero, s.k_minus), (4, 3, 1));
    }

    #[test]
    fn boundary_matrix_examples() {
        let sphere = RealScheme::new(vec![SchemeComponent::Sphere { ovals: nest(2) }], CurveType::Unknown).unwrap();
        let bm = boundary_matrix(&sphere, 3).unwrap();
        assert_eq!(bm.column_support(0), vec![0]);
        assert_eq!(bm.column_support(1), vec![0, 1]);
        assert_eq!(bm.column_support(2), vec![1]);

        let torus = RealScheme::new(
            vec![SchemeComponent::torus(3, vec![OvalForest::empty(); 3]).unwrap()],
            CurveType::I,
        )
        .unwrap();
        let bm = boundary_matrix(&torus, 3).unwrap();
        assert_eq!(bm.column_support(0), vec![0, 1]);
        assert_eq!(bm.column_support(1), vec![1, 2]);
        assert_eq!(bm.column_support(2), vec![0, 2]);

        let quintic = RealScheme::new(
            vec![SchemeComponent::ProjectivePlane {
                odd_branch: true,
                ovals: nest(3),
            }],
            CurveType::Unknown,
        )
        .unwrap();
        let bm = boundary_matrix(&quintic, 5).unwrap();
        assert_eq!(bm.circles[0].kind, CircleKind::OddBranch);
        assert!(bm.rows[0].iter().all(|&v| v == 0));
        assert!(boundary_matrix(&quintic, 4).is_err());
    }

    #[test]
    fn single_essential_circle_cancels() {
        let torus = RealScheme::new(
            vec![SchemeComponent::torus(1, vec![OvalForest::empty()]).unwrap()],
            CurveType::Unknown,
        )
        .unwrap();
        let bm = boundary_matrix(&torus, 3).unwrap();
        assert_eq!(bm.rows, vec![vec![0]]);
    }

    #[test]
    fn explicit_validation() {
        // One circle on a sphere: two disks.
        let ok = ExplicitComponent {
            orientable: true,
            euler_characteristic: 2,
            circles: 1,
            regions: vec![
                ExplicitRegion { chi: 1, orientable: true, boundary: vec![0] },
                ExplicitRegion { chi: 1, orientable: true, boundary: vec![0] },
            ],
        };
        let regions = expand_component(&SchemeComponent::Explicit(ok.clone())).unwrap();
        assert_eq!(regions[0].incidences[0].sign, 1);
        assert_eq!(regions[1].incidences[0].sign, -1);

        let mut bad = ok.clone();
        bad.euler_characteristic = 0;
        let err = expand_component(&SchemeComponent::Explicit(bad)).unwrap_err();
        assert_eq!(err.code, ErrorCode::EulerMismatch);

        let mut bad = ok.clone();
        bad.regions[1].boundary.clear();
        let err = expand_component(&SchemeComponent::Explicit(bad)).unwrap_err();
        assert_eq!(err.code, ErrorCode::Incidence);

        let mut bad = ok;
        bad.regions[1].boundary = vec![3];
        let err = expand_component(&SchemeComponent::Explicit(bad)).unwrap_err();
        assert_eq!(err.path, "regions[1].boundary[0]");
    }

    #[test]
    fn empty_scheme_rejected() {
        let err = RealScheme::new(vec![SchemeComponent::Sphere { ovals: OvalForest::empty() }], CurveType::I)
            .unwrap_err();
        assert_eq!(err.code, ErrorCode::InvalidScheme);
        assert!(RealScheme::new(vec![], CurveType::I).is_err());
        assert!(SchemeComponent::torus(2, vec![OvalForest::empty()]).is_err());
    }

    #[test]
    fn torus_arrangement_canonical() {
        let a = OvalForest::empty_ovals(1);
        let b = OvalForest::empty();
        let c = nest(2);
        let seq = vec![b.clone(), c.clone(), a.clone()];
        let rotated = vec![a.clone(), b.clone(), c.clone()];
        let reflected = vec![c, b, a];
        let m = minimal_cyclic_arrangement(&seq);
        assert_eq!(m, minimal_cyclic_arrangement(&rotated));
        assert_eq!(m, minimal_cyclic_arrangement(&reflected));
        assert_eq!(m[0], OvalForest::empty());
    }

    #[test]
    fn rho_bound_counts_components() {
        let s = MembraneSummary {
            membranes: vec![],
            excluded_nonorientable: 0,
            k_plus: 0,
            k_zero: 0,
            k_minus: 0,
            components_y: vec![
                ComponentData { orientable: true, chi: 0 },
                ComponentData { orientable: true, chi: 2 },
                ComponentData { orientable: true, chi: -6 },
                ComponentData { orientable: false, chi: 0 },
            ],
            circles: 0,
        };
        assert_eq!(s.rho_bound(3), 2);
        assert_eq!(s.rho_bound(5), 1);
        assert_eq!(s.rho_bound(7), 1);
    }
}
