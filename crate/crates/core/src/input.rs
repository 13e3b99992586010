//! The JSON input document: parsing with field paths, bounds checks, and conversion to
//! engine types.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorCode, Result};
use crate::forest::OvalForest;
use crate::scheme::{CurveType, ExplicitComponent, ExplicitRegion, RealScheme, SchemeComponent};
use crate::surface::{CurveClass, IntersectionLattice, RealTopology, SurfaceModel};
use crate::verdict::Overrides;

pub const SCHEMA_VERSION: u32 = 1;

const MAX_COORD: i64 = 1_000_000;
const MAX_RANK: usize = 32;
const MAX_CIRCLES: usize = 10_000;
const MAX_SMALL: u32 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Plane,
    Quadric,
    Hirzebruch,
    DelPezzo,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub family: FamilyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_part: Option<Vec<RealTopology>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyName {
    Sphere,
    Torus,
    ProjectivePlane,
    OrientableGenus,
    Explicit,
}

/// One component as written in the document. Which fields are allowed depends on
/// `topology`; that is checked during conversion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub topology: TopologyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ovals: Option<OvalForest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_branch: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub essential_circles: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annuli: Option<Vec<OvalForest>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<ExplicitRegion>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    #[serde(rename = "type")]
    pub curve_type: CurveType,
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub surface: SurfaceSpec,
    pub curve_class: ClassSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overrides: Option<Overrides>,
}

fn schema_err(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::new(ErrorCode::Schema, path, msg)
}

/// Parses and validates a document. Syntax errors report line and column; schema errors
/// report the offending field path.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        Error::new(ErrorCode::Syntax, "$", format!("input is not UTF-8: {e}"))
    })?;
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: InputDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let code = match inner.classify() {
            serde_json::error::Category::Data => ErrorCode::Schema,
            _ => ErrorCode::Syntax,
        };
        let path = if code == ErrorCode::Syntax || path == "." {
            "$".to_string()
        } else {
            path
        };
        Error::new(code, path, inner.to_string())
    })?;
    de.end().map_err(|e| Error::new(ErrorCode::Syntax, "$", e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

pub fn parse_input_str(text: &str) -> Result<InputDocument> {
    parse_input(text.as_bytes())
}

fn check_coord(v: i64, path: &str) -> Result<()> {
    if v.abs() > MAX_COORD {
        return Err(schema_err(path, format!("|{v}| exceeds the limit {MAX_COORD}")));
    }
    Ok(())
}

impl InputDocument {
    fn validate(&self) -> Result<()> {
        if let Some(v) = self.schema {
            if v != SCHEMA_VERSION {
                return Err(schema_err("schema", format!("unsupported schema version {v}; expected 1")));
            }
        }
        let s = &self.surface;
        if let Some(e) = s.e {
            if e > MAX_SMALL {
                return Err(schema_err("surface.e", format!("e = {e} exceeds {MAX_SMALL}")));
            }
        }
        if let Some(gram) = &s.gram {
            if gram.len() > MAX_RANK {
                return Err(schema_err("surface.gram", format!("rank above {MAX_RANK}")));
            }
            for (i, row) in gram.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    check_coord(v, &format!("surface.gram[{i}][{j}]"))?;
                }
            }
        }
        for (i, &v) in s.canonical.iter().flatten().enumerate() {
            check_coord(v, &format!("surface.canonical[{i}]"))?;
        }
        if let Some(b2) = s.b2 {
            if b2 as i64 > MAX_COORD {
                return Err(schema_err("surface.b2", "b2 too large"));
            }
        }
        if let Some(sigma) = s.sigma {
            check_coord(sigma, "surface.sigma")?;
        }
        for (i, t) in s.real_part.iter().flatten().enumerate() {
            let bad = match *t {
                RealTopology::OrientableGenus { genus } => genus > MAX_SMALL,
                RealTopology::Other {
                    euler_characteristic, ..
                } => euler_characteristic.abs() > MAX_COORD,
                _ => false,
            };
            if bad {
                return Err(schema_err(format!("surface.real_part[{i}]"), "value out of range"));
            }
        }
        match (&self.curve_class.coords, self.curve_class.n) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(schema_err("curve_class", "give exactly one of `coords` or `n`"));
            }
            (Some(c), None) => {
                for (i, &v) in c.iter().enumerate() {
                    check_coord(v, &format!("curve_class.coords[{i}]"))?;
                }
            }
            (None, Some(n)) => check_coord(n, "curve_class.n")?,
        }
        if let Some(o) = &self.overrides {
            if o.rho.is_some_and(|r| r > MAX_SMALL) {
                return Err(schema_err("overrides.rho", "rho out of range"));
            }
        }
        if let Some(scheme) = &self.scheme {
            let mut total = 0usize;
            for (i, c) in scheme.components.iter().enumerate() {
                let path = format!("scheme.components[{i}]");
                for (field, v) in [
                    ("essential_circles", c.essential_circles),
                    ("genus", c.genus),
                    ("circles", c.circles),
                ] {
                    if v.is_some_and(|v| v > MAX_SMALL) {
                        return Err(schema_err(format!("{path}.{field}"), format!("{field} exceeds {MAX_SMALL}")));
                    }
                }
                total += c.ovals.as_ref().map_or(0, OvalForest::size)
                    + c.annuli.iter().flatten().map(OvalForest::size).sum::<usize>()
                    + c.essential_circles.unwrap_or(0) as usize
                    + c.circles.unwrap_or(0) as usize;
            }
            if total > MAX_CIRCLES {
                return Err(schema_err("scheme.components", format!("more than {MAX_CIRCLES} circles")));
            }
        }
        Ok(())
    }

    pub fn surface_model(&self) -> Result<SurfaceModel> {
        let s = &self.surface;
        let forbid = |name: &str, present: bool| -> Result<()> {
            if present {
                Err(schema_err(
                    format!("surface.{name}"),
                    format!("field `{name}` does not apply to this family"),
                ))
            } else {
                Ok(())
            }
        };
        let lattice_fields = [
            ("gram", s.gram.is_some()),
            ("canonical", s.canonical.is_some()),
            ("b2", s.b2.is_some()),
            ("sigma", s.sigma.is_some()),
        ];
        let model = match s.family {
            FamilyName::Custom => {
                forbid("e", s.e.is_some())?;
                forbid("d", s.d.is_some())?;
                let need = |name: &str| schema_err(format!("surface.{name}"), format!("custom surfaces need `{name}`"));
                let gram = s.gram.clone().ok_or_else(|| need("gram"))?;
                let canonical = s.canonical.clone().ok_or_else(|| need("canonical"))?;
                let b2 = s.b2.ok_or_else(|| need("b2"))?;
                let sigma = s.sigma.ok_or_else(|| need("sigma"))?;
                let labels = (0..gram.len()).map(|i| format!("e{}", i + 1)).collect();
                let lattice = IntersectionLattice::new(gram, labels).map_err(|e| e.under("surface"))?;
                SurfaceModel::custom(lattice, canonical, b2, sigma)?
            }
            family => {
                for (name, present) in lattice_fields {
                    forbid(name, present)?;
                }
                match family {
                    FamilyName::Plane => {
                        forbid("e", s.e.is_some())?;
                        forbid("d", s.d.is_some())?;
                        SurfaceModel::plane()
                    }
                    FamilyName::Quadric => {
                        forbid("e", s.e.is_some())?;
                        forbid("d", s.d.is_some())?;
                        SurfaceModel::quadric()
                    }
                    FamilyName::Hirzebruch => {
                        forbid("d", s.d.is_some())?;
                        let e = s.e.ok_or_else(|| schema_err("surface.e", "hirzebruch surfaces need `e`"))?;
                        SurfaceModel::hirzebruch(e)
                    }
                    FamilyName::DelPezzo => {
                        forbid("e", s.e.is_some())?;
                        let d = s.d.ok_or_else(|| schema_err("surface.d", "del Pezzo surfaces need `d`"))?;
                        SurfaceModel::del_pezzo(d)?
                    }
                    FamilyName::Custom => unreachable!(),
                }
            }
        };
        Ok(match &s.real_part {
            Some(r) => model.with_real_part(r.clone()),
            None => model,
        })
    }

    pub fn curve_class(&self) -> Result<CurveClass> {
        let by_n = self.surface.family == FamilyName::DelPezzo;
        let coords = match (&self.curve_class.coords, self.curve_class.n) {
            (None, Some(n)) if by_n => vec![n],
            (Some(c), None) if !by_n => c.clone(),
            _ if by_n => {
                return Err(schema_err("curve_class", "del Pezzo classes are given as `n` (multiples of c_1)"))
            }
            _ => return Err(schema_err("curve_class", "classes on this surface are given as `coords`")),
        };
        CurveClass::new(coords).map_err(|e| e.under("curve_class"))
    }

    pub fn overrides(&self) -> Overrides {
        self.overrides.unwrap_or_default()
    }

    pub fn real_scheme(&self) -> Result<Option<RealScheme>> {
        let Some(spec) = &self.scheme else {
            return Ok(None);
        };
        let mut components = Vec::with_capacity(spec.components.len());
        for (i, c) in spec.components.iter().enumerate() {
            components.push(c.to_component().map_err(|e| e.under(&format!("scheme.components[{i}]")))?);
        }
        RealScheme::new(components, spec.curve_type)
            .map(Some)
            .map_err(|e| e.under("scheme"))
    }
}

impl ComponentSpec {
    fn allowed(&self, allowed: &[&str]) -> Result<()> {
        let present = [
            ("ovals", self.ovals.is_some()),
            ("odd_branch", self.odd_branch.is_some()),
            ("essential_circles", self.essential_circles.is_some()),
            ("annuli", self.annuli.is_some()),
            ("genus", self.genus.is_some()),
            ("orientable", self.orientable.is_some()),
            ("euler_characteristic", self.euler_characteristic.is_some()),
            ("circles", self.circles.is_some()),
            ("regions", self.regions.is_some()),
        ];
        for (name, is_present) in present {
            if is_present && !allowed.contains(&name) {
                return Err(schema_err(name, format!("field `{name}` does not apply to this topology")));
            }
        }
        Ok(())
    }

    pub fn to_component(&self) -> Result<SchemeComponent> {
        let ovals = || self.ovals.clone().unwrap_or_default();
        match self.topology {
            TopologyName::Sphere => {
                self.allowed(&["ovals"])?;
                Ok(SchemeComponent::Sphere { ovals: ovals() })
            }
            TopologyName::ProjectivePlane => {
                self.allowed(&["ovals", "odd_branch"])?;
                Ok(SchemeComponent::ProjectivePlane {
                    odd_branch: self.odd_branch.unwrap_or(false),
                    ovals: ovals(),
                })
            }
            TopologyName::OrientableGenus => {
                self.allowed(&["ovals", "genus"])?;
                let genus = self.genus.ok_or_else(|| schema_err("genus", "missing field `genus`"))?;
                Ok(SchemeComponent::OrientableGenus { genus, ovals: ovals() })
            }
            TopologyName::Torus => {
                self.allowed(&["ovals", "essential_circles", "annuli"])?;
                let l = self.essential_circles.unwrap_or(0);
                let annuli = match (&self.ovals, &self.annuli) {
                    (Some(_), Some(_)) => return Err(schema_err("ovals", "give either `ovals` or `annuli`, not both")),
                    (Some(_), None) if l > 0 => {
                        return Err(schema_err(
                            "ovals",
                            "with essential circles the ovals are given per annulus in `annuli`",
                        ))
                    }
                    (Some(o), None) => vec![o.clone()],
                    (None, Some(a)) => a.clone(),
                    (None, None) => vec![OvalForest::empty(); l.max(1) as usize],
                };
                SchemeComponent::torus(l, annuli)
            }
            TopologyName::Explicit => {
                self.allowed(&["orientable", "euler_characteristic", "circles", "regions"])?;
                let need = |name: &str| schema_err(name, format!("missing field `{name}`"));
                Ok(SchemeComponent::Explicit(ExplicitComponent {
                    orientable: self.orientable.ok_or_else(|| need("orientable"))?,
                    euler_characteristic: self
                        .euler_characteristic
                        .ok_or_else(|| need("euler_characteristic"))?,
                    circles: self.circles.ok_or_else(|| need("circles"))?,
                    regions: self.regions.clone().ok_or_else(|| need("regions"))?,
                }))
            }
        }
    }
}

/// Writes a component back into document form.
pub fn component_spec(c: &SchemeComponent) -> ComponentSpec {
    let blank = |topology| ComponentSpec {
        topology,
        ovals: None,
        odd_branch: None,
        essential_circles: None,
        annuli: None,
        genus: None,
        orientable: None,
        euler_characteristic: None,
        circles: None,
        regions: None,
    };
    match c {
        SchemeComponent::Sphere { ovals } => ComponentSpec {
            ovals: Some(ovals.clone()),
            ..blank(TopologyName::Sphere)
        },
        SchemeComponent::ProjectivePlane { odd_branch, ovals } => ComponentSpec {
            odd_branch: Some(*odd_branch),
            ovals: Some(ovals.clone()),
            ..blank(TopologyName::ProjectivePlane)
        },
        SchemeComponent::OrientableGenus { genus, ovals } => ComponentSpec {
            genus: Some(*genus),
            ovals: Some(ovals.clone()),
            ..blank(TopologyName::OrientableGenus)
        },
        SchemeComponent::Torus {
            essential_circles,
            annuli,
        } => ComponentSpec {
            essential_circles: Some(*essential_circles),
            annuli: Some(annuli.clone()),
            ..blank(TopologyName::Torus)
        },
        SchemeComponent::Explicit(x) => ComponentSpec {
            orientable: Some(x.orientable),
            euler_characteristic: Some(x.euler_characteristic),
            circles: Some(x.circles),
            regions: Some(x.regions.clone()),
            ..blank(TopologyName::Explicit)
        },
    }
}

pub fn scheme_spec(scheme: &RealScheme) -> SchemeSpec {
    SchemeSpec {
        curve_type: scheme.curve_type(),
        components: scheme.components().iter().map(component_spec).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUINTIC: &str = r#"{"surface":{"family":"plane"},"curve_class":{"coords":[5]},"scheme":{"type":"unknown","components":[{"topology":"projective_plane","odd_branch":true,"ovals":[[[]]]}]}}"#;

    #[test]
    fn quintic_document() {
        let doc = parse_input_str(QUINTIC).unwrap();
        let scheme = doc.real_scheme().unwrap().unwrap();
        assert_eq!(scheme.circle_count(), 3);
        assert_eq!(
            scheme.components()[0],
            SchemeComponent::ProjectivePlane {
                odd_branch: true,
                ovals: OvalForest::nest(2, OvalForest::empty())
            }
        );
        let side = QUINTIC.replace("[[[]]]", "[[],[]]");
        let scheme = parse_input_str(&side).unwrap().real_scheme().unwrap().unwrap();
        assert_eq!(scheme.components()[0].oval_count(), 2);
    }

    #[test]
    fn del_pezzo_document() {
        let text = r#"{"surface":{"family":"del_pezzo","d":2,"real_part":[{"topology":"sphere"}]},"curve_class":{"n":3}}"#;
        let doc = parse_input_str(text).unwrap();
        let s = doc.surface_model().unwrap();
        assert_eq!(s.b2(), 8);
        assert_eq!(doc.curve_class().unwrap().coords(), &[3]);
    }

    #[test]
    fn unknown_field_reports_path() {
        let bad = QUINTIC.replace("\"odd_branch\":true", "\"odd_branch\":true,\"colour\":1");
        let err = parse_input_str(&bad).unwrap_err();
        assert_eq!(err.code, ErrorCode::Schema);
        assert_eq!(err.path, "scheme.components[0].colour");
        let bad = QUINTIC.replace("\"coords\":[5]", "\"coords\":[\"five\"]");
        let err = parse_input_str(&bad).unwrap_err();
        assert_eq!(err.path, "curve_class.coords[0]");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_input_str("{\"surface\": }").unwrap_err();
        assert_eq!(err.code, ErrorCode::Syntax);
        assert!(err.message.contains("line 1"));
    }

    #[test]
    fn schema_version() {
        let ok = QUINTIC.replacen('{', "{\"schema\":1,", 1);
        assert!(parse_input_str(&ok).is_ok());
        let bad = QUINTIC.replacen('{', "{\"schema\":2,", 1);
        assert_eq!(parse_input_str(&bad).unwrap_err().path, "schema");
    }

    #[test]
    fn field_not_applicable() {
        let bad = QUINTIC.replace("\"odd_branch\":true", "\"odd_branch\":true,\"genus\":2");
        let err = parse_input_str(&bad).unwrap().real_scheme().unwrap_err();
        assert_eq!(err.path, "scheme.components[0].genus");
    }

    #[test]
    fn out_of_range_integer() {
        let bad = QUINTIC.replace("[5]", "[5000000]");
        assert_eq!(parse_input_str(&bad).unwrap_err().path, "curve_class.coords[0]");
    }

    #[test]
    fn torus_annuli() {
        let text = r#"{"surface":{"family":"quadric","real_part":[{"topology":"torus"}]},"curve_class":{"coords":[3,3]},"scheme":{"type":"I","components":[{"topology":"torus","essential_circles":3}]}}"#;
        let scheme = parse_input_str(text).unwrap().real_scheme().unwrap().unwrap();
        assert_eq!(scheme.circle_count(), 3);
        let bad = text.replace("\"essential_circles\":3", "\"essential_circles\":3,\"annuli\":[[]]");
        let err = parse_input_str(&bad).unwrap().real_scheme().unwrap_err();
        assert_eq!(err.path, "scheme.components[0].annuli");
    }

    #[test]
    fn spec_round_trip() {
        let doc = parse_input_str(QUINTIC).unwrap();
        let scheme = doc.real_scheme().unwrap().unwrap();
        let back = scheme_spec(&scheme);
        assert_eq!(doc.scheme.as_ref().unwrap().components[0].to_component().unwrap(), back.components[0].to_component().unwrap());
    }
}
