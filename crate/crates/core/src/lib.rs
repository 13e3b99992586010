//! Exact topological prohibitions for real schemes of flexible curves on real algebraic surfaces.

pub mod arith;
pub mod bounds;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod input;
pub mod rational;
pub mod report;
pub mod scheme;
pub mod surface;
pub mod table;
pub mod verdict;
pub mod zp;

pub use bounds::{best_bounds, rhs_hyperbolic, rhs_non_elliptic, BoundReport, DeltaChoice};
pub use error::{Error, ErrorCode, Result};
pub use forest::{Oval, OvalForest};
pub use rational::Rational;
pub use scheme::{membranes, CurveType, MembraneSummary, RealScheme, SchemeComponent};
pub use surface::{CurveClass, DivisibilityData, Family, RealTopology, SurfaceModel};
pub use verdict::{check, FinalStatus, Overrides, Verdict};
