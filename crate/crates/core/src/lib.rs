//! Numerical differential geometry of curves and hypersurfaces in Euclidean
//! n-space: moving frames and curvatures, unit normal fields and shape
//! operators, geodesic integration, detection of the space of directions at
//! constant angle with a patch, and a falsifiable verification suite for the
//! classical statements about such constant-angle hypersurfaces.
//!
//! All numerics are generic over the scalar type via [`Scalar`] (`f32` or
//! `f64`); the `*64` aliases below are the concrete types most callers use.
#![allow(clippy::needless_range_loop)]

pub mod curve;
pub mod error;
pub mod expr;
pub mod geodesic;
pub mod helix_space;
pub mod hypersurface;
pub mod jet;
pub mod linalg;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod scene;
pub mod theorems;

pub use error::{Error, Result};
pub use sample::SamplePlan;
pub use scalar::Scalar;

/// Taylor jet over `f64`.
pub type Jet64 = jet::Jet<f64>;
/// Parametric curve over `f64`.
pub type Curve64 = curve::Curve<f64>;
/// Frame data over `f64`.
pub type FrenetData64 = curve::FrenetData<f64>;
/// Hypersurface patch over `f64`.
pub type Hypersurface64 = hypersurface::Hypersurface<f64>;
/// Curve on a patch over `f64`.
pub type SurfaceCurve64 = hypersurface::SurfaceCurve<f64>;
/// Constant-angle direction space over `f64`.
pub type HelixDirectionSpace64 = helix_space::HelixDirectionSpace<f64>;
/// Geodesic trace over `f64`.
pub type GeodesicTrace64 = geodesic::GeodesicTrace<f64>;
/// Check configuration over `f64`.
pub type CheckConfig64 = theorems::CheckConfig<f64>;
