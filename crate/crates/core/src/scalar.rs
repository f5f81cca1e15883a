//! Scalar abstraction: the whole toolkit is generic over the floating-point
//! type through this trait, with `f32` and `f64` as the provided instances.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar usable everywhere in the toolkit.
///
/// `RealField` supplies the transcendental functions and constants,
/// `FromPrimitive`/`ToPrimitive` the lossless-enough bridge to `f64`
/// literals and report output.
pub trait Scalar: RealField + FromPrimitive + ToPrimitive + Copy + Default {
    /// Convert an `f64` literal (tolerances, table constants) into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    /// Lossy view as `f64`, used for diagnostics and report emission.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
