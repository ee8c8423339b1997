//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point coordinate type: `f32` or `f64`.
///
/// The associated constants are the default incidence and emptiness
/// tolerances for the type. `f32` cannot resolve `1e-9` at unit scale, so its
/// defaults are coarser.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Default distance below which two features are considered incident.
    const EPS_GEO: Self;
    /// Default area below which a region is considered empty.
    const EPS_AREA: Self;

    /// Lossy conversion from `f64`, used for literals.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EPS_GEO: f64 = 1e-9;
    const EPS_AREA: f64 = 1e-12;
}

impl Scalar for f32 {
    const EPS_GEO: f32 = 1e-5;
    const EPS_AREA: f32 = 1e-8;
}

/// Incidence (`geo`) and emptiness (`area`) tolerances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    pub geo: T,
    pub area: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            geo: T::EPS_GEO,
            area: T::EPS_AREA,
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn with_geo(geo: T) -> Self {
        Tolerance { geo, ..Self::default() }
    }
}
