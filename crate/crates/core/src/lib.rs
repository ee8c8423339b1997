//! Proximal vortex cycles and vortex nerves on planar cell complexes.
//!
//! The core is generic over the coordinate type through [`Scalar`]
//! (`f64` or `f32`); the aliases at the crate root fix it to `f64`, with
//! `*32` variants for `f32`.

pub mod complex;
pub mod descriptors;
mod error;
pub mod generate;
pub mod geometry;
pub mod homology;
pub mod proximity;
mod scalar;
pub mod topology;

pub use error::{Error, Result};
pub use scalar::{Scalar, Tolerance};

pub type Point = geometry::Point<f64>;
pub type Polygon = geometry::Polygon<f64>;
pub type ClosedRegion = geometry::ClosedRegion<f64>;
pub type Shape = geometry::Shape<f64>;
pub type CellComplex = complex::CellComplex<f64>;
pub type ComplexParts = complex::ComplexParts<f64>;

pub type Point32 = geometry::Point<f32>;
pub type Polygon32 = geometry::Polygon<f32>;
pub type ClosedRegion32 = geometry::ClosedRegion<f32>;
pub type CellComplex32 = complex::CellComplex<f32>;
