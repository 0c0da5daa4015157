//! Lissajous-type curves whose frequencies are consecutive primes.
//!
//! The crate covers four pieces:
//!
//! - [`primes`]: sieving the first `n` primes and splitting them into the two
//!   interleaved "second neighbour" classes (2, 5, 11, … and 3, 7, 13, …).
//! - [`curves`]: the classic Lissajous curve `(sin(a·t + δ), cos(b·t))` and the
//!   prime-sum curves `(Σ sin(pᵢ·t)/pᵢ, Σ cos(pᵢ·t)/pᵢ)`, with analytic first and
//!   second derivatives.
//! - [`geometry`]: arc length by adaptive Simpson quadrature, curvature,
//!   bounding boxes and Hausdorff-style trace metrics.
//! - [`sampling`], [`render`] and [`ulam`]: polylines, SVG/CSV writers and the
//!   Ulam square spiral as a PGM raster.
//!
//! ```
//! use prime_lissajous::curves::{Curve, CurveSpec};
//! use prime_lissajous::geometry::{arc_length, QuadratureConfig};
//!
//! let circle = Curve::new(&CurveSpec::classic(1.0, 1.0, 0.0)).unwrap();
//! let len = arc_length(&circle, 0.0, std::f64::consts::TAU, &QuadratureConfig::default()).unwrap();
//! assert!((len - std::f64::consts::TAU).abs() < 1e-9);
//! ```

pub mod curves;
pub mod error;
pub mod geometry;
pub mod primes;
pub mod render;
pub mod sampling;
pub mod ulam;

#[cfg(feature = "cli")]
pub mod cli;


pub use error::{Error, Result};
