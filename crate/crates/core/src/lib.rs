//! Gegenbauer and spherical-harmonic coefficient algebra for Hardy-Rellich
//! and uncertainty inequalities on the sphere, with certified constants.

pub mod bigfloat;
pub mod certify;
pub mod eigen;
pub mod error;
pub mod exact;
pub mod fourier;
pub mod gegenbauer;
pub mod lab;
pub mod quadrature;
pub mod sequences;
pub mod special;
pub mod sphere;
pub mod suites;

pub use error::{Error, Result};
