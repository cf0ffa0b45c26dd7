//! Exact computation of Kazhdan-Lusztig bases of (weighted) affine Hecke
//! algebras, the integer structure constants of the spherical subalgebra,
//! diagram folding of simply-laced data, and an independent Weyl
//! character-ring oracle used to cross-check every Hecke-side result.

pub mod cache;
pub mod charoracle;
pub mod coxeter;
pub mod error;
pub mod folding;
pub mod hecke;
pub mod laurent;
pub mod satake;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use weyl::{AffineElement, DatumSpec, RootDatum, Series};
