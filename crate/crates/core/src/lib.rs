//! Exact series algebra and coefficient-body machinery for bounding the
//! third Hankel determinant `H₃(1)` over four subordination classes of
//! univalent functions.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; randomness is always supplied by the caller.
//!
//! Layout:
//!
//! * [`series`] – truncated power series over exact or floating scalars.
//! * [`poly`] – polynomials in the Schwarz coefficients `c₁…c₄`.
//! * [`classes`] – the four classes, coefficient derivation and `H₃(1)`.
//! * [`lemmas`] – the Prokhorov–Szynal regions, Carlson's inequalities and
//!   Schur-parametrized Schwarz samples.
//! * [`univariate`], [`bivariate`], [`optimize`], [`certificate`] – the exact
//!   machinery behind the bound pipelines.
//! * [`bounds`] – the four upper-bound pipelines.
//! * [`search`] – lower bounds by stochastic search.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bivariate;
pub mod bounds;
pub mod certificate;
pub mod classes;
mod error;
pub mod lemmas;
pub mod optimize;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod series;
pub mod univariate;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

pub use bounds::{BoundReport, bound_for};
pub use classes::{ClassId, ClassSpec, HankelExpression};
pub use lemmas::{Region, RegionVerdict, SchwarzSample};
pub use poly::CoeffPolynomial;
pub use series::TruncatedSeries;
