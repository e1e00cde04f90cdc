#![allow(clippy::needless_range_loop, clippy::wrong_self_convention)]

//! Exact formal deformation quantization on flat phase space.
//!
//! Star products on `ℝ²ⁿ` act on polynomial observables with coefficients in
//! `ℚ(i)[[λ]]/λᴷ`, so every identity is checked with exact arithmetic. On top
//! of the star products sit positivity tests for functionals, GNS and
//! Bargmann-Fock/Schrödinger representations, pre-Hilbert modules with Rieffel
//! induction, deformed projections and a characteristic-class Morita test.
//!
//! The series and polynomial layers are generic over [`scalar::Scalar`]; the
//! aliases below fix the coefficient field to the Gaussian rationals, which is
//! what the rest of the crate uses.

pub mod algebra;
pub mod error;
pub mod functional;
pub mod io;
pub mod linalg;
pub mod module;
pub mod observables;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod series;
pub mod star;

pub use error::{Error, Result};
pub use poly::{Chart, Monomial, Vars};
pub use scalar::{ComplexScalar, GaussianRational, Rational, Scalar};
pub use series::{FormalSeries, SignVerdict, DEFAULT_ORDER};

/// Series over the Gaussian rationals.
pub type Series = FormalSeries<GaussianRational>;
/// Real series (ordered ring `ℚ[[λ]]/λᴷ`).
pub type RealSeries = FormalSeries<Rational>;
/// Polynomial observable with Gaussian-rational series coefficients.
pub type Observable = poly::Poly<GaussianRational>;
