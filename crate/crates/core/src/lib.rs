//! Numerical toolkit for the photon phase operator of a single `(+k, -k)`
//! mode pair.
//!
//! The crate builds the truncated two-mode Fock space and its elementary
//! operators as dense complex matrices ([`fock`]), constructs the unitary
//! phase operator `E = (A A†)^(-1/2) A` from the complex amplitude operator
//! `A = (a_fwd + a_bwd†)/√(2k)` together with its forward-sector restriction
//! and the plain superdiagonal comparator ([`phase`]), and cross-checks every
//! matrix element against direct integration of the closed-form polar
//! oscillator wavefunctions ([`wavefunc`]) using generalized Gauss-Laguerre
//! quadrature chosen so the target integrals are exact up to rounding
//! ([`quad`]). Physics-level results (phase variance, window states, time
//! evolution, expected field reconstruction) live in [`analysis`].
//!
//! Units are `ħ = c = 1` throughout; the wave number `k` is a free positive
//! parameter.

pub mod analysis;
pub mod basis;
pub mod error;
pub mod fock;
pub mod operator;
pub mod phase;
pub mod quad;
pub mod special;
pub mod tol;
pub mod wavefunc;

pub use basis::{BasisTag, FockIndex, TwoModeBasis};
pub use error::Error;
pub use operator::{ComplexOperator, StateVector};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
