//! Class invariants from generalised Weber functions 𝔴_N = η(z/N)/η(z).
//!
//! The crate decides for which exponents e a power 𝔴_N^e yields a class
//! invariant for an imaginary quadratic order, evaluates the corresponding
//! class polynomial exactly by floating point evaluation and rounding, and
//! reproduces degree and height data of the associated modular polynomials.
//!
//! Modules, bottom-up:
//!
//! - [`numeric`]: Kronecker symbols, modular square roots, 24th roots of
//!   unity and the multiprecision [`numeric::BigComplex`] type.
//! - [`quadforms`]: reduction, class enumeration and N-systems.
//! - [`invariant`]: admissibility, exponent selection and the condition tables.
//! - [`eta`]: η, 𝔴_N, j and class polynomials.
//! - [`modular`]: cosets, degree formulas, height factors, Φ_N^c.

pub mod numeric;
pub mod quadforms;
pub mod invariant;
pub mod eta;
pub mod modular;

pub use numeric::{BigComplex, Residue, RootOfUnity24};
