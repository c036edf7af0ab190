//! Exact q-characters of quantum affine algebras, their specializations at
//! roots of unity, and Frobenius pullbacks of eps*-characters.
//!
//! Polynomials in the `Y_{i,a}` live in [`ypoly`]; [`characters`] runs the
//! Frenkel-Mukhin closure and certifies it, [`classical`] handles the
//! acyclic/periodic factorization through Frobenius pullbacks.

pub mod cartan;
pub mod error;
pub mod params;
pub mod ypoly;
pub mod drinfeld;
pub mod characters;
pub mod classical;
pub mod format;
pub mod verify;
