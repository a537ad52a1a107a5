//! Long knot invariants from rigid R-matrices.
//!
//! A long knot is given as a Morse word ([`diagram`]). A rigid R-matrix in a
//! backend category turns a normalized word into a morphism ([`rt`]). Three
//! families of R-matrices are provided: racks in sets, relations and spans
//! ([`setcat`]), checked against a direct count of knot group homomorphisms
//! ([`knotgroup`]); an extended Heisenberg group whose representation
//! variety gives an ideal-valued invariant ([`heisenberg`]); and a quantum
//! double acting on finite-dimensional rational modules ([`hopf`]).

pub mod catalog;
pub mod diagram;
pub mod exec;
pub mod heisenberg;
pub mod hopf;
pub mod knotgroup;
pub mod laurent;
pub mod report;
pub mod rt;
pub mod setcat;
pub mod sparse;

pub use diagram::MorseWord;
pub use exec::Execution;
pub use laurent::LaurentPoly;
