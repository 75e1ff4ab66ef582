//! Exact-arithmetic toolkit for commuting varieties of nilpotent radicals.
//!
//! The crate builds the nilpotent radical of a Borel subalgebra for the
//! small rank types A1..A4 and B2, plus the Witt algebra chain, and checks
//! the structure of the commuting variety C2 and the abelian-plane variety
//! A(2,u) by two independent means: symbolic degeneration certificates and
//! finite-field point counting.

pub mod census;
pub mod components;
pub mod exact;
pub mod liecore;
pub mod orbits;
pub mod rootsys;
