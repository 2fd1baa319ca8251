//! Ordinal notations, a finitary sequent calculus for Π_{N+1}-reflection over
//! KPω, and operator-controlled infinitary derivations with embedding,
//! reduction and predicative cut-elimination.

pub mod finitary;
pub mod infinitary;
pub mod ord;
pub mod syntax;
pub mod universe;
