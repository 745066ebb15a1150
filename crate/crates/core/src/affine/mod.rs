//! Affinization: Lie (bi)algebras on A⊗B from Novikov data on A and a right
//! Novikov algebra B, either finite-dimensional or the Laurent polynomials.

pub mod banded;
pub mod completed;
pub mod dense;
pub mod finite;
pub mod graded;
pub mod laurent;
