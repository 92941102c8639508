//! Independent reference computations.

pub mod bloch;
pub mod classical;
pub mod direct;
