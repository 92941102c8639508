//! One module per property suite.

pub mod augustin_mean;
pub mod auxiliary;
pub mod classical;
pub mod concavity;
pub mod divergence_laws;
pub mod duality;
pub mod equicontinuity;
pub mod interpolation;
pub mod minimax;
pub mod prior_shape;
pub mod sibson;
