//! Quantum Rényi divergences, Rényi and Augustin information, and the error
//! exponents of classical-quantum channels and sources.
//!
//! Quantities are in nats. The three divergence families (Petz, sandwiched
//! and log-Euclidean) share one interface selected by [`DivergenceKind`].

pub mod channel;
pub mod divergence;
pub mod error;
pub mod exponents;
pub mod information;
pub mod io;
pub mod matcalc;
mod optim;
mod states;

pub use channel::{joint_state, CqChannel, CqSource, Prior};
pub use divergence::{
    conditional_divergence, divergence, divergence_detailed, umegaki, variance, DivergenceKind,
    DivergenceValue, ExtendedValue, Order,
};
pub use error::{Error, Result};
pub use exponents::{
    capacity, channel_exponent, channel_exponent_for_prior, conditional_renyi_entropy, e0,
    e0_source_iid, e0_source_type, fenchel_legendre, gallager_holevo_e0, source_exponent, ArgMax,
    CapacityResult, ExponentOptions, ExponentResult, ExponentWarning, RateSign,
};
pub use information::{
    augustin_information, holevo_information, information, minimize_over_states, renyi_information,
    InfoVariant, MeanResult, OptimizerOptions,
};
pub use matcalc::{DensityOperator, HermitianOperator};
