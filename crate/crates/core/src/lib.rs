//! Static structure factor and bosonic enhancement of light scattering in
//! trapped quantum gases, ideal and interacting.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod constants;
pub mod error;
pub mod ideal;
pub mod interact;
pub mod numerics;
pub mod polarization;
pub mod specfun;
pub mod trap;

pub use error::{Error, Result};
pub use ideal::{EnhancementResult, GasState};
pub use interact::{DensityProfile, InteractingModel, InteractionSpec, ProfileModel};
pub use numerics::Tolerance;
pub use polarization::PolarizationModel;
pub use trap::{RecoilSpec, Statistics, TrapPower, TrapSpec};
