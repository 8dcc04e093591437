//! Interacting trapped Bose gas: Hartree-Fock and semi-ideal density
//! profiles, pair correlations and the interacting structure factor.

mod correlation;
mod hf;
mod profile;
mod spec;
mod structure;

pub use correlation::{
    correlation_length, pair_correlation_g1, structure_suppression, suppression_ratio, CorrelationResult, RegimeHint,
};
pub use hf::{hf_local_solve, Branch, BranchRule, HfLocal, HfSolver};
pub use profile::{
    model_critical_temperature, overlap_reduction_factor, profile, profile_with, radial_grid,
    semi_ideal_condensate_fraction, temperature_for_condensate_fraction, DensityProfile, ProfileModel, ProfileOptions,
    NORMALIZATION_TOLERANCE,
};
pub use spec::{density_ratio_scaling, InteractionSpec};
pub use structure::{structure_factor_interacting, InteractingModel};
