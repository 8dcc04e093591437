//! Ideal Bose and Fermi gases in power-law traps: thermodynamics and the
//! finite-κ structure factor.

pub mod kernel;
mod oracle;
mod state;
mod structure;

pub use kernel::KernelTolerance;
pub use oracle::{phase_space_oracle, OracleGrid};
pub use state::{
    condensate_fraction, fermi_dirac_integral, fermi_log_fugacity, fugacity, log_fugacity, occupation, occupation_with,
    GasState,
};
pub use structure::{
    asymptote_prefactor, enhancement_asymptote_small_kappa, enhancement_closed_form_k0, naive_psd_enhancement,
    recoil_occupation, structure_factor, structure_factor_with, EnhancementResult,
};
