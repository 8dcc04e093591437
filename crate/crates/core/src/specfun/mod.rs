//! Gamma, zeta, incomplete gamma and the polylogarithm (Bose function).

mod gamma;
mod polylog;
mod zeta;

pub use gamma::{gamma_fn, gamma_upper, ln_gamma};
pub use polylog::{polylog, polylog_exp, BoseFunction};
pub use zeta::zeta;

#[allow(unused_imports)]
pub(crate) use gamma::gamma_real;
#[allow(unused_imports)]
pub(crate) use zeta::zeta_any;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
