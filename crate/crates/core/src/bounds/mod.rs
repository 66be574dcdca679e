//! Numerics behind the bound constants: `R_k`, distribution curves for
//! defining variables, the `β_H`/`γ_H` integrals, the worst-case balance
//! against a second algorithm, and the clause-pattern tables.

mod exponent;
mod hcurve;
mod integrals;
mod istt;
mod optimize;
pub mod quadrature;
mod report;
mod rk;
pub mod roots;

pub use exponent::{ppsz_exponent, worst_case_delta, Balance, Counterpart, PpszExponent};
pub use hcurve::{solve_h3_params, HCurve, VALIDATION_GRID};
pub use integrals::{beta_of_h, crossings, gamma_of_h};
pub use istt::{defining_count, istt_tables, m_star_for, IsttReport, IsttTables, Rational, TYPES};
pub use optimize::{balance_cstar_3sat, optimize_theta_3sat, optimize_theta_4sat, Optimum};
pub use report::{
    appendix_cstar, bound_3sat_appendix, bound_3sat_main, bound_3sat_schoening, bound_3sat_weak,
    bound_4sat, bound_report, guessing_arithmetic, unique_case_bound, BoundReport, GuessingArithmetic, APPENDIX_TARGET,
    APPENDIX_THETA, FOUR_SAT_THETA, MAIN_CSTAR, MAIN_THETA, WEAK_CSTAR, WEAK_F_D, WEAK_F_M,
    WEAK_M_STAR, WEAK_TWO_POW_DELTA_COEFF, WEAK_TWO_POW_E,
};
pub use rk::{r3_closed_form, r_k_kink, r_k_mean, r_k_pointwise};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("θ = {theta}: {reason}")]
    InvalidTheta { theta: f64, reason: String },
    #[error("invalid distribution curve: {0}")]
    InvalidCurve(String),
    #[error("{0}")]
    InvalidParameter(String),
}
