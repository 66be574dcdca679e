//! Recovering the curve parameters from scratch.

use serde::Serialize;

use super::exponent::{ppsz_exponent, worst_case_delta, Counterpart};
use super::hcurve::HCurve;
use super::integrals::{beta_of_h, gamma_of_h};
use super::report::bound_4sat;
use super::roots::{bisect, golden_section_min};
use super::BoundError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub theta: f64,
    pub cstar: f64,
    pub bound: f64,
}

/// For fixed `θ`: the `c*` at which PPSZ-plus-walk and the guessing
/// reduction give the same base, and that base.
pub fn balance_cstar_3sat(theta: f64) -> Result<Optimum, BoundError> {
    let curve = HCurve::three_sat(theta)?;
    let (beta, gamma) = (beta_of_h(&curve), gamma_of_h(&curve, 3));
    let walk = Counterpart::Schoening { k: 3 };
    let comb_cost = |c: f64| worst_case_delta(&ppsz_exponent(3, c, beta, gamma), &walk).cost;
    let cstar = bisect(|c| comb_cost(c) + (1.0 - c / 2.0).log2(), 0.2, 0.8, 1e-12)?;
    Ok(Optimum {
        theta,
        cstar,
        bound: comb_cost(cstar).exp2(),
    })
}

/// Golden-section search over `θ` of the balanced 3-SAT base.
pub fn optimize_theta_3sat(lo: f64, hi: f64) -> Result<Optimum, BoundError> {
    let theta = golden_section_min(
        |t| balance_cstar_3sat(t).map_or(f64::INFINITY, |o| o.bound),
        lo,
        hi,
        1e-7,
    );
    balance_cstar_3sat(theta)
}

/// The 4-SAT `θ` where `β_H = 1 - γ_H`.
pub fn optimize_theta_4sat() -> Result<Optimum, BoundError> {
    let residual = |t: f64| bound_4sat(t).map_or(f64::NAN, |r| r.delta_coeff);
    let theta = bisect(residual, 2.0 / 3.0, 0.99, 1e-10)?;
    let r = bound_4sat(theta)?;
    Ok(Optimum {
        theta,
        cstar: r.cstar,
        bound: r.bound,
    })
}
