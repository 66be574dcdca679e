use serde::Serialize;

use super::exponent::{ppsz_exponent, worst_case_delta, Counterpart, PpszExponent};
use super::hcurve::HCurve;
use super::integrals::{beta_of_h, gamma_of_h};
use super::istt::{istt_tables, m_star_for};
use super::rk::r_k_mean;
use super::roots::bisect;
use super::BoundError;

pub const MAIN_THETA: f64 = 0.52455825;
pub const MAIN_CSTAR: f64 = 0.48659459;
pub const WEAK_CSTAR: f64 = 0.48599;
pub const WEAK_M_STAR: f64 = 0.155371873;
pub const WEAK_F_M: f64 = 1.012795;
pub const WEAK_F_D: f64 = 1.2845745;
/// Rounded PPSZ constants the weak bound is balanced with.
pub const WEAK_TWO_POW_E: f64 = 1.31;
pub const WEAK_TWO_POW_DELTA_COEFF: f64 = 1.3312;
pub const APPENDIX_THETA: f64 = 0.5224565;
pub const APPENDIX_TARGET: f64 = 1.32065;
pub const FOUR_SAT_THETA: f64 = 0.6803639;

/// Every quantity behind one bound constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u32,
    pub curve: HCurve,
    pub theta: f64,
    pub cstar: f64,
    pub r_k: f64,
    pub beta_h: f64,
    pub gamma_h: f64,
    /// PPSZ cost at `Δ = 0`, bits per variable, from the curve.
    pub exponent: f64,
    pub two_pow_exponent: f64,
    /// `β_H - (1 - γ_H)`.
    pub delta_coeff: f64,
    pub two_pow_delta_coeff: f64,
    pub negative_delta_coeff: bool,
    /// The PPSZ side actually balanced; differs from the curve values only
    /// when rounded constants are used.
    pub balanced_exponent: f64,
    pub balanced_delta_coeff: f64,
    pub counterpart: Counterpart,
    pub delta_star: Option<f64>,
    pub bound: f64,
}

/// Evaluates the PPSZ side for `curve` and balances it against
/// `counterpart`. `balanced` replaces the derived PPSZ constants in the
/// balance, for bounds stated with rounded values.
pub fn bound_report(
    k: u32,
    curve: HCurve,
    cstar: f64,
    counterpart: Counterpart,
    balanced: Option<PpszExponent>,
) -> BoundReport {
    let beta_h = beta_of_h(&curve);
    let gamma_h = gamma_of_h(&curve, k);
    let derived = ppsz_exponent(k, cstar, beta_h, gamma_h);
    let used = balanced.unwrap_or(derived);
    let balance = worst_case_delta(&used, &counterpart);
    BoundReport {
        k,
        curve,
        theta: curve.theta(),
        cstar,
        r_k: r_k_mean(k),
        beta_h,
        gamma_h,
        exponent: derived.e,
        two_pow_exponent: derived.e.exp2(),
        delta_coeff: derived.delta_coeff,
        two_pow_delta_coeff: derived.delta_coeff.exp2(),
        negative_delta_coeff: derived.negative_delta_coeff,
        balanced_exponent: used.e,
        balanced_delta_coeff: used.delta_coeff,
        counterpart,
        delta_star: balance.delta_star,
        bound: balance.bound,
    }
}

/// The main 3-SAT bound: PPSZ with the piecewise curve against the walk.
pub fn bound_3sat_main() -> BoundReport {
    bound_3sat_schoening(MAIN_THETA, MAIN_CSTAR).expect("valid constants")
}

pub fn bound_3sat_schoening(theta: f64, cstar: f64) -> Result<BoundReport, BoundError> {
    let curve = HCurve::three_sat(theta)?;
    Ok(bound_report(3, curve, cstar, Counterpart::Schoening { k: 3 }, None))
}

/// The weaker 3-SAT bound against the preprocessed walk, balanced with
/// the rounded PPSZ constants 1.31 and 1.3312.
pub fn bound_3sat_weak() -> BoundReport {
    let curve = HCurve::three_sat(MAIN_THETA).expect("valid theta");
    let rounded = PpszExponent::from_constants(WEAK_TWO_POW_E.log2(), WEAK_TWO_POW_DELTA_COEFF.log2());
    let counterpart = Counterpart::IsttWeak {
        m_star: WEAK_M_STAR,
        f_m: WEAK_F_M,
        f_d: WEAK_F_D,
    };
    bound_report(3, curve, WEAK_CSTAR, counterpart, Some(rounded))
}

/// The improved 3-SAT bound with the recomputed clause-pattern factors.
pub fn bound_3sat_appendix() -> BoundReport {
    let tables = istt_tables();
    let curve = HCurve::three_sat(APPENDIX_THETA).expect("valid theta");
    let counterpart = Counterpart::IsttAppendix {
        m_star: m_star_for(APPENDIX_TARGET),
        f_m: *tables.f_m.numer() as f64 / *tables.f_m.denom() as f64,
        f_d: tables.fd_min().1,
    };
    bound_report(3, curve, appendix_cstar(), counterpart, None)
}

/// `c*` with `1 - c*/2 = 1/1.32065`.
pub fn appendix_cstar() -> f64 {
    2.0 - 2.0 / APPENDIX_TARGET
}

/// 4-SAT: clamp-linear curve, no counterpart, `c*` from `2^{-E(c*)} = 1 - c*/2`.
pub fn bound_4sat(theta: f64) -> Result<BoundReport, BoundError> {
    if !(2.0 / 3.0..=1.0).contains(&theta) {
        return Err(BoundError::InvalidTheta {
            theta,
            reason: "the 4-SAT curve needs 2/3 ≤ θ ≤ 1".into(),
        });
    }
    let curve = HCurve::clamp_linear(theta)?;
    let beta_h = beta_of_h(&curve);
    let gamma_h = gamma_of_h(&curve, 4);
    let balance = |c: f64| -ppsz_exponent(4, c, beta_h, gamma_h).e - (1.0 - c / 2.0).log2();
    let cstar = bisect(balance, 0.0, 1.0, 1e-15)?;
    Ok(bound_report(4, curve, cstar, Counterpart::None, None))
}

/// Success base when every variable is critical: `2^{1 - R_k}`.
pub fn unique_case_bound(k: u32) -> f64 {
    (1.0 - r_k_mean(k)).exp2()
}

/// Arithmetic of the guessing reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuessingArithmetic {
    /// `1 - c*/2`.
    pub r: f64,
    pub b: f64,
    /// `b · r`.
    pub q: f64,
    /// `max(a, b) / min(p, q)`.
    pub time_base: f64,
}

/// `p`: inner success base on formulas with critical fraction at least
/// `c*`; `a`: inner time base; `b`: guessing repetition base.
pub fn guessing_arithmetic(cstar: f64, p: f64, a: f64, b: f64) -> Result<GuessingArithmetic, BoundError> {
    if !(0.0..=1.0).contains(&cstar) {
        return Err(BoundError::InvalidParameter(format!("c* = {cstar} must lie in [0,1]")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(BoundError::InvalidParameter(format!("p = {p} must lie in (0,1]")));
    }
    if a.is_nan() || a < 1.0 {
        return Err(BoundError::InvalidParameter(format!("a = {a} must be at least 1")));
    }
    if b.is_nan() || b < 1.0 {
        return Err(BoundError::InvalidParameter(format!("b = {b} must be at least 1")));
    }
    let r = 1.0 - cstar / 2.0;
    let q = b * r;
    Ok(GuessingArithmetic {
        r,
        b,
        q,
        time_base: a.max(b) / p.min(q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_bound() {
        let r = bound_3sat_main();
        assert!((r.two_pow_exponent - 1.3099684).abs() < 1e-4);
        assert!((r.two_pow_delta_coeff - 1.328369).abs() < 1e-4);
        assert!((r.delta_star.unwrap() - 0.0309273).abs() < 1e-4);
        assert!((r.bound - 1.32153).abs() < 1e-4);
        assert!((r.exponent - 0.389532).abs() < 1e-5);
    }

    #[test]
    fn weak_bound() {
        let r = bound_3sat_weak();
        assert!(r.two_pow_exponent <= 1.31);
        assert!(r.two_pow_delta_coeff <= 1.3312);
        assert!((r.delta_star.unwrap() - 0.029225).abs() < 1e-3);
        assert!((r.bound - 1.321).abs() < 1e-3);
    }

    #[test]
    fn appendix_bound() {
        let r = bound_3sat_appendix();
        assert!((r.delta_star.unwrap() - 0.0286138).abs() < 1e-4);
        assert!((r.bound - 1.32065).abs() < 1e-4);
    }

    #[test]
    fn four_sat_bound() {
        let r = bound_4sat(FOUR_SAT_THETA).unwrap();
        assert!((r.cstar - 0.63878808).abs() < 1e-5);
        assert!((r.bound - 1.46928).abs() < 1e-4);
        assert!(r.delta_coeff.abs() <= 1e-4);
        assert!((unique_case_bound(4) - 1.46899).abs() < 1e-4);
    }

    #[test]
    fn four_sat_theta_range() {
        assert!(bound_4sat(0.6).is_err());
    }

    #[test]
    fn guessing_values() {
        let t = guessing_arithmetic(MAIN_CSTAR, 1.0 / 1.32153, 1.0, 1.0).unwrap();
        assert!((t.r - 1.0 / 1.32153).abs() < 1e-5);
        let weak = guessing_arithmetic(WEAK_CSTAR, 1.0, 1.0, 1.0).unwrap();
        assert!(weak.r >= 1.0 / 1.321);
        let appendix = guessing_arithmetic(appendix_cstar(), 1.0, 1.0, 1.0).unwrap();
        assert!((appendix.r - 1.0 / 1.32065).abs() < 1e-15);
        assert!(guessing_arithmetic(0.5, 0.5, 1.0, 0.99).is_err());
    }

    #[test]
    fn balanced_design_time_base() {
        let t = guessing_arithmetic(0.5, 0.7, 1.2, 1.0).unwrap();
        assert!((t.time_base - 1.2 / 0.7).abs() < 1e-15);
    }
}
