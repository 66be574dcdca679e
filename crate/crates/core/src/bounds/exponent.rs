use serde::Serialize;

use super::roots::bisect;
use super::rk::r_k_mean;

/// PPSZ cost in bits per variable as a function of the defining fraction
/// `Δ`: `E + Δ · delta_coeff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PpszExponent {
    /// `(1 - R_k) c* + (1 - γ_H)(1 - c*)`.
    pub e: f64,
    /// `β_H - (1 - γ_H)`.
    pub delta_coeff: f64,
    /// Set when `delta_coeff < 0`: larger subcubes would then help PPSZ.
    pub negative_delta_coeff: bool,
}

impl PpszExponent {
    pub fn from_constants(e: f64, delta_coeff: f64) -> PpszExponent {
        PpszExponent {
            e,
            delta_coeff,
            negative_delta_coeff: delta_coeff < 0.0,
        }
    }

    pub fn cost(&self, delta: f64) -> f64 {
        self.e + delta * self.delta_coeff
    }
}

/// Critical variables are forced at rate `R_k`, the rest at rate `γ_H`.
pub fn ppsz_exponent(k: u32, cstar: f64, beta_h: f64, gamma_h: f64) -> PpszExponent {
    let e = (1.0 - r_k_mean(k)) * cstar + (1.0 - gamma_h) * (1.0 - cstar);
    PpszExponent::from_constants(e, beta_h - (1.0 - gamma_h))
}

/// The algorithm run next to PPSZ, as a cost in bits per variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterpart {
    /// The walk on the nondefining variables: `(2 - 2/k)^{-(1-Δ)}`.
    Schoening { k: u32 },
    /// Preprocessed walk: success `(3/4) · f_m^{m*} · f_d^Δ`.
    IsttWeak { m_star: f64, f_m: f64, f_d: f64 },
    IsttAppendix { m_star: f64, f_m: f64, f_d: f64 },
    None,
}

impl Counterpart {
    pub fn id(&self) -> &'static str {
        match self {
            Counterpart::Schoening { .. } => "schoening",
            Counterpart::IsttWeak { .. } => "istt-weak",
            Counterpart::IsttAppendix { .. } => "istt-appendix",
            Counterpart::None => "none",
        }
    }

    /// `None` for [`Counterpart::None`].
    pub fn cost(&self, delta: f64) -> Option<f64> {
        match *self {
            Counterpart::Schoening { k } => Some((1.0 - delta) * (2.0 - 2.0 / f64::from(k)).log2()),
            Counterpart::IsttWeak { m_star, f_m, f_d } | Counterpart::IsttAppendix { m_star, f_m, f_d } => {
                Some((4.0f64 / 3.0).log2() - m_star * f_m.log2() - delta * f_d.log2())
            }
            Counterpart::None => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Balance {
    /// Where both costs agree; absent when one side dominates on `[0,1]`.
    pub delta_star: Option<f64>,
    /// Bits per variable at the worst case.
    pub cost: f64,
    /// `2^cost`.
    pub bound: f64,
}

/// The worst case over `Δ ∈ [0,1]` of running both algorithms: the `Δ`
/// where their costs meet.
pub fn worst_case_delta(ppsz: &PpszExponent, counterpart: &Counterpart) -> Balance {
    let Some(_) = counterpart.cost(0.0) else {
        let cost = ppsz.cost(0.0).max(ppsz.cost(1.0));
        return Balance {
            delta_star: None,
            cost,
            bound: cost.exp2(),
        };
    };
    let gap = |d: f64| ppsz.cost(d) - counterpart.cost(d).expect("has a cost");
    match bisect(gap, 0.0, 1.0, 1e-15) {
        Ok(d) => {
            let cost = ppsz.cost(d);
            Balance {
                delta_star: Some(d),
                cost,
                bound: cost.exp2(),
            }
        }
        Err(_) => {
            // One side is cheaper throughout; its worse endpoint is the worst case.
            let cheaper = |d: f64| ppsz.cost(d).min(counterpart.cost(d).expect("has a cost"));
            let cost = cheaper(0.0).max(cheaper(1.0));
            Balance {
                delta_star: None,
                cost,
                bound: cost.exp2(),
            }
        }
    }
}
