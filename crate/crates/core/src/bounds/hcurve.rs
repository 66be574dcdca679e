use serde::Serialize;

use super::BoundError;

/// Grid size for [`HCurve::validate`].
pub const VALIDATION_GRID: usize = 10_000;

/// A distribution function for placing defining variables: non-decreasing,
/// `H(0) = 0`, `H(1) = 1` and `H(r) ≥ r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HCurve {
    /// `r/θ` on `[0, 1-θ)`, `1 - (-a ln r)^b` on `[1-θ, 1]`.
    ThreeSatPiecewise { theta: f64, a: f64, b: f64 },
    /// `min(r/θ, 1)`.
    ClampLinear { theta: f64 },
}

/// Parameters `(a, b)` making the 3-SAT piecewise curve continuous with a
/// continuous derivative at `1 - θ`, where it meets `(1-θ)/θ` with slope
/// `1/θ`.
///
/// With `u = -ln(1-θ)` both conditions reduce to
/// `b = u (1-θ) / (2θ-1)` and `a = ((2θ-1)/θ)^(1/b) / u`.
pub fn solve_h3_params(theta: f64) -> Result<(f64, f64), BoundError> {
    if !(theta > 0.5 && theta < 1.0) {
        return Err(BoundError::InvalidTheta {
            theta,
            reason: "the piecewise curve needs 1/2 < θ < 1".into(),
        });
    }
    let u = -(1.0 - theta).ln();
    let b = u * (1.0 - theta) / (2.0 * theta - 1.0);
    let a = ((2.0 * theta - 1.0) / theta).powf(1.0 / b) / u;
    let curve = HCurve::ThreeSatPiecewise { theta, a, b };
    let (value_gap, slope_gap) = curve.joint_residuals();
    if value_gap > 1e-10 || slope_gap > 1e-10 {
        return Err(BoundError::InvalidTheta {
            theta,
            reason: format!("residuals {value_gap:e} / {slope_gap:e} exceed 1e-10"),
        });
    }
    // Larger θ give curves that dip below the diagonal.
    curve.validate().map_err(|e| BoundError::InvalidTheta {
        theta,
        reason: e.to_string(),
    })?;
    Ok((a, b))
}

impl HCurve {
    pub fn three_sat(theta: f64) -> Result<HCurve, BoundError> {
        let (a, b) = solve_h3_params(theta)?;
        Ok(HCurve::ThreeSatPiecewise { theta, a, b })
    }

    pub fn clamp_linear(theta: f64) -> Result<HCurve, BoundError> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(BoundError::InvalidTheta {
                theta,
                reason: "need 0 < θ ≤ 1".into(),
            });
        }
        Ok(HCurve::ClampLinear { theta })
    }

    /// The identity curve, equivalent to uniform placement.
    pub fn identity() -> HCurve {
        HCurve::ClampLinear { theta: 1.0 }
    }

    pub fn theta(&self) -> f64 {
        match *self {
            HCurve::ThreeSatPiecewise { theta, .. } | HCurve::ClampLinear { theta } => theta,
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        let r = r.clamp(0.0, 1.0);
        match *self {
            HCurve::ThreeSatPiecewise { theta, a, b } => {
                if r < 1.0 - theta {
                    r / theta
                } else if r >= 1.0 {
                    1.0
                } else {
                    1.0 - (-a * r.ln()).powf(b)
                }
            }
            HCurve::ClampLinear { theta } => (r / theta).min(1.0),
        }
    }

    /// `h = H'`, taking the right derivative at kinks.
    pub fn density(&self, r: f64) -> f64 {
        match *self {
            HCurve::ThreeSatPiecewise { theta, a, b } => {
                if r < 1.0 - theta {
                    1.0 / theta
                } else if r <= 0.0 || r >= 1.0 {
                    0.0
                } else {
                    a * b * (-a * r.ln()).powf(b - 1.0) / r
                }
            }
            HCurve::ClampLinear { theta } => {
                if r < theta {
                    1.0 / theta
                } else {
                    0.0
                }
            }
        }
    }

    /// Smallest `r` with `H(r) ≥ u`; maps uniform draws to `H`-distributed ones.
    pub fn inverse(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match *self {
            HCurve::ThreeSatPiecewise { theta, a, b } => {
                if u < (1.0 - theta) / theta {
                    u * theta
                } else if u >= 1.0 {
                    1.0
                } else {
                    (-(1.0 - u).powf(1.0 / b) / a).exp()
                }
            }
            HCurve::ClampLinear { theta } => u * theta,
        }
    }

    /// Points where `h` is discontinuous.
    pub fn kinks(&self) -> Vec<f64> {
        match *self {
            HCurve::ThreeSatPiecewise { theta, .. } => vec![1.0 - theta],
            HCurve::ClampLinear { theta } if theta < 1.0 => vec![theta],
            HCurve::ClampLinear { .. } => vec![],
        }
    }

    /// Value and slope mismatch where the two pieces meet (zero for the
    /// clamp-linear curve).
    pub fn joint_residuals(&self) -> (f64, f64) {
        match *self {
            HCurve::ThreeSatPiecewise { theta, a, b } => {
                let r = 1.0 - theta;
                let log_piece = 1.0 - (-a * r.ln()).powf(b);
                let log_slope = a * b * (-a * r.ln()).powf(b - 1.0) / r;
                ((log_piece - r / theta).abs(), (log_slope - 1.0 / theta).abs())
            }
            HCurve::ClampLinear { .. } => (0.0, 0.0),
        }
    }

    /// Checks endpoints, monotonicity and `H(r) ≥ r` on a uniform grid.
    pub fn validate(&self) -> Result<(), BoundError> {
        let fail = |what: String| Err(BoundError::InvalidCurve(what));
        if self.value(0.0) != 0.0 {
            return fail(format!("H(0) = {}", self.value(0.0)));
        }
        if (self.value(1.0) - 1.0).abs() > 1e-12 {
            return fail(format!("H(1) = {}", self.value(1.0)));
        }
        let mut previous = 0.0;
        for i in 0..=VALIDATION_GRID {
            let r = i as f64 / VALIDATION_GRID as f64;
            let h = self.value(r);
            if h < previous - 1e-12 {
                return fail(format!("decreasing at r = {r}"));
            }
            if h < r - 1e-12 {
                return fail(format!("H({r}) = {h} < r"));
            }
            previous = h;
        }
        Ok(())
    }
}
