use super::hcurve::HCurve;
use super::quadrature::integrate_with_breaks;
use super::rk::{r_k_kink, r_k_pointwise};

const TOL: f64 = 1e-12;
/// Grid points per piece when scanning for crossings of `H^(k-1)` and `R_k`.
const CROSSING_SCAN: usize = 512;

/// `β_H = ∫_0^1 h log₂ h`, with `0 log 0 = 0`.
pub fn beta_of_h(h: &HCurve) -> f64 {
    let f = |r: f64| {
        let d = h.density(r);
        if d > 0.0 {
            d * d.log2()
        } else {
            0.0
        }
    };
    integrate_with_breaks(f, 0.0, 1.0, &h.kinks(), TOL)
}

/// Points in `(0,1)` where `H^(k-1)` and `R_k` cross, found by scanning each
/// smooth piece and bisecting sign changes.
pub fn crossings(h: &HCurve, k: u32) -> Vec<f64> {
    let diff = |r: f64| h.value(r).powi(k as i32 - 1) - r_k_pointwise(k, r);
    let mut edges = vec![0.0];
    edges.extend(h.kinks());
    edges.push(r_k_kink(k));
    edges.push(1.0);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let step = (b - a) / CROSSING_SCAN as f64;
        // Stay off the piece edges, where the two sides may touch.
        let mut prev_r = a + step * 1e-3;
        let mut prev = diff(prev_r);
        for i in 1..=CROSSING_SCAN {
            let r = if i == CROSSING_SCAN { b - step * 1e-3 } else { a + step * i as f64 };
            let cur = diff(r);
            if prev != 0.0 && cur != 0.0 && prev.signum() != cur.signum() {
                let (mut lo, mut hi, flo) = (prev_r, r, prev);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if diff(mid).signum() == flo.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev_r = r;
            prev = cur;
        }
    }
    out
}

/// `γ_H = ∫_0^1 min(H(r)^(k-1), R_k(r)) dr`.
pub fn gamma_of_h(h: &HCurve, k: u32) -> f64 {
    let f = |r: f64| h.value(r).powi(k as i32 - 1).min(r_k_pointwise(k, r));
    let mut breaks = h.kinks();
    breaks.push(r_k_kink(k));
    breaks.extend(crossings(h, k));
    integrate_with_breaks(f, 0.0, 1.0, &breaks, TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::r_k_mean;

    #[test]
    fn identity_has_zero_beta() {
        assert!(beta_of_h(&HCurve::identity()).abs() < 1e-15);
    }

    #[test]
    fn clamp_linear_beta_closed_form() {
        for theta in [0.6, 0.6803639, 0.9] {
            let h = HCurve::clamp_linear(theta).unwrap();
            assert!((beta_of_h(&h) - (1.0 / theta).log2()).abs() < 1e-9);
        }
    }

    #[test]
    fn appendix_curve_integrals() {
        let h = HCurve::three_sat(0.5224565).unwrap();
        assert!((beta_of_h(&h) - 0.8180299645).abs() < 1e-7);
        assert!((gamma_of_h(&h, 3) - 0.6083696059).abs() < 1e-7);
    }

    #[test]
    fn gamma_never_exceeds_r_k() {
        for k in [3, 4, 5] {
            for theta in [0.52, 0.55, 0.65] {
                let h = HCurve::three_sat(theta).unwrap();
                assert!(gamma_of_h(&h, k) <= r_k_mean(k) + 1e-12);
            }
            for theta in [0.55, 0.7, 0.9] {
                let c = HCurve::clamp_linear(theta).unwrap();
                assert!(gamma_of_h(&c, k) <= r_k_mean(k) + 1e-12);
            }
        }
    }

    #[test]
    fn identity_gamma_is_power_integral_where_smaller() {
        // For H(r) = r and k = 3, r^2 ≤ R_3(r) everywhere, so γ = 1/3.
        assert!((gamma_of_h(&HCurve::identity(), 3) - 1.0 / 3.0).abs() < 1e-10);
    }
}
