use super::quadrature::integrate_with_breaks;

/// `R_k(r)`: the smallest non-negative fixed point of
/// `x = (r + (1-r) x)^(k-1)`.
///
/// `x = 1` is always a fixed point. Writing `y = 1 - x` and dividing it out
/// leaves `q(y) = 1 - (1-r) Σ_{i<k-1} (1 - (1-r) y)^i`, increasing in `y`,
/// so the smallest fixed point is `1 - y*` for the root `y*` of `q`, or 1
/// when `q(0) ≥ 0`.
pub fn r_k_pointwise(k: u32, r: f64) -> f64 {
    assert!(k >= 2, "k must be at least 2");
    assert!((0.0..=1.0).contains(&r), "r must lie in [0,1]");
    let s = 1.0 - r;
    let q = |y: f64| {
        let base = 1.0 - s * y;
        let mut term = 1.0;
        let mut sum = 0.0;
        for _ in 0..k - 1 {
            sum += term;
            term *= base;
        }
        1.0 - s * sum
    };
    if q(0.0) >= 0.0 {
        return 1.0;
    }
    if r == 0.0 {
        return 0.0;
    }
    // q(1) = r^(k-1) ≥ 0.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if q(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 - hi
}

/// Where `R_k(r)` reaches 1: `r = 1 - 1/(k-1)`.
pub fn r_k_kink(k: u32) -> f64 {
    1.0 - 1.0 / f64::from(k - 1)
}

/// Closed form for `k = 3`: `(r/(1-r))^2` below 1/2, 1 above.
pub fn r3_closed_form(r: f64) -> f64 {
    if r >= 0.5 {
        1.0
    } else {
        (r / (1.0 - r)).powi(2)
    }
}

/// `R_k = ∫_0^1 R_k(r) dr`.
pub fn r_k_mean(k: u32) -> f64 {
    let kink = r_k_kink(k);
    integrate_with_breaks(|r| r_k_pointwise(k, r), 0.0, kink, &[], 1e-13) + (1.0 - kink)
}
