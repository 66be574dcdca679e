//! Clause-type and pattern tables for the independent-clause walk, and the
//! per-pattern defining-variable factors `f_d(j)`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

pub type Rational = Ratio<i64>;

/// The nine clause types. The first digit counts defining variables, the
/// second how many of those satisfy their literal.
pub const TYPES: [u8; 9] = [0, 10, 11, 20, 21, 22, 31, 32, 33];

fn r(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsttTables {
    /// Walk success probability on the variables of a clause, per type.
    pub e: BTreeMap<u8, Rational>,
    /// Pattern `i` → distribution over types. Pattern 0 is type 0 alone.
    pub patterns: Vec<BTreeMap<u8, Rational>>,
    /// `e(0) / (3/4)^3`.
    pub f_m: Rational,
}

/// Number of defining variables of a type.
pub fn defining_count(t: u8) -> u8 {
    t / 10
}

pub fn istt_tables() -> IsttTables {
    let e: BTreeMap<u8, Rational> = [
        (0, r(3, 7)),
        (10, r(379, 672)),
        (11, r(181, 336)),
        (20, r(3, 4)),
        (21, r(29, 42)),
        (22, r(29, 42)),
        (31, r(1, 1)),
        (32, r(37, 42)),
        (33, r(1, 1)),
    ]
    .into_iter()
    .collect();
    let raw: [&[(u8, i64, i64)]; 16] = [
        &[(0, 1, 1)],
        &[(10, 1, 2), (11, 1, 2)],
        &[(11, 2, 4), (20, 1, 4), (21, 1, 4)],
        &[(10, 2, 4), (21, 1, 4), (22, 1, 4)],
        &[(20, 1, 4), (21, 2, 4), (22, 1, 4)],
        &[(11, 4, 8), (20, 2, 8), (31, 1, 8), (32, 1, 8)],
        &[(10, 4, 8), (22, 2, 8), (31, 1, 8), (32, 1, 8)],
        &[(10, 4, 8), (21, 2, 8), (32, 1, 8), (33, 1, 8)],
        &[(10, 4, 8), (31, 1, 8), (32, 2, 8), (33, 1, 8)],
        &[(20, 2, 8), (21, 2, 8), (22, 2, 8), (31, 1, 8), (32, 1, 8)],
        &[(20, 2, 8), (21, 2, 8), (22, 2, 8), (31, 1, 8), (32, 1, 8)],
        &[(20, 2, 8), (21, 4, 8), (32, 1, 8), (33, 1, 8)],
        &[(20, 2, 8), (22, 2, 8), (31, 2, 8), (32, 2, 8)],
        &[(20, 2, 8), (21, 2, 8), (31, 1, 8), (32, 2, 8), (33, 1, 8)],
        &[(20, 2, 8), (21, 2, 8), (31, 1, 8), (32, 2, 8), (33, 1, 8)],
        &[(20, 2, 8), (31, 2, 8), (32, 3, 8), (33, 1, 8)],
    ];
    let patterns = raw
        .iter()
        .map(|row| row.iter().map(|&(t, n, d)| (t, r(n, d))).collect())
        .collect();
    let three_quarters_cubed = r(27, 64);
    let f_m = e[&0] / three_quarters_cubed;
    IsttTables { e, patterns, f_m }
}

fn ln_ratio(q: Rational) -> f64 {
    (*q.numer() as f64).ln() - (*q.denom() as f64).ln()
}

fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl IsttTables {
    /// `Σ_j p(i,j) d(j)` for pattern `i`.
    pub fn defining_weight(&self, pattern: usize) -> Rational {
        self.patterns[pattern]
            .iter()
            .map(|(&t, &p)| p * Rational::from_integer(i64::from(defining_count(t))))
            .sum()
    }

    /// `((3/4)^-3 / f_m · Π_j e(j)^p(i,j))^(1 / Σ_j p(i,j) d(j))` for
    /// patterns 1..=15.
    pub fn fd(&self, pattern: usize) -> f64 {
        assert!((1..self.patterns.len()).contains(&pattern), "patterns 1..=15 only");
        let log_product: f64 = self.patterns[pattern]
            .iter()
            .map(|(&t, &p)| to_f64(p) * ln_ratio(self.e[&t]))
            .sum();
        let log_scale = ln_ratio(r(64, 27)) - ln_ratio(self.f_m);
        ((log_scale + log_product) / to_f64(self.defining_weight(pattern))).exp()
    }

    /// `(pattern, f_d(pattern))` with the smallest factor.
    pub fn fd_min(&self) -> (usize, f64) {
        (1..self.patterns.len())
            .map(|i| (i, self.fd(i)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("fifteen patterns")
    }

    pub fn report(&self) -> IsttReport {
        let (fd_argmin, fd_min) = self.fd_min();
        IsttReport {
            types: TYPES
                .iter()
                .map(|&t| TypeRow {
                    r#type: t,
                    e: self.e[&t].to_string(),
                    e_value: to_f64(self.e[&t]),
                    defining: defining_count(t),
                })
                .collect(),
            patterns: self
                .patterns
                .iter()
                .enumerate()
                .map(|(i, dist)| PatternRow {
                    pattern: i,
                    distribution: dist.iter().map(|(&t, p)| (t, p.to_string())).collect(),
                    probability_sum: dist.values().sum::<Rational>().to_string(),
                    defining_weight: self.defining_weight(i).to_string(),
                    fd: (i > 0).then(|| self.fd(i)),
                })
                .collect(),
            f_m: self.f_m.to_string(),
            f_m_value: to_f64(self.f_m),
            fd_min,
            fd_argmin,
        }
    }
}

/// `log_6(target)`: the preprocessing share at which `6^{m*}` equals the
/// target base.
pub fn m_star_for(target: f64) -> f64 {
    target.ln() / 6f64.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeRow {
    pub r#type: u8,
    pub e: String,
    pub e_value: f64,
    pub defining: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternRow {
    pub pattern: usize,
    pub distribution: Vec<(u8, String)>,
    pub probability_sum: String,
    pub defining_weight: String,
    pub fd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsttReport {
    pub types: Vec<TypeRow>,
    pub patterns: Vec<PatternRow>,
    pub f_m: String,
    pub f_m_value: f64,
    pub fd_min: f64,
    pub fd_argmin: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE_FD: [f64; 15] = [
        1.28611973, 1.28272221, 1.28466750, 1.28248358, 1.29339711, 1.29507819, 1.29507819,
        1.30294154, 1.29080377, 1.29080377, 1.29080377, 1.29749876, 1.29749876, 1.29749876,
        1.30300231,
    ];

    #[test]
    fn e_of_type_zero() {
        assert_eq!(istt_tables().e[&0], r(3, 7));
    }

    #[test]
    fn f_m_is_exact() {
        assert_eq!(istt_tables().f_m, r(64, 63));
    }

    #[test]
    fn pattern_four() {
        let t = istt_tables();
        let expected: BTreeMap<u8, Rational> = [(20, r(1, 4)), (21, r(2, 4)), (22, r(1, 4))].into_iter().collect();
        assert_eq!(t.patterns[4], expected);
    }

    #[test]
    fn distributions_sum_to_one() {
        for p in istt_tables().patterns {
            assert_eq!(p.values().sum::<Rational>(), Rational::from_integer(1));
        }
    }

    #[test]
    fn fd_matches_reference_table() {
        let t = istt_tables();
        for (i, &reference) in REFERENCE_FD.iter().enumerate() {
            let fd = t.fd(i + 1);
            assert!((fd - reference).abs() < 1e-8, "pattern {}: {fd}", i + 1);
        }
    }

    #[test]
    fn pattern_four_is_the_minimum() {
        let (i, v) = istt_tables().fd_min();
        assert_eq!(i, 4);
        assert!((v - 1.28248358).abs() < 1e-8);
    }

    #[test]
    fn m_star_of_appendix_bound() {
        assert!((m_star_for(1.32065) - 0.155223982).abs() < 1e-8);
    }
}
