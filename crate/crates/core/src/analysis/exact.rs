//! Exact expected codeword length of the unit-interval scheme, summed over
//! rectangles up to a depth cutoff.
//!
//! The count in `R(k, a)` is `Binomial(n, A(k, a))`, so each rectangle
//! contributes `(L(g_s(k)) + L(g_s(a)))·P(N ≥ 1) + E[L(g(N)); N ≥ 1]`.

use statrs::function::factorial::ln_binomial;

use crate::bitcodes::{gamma_length, shifted_gamma_length};
use crate::distributions::{MonotonePdf, Support};
use crate::dyadic_codec::{rect_area, RectangleId};
use crate::error::{invalid, Result};

/// Terms below this fraction of the modal pmf are dropped.
const RELATIVE_CUTOFF: f64 = 1e-12;

fn gamma_len(m: u64) -> f64 {
    gamma_length(m).expect("m >= 1") as f64
}

/// `P(N ≥ 1)` for `N ~ Binomial(n, p)`.
pub fn prob_nonzero(n: u64, p: f64) -> f64 {
    if p <= 0.0 || n == 0 {
        0.0
    } else if p >= 1.0 {
        1.0
    } else {
        -(n as f64 * (-p).ln_1p()).exp_m1()
    }
}

/// `E[L(g(N)); N ≥ 1]` for `N ~ Binomial(n, p)`, summing outward from the
/// mode with the ratio recurrence.
pub fn expected_gamma_length_binomial(n: u64, p: f64) -> f64 {
    if p <= 0.0 || n == 0 {
        return 0.0;
    }
    if p >= 1.0 {
        return gamma_len(n);
    }
    let odds = p / (1.0 - p);
    let mode = (((n + 1) as f64 * p).floor() as u64).min(n);
    let ln_peak = ln_binomial(n, mode) + mode as f64 * p.ln() + (n - mode) as f64 * (-p).ln_1p();
    let peak = ln_peak.exp();

    let mut total = if mode >= 1 {
        peak * gamma_len(mode)
    } else {
        0.0
    };
    let mut pmf = peak;
    for m in mode..n {
        pmf *= (n - m) as f64 / (m + 1) as f64 * odds;
        if pmf < RELATIVE_CUTOFF * peak {
            break;
        }
        total += pmf * gamma_len(m + 1);
    }
    let mut pmf = peak;
    for m in (2..=mode).rev() {
        pmf *= m as f64 / (n - m + 1) as f64 / odds;
        if pmf < RELATIVE_CUTOFF * peak {
            break;
        }
        total += pmf * gamma_len(m - 1);
    }
    total
}

/// Expected bits from one rectangle of area `area`.
pub fn rectangle_contribution(id: RectangleId, area: f64, n: u64) -> f64 {
    let header = (shifted_gamma_length(u64::from(id.k)).expect("small k")
        + shifted_gamma_length(id.a).expect("a < 2^63")) as f64;
    header * prob_nonzero(n, area) + expected_gamma_length_binomial(n, area)
}

/// Sums [`rectangle_contribution`] over every rectangle with `k ≤ k_max` and
/// positive area.
pub fn exact_expected_length_unit(f: &dyn MonotonePdf, n: u64, k_max: u32) -> Result<f64> {
    if f.support() != Support::Unit {
        return Err(invalid(format!("{} is not a pdf on [0, 1]", f.name())));
    }
    if k_max == 0 || k_max > 40 {
        return Err(invalid(format!("k_max must lie in 1..=40, got {k_max}")));
    }
    let mut total = 0.0;
    for k in 0..=k_max {
        let max_a = RectangleId::max_index(k).expect("k <= 40");
        for a in 0..=max_a {
            let id = RectangleId { k, a };
            let area = rect_area(id, f)?;
            if area > 0.0 {
                total += rectangle_contribution(id, area, n);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Triangular, Uniform};

    /// Direct summation of pmf·γ over all m, pmf from exact products.
    fn brute_binomial(n: u64, p: f64) -> f64 {
        let mut total = 0.0;
        for m in 1..=n {
            let mut ln = 0.0;
            for i in 0..m {
                ln += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
            }
            ln += m as f64 * p.ln() + (n - m) as f64 * (1.0 - p).ln();
            total += ln.exp() * gamma_len(m);
        }
        total
    }

    #[test]
    fn binomial_expectation_matches_brute_force() {
        for &(n, p) in &[
            (1u64, 0.3),
            (5, 0.5),
            (40, 0.01),
            (200, 0.125),
            (1000, 0.002),
            (700, 0.9),
        ] {
            let fast = expected_gamma_length_binomial(n, p);
            let slow = brute_binomial(n, p);
            assert!(
                (fast - slow).abs() < 1e-9 * slow.max(1.0),
                "n={n} p={p}: {fast} vs {slow}"
            );
        }
        assert_eq!(expected_gamma_length_binomial(10, 0.0), 0.0);
        assert_eq!(expected_gamma_length_binomial(10, 1.0), 7.0);
    }

    #[test]
    fn single_sample_reduces_to_area_weighted_lengths() {
        for k_max in [1u32, 3, 8] {
            let mut oracle = 0.0;
            for k in 0..=k_max {
                for a in 0..=RectangleId::max_index(k).unwrap() {
                    let id = RectangleId { k, a };
                    let area = rect_area(id, &Triangular).unwrap();
                    oracle += area * (gamma_len(u64::from(k) + 1) + gamma_len(a + 1) + 1.0);
                }
            }
            let v = exact_expected_length_unit(&Triangular, 1, k_max).unwrap();
            assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
        }
    }

    #[test]
    fn monotone_in_n_and_depth() {
        let mut prev = 0.0;
        for n in [1u64, 2, 5, 10, 50, 100, 1000] {
            let v = exact_expected_length_unit(&Triangular, n, 8).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        let mut prev = 0.0;
        for k in 1..=10 {
            let v = exact_expected_length_unit(&Uniform, 300, k).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn domain_checks() {
        let e = crate::distributions::Exponential::new(1.0).unwrap();
        assert!(exact_expected_length_unit(&e, 10, 8).is_err());
        assert!(exact_expected_length_unit(&Triangular, 10, 0).is_err());
        assert_eq!(exact_expected_length_unit(&Triangular, 0, 8).unwrap(), 0.0);
    }
}
