//! Closed-form upper bounds on expected codeword length. Logs are base 2.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Which length bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Integer scheme, power tail `P(X > x) ≤ c·x^{-λ}`.
    IntegerPowerTail = 1,
    /// Integer scheme, exponential tail `P(X > x) ≤ c·e^{-λx}`.
    IntegerExpTail = 2,
    /// Unit-interval scheme.
    UnitInterval = 3,
    /// Half-line scheme with a power tail.
    HalfLine = 4,
}

impl BoundKind {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(BoundKind::IntegerPowerTail),
            2 => Ok(BoundKind::IntegerExpTail),
            3 => Ok(BoundKind::UnitInterval),
            4 => Ok(BoundKind::HalfLine),
            other => Err(invalid(format!("no length bound numbered {other}"))),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: u8 = s
            .parse()
            .map_err(|_| invalid(format!("bound number must be 1-4, got '{s}'")))?;
        Self::from_number(n)
    }
}

fn check_n(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("bounds need n >= 1"));
    }
    Ok(n as f64)
}

fn check_c(c: f64) -> Result<()> {
    if c > 1.0 && c.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("bounds need c > 1, got {c}")))
    }
}

fn check_lambda(lambda: f64, min: f64) -> Result<()> {
    if lambda > min && lambda.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("bound needs lambda > {min}, got {lambda}")))
    }
}

fn check_f0(f0: f64) -> Result<()> {
    if f0 >= 0.0 && f0.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("f(0) must be finite and >= 0, got {f0}")))
    }
}

/// `50cλ·n^{1/λ}·log(√n + 1) / (λ - 1)`.
pub fn power_tail_bound(c: f64, lambda: f64, n: u64) -> Result<f64> {
    check_c(c)?;
    check_lambda(lambda, 1.0)?;
    let n = check_n(n)?;
    Ok(50.0 * c * lambda * n.powf(1.0 / lambda) * (n.sqrt() + 1.0).log2() / (lambda - 1.0))
}

/// `13(2λ+1)c/λ · log²(n + 1)`.
pub fn exp_tail_bound(c: f64, lambda: f64, n: u64) -> Result<f64> {
    check_c(c)?;
    check_lambda(lambda, 0.0)?;
    let n = check_n(n)?;
    let l = (n + 1.0).log2();
    Ok(13.0 * (2.0 * lambda + 1.0) * c / lambda * l * l)
}

/// `92√(n f(0))·log(√(n f(0)) + 1)`.
pub fn unit_interval_bound(f0: f64, n: u64) -> Result<f64> {
    check_f0(f0)?;
    let n = check_n(n)?;
    let r = (n * f0).sqrt();
    Ok(92.0 * r * (r + 1.0).log2())
}

/// `418c(λ+1)·max(n^{1/λ}, √n)·max(√f(0), 1) / min(λ-1, 1) · log(√(n·max(f(0), 1)) + 1)`.
pub fn halfline_bound(c: f64, lambda: f64, f0: f64, n: u64) -> Result<f64> {
    check_c(c)?;
    check_lambda(lambda, 1.0)?;
    check_f0(f0)?;
    let n = check_n(n)?;
    let growth = n.powf(1.0 / lambda).max(n.sqrt());
    let height = f0.sqrt().max(1.0);
    let log = (n * f0.max(1.0)).sqrt() + 1.0;
    Ok(418.0 * c * (lambda + 1.0) * growth * height / (lambda - 1.0).min(1.0) * log.log2())
}

/// Inputs to any of the four bounds; fields a bound does not use are ignored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub c: f64,
    pub lambda: f64,
    pub f0: f64,
    pub n: u64,
}

impl BoundParams {
    pub fn evaluate(&self, kind: BoundKind) -> Result<f64> {
        match kind {
            BoundKind::IntegerPowerTail => power_tail_bound(self.c, self.lambda, self.n),
            BoundKind::IntegerExpTail => exp_tail_bound(self.c, self.lambda, self.n),
            BoundKind::UnitInterval => unit_interval_bound(self.f0, self.n),
            BoundKind::HalfLine => halfline_bound(self.c, self.lambda, self.f0, self.n),
        }
    }
}

/// `⌊2 log₂ z + 1⌋`, computed exactly as the bit length of `z²`.
pub fn floor_gamma_length(z: u64) -> Result<u64> {
    if z == 0 {
        return Err(invalid("gamma accounting is defined for Z >= 1"));
    }
    let sq = u128::from(z) * u128::from(z);
    Ok(u64::from(128 - sq.leading_zeros()))
}
