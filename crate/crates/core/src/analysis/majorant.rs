//! The flat-topped power-law pdf that every pdf with tail `≤ c·x^{-λ}` majorizes.

use crate::error::{invalid, Result};

/// `f*(x) = cλ·t0^{-λ-1}` on `[0, t0]`, `cλ·x^{-λ-1}` beyond, with
/// `t0 = (c(λ+1))^{1/λ}`. Integrates to one for every `c, λ > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Majorant {
    c: f64,
    lambda: f64,
    t0: f64,
    height: f64,
}

impl Majorant {
    pub fn new(c: f64, lambda: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(invalid(format!("majorant needs c > 0, got {c}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid(format!("majorant needs lambda > 0, got {lambda}")));
        }
        let t0 = (c * (lambda + 1.0)).powf(1.0 / lambda);
        let height = c * lambda * t0.powf(-lambda - 1.0);
        Ok(Self {
            c,
            lambda,
            t0,
            height,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else if x <= self.t0 {
            self.height
        } else {
            self.c * self.lambda * x.powf(-self.lambda - 1.0)
        }
    }

    /// `∫₀ˣ f*`.
    pub fn cumulative(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x <= self.t0 {
            self.height * x
        } else {
            1.0 - self.survival(x)
        }
    }

    /// `∫ₓ^∞ f*`.
    pub fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else if x <= self.t0 {
            1.0 - self.height * x
        } else {
            self.c * x.powf(-self.lambda)
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let knee = self.lambda / (self.lambda + 1.0);
        if u <= knee {
            u / self.height
        } else {
            (self.c / (1.0 - u)).powf(1.0 / self.lambda)
        }
    }
}
