use super::{MonotonePdf, Support, TailCertificate};
use crate::analysis::Majorant;
use crate::error::{invalid, Result};

/// `f(x) = 2 - 2x` on `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Triangular;

impl MonotonePdf for Triangular {
    fn name(&self) -> String {
        "triangular".into()
    }

    fn support(&self) -> Support {
        Support::Unit
    }

    fn pdf(&self, x: f64) -> f64 {
        if (0.0..=1.0).contains(&x) {
            2.0 - 2.0 * x
        } else {
            0.0
        }
    }

    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else if x >= 1.0 {
            0.0
        } else {
            (1.0 - x) * (1.0 - x)
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        1.0 - (1.0 - u).sqrt()
    }
}

/// `f ≡ 1` on `[0, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Uniform;

impl MonotonePdf for Uniform {
    fn name(&self) -> String {
        "uniform".into()
    }

    fn support(&self) -> Support {
        Support::Unit
    }

    fn pdf(&self, x: f64) -> f64 {
        if (0.0..1.0).contains(&x) {
            1.0
        } else {
            0.0
        }
    }

    fn survival(&self, x: f64) -> f64 {
        (1.0 - x).clamp(0.0, 1.0)
    }

    fn quantile(&self, u: f64) -> f64 {
        u
    }
}

/// `f(x) = λe^{-λx}` on `[0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(invalid(format!("exp needs lambda > 0, got {rate}")));
        }
        Ok(Self { rate })
    }
}

impl MonotonePdf for Exponential {
    fn name(&self) -> String {
        format!("exp:lambda={}", self.rate)
    }

    fn support(&self) -> Support {
        Support::HalfLine
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.rate * (-self.rate * x).exp()
        }
    }

    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.rate * x).exp()
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        -(-u).ln_1p() / self.rate
    }

    /// `max_x x²e^{-λx} = (2/(eλ))²`; `c = 2·max(1, that)` with `λ = 2`.
    fn certificate(&self) -> Option<TailCertificate> {
        let peak = (2.0 / (std::f64::consts::E * self.rate)).powi(2);
        Some(TailCertificate::power(2.0 * peak.max(1.0), 2.0))
    }
}

/// The flat-topped power law, i.e. the majorant pdf for `(c, λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParetoFlat {
    shape: Majorant,
}

impl ParetoFlat {
    pub fn new(c: f64, lambda: f64) -> Result<Self> {
        Ok(Self {
            shape: Majorant::new(c, lambda)?,
        })
    }

    pub fn majorant(&self) -> &Majorant {
        &self.shape
    }
}

impl MonotonePdf for ParetoFlat {
    fn name(&self) -> String {
        format!(
            "pareto_flat:c={},lambda={}",
            self.shape.c(),
            self.shape.lambda()
        )
    }

    fn support(&self) -> Support {
        Support::HalfLine
    }

    fn pdf(&self, x: f64) -> f64 {
        self.shape.eval(x)
    }

    fn survival(&self, x: f64) -> f64 {
        self.shape.survival(x)
    }

    fn cdf(&self, x: f64) -> f64 {
        self.shape.cumulative(x)
    }

    fn quantile(&self, u: f64) -> f64 {
        self.shape.quantile(u)
    }

    /// The survival function is `c·x^{-λ}` past `t0` and lies below that
    /// convex curve (as its tangent line) before it.
    fn certificate(&self) -> Option<TailCertificate> {
        Some(TailCertificate::power(self.shape.c(), self.shape.lambda()))
    }
}
