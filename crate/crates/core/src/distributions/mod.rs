//! Distribution handles consumed by the codecs and the analysis engine.
//!
//! Integer distributions live on `{1, 2, ...}`; continuous ones are
//! non-increasing pdfs on `[0, 1]` or `[0, ∞)`. All samplers are inverse-CDF
//! based on 53-bit uniforms, so a seed fully determines every draw.

mod continuous;
mod integer;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{invalid, Error, Result};
use crate::rng::uniform;

pub use continuous::{Exponential, ParetoFlat, Triangular, Uniform};
pub use integer::{hurwitz_zeta, Geometric, PointMass, Zipf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// `P(X > x) ≤ c·x^{-λ}`
    Power,
    /// `P(X > x) ≤ c·e^{-λx}`
    Exponential,
}

/// A claimed tail bound, used to pick and parameterize a length bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailCertificate {
    pub c: f64,
    pub lambda: f64,
    pub kind: TailKind,
}

impl TailCertificate {
    pub fn power(c: f64, lambda: f64) -> Self {
        Self {
            c,
            lambda,
            kind: TailKind::Power,
        }
    }

    pub fn exponential(c: f64, lambda: f64) -> Self {
        Self {
            c,
            lambda,
            kind: TailKind::Exponential,
        }
    }

    /// Right-hand side of the bound at `x`.
    pub fn bound_at(&self, x: f64) -> f64 {
        match self.kind {
            TailKind::Power => {
                if x <= 0.0 {
                    f64::INFINITY
                } else {
                    self.c * x.powf(-self.lambda)
                }
            }
            TailKind::Exponential => self.c * (-self.lambda * x).exp(),
        }
    }
}

pub trait IntegerDistribution: Send + Sync + fmt::Debug {
    /// Canonical spec string, e.g. `geometric:p=0.7`.
    fn name(&self) -> String;
    fn pmf(&self, x: u64) -> f64;
    /// `P(X > x)`.
    fn tail(&self, x: u64) -> f64;
    /// Smallest `x ≥ 1` with `P(X ≤ x) ≥ u`, for `u ∈ [0, 1)`.
    fn quantile(&self, u: f64) -> u64;
    fn certificate(&self) -> Option<TailCertificate> {
        None
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        self.quantile(uniform(rng))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// `[0, 1]`, with `f ≡ 0` beyond 1.
    Unit,
    /// `[0, ∞)`.
    HalfLine,
}

/// A non-increasing density with an exact sampler.
pub trait MonotonePdf: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn support(&self) -> Support;
    /// Density; zero outside the support.
    fn pdf(&self, x: f64) -> f64;
    /// `∫ₓ^∞ f`.
    fn survival(&self, x: f64) -> f64;
    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.survival(x)
    }
    fn quantile(&self, u: f64) -> f64;
    fn f0(&self) -> f64 {
        self.pdf(0.0)
    }
    fn certificate(&self) -> Option<TailCertificate> {
        None
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        self.quantile(uniform(rng))
    }
}

/// Either kind of handle, as produced by [`Distribution::builtin`] or parsed
/// from a CLI spec string.
#[derive(Clone, Debug)]
pub enum Distribution {
    Integer(Arc<dyn IntegerDistribution>),
    Continuous(Arc<dyn MonotonePdf>),
}

impl Distribution {
    /// Built-ins: `geometric(p)`, `zipf(s)`, `point(x)`, `triangular`,
    /// `uniform`, `exp(lambda)`, `pareto_flat(c, lambda)`.
    pub fn builtin(name: &str, params: &[(&str, f64)]) -> Result<Self> {
        let get = |key: &str| -> Result<f64> {
            params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|&(_, v)| v)
                .ok_or_else(|| invalid(format!("distribution '{name}' needs parameter '{key}'")))
        };
        let allowed: &[&str] = match name {
            "geometric" => &["p"],
            "zipf" => &["s"],
            "point" => &["x"],
            "triangular" | "uniform" => &[],
            "exp" => &["lambda"],
            "pareto_flat" => &["c", "lambda"],
            other => return Err(Error::UnknownDistribution(other.to_string())),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(invalid(format!(
                "distribution '{name}' has no parameter '{k}'"
            )));
        }
        Ok(match name {
            "geometric" => Distribution::Integer(Arc::new(Geometric::new(get("p")?)?)),
            "zipf" => Distribution::Integer(Arc::new(Zipf::new(get("s")?)?)),
            "point" => {
                let x = get("x")?;
                if !(x >= 1.0 && x.fract() == 0.0 && x < 9.2e18) {
                    return Err(invalid(format!(
                        "point mass needs a positive integer, got {x}"
                    )));
                }
                Distribution::Integer(Arc::new(PointMass::new(x as u64)?))
            }
            "triangular" => Distribution::Continuous(Arc::new(Triangular)),
            "uniform" => Distribution::Continuous(Arc::new(Uniform)),
            "exp" => Distribution::Continuous(Arc::new(Exponential::new(get("lambda")?)?)),
            "pareto_flat" => {
                Distribution::Continuous(Arc::new(ParetoFlat::new(get("c")?, get("lambda")?)?))
            }
            _ => unreachable!("names filtered above"),
        })
    }

    /// Parses `name` or `name:key=value,key=value`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, rest) = match spec.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (spec, None),
        };
        let mut params = Vec::new();
        if let Some(rest) = rest {
            for item in rest.split(',').filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| invalid(format!("malformed parameter '{item}' in '{spec}'")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("parameter '{k}' is not a number: '{v}'")))?;
                params.push((k.trim(), v));
            }
        }
        Self::builtin(name.trim(), &params)
    }

    pub fn name(&self) -> String {
        match self {
            Distribution::Integer(d) => d.name(),
            Distribution::Continuous(d) => d.name(),
        }
    }

    pub fn certificate(&self) -> Option<TailCertificate> {
        match self {
            Distribution::Integer(d) => d.certificate(),
            Distribution::Continuous(d) => d.certificate(),
        }
    }

    pub fn as_integer(&self) -> Option<&Arc<dyn IntegerDistribution>> {
        match self {
            Distribution::Integer(d) => Some(d),
            Distribution::Continuous(_) => None,
        }
    }

    pub fn as_continuous(&self) -> Option<&Arc<dyn MonotonePdf>> {
        match self {
            Distribution::Continuous(d) => Some(d),
            Distribution::Integer(_) => None,
        }
    }

    /// `P(X > x)` for either kind; integer handles use `⌊x⌋`.
    pub fn tail(&self, x: f64) -> f64 {
        match self {
            Distribution::Integer(d) => {
                if x < 0.0 {
                    1.0
                } else {
                    d.tail(x.floor() as u64)
                }
            }
            Distribution::Continuous(d) => d.survival(x),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// True iff the tail of `dist` stays under `cert` at every grid point.
///
/// A relative slack of `1e-12` absorbs rounding when the bound is tight.
pub fn validate_tail(dist: &Distribution, cert: &TailCertificate, grid: &[f64]) -> bool {
    grid.iter().all(|&x| {
        let tail = dist.tail(x);
        tail <= cert.bound_at(x) * (1.0 + 1e-12)
    })
}
