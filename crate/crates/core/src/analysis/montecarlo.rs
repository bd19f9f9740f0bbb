//! Seeded Monte-Carlo estimation of codeword length and distributional checks.
//!
//! Trial `t` always draws from substream `(seed, t)`, and per-trial results are
//! collected in trial order, so output is identical however rayon schedules
//! the work.

use std::sync::Arc;

use rayon::prelude::*;

use super::bounds::{exp_tail_bound, halfline_bound, power_tail_bound, unit_interval_bound};
use super::stats::{chi_square_integer, ks_two_sample};
use crate::bitcodes::Scheme;
use crate::distributions::{Distribution, IntegerDistribution, MonotonePdf, Support, TailKind};
use crate::dyadic_codec::{sample_rectangles, RectangleTriple};
use crate::error::{invalid, Result};
use crate::rng::{fork, substream, SimRng};
use crate::{dyadic_codec, halfline_codec, integer_codec};

/// Handle checked against a scheme.
#[derive(Clone, Debug)]
pub enum SchemeInput {
    Integer(Arc<dyn IntegerDistribution>),
    Unit(Arc<dyn MonotonePdf>),
    HalfLine(Arc<dyn MonotonePdf>),
}

impl SchemeInput {
    pub fn new(scheme: Scheme, dist: &Distribution) -> Result<Self> {
        let mismatch = || {
            invalid(format!(
                "scheme '{scheme}' cannot encode distribution '{}'",
                dist.name()
            ))
        };
        match (scheme, dist) {
            (Scheme::Integer, Distribution::Integer(d)) => Ok(SchemeInput::Integer(Arc::clone(d))),
            (Scheme::UnitInterval, Distribution::Continuous(f)) if f.support() == Support::Unit => {
                Ok(SchemeInput::Unit(Arc::clone(f)))
            }
            (Scheme::HalfLine, Distribution::Continuous(f)) if f.support() == Support::HalfLine => {
                Ok(SchemeInput::HalfLine(Arc::clone(f)))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            SchemeInput::Integer(_) => Scheme::Integer,
            SchemeInput::Unit(_) => Scheme::UnitInterval,
            SchemeInput::HalfLine(_) => Scheme::HalfLine,
        }
    }

    /// Container bytes for `n` fresh samples.
    pub fn encode(&self, n: u64, rng: &mut SimRng) -> Result<Vec<u8>> {
        match self {
            SchemeInput::Integer(d) => Ok(integer_codec::simulate(d.as_ref(), n, rng)?.0),
            SchemeInput::Unit(f) => dyadic_codec::simulate(f.as_ref(), n, rng),
            SchemeInput::HalfLine(f) => halfline_codec::simulate(f, n, rng),
        }
    }

    /// Payload length in bits for `n` fresh samples.
    pub fn payload_length(&self, n: u64, rng: &mut SimRng) -> Result<u64> {
        if n == 0 {
            return Ok(0);
        }
        match self {
            SchemeInput::Integer(d) => {
                let ms = integer_codec::sample_multiset(d.as_ref(), n, rng)?;
                integer_codec::encoded_length(&ms)
            }
            SchemeInput::Unit(f) => Ok(sample_rectangles(f.as_ref(), n, rng)?
                .iter()
                .map(RectangleTriple::encoded_length)
                .sum()),
            SchemeInput::HalfLine(f) => Ok(halfline_codec::simulate_payload(f, n, rng)?.len()),
        }
    }

    /// The length bound that applies, if the handle carries a usable certificate.
    pub fn bound(&self, n: u64) -> Option<f64> {
        match self {
            SchemeInput::Integer(d) => {
                let cert = d.certificate()?;
                match cert.kind {
                    TailKind::Power => power_tail_bound(cert.c, cert.lambda, n).ok(),
                    TailKind::Exponential => exp_tail_bound(cert.c, cert.lambda, n).ok(),
                }
            }
            SchemeInput::Unit(f) => unit_interval_bound(f.f0(), n).ok(),
            SchemeInput::HalfLine(f) => {
                let cert = f.certificate()?;
                match cert.kind {
                    TailKind::Power => halfline_bound(cert.c, cert.lambda, f.f0(), n).ok(),
                    TailKind::Exponential => None,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthStats {
    pub mean: f64,
    pub stderr: f64,
    pub lengths: Vec<u64>,
}

impl LengthStats {
    pub fn from_lengths(lengths: Vec<u64>) -> Self {
        let t = lengths.len() as f64;
        let mean = lengths.iter().map(|&l| l as f64).sum::<f64>() / t;
        let stderr = if lengths.len() > 1 {
            let var = lengths
                .iter()
                .map(|&l| (l as f64 - mean).powi(2))
                .sum::<f64>()
                / (t - 1.0);
            (var / t).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            stderr,
            lengths,
        }
    }
}

fn run_trials<T: Send>(
    trials: u64,
    seed: u64,
    body: impl Fn(&mut SimRng) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if trials == 0 {
        return Err(invalid("need at least one trial"));
    }
    (0..trials)
        .into_par_iter()
        .map(|t| body(&mut substream(seed, t)))
        .collect()
}

/// Mean payload length over `trials` independent encodes of `n` samples.
pub fn empirical_length(
    input: &SchemeInput,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<LengthStats> {
    let lengths = run_trials(trials, seed, |rng| input.payload_length(n, rng))?;
    Ok(LengthStats::from_lengths(lengths))
}

/// Unit-interval payload length counting only triples with `k ≤ k_max`,
/// the same quantity the exact enumerator sums.
pub fn empirical_length_unit_truncated(
    f: &Arc<dyn MonotonePdf>,
    n: u64,
    k_max: u32,
    trials: u64,
    seed: u64,
) -> Result<LengthStats> {
    let lengths = run_trials(trials, seed, |rng| {
        Ok(sample_rectangles(f.as_ref(), n, rng)?
            .iter()
            .filter(|t| t.id.k <= k_max)
            .map(RectangleTriple::encoded_length)
            .sum())
    })?;
    Ok(LengthStats::from_lengths(lengths))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub scheme: Scheme,
    pub dist: String,
    pub n: u64,
    pub alpha: f64,
    pub outcomes: Vec<TrialOutcome>,
}

impl VerifyReport {
    pub fn passes(&self) -> usize {
        self.outcomes.iter().filter(|o| o.pass).count()
    }

    pub fn pass_rate(&self) -> f64 {
        self.passes() as f64 / self.outcomes.len() as f64
    }
}

/// Per trial: encode `n` samples, decode them, and test the decoded output.
///
/// Integer schemes use a chi-square test of the decoded values against the
/// pmf; continuous ones a two-sample KS test against `n` direct draws.
pub fn verify(
    input: &SchemeInput,
    n: u64,
    trials: u64,
    seed: u64,
    alpha: f64,
) -> Result<VerifyReport> {
    if n == 0 {
        return Err(invalid("verification needs n >= 1"));
    }
    let outcomes = run_trials(trials, seed, |rng| {
        let mut enc = fork(rng, 0);
        let mut dec = fork(rng, 1);
        let mut direct = fork(rng, 2);
        let bytes = input.encode(n, &mut enc)?;
        match input {
            SchemeInput::Integer(d) => {
                let decoded = integer_codec::desimulate(&bytes, &mut dec)?;
                let out = chi_square_integer(&decoded, d.as_ref(), 5.0, alpha)?;
                Ok(TrialOutcome {
                    statistic: out.statistic,
                    critical: out.critical,
                    pass: out.pass,
                })
            }
            SchemeInput::Unit(f) | SchemeInput::HalfLine(f) => {
                let decoded = match input.scheme() {
                    Scheme::UnitInterval => dyadic_codec::desimulate(&bytes, &mut dec)?,
                    _ => halfline_codec::desimulate(&bytes, &mut dec)?,
                };
                let reference: Vec<f64> = (0..n).map(|_| f.sample(&mut direct)).collect();
                let out = ks_two_sample(&decoded, &reference, alpha)?;
                Ok(TrialOutcome {
                    statistic: out.statistic,
                    critical: out.critical,
                    pass: out.pass,
                })
            }
        }
    })?;
    Ok(VerifyReport {
        scheme: input.scheme(),
        dist: match input {
            SchemeInput::Integer(d) => d.name(),
            SchemeInput::Unit(f) | SchemeInput::HalfLine(f) => f.name(),
        },
        n,
        alpha,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcodes::gamma_length;

    fn input(scheme: Scheme, spec: &str) -> SchemeInput {
        SchemeInput::new(scheme, &Distribution::parse(spec).unwrap()).unwrap()
    }

    #[test]
    fn compatibility() {
        let geo = Distribution::parse("geometric:p=0.7").unwrap();
        assert!(SchemeInput::new(Scheme::UnitInterval, &geo).is_err());
        let tri = Distribution::parse("triangular").unwrap();
        assert!(SchemeInput::new(Scheme::HalfLine, &tri).is_err());
        assert!(SchemeInput::new(Scheme::Integer, &tri).is_err());
        let exp = Distribution::parse("exp:lambda=1").unwrap();
        assert!(SchemeInput::new(Scheme::UnitInterval, &exp).is_err());
        assert!(SchemeInput::new(Scheme::HalfLine, &exp).is_ok());
    }

    #[test]
    fn point_mass_lengths_are_exact() {
        let inp = input(Scheme::Integer, "point:x=1");
        for n in [2u64, 7, 100, 4096] {
            let stats = empirical_length(&inp, n, 5, 3).unwrap();
            let expected = 2 + gamma_length(n - 1).unwrap();
            assert!(stats.lengths.iter().all(|&l| l == expected));
            assert_eq!(stats.stderr, 0.0);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let inp = input(Scheme::HalfLine, "exp:lambda=1");
        let a = empirical_length(&inp, 300, 1, 17).unwrap();
        let b = empirical_length(&inp, 300, 1, 17).unwrap();
        assert_eq!(a, b);
        let c = empirical_length(&inp, 300, 4, 17).unwrap();
        assert_eq!(c.lengths[0], a.lengths[0]);
    }

    #[test]
    fn payload_length_matches_container() {
        for (scheme, spec) in [
            (Scheme::Integer, "zipf:s=3"),
            (Scheme::UnitInterval, "triangular"),
            (Scheme::HalfLine, "pareto_flat:c=2,lambda=2"),
        ] {
            let inp = input(scheme, spec);
            let len = inp.payload_length(500, &mut substream(5, 0)).unwrap();
            let bytes = inp.encode(500, &mut substream(5, 0)).unwrap();
            let (header, _) = crate::bitcodes::read_container(&bytes).unwrap();
            assert_eq!(header.payload_bits, len, "{spec}");
        }
    }

    #[test]
    fn bounds_by_scheme() {
        assert_eq!(
            input(Scheme::UnitInterval, "triangular").bound(10_000),
            Some(unit_interval_bound(2.0, 10_000).unwrap())
        );
        let lambda = (1.0f64 / 0.3).ln();
        let b = input(Scheme::Integer, "geometric:p=0.7")
            .bound(100)
            .unwrap();
        assert!((b - exp_tail_bound(1.5, lambda, 100).unwrap()).abs() < 1e-9);
        assert_eq!(
            input(Scheme::HalfLine, "pareto_flat:c=2,lambda=2").bound(100),
            Some(halfline_bound(2.0, 2.0, 4.0 * 6f64.powf(-1.5), 100).unwrap())
        );
        assert_eq!(
            input(Scheme::Integer, "zipf:s=3").bound(1),
            Some(power_tail_bound(1.5, 2.0, 1).unwrap())
        );
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(empirical_length(&input(Scheme::Integer, "zipf:s=3"), 10, 0, 1).is_err());
    }
}
