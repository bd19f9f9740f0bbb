//! Composite code for non-increasing pdfs on `[0, ∞)`.
//!
//! Samples are binned by `⌊x⌋ + 1`. The bin multiset goes through the
//! integer codec, then each occupied bin `i` (in increasing order) gets a
//! unit-interval code under the conditional pdf `f_i` on `[0, 1]`, using the
//! retained fractional parts as hypograph x-coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::bitcodes::{read_container, write_container, BitSink, Scheme};
use crate::distributions::{MonotonePdf, Support};
use crate::dyadic_codec::{
    locate_with_fresh_height, read_triples, sample_triples, triples_from_ids, write_triples,
};
use crate::error::{invalid, Error, Result};
use crate::integer_codec::{decode_multiset, encode_multiset_into, IntegerMultiset, MAX_VALUE};
use crate::rng::substream;

/// `f_i(x) = f(x + i - 1) / ∫_{i-1}^{i} f` on `[0, 1]`, zero beyond.
#[derive(Clone, Debug)]
pub struct BinRestricted {
    base: Arc<dyn MonotonePdf>,
    bin: u64,
    offset: f64,
    mass: f64,
    survival_lo: f64,
}

impl BinRestricted {
    pub fn bin(&self) -> u64 {
        self.bin
    }

    /// `∫_{i-1}^{i} f`.
    pub fn mass(&self) -> f64 {
        self.mass
    }
}

pub fn restrict_to_bin(f: &Arc<dyn MonotonePdf>, bin: u64) -> Result<BinRestricted> {
    if bin == 0 {
        return Err(invalid("bins are numbered from 1"));
    }
    let offset = (bin - 1) as f64;
    let survival_lo = f.survival(offset);
    let mass = survival_lo - f.survival(offset + 1.0);
    if mass.is_nan() || mass <= 0.0 {
        return Err(invalid(format!(
            "bin {bin} of {} carries no probability mass",
            f.name()
        )));
    }
    Ok(BinRestricted {
        base: Arc::clone(f),
        bin,
        offset,
        mass,
        survival_lo,
    })
}

impl MonotonePdf for BinRestricted {
    fn name(&self) -> String {
        format!("{}|bin={}", self.base.name(), self.bin)
    }

    fn support(&self) -> Support {
        Support::Unit
    }

    fn pdf(&self, x: f64) -> f64 {
        if (0.0..=1.0).contains(&x) {
            self.base.pdf(x + self.offset) / self.mass
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
            let upper = self.survival_lo - self.mass;
            ((self.base.survival(x + self.offset) - upper) / self.mass).clamp(0.0, 1.0)
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        // invert the base survival at the matching level
        let target = self.survival_lo - u * self.mass;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.base.survival(mid + self.offset) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Bin index `⌊x⌋ + 1` of a sample.
pub fn bin_of(x: f64) -> Result<u64> {
    if x.is_nan() || x < 0.0 || x >= MAX_VALUE as f64 {
        return Err(Error::Sampler(format!(
            "sample {x} has no representable bin"
        )));
    }
    Ok(x.floor() as u64 + 1)
}

/// Per-bin fractional parts of a sample, keyed by bin index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BinAssignment {
    pub bins: BTreeMap<u64, Vec<f64>>,
}

impl BinAssignment {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let mut bins: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
        for &x in samples {
            let bin = bin_of(x)?;
            bins.entry(bin).or_default().push(x - (bin - 1) as f64);
        }
        Ok(Self { bins })
    }

    pub fn counts(&self) -> BTreeMap<u64, u64> {
        self.bins
            .iter()
            .map(|(&i, v)| (i, v.len() as u64))
            .collect()
    }

    pub fn multiset(&self) -> IntegerMultiset {
        let hist: Vec<(u64, u64)> = self.counts().into_iter().collect();
        IntegerMultiset::from_histogram(&hist).expect("bin indices are positive")
    }
}

/// Encodes the given samples; `rng` only supplies hypograph heights.
pub fn encode_samples(
    f: &Arc<dyn MonotonePdf>,
    samples: &[f64],
    rng: &mut dyn RngCore,
) -> Result<BitSink> {
    let assignment = BinAssignment::from_samples(samples)?;
    let mut sink = BitSink::new();
    if samples.is_empty() {
        return Ok(sink);
    }
    encode_multiset_into(&assignment.multiset(), &mut sink)?;
    let bin_seed = rng.next_u64();
    for (&bin, fracs) in &assignment.bins {
        let restricted = restrict_to_bin(f, bin)?;
        let mut bin_rng = substream(bin_seed, bin);
        let ids = fracs
            .iter()
            .map(|&x| locate_with_fresh_height(x, &restricted, &mut bin_rng))
            .collect::<Result<Vec<_>>>()?;
        write_triples(&triples_from_ids(ids), &mut sink)?;
    }
    Ok(sink)
}

pub fn simulate(f: &Arc<dyn MonotonePdf>, n: u64, rng: &mut dyn RngCore) -> Result<Vec<u8>> {
    let sink = simulate_payload(f, n, rng)?;
    Ok(write_container(Scheme::HalfLine, n, &sink))
}

pub(crate) fn simulate_payload(
    f: &Arc<dyn MonotonePdf>,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<BitSink> {
    if f.support() != Support::HalfLine {
        return Err(invalid(format!(
            "half-line scheme needs a pdf on [0, inf), got {}",
            f.name()
        )));
    }
    let samples: Vec<f64> = (0..n).map(|_| f.sample(rng)).collect();
    encode_samples(f, &samples, rng)
}

/// Moves `x ∈ [0, 1)` into bin `bin`, keeping it strictly below `bin`.
fn shift_into_bin(x: f64, bin: u64) -> f64 {
    let lo = (bin - 1) as f64;
    let hi = bin as f64;
    let v = x + lo;
    if v < hi {
        v.max(lo)
    } else {
        hi.next_down()
    }
}

pub fn desimulate(bytes: &[u8], rng: &mut dyn RngCore) -> Result<Vec<f64>> {
    let (header, mut source) = read_container(bytes)?;
    header.expect_scheme(Scheme::HalfLine)?;
    let bins = decode_multiset(&mut source, header.n)?;
    let mut out = Vec::with_capacity(header.n as usize);
    for (bin, count) in bins.groups() {
        let triples = read_triples(&mut source, count)?;
        out.extend(
            sample_triples(&triples, rng)
                .into_iter()
                .map(|x| shift_into_bin(x, bin)),
        );
    }
    source.expect_exhausted()?;
    out.shuffle(rng);
    Ok(out)
}
