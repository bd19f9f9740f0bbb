//! Difference run-length code for multisets of positive integers.
//!
//! A sorted sample `x(1) ≤ … ≤ x(n)` is written as its first value, then for
//! every later group of equal values a jump `1 ‖ g(gap)`, and after every
//! group with multiplicity `m > 1` a run `0 ‖ g(m - 1)`. There is no
//! terminator: the decoder stops after `n` values.

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::bitcodes::{
    gamma_decode, gamma_encode, gamma_length, read_container, write_container, BitSink, BitSource,
    Scheme,
};
use crate::distributions::IntegerDistribution;
use crate::error::{invalid, Error, Result};

/// Largest value the codec accepts.
pub const MAX_VALUE: u64 = i64::MAX as u64;

/// Sorted positive integers with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerMultiset {
    values: Vec<u64>,
}

impl IntegerMultiset {
    /// Sorts `values`; every value must lie in `1..=MAX_VALUE`.
    pub fn from_values(mut values: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v == 0 || v > MAX_VALUE) {
            return Err(invalid(format!(
                "multiset values must lie in 1..=2^63-1, got {bad}"
            )));
        }
        values.sort_unstable();
        Ok(Self { values })
    }

    /// Builds from `(value, multiplicity)` pairs.
    pub fn from_histogram(groups: &[(u64, u64)]) -> Result<Self> {
        let total: u64 = groups.iter().map(|&(_, m)| m).sum();
        let mut values = Vec::with_capacity(total as usize);
        for &(v, m) in groups {
            values.extend(std::iter::repeat_n(v, m as usize));
        }
        Self::from_values(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    /// `(value, multiplicity)` in increasing value order.
    pub fn groups(&self) -> Vec<(u64, u64)> {
        self.values
            .chunk_by(|a, b| a == b)
            .map(|run| (run[0], run.len() as u64))
            .collect()
    }
}

/// One non-empty `w_i` of the codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    /// `g(x(1))`
    First(u64),
    /// `1 ‖ g(gap)` for a positive difference.
    Jump(u64),
    /// `0 ‖ g(j)` for a maximal run of `j` zero differences.
    Run(u64),
}

impl Token {
    /// Bit length under a given gamma-length function.
    pub fn length_with(self, gamma_len: impl Fn(u64) -> u64) -> u64 {
        match self {
            Token::First(v) => gamma_len(v),
            Token::Jump(v) | Token::Run(v) => 1 + gamma_len(v),
        }
    }
}

pub fn tokens(ms: &IntegerMultiset) -> Result<Vec<Token>> {
    if ms.is_empty() {
        return Err(invalid(
            "cannot encode an empty multiset; n = 0 is an empty container payload",
        ));
    }
    let mut out = Vec::new();
    let mut prev: Option<u64> = None;
    for (value, mult) in ms.groups() {
        out.push(match prev {
            None => Token::First(value),
            Some(p) => Token::Jump(value - p),
        });
        if mult > 1 {
            out.push(Token::Run(mult - 1));
        }
        prev = Some(value);
    }
    Ok(out)
}

pub fn encode_multiset_into(ms: &IntegerMultiset, sink: &mut BitSink) -> Result<()> {
    for token in tokens(ms)? {
        match token {
            Token::First(v) => gamma_encode(v, sink)?,
            Token::Jump(v) => {
                sink.push_bit(true);
                gamma_encode(v, sink)?;
            }
            Token::Run(v) => {
                sink.push_bit(false);
                gamma_encode(v, sink)?;
            }
        }
    }
    Ok(())
}

pub fn encode_multiset(ms: &IntegerMultiset) -> Result<BitSink> {
    let mut sink = BitSink::new();
    encode_multiset_into(ms, &mut sink)?;
    Ok(sink)
}

/// Codeword length without materializing bits.
pub fn encoded_length(ms: &IntegerMultiset) -> Result<u64> {
    Ok(tokens(ms)?
        .into_iter()
        .map(|t| t.length_with(|z| gamma_length(z).expect("tokens are positive")))
        .sum())
}

/// Reads exactly `n` values; the source is left just past the last codeword.
pub fn decode_multiset(source: &mut BitSource<'_>, n: u64) -> Result<IntegerMultiset> {
    if n == 0 {
        return Ok(IntegerMultiset::default());
    }
    let mut values = Vec::with_capacity(n.min(1 << 24) as usize);
    let mut current = gamma_decode(source)?;
    if current > MAX_VALUE {
        return Err(Error::Corrupt(format!(
            "first value {current} exceeds 2^63-1"
        )));
    }
    values.push(current);
    let mut after_run = false;
    while (values.len() as u64) < n {
        if source.read_bit()? {
            let gap = gamma_decode(source)?;
            current = current
                .checked_add(gap)
                .filter(|&v| v <= MAX_VALUE)
                .ok_or_else(|| Error::Corrupt("decoded value exceeds 2^63-1".into()))?;
            values.push(current);
            after_run = false;
        } else {
            if after_run {
                return Err(Error::Corrupt("two consecutive zero-run tokens".into()));
            }
            let run = gamma_decode(source)?;
            let got = values.len() as u64 + run;
            if got > n {
                return Err(Error::CountOverflow { got, expected: n });
            }
            values.extend(std::iter::repeat_n(current, run as usize));
            after_run = true;
        }
    }
    Ok(IntegerMultiset { values })
}

/// Draws `n` i.i.d. values, encodes their multiset and frames it.
///
/// Returns the container bytes and the retained sample multiset.
pub fn simulate(
    dist: &dyn IntegerDistribution,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<(Vec<u8>, IntegerMultiset)> {
    let ms = sample_multiset(dist, n, rng)?;
    let payload = if ms.is_empty() {
        BitSink::new()
    } else {
        encode_multiset(&ms)?
    };
    Ok((write_container(Scheme::Integer, n, &payload), ms))
}

pub(crate) fn sample_multiset(
    dist: &dyn IntegerDistribution,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<IntegerMultiset> {
    let draws: Vec<u64> = (0..n).map(|_| dist.sample(rng)).collect();
    IntegerMultiset::from_values(draws).map_err(|e| Error::Sampler(e.to_string()))
}

/// Decodes a scheme-0x01 container and returns the values in uniformly
/// random order.
pub fn desimulate(bytes: &[u8], rng: &mut dyn RngCore) -> Result<Vec<u64>> {
    let (header, mut source) = read_container(bytes)?;
    header.expect_scheme(Scheme::Integer)?;
    let ms = decode_multiset(&mut source, header.n)?;
    source.expect_exhausted()?;
    let mut values = ms.into_values();
    values.shuffle(rng);
    Ok(values)
}
