//! Dyadic rectangle code for non-increasing pdfs on `[0, 1]`.
//!
//! The hypograph of `f` splits into rectangles `R(k, a)`: for `k ≥ 1` the
//! x-range is the left half `[2^{-k+1}a, 2^{-k}(2a+1))` of a level-`(k-1)`
//! dyadic interval and the y-range is `[f(right end), f(midpoint))`; `R(0, 0)`
//! is `[0, 1) × [f(2), f(1))`. The encoder sends the occupied rectangles with
//! their point counts; the decoder draws uniform x-coordinates inside each
//! rectangle, which needs no knowledge of `f`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::bitcodes::{
    gamma_decode, gamma_encode, gamma_length, read_container, shifted_gamma_decode,
    shifted_gamma_encode, shifted_gamma_length, write_container, BitSink, BitSource, Scheme,
};
use crate::distributions::{MonotonePdf, Support};
use crate::error::{invalid, Error, Result};
use crate::rng::uniform;

/// Deepest level the encoder searches; doubles carry at most 53 significant bits.
pub const DEFAULT_K_MAX: u32 = 60;
/// Resamples allowed per point when the search runs past [`DEFAULT_K_MAX`].
pub const RETRY_BUDGET: u32 = 100;
/// Deepest level the decoder accepts (`a` must fit in 64 bits).
pub const MAX_DECODE_DEPTH: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectangleId {
    pub k: u32,
    pub a: u64,
}

impl RectangleId {
    pub fn new(k: u32, a: u64) -> Result<Self> {
        let id = Self { k, a };
        id.validate()?;
        Ok(id)
    }

    /// Largest valid `a` at depth `k`: `max(2^{k-1} - 1, 0)`.
    pub fn max_index(k: u32) -> Option<u64> {
        match k {
            0 => Some(0),
            1..=64 => Some((1u64 << (k - 1)) - 1),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match Self::max_index(self.k) {
            Some(max) if self.a <= max => Ok(()),
            _ => Err(invalid(format!(
                "rectangle index a={} out of range for depth k={}",
                self.a, self.k
            ))),
        }
    }

    /// Half-open x-range `[2^{-k+1}a, 2^{-k}(2a+1))`.
    pub fn x_interval(&self) -> (f64, f64) {
        let a = self.a as f64;
        let lo = a * pow2(1 - self.k as i32);
        let hi = (2.0 * a + 1.0) * pow2(-(self.k as i32));
        (lo, hi)
    }

    /// `2^{-k+1}(a+1)`, the right end of the parent dyadic interval.
    fn parent_right(&self) -> f64 {
        (self.a as f64 + 1.0) * pow2(1 - self.k as i32)
    }
}

fn pow2(e: i32) -> f64 {
    2f64.powi(e)
}

/// `f` on `[0, 1]`, zero beyond.
fn unit_pdf(f: &dyn MonotonePdf, x: f64) -> f64 {
    if x > 1.0 {
        0.0
    } else {
        f.pdf(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RectBounds {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl RectBounds {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x_lo <= x && x < self.x_hi && self.y_lo <= y && y < self.y_hi
    }
}

pub fn rect_bounds(id: RectangleId, f: &dyn MonotonePdf) -> Result<RectBounds> {
    id.validate()?;
    let (x_lo, x_hi) = id.x_interval();
    Ok(RectBounds {
        x_lo,
        x_hi,
        y_lo: unit_pdf(f, id.parent_right()),
        y_hi: unit_pdf(f, x_hi),
    })
}

/// `2^{-k}·(f(2^{-k}(2a+1)) - f(2^{-k+1}(a+1)))`.
pub fn rect_area(id: RectangleId, f: &dyn MonotonePdf) -> Result<f64> {
    let b = rect_bounds(id, f)?;
    Ok((b.x_hi - b.x_lo) * (b.y_hi - b.y_lo).max(0.0))
}

/// A point of the hypograph interior, `0 ≤ y < f(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypographPoint {
    pub x: f64,
    pub y: f64,
}

/// Finds the unique rectangle containing `p`, searching depths `0..=k_max`.
pub fn locate(p: HypographPoint, f: &dyn MonotonePdf, k_max: u32) -> Result<RectangleId> {
    let HypographPoint { x, y } = p;
    if !(0.0..1.0).contains(&x) || y.is_nan() || y < 0.0 {
        return Err(invalid(format!(
            "point ({x}, {y}) is outside [0,1) x [0,inf)"
        )));
    }
    let depth_exceeded = Error::DepthExceeded { x, y, k_max };

    if y < unit_pdf(f, 1.0) && y >= unit_pdf(f, 2.0) {
        return Ok(RectangleId { k: 0, a: 0 });
    }
    // frac = frac(2^{k-1} x), index = ⌊2^{k-1} x⌋; both exact under doubling
    let mut frac = x;
    let mut index: u64 = 0;
    for k in 1..=k_max.min(MAX_DECODE_DEPTH) {
        if k > 1 {
            let doubled = 2.0 * frac;
            let bit = doubled >= 1.0;
            frac = if bit { doubled - 1.0 } else { doubled };
            index = (index << 1) | u64::from(bit);
        }
        if frac < 0.5 {
            let id = RectangleId { k, a: index };
            let right = unit_pdf(f, id.parent_right());
            let mid = unit_pdf(f, id.x_interval().1);
            if right <= y && y < mid {
                return Ok(id);
            }
        }
    }
    Err(depth_exceeded)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RectangleTriple {
    pub id: RectangleId,
    pub count: u64,
}

impl RectangleTriple {
    /// `L(g_s(k)) + L(g_s(a)) + L(g(N))`.
    pub fn encoded_length(&self) -> u64 {
        shifted_gamma_length(u64::from(self.id.k)).expect("small k")
            + shifted_gamma_length(self.id.a).expect("a < 2^63")
            + gamma_length(self.count).expect("count >= 1")
    }
}

/// Groups located rectangles into lexicographically ordered triples.
pub fn triples_from_ids(ids: impl IntoIterator<Item = RectangleId>) -> Vec<RectangleTriple> {
    let mut counts: BTreeMap<RectangleId, u64> = BTreeMap::new();
    for id in ids {
        *counts.entry(id).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(id, count)| RectangleTriple { id, count })
        .collect()
}

pub fn write_triples(triples: &[RectangleTriple], sink: &mut BitSink) -> Result<()> {
    for t in triples {
        if t.count == 0 {
            return Err(invalid("empty rectangles are never emitted"));
        }
        shifted_gamma_encode(u64::from(t.id.k), sink)?;
        shifted_gamma_encode(t.id.a, sink)?;
        gamma_encode(t.count, sink)?;
    }
    Ok(())
}

/// Locates every point and encodes the resulting triples.
pub fn encode_points(points: &[HypographPoint], f: &dyn MonotonePdf) -> Result<BitSink> {
    let ids = points
        .iter()
        .map(|&p| locate(p, f, DEFAULT_K_MAX))
        .collect::<Result<Vec<_>>>()?;
    let mut sink = BitSink::new();
    write_triples(&triples_from_ids(ids), &mut sink)?;
    Ok(sink)
}

/// Reads triples until their counts sum to `n`.
pub fn read_triples(source: &mut BitSource<'_>, n: u64) -> Result<Vec<RectangleTriple>> {
    let mut out = Vec::new();
    let mut total = 0u64;
    let mut last: Option<RectangleId> = None;
    while total < n {
        let k = shifted_gamma_decode(source)?;
        if k > u64::from(MAX_DECODE_DEPTH) {
            return Err(Error::Corrupt(format!(
                "rectangle depth {k} exceeds {MAX_DECODE_DEPTH}"
            )));
        }
        let a = shifted_gamma_decode(source)?;
        let id = RectangleId { k: k as u32, a };
        id.validate().map_err(|e| Error::Corrupt(e.to_string()))?;
        if last.is_some_and(|prev| prev >= id) {
            return Err(Error::Corrupt("rectangle triples out of order".into()));
        }
        last = Some(id);
        let count = gamma_decode(source)?;
        total = total
            .checked_add(count)
            .filter(|&t| t <= n)
            .ok_or(Error::CountOverflow {
                got: total.saturating_add(count),
                expected: n,
            })?;
        out.push(RectangleTriple { id, count });
    }
    Ok(out)
}

/// Uniform on `[lo, hi)`, clamped below `hi` against rounding.
pub(crate) fn uniform_in(lo: f64, hi: f64, rng: &mut dyn RngCore) -> f64 {
    let v = lo + uniform(rng) * (hi - lo);
    if v < hi {
        v
    } else {
        hi.next_down().max(lo)
    }
}

/// `N` uniform x-coordinates per triple, in triple order (not shuffled).
pub fn sample_triples(triples: &[RectangleTriple], rng: &mut dyn RngCore) -> Vec<f64> {
    let total: u64 = triples.iter().map(|t| t.count).sum();
    let mut out = Vec::with_capacity(total as usize);
    for t in triples {
        let (lo, hi) = t.id.x_interval();
        for _ in 0..t.count {
            out.push(uniform_in(lo, hi, rng));
        }
    }
    out
}

/// Draws `y ~ U[0, f(x))` and locates `(x, y)`, resampling `y` when the
/// search runs too deep.
pub(crate) fn locate_with_fresh_height(
    x: f64,
    f: &dyn MonotonePdf,
    rng: &mut dyn RngCore,
) -> Result<RectangleId> {
    let height = unit_pdf(f, x);
    if height.is_nan() || height <= 0.0 {
        return Err(Error::Sampler(format!("pdf vanishes at sampled x = {x}")));
    }
    let mut last_err = None;
    for _ in 0..RETRY_BUDGET {
        let y = uniform(rng) * height;
        if y >= height {
            continue;
        }
        match locate(HypographPoint { x, y }, f, DEFAULT_K_MAX) {
            Ok(id) => return Ok(id),
            Err(e @ Error::DepthExceeded { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Sampler("could not draw a hypograph height".into())))
}

/// Draws `n` uniform hypograph points and returns their triples.
pub fn sample_rectangles(
    f: &dyn MonotonePdf,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<Vec<RectangleTriple>> {
    if f.support() != Support::Unit {
        return Err(invalid(format!(
            "unit-interval scheme needs a pdf on [0, 1], got {}",
            f.name()
        )));
    }
    let mut ids = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut located = None;
        let mut last_err = None;
        for _ in 0..RETRY_BUDGET {
            let x = f.sample(rng);
            if !(0.0..1.0).contains(&x) {
                continue;
            }
            let fx = unit_pdf(f, x);
            if fx.is_nan() || fx <= 0.0 {
                continue;
            }
            match locate_with_fresh_height(x, f, rng) {
                Ok(id) => {
                    located = Some(id);
                    break;
                }
                Err(e @ Error::DepthExceeded { .. }) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        match located {
            Some(id) => ids.push(id),
            None => {
                return Err(last_err.unwrap_or_else(|| {
                    Error::Sampler(format!("{} produced no usable draw", f.name()))
                }))
            }
        }
    }
    Ok(triples_from_ids(ids))
}

pub fn simulate(f: &dyn MonotonePdf, n: u64, rng: &mut dyn RngCore) -> Result<Vec<u8>> {
    let triples = sample_rectangles(f, n, rng)?;
    let mut sink = BitSink::new();
    write_triples(&triples, &mut sink)?;
    Ok(write_container(Scheme::UnitInterval, n, &sink))
}

pub fn desimulate(bytes: &[u8], rng: &mut dyn RngCore) -> Result<Vec<f64>> {
    let (header, mut source) = read_container(bytes)?;
    header.expect_scheme(Scheme::UnitInterval)?;
    let triples = read_triples(&mut source, header.n)?;
    source.expect_exhausted()?;
    let mut xs = sample_triples(&triples, rng);
    xs.shuffle(rng);
    Ok(xs)
}
