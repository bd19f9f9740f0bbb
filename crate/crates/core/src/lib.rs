//! Multiple-output channel simulation.
//!
//! An encoder observes a distribution, draws `n` i.i.d. samples from it and
//! emits a prefix-free codeword. A decoder holding only the codeword and its
//! own randomness reproduces `n` outputs with exactly that distribution.
//! Three schemes are provided:
//!
//! * [`integer_codec`]: positive integers, via difference run-length coding
//!   of the sorted sample multiset.
//! * [`dyadic_codec`]: continuous pdfs on `[0, 1]` that are non-increasing,
//!   via counts of points in dyadic rectangles under the graph.
//! * [`halfline_codec`]: non-increasing pdfs on `[0, ∞)`, by splitting into
//!   unit bins and combining the two schemes above.
//!
//! [`analysis`] carries the closed-form length bounds, an exact expected-length
//! enumerator, seeded Monte-Carlo estimation and goodness-of-fit tests.

pub mod analysis;
pub mod bitcodes;
pub mod distributions;
pub mod dyadic_codec;
mod error;
pub mod halfline_codec;
pub mod integer_codec;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
