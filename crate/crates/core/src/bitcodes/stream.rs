//! Bit-granular sinks and sources.
//!
//! Bit `i` of a stream lives in bit `7 - i % 8` of byte `i / 8`, i.e. bits are
//! packed most-significant-bit first. A [`BitSource`] never reads past its
//! declared bit count.

use std::fmt;

use crate::error::{Error, Result};

/// Append-only bit buffer.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BitSink {
    buf: Vec<u8>,
    len: u64,
}

impl BitSink {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of bits written so far.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push_bit(&mut self, bit: bool) {
        let offset = (self.len % 8) as u32;
        if offset == 0 {
            self.buf.push(0);
        }
        if bit {
            *self.buf.last_mut().expect("byte pushed above") |= 0x80 >> offset;
        }
        self.len += 1;
    }

    /// Appends the low `count` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for shift in (0..count).rev() {
            self.push_bit((value >> shift) & 1 == 1);
        }
    }

    pub fn push_zeros(&mut self, count: u64) {
        for _ in 0..count {
            self.push_bit(false);
        }
    }

    /// Appends every bit of `other`.
    pub fn extend_from(&mut self, other: &BitSink) {
        if self.len.is_multiple_of(8) {
            self.buf.extend_from_slice(&other.buf);
            self.len += other.len;
            return;
        }
        let mut src = other.source();
        while let Ok(bit) = src.read_bit() {
            self.push_bit(bit);
        }
    }

    /// Packed bytes; padding bits in the final byte are zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.buf
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn source(&self) -> BitSource<'_> {
        BitSource::new(&self.buf, self.len).expect("sink length is consistent")
    }

    /// Renders the bits as a string of `0`/`1`, handy in tests.
    pub fn to_bit_string(&self) -> String {
        let mut s = String::with_capacity(self.len as usize);
        let mut src = self.source();
        while let Ok(bit) = src.read_bit() {
            s.push(if bit { '1' } else { '0' });
        }
        s
    }

    /// Parses a string of `0`/`1`; spaces and underscores are ignored.
    pub fn from_bit_string(bits: &str) -> Result<Self> {
        let mut sink = BitSink::new();
        for ch in bits.chars() {
            match ch {
                '0' => sink.push_bit(false),
                '1' => sink.push_bit(true),
                ' ' | '_' => {}
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected character {other:?} in bit string"
                    )))
                }
            }
        }
        Ok(sink)
    }
}

impl fmt::Debug for BitSink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSink({} bits: {})", self.len, self.to_bit_string())
    }
}

/// Cursor over a borrowed, bit-length-delimited byte buffer.
#[derive(Clone, Debug)]
pub struct BitSource<'a> {
    bytes: &'a [u8],
    pos: u64,
    end: u64,
}

impl<'a> BitSource<'a> {
    /// `bit_len` must not exceed `8 * bytes.len()`.
    pub fn new(bytes: &'a [u8], bit_len: u64) -> Result<Self> {
        let available = bytes.len() as u64 * 8;
        if bit_len > available {
            return Err(Error::PayloadOverflow {
                declared: bit_len,
                available,
            });
        }
        Ok(Self {
            bytes,
            pos: 0,
            end: bit_len,
        })
    }

    /// Bits consumed so far.
    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.end - self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.end
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.end {
            return Err(Error::Truncated {
                offset: self.pos,
                needed: 1,
            });
        }
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = (byte >> (7 - (self.pos % 8) as u32)) & 1 == 1;
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `count ≤ 64` bits as an unsigned integer, most significant first.
    pub fn read_bits(&mut self, count: u32) -> Result<u64> {
        debug_assert!(count <= 64);
        if u64::from(count) > self.remaining() {
            return Err(Error::Truncated {
                offset: self.pos,
                needed: u64::from(count) - self.remaining(),
            });
        }
        let mut value = 0u64;
        for _ in 0..count {
            value = (value << 1) | u64::from(self.read_bit()?);
        }
        Ok(value)
    }

    /// Fails with a corrupt-stream error if any payload bits remain.
    pub fn expect_exhausted(&self) -> Result<()> {
        if self.is_exhausted() {
            Ok(())
        } else {
            Err(Error::Corrupt(format!(
                "{} trailing payload bit(s) after the last codeword",
                self.remaining()
            )))
        }
    }
}
