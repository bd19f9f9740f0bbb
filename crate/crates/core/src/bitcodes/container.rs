//! On-disk framing for codewords.
//!
//! Layout (all integers little-endian):
//!
//! | offset | size | field          |
//! |--------|------|----------------|
//! | 0      | 4    | magic `DSIM`   |
//! | 4      | 1    | version `0x01` |
//! | 5      | 1    | scheme         |
//! | 6      | 8    | n (samples)    |
//! | 14     | 8    | payload bits   |
//! | 22     | ...  | payload, MSB-first, zero padded |

use std::fmt;

use super::{BitSink, BitSource};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"DSIM";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Scheme {
    /// Difference run-length code over positive integers.
    Integer = 0x01,
    /// Dyadic rectangle code over `[0, 1]`.
    UnitInterval = 0x02,
    /// Integer code on bins followed by per-bin unit-interval codes.
    HalfLine = 0x03,
}

impl Scheme {
    pub fn from_byte(byte: u8) -> Result<Self> {
        match byte {
            0x01 => Ok(Scheme::Integer),
            0x02 => Ok(Scheme::UnitInterval),
            0x03 => Ok(Scheme::HalfLine),
            other => Err(Error::BadScheme(other)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Integer => "int",
            Scheme::UnitInterval => "unit",
            Scheme::HalfLine => "halfline",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int" | "integer" => Ok(Scheme::Integer),
            "unit" | "unit-interval" => Ok(Scheme::UnitInterval),
            "halfline" | "half-line" => Ok(Scheme::HalfLine),
            other => Err(Error::InvalidArgument(format!("unknown scheme '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContainerHeader {
    pub scheme: Scheme,
    pub n: u64,
    pub payload_bits: u64,
}

impl ContainerHeader {
    pub fn expect_scheme(&self, scheme: Scheme) -> Result<()> {
        if self.scheme == scheme {
            Ok(())
        } else {
            Err(Error::SchemeMismatch {
                expected: scheme.name(),
                found: self.scheme.name(),
            })
        }
    }
}

pub fn write_container(scheme: Scheme, n: u64, payload: &BitSink) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.as_bytes().len());
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(scheme as u8);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&payload.len().to_le_bytes());
    out.extend_from_slice(payload.as_bytes());
    out
}

pub fn read_container(bytes: &[u8]) -> Result<(ContainerHeader, BitSource<'_>)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            offset: bytes.len() as u64 * 8,
            needed: (HEADER_LEN - bytes.len()) as u64 * 8,
        });
    }
    let magic: [u8; 4] = bytes[0..4].try_into().expect("slice of length 4");
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    if bytes[4] != VERSION {
        return Err(Error::BadVersion(bytes[4]));
    }
    let scheme = Scheme::from_byte(bytes[5])?;
    let n = u64::from_le_bytes(bytes[6..14].try_into().expect("slice of length 8"));
    let payload_bits = u64::from_le_bytes(bytes[14..22].try_into().expect("slice of length 8"));
    let payload = &bytes[HEADER_LEN..];
    let source = BitSource::new(payload, payload_bits)?;

    // everything after the declared payload must be zero
    let full_bytes = (payload_bits / 8) as usize;
    let partial = (payload_bits % 8) as u32;
    let mut padding = &payload[full_bytes..];
    if partial != 0 {
        if padding[0] & (0xffu8 >> partial) != 0 {
            return Err(Error::Corrupt("nonzero padding bits".into()));
        }
        padding = &padding[1..];
    }
    if padding.iter().any(|&b| b != 0) {
        return Err(Error::Corrupt("nonzero padding bits".into()));
    }

    Ok((
        ContainerHeader {
            scheme,
            n,
            payload_bits,
        },
        source,
    ))
}
