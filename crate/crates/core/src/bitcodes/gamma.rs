//! Elias gamma code and its shifted variant for nonnegative integers.

use super::{BitSink, BitSource};
use crate::error::{invalid, Error, Result};

/// Writes `0^N ‖ 1 ‖ a_{N-1}…a_0` where `a_N…a_0` is the binary form of `z`.
pub fn gamma_encode(z: u64, sink: &mut BitSink) -> Result<()> {
    if z == 0 {
        return Err(invalid("Elias gamma code is defined for Z >= 1"));
    }
    let n = z.ilog2();
    sink.push_zeros(u64::from(n));
    sink.push_bits(z, n + 1);
    Ok(())
}

pub fn gamma_decode(source: &mut BitSource<'_>) -> Result<u64> {
    let mut zeros = 0u32;
    while !source.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(Error::Corrupt(
                "gamma codeword prefix longer than 63 zeros".into(),
            ));
        }
    }
    let tail = source.read_bits(zeros)?;
    Ok((1u64 << zeros) | tail)
}

/// Exact length of `gamma_encode(z)`: `2⌊log₂ z⌋ + 1`.
pub fn gamma_length(z: u64) -> Result<u64> {
    if z == 0 {
        return Err(invalid("Elias gamma code is defined for Z >= 1"));
    }
    Ok(2 * u64::from(z.ilog2()) + 1)
}

/// `g_s(x) = g(x + 1)`, so zero is encodable.
pub fn shifted_gamma_encode(x: u64, sink: &mut BitSink) -> Result<()> {
    let z = x
        .checked_add(1)
        .ok_or_else(|| invalid("shifted gamma argument too large"))?;
    gamma_encode(z, sink)
}

pub fn shifted_gamma_decode(source: &mut BitSource<'_>) -> Result<u64> {
    Ok(gamma_decode(source)? - 1)
}

pub fn shifted_gamma_length(x: u64) -> Result<u64> {
    gamma_length(
        x.checked_add(1)
            .ok_or_else(|| invalid("shifted gamma argument too large"))?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encode(z: u64) -> String {
        let mut sink = BitSink::new();
        gamma_encode(z, &mut sink).unwrap();
        sink.to_bit_string()
    }

    fn decode(bits: &str) -> u64 {
        let sink = BitSink::from_bit_string(bits).unwrap();
        let mut src = sink.source();
        let z = gamma_decode(&mut src).unwrap();
        assert!(src.is_exhausted());
        z
    }

    #[test]
    fn encode_vectors() {
        assert_eq!(encode(1), "1");
        assert_eq!(encode(4), "00100");
        assert_eq!(encode(7039).len(), 25);
        assert_eq!(encode(2), "010");
        assert_eq!(encode(5), "00101");
    }

    #[test]
    fn decode_vectors() {
        assert_eq!(decode("1"), 1);
        assert_eq!(decode("00100"), 4);
        assert_eq!(decode("0001010"), 10);
    }

    #[test]
    fn length_vectors() {
        assert_eq!(gamma_length(1).unwrap(), 1);
        assert_eq!(gamma_length(2).unwrap(), 3);
        assert_eq!(gamma_length(2055).unwrap(), 23);
        assert_eq!(gamma_length(7039).unwrap(), 25);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            gamma_encode(0, &mut BitSink::new()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(gamma_length(0).is_err());
    }

    #[test]
    fn shifted_vectors() {
        let enc = |x| {
            let mut s = BitSink::new();
            shifted_gamma_encode(x, &mut s).unwrap();
            s.to_bit_string()
        };
        assert_eq!(enc(0), "1");
        assert_eq!(enc(1), "010");
        assert_eq!(enc(3), "00100");
        assert!(shifted_gamma_encode(u64::MAX, &mut BitSink::new()).is_err());
    }

    #[test]
    fn truncated_codeword() {
        let sink = BitSink::from_bit_string("0010").unwrap();
        assert!(matches!(
            gamma_decode(&mut sink.source()),
            Err(Error::Truncated { .. })
        ));
        let sink = BitSink::from_bit_string("000").unwrap();
        assert!(matches!(
            gamma_decode(&mut sink.source()),
            Err(Error::Truncated { .. })
        ));
    }

    #[test]
    fn largest_value() {
        let mut sink = BitSink::new();
        gamma_encode(u64::MAX, &mut sink).unwrap();
        assert_eq!(sink.len(), 127);
        assert_eq!(gamma_decode(&mut sink.source()).unwrap(), u64::MAX);
    }
}
