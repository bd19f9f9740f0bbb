//! Bit streams, container framing and the Elias gamma family.

mod container;
mod gamma;
mod stream;

pub use container::{
    read_container, write_container, ContainerHeader, Scheme, HEADER_LEN, MAGIC, VERSION,
};
pub use gamma::{
    gamma_decode, gamma_encode, gamma_length, shifted_gamma_decode, shifted_gamma_encode,
    shifted_gamma_length,
};
pub use stream::{BitSink, BitSource};
