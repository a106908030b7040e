//! A steganographic-security workbench: bit-level stegosystems,
//! pseudorandom generators, concrete distinguishers, and the
//! indistinguishability games that tie them together, with exact rational
//! oracles at desk scale.

pub mod bits;
pub mod detectors;
pub mod error;
pub mod experiment;
pub mod game;
pub mod prng;
pub mod probsets;
pub mod rng;
pub mod schemes;

pub use bits::{BitString, Format};
pub use error::Error;
pub use rng::RandomSource;
