//! Reproducible sample streams.
//!
//! Generator: ChaCha20 (RFC 8439 block function, 20 rounds) as implemented by
//! `rand_chacha::ChaCha20Rng`. The 32-byte key is the 64-bit seed in
//! little-endian order followed by 24 zero bytes; the 64-bit stream id selects
//! an independent sub-stream per purpose. A 64-bit draw is two consecutive
//! 32-bit output words, low word first. Integers in [-B, B] are drawn by
//! rejection: with n = 2B + 1, draws x >= n * floor(2^64 / n) are discarded,
//! otherwise the value is (x mod n) - B.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::exactnum::{PrimeField, Scalar};

/// Coordinates of sample points are uniform integers in [-SAMPLE_BOUND, SAMPLE_BOUND].
pub const SAMPLE_BOUND: u64 = 1_000_000;

/// Stream ids, one per sampling purpose.
pub mod streams {
    pub const LINE_A: u64 = 1;
    pub const LINE_B: u64 = 2;
    pub const SUBSPACE: u64 = 3;
    pub const BLOWUP: u64 = 4;
    pub const GERMS: u64 = 5;
    pub const CERTIFY_POINTS: u64 = 6;
    pub const CERTIFY_LINE: u64 = 7;
    pub const INTEGRALS: u64 = 8;
    pub const PARAMS: u64 = 9;
    pub const SEARCH: u64 = 10;
    pub const NSTAR: u64 = 11;
    pub const PREFIXED: u64 = 12;
    pub const CHAIN: u64 = 13;
}

pub struct SampleStream {
    rng: ChaCha20Rng,
}

impl SampleStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(stream);
        SampleStream { rng }
    }

    /// Derived stream for retry number `attempt` of a purpose.
    pub fn retry(seed: u64, stream: u64, attempt: u64) -> Self {
        Self::new(seed, stream.wrapping_add(attempt << 32))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform integer in [-bound, bound].
    pub fn int_in(&mut self, bound: u64) -> i64 {
        let n = 2 * bound as u128 + 1;
        let zone = (u64::MAX as u128 + 1) / n * n;
        loop {
            let x = self.next_u64() as u128;
            if x < zone {
                return (x % n) as i64 - bound as i64;
            }
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::from_int(self.int_in(SAMPLE_BOUND))
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// Uniform element of a prime field (rejection on the top range).
    pub fn field_elem<F: PrimeField>(&mut self) -> F {
        let p = F::modulus();
        let zone = u64::MAX - (u64::MAX % p);
        loop {
            let x = self.next_u64();
            if x < zone {
                return F::from_u64(x % p);
            }
        }
    }

    pub fn field_vector<F: PrimeField>(&mut self, n: usize) -> Vec<F> {
        (0..n).map(|_| self.field_elem()).collect()
    }
}
