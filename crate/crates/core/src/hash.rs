//! 4-wise independent sign hashes.
//!
//! A [`SignHash`] is a random cubic polynomial over GF(p), p = 2^61 - 1,
//! whose value's low bit picks the sign. Random coefficients make the
//! polynomial values of any four distinct keys jointly uniform, which is the
//! property the F2 variance bound relies on.

use rand::RngCore;

use crate::seed::splitmix;
use crate::HeaderId;

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u64) -> u64 {
    let folded = (x & MERSENNE_61) + (x >> 61);
    if folded >= MERSENNE_61 {
        folded - MERSENNE_61
    } else {
        folded
    }
}

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let prod = (a as u128) * (b as u128);
    let lo = (prod as u64) & MERSENNE_61;
    let hi = (prod >> 61) as u64;
    reduce(lo + hi)
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    reduce(a + b)
}

/// One member of the degree-3 polynomial family mapping header ids to ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignHash {
    coeffs: [u64; 4],
}

impl SignHash {
    /// Builds the hash whose coefficients `a0..a3` are four successive
    /// SplitMix64 draws from `seed`, each reduced into `[0, p)`.
    pub fn new(seed: u64) -> Self {
        let mut rng = splitmix(seed);
        let mut coeffs = [0u64; 4];
        for c in coeffs.iter_mut() {
            *c = reduce(rng.next_u64() >> 3);
        }
        SignHash { coeffs }
    }

    /// Coefficients `[a0, a1, a2, a3]`.
    pub fn coefficients(&self) -> [u64; 4] {
        self.coeffs
    }

    /// Raw polynomial value `a3*k^3 + a2*k^2 + a1*k + a0 mod p`.
    #[inline]
    pub fn eval(&self, key: HeaderId) -> u64 {
        let k = reduce(key);
        let [a0, a1, a2, a3] = self.coeffs;
        let mut acc = a3;
        acc = add_mod(mul_mod(acc, k), a2);
        acc = add_mod(mul_mod(acc, k), a1);
        add_mod(mul_mod(acc, k), a0)
    }

    /// +1 when the polynomial value is odd, -1 otherwise.
    #[inline]
    pub fn sign(&self, key: HeaderId) -> i64 {
        ((self.eval(key) & 1) as i64) * 2 - 1
    }
}
