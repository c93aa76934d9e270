//! AMS sketch for the second frequency moment.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hash::SignHash;
use crate::seed::child_seed;
use crate::HeaderId;

/// `d` signed counters, each fed by its own 4-wise sign hash.
///
/// The state is `d` hashes plus `d` counters plus a packet count; it does not
/// grow with the stream or the header universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmsSketch {
    hashes: Vec<SignHash>,
    counters: Vec<i64>,
    packets_seen: u64,
}

impl AmsSketch {
    /// Row `i` uses the hash seeded by `child_seed(seed, i)`.
    pub fn new(depth: usize, seed: u64) -> Result<Self> {
        if depth == 0 {
            return Err(Error::ZeroDepth);
        }
        let hashes = (0..depth as u64)
            .map(|i| SignHash::new(child_seed(seed, i)))
            .collect();
        Ok(AmsSketch {
            hashes,
            counters: alloc::vec![0; depth],
            packets_seen: 0,
        })
    }

    pub fn depth(&self) -> usize {
        self.counters.len()
    }

    pub fn counters(&self) -> &[i64] {
        &self.counters
    }

    pub fn hashes(&self) -> &[SignHash] {
        &self.hashes
    }

    pub fn packets_seen(&self) -> u64 {
        self.packets_seen
    }

    /// Adds `g_i(header)` to every counter.
    ///
    /// On overflow the sketch is left untouched.
    pub fn update(&mut self, header: HeaderId) -> Result<()> {
        // |X_i| <= packets_seen, so one bound check covers every row.
        if self.packets_seen >= i64::MAX as u64 {
            return Err(Error::CounterOverflow);
        }
        for (x, h) in self.counters.iter_mut().zip(&self.hashes) {
            *x += h.sign(header);
        }
        self.packets_seen += 1;
        Ok(())
    }

    /// Mean of the squared counters.
    pub fn estimate_f2(&self) -> f64 {
        let sum: f64 = self
            .counters
            .iter()
            .map(|&x| {
                let x = x as f64;
                x * x
            })
            .sum();
        sum / self.counters.len() as f64
    }

    /// Zeroes the counters and packet count, keeping the hash functions.
    pub fn reset(&mut self) {
        self.counters.iter_mut().for_each(|x| *x = 0);
        self.packets_seen = 0;
    }
}

/// Smallest depth `ceil(2 / (epsilon^2 * delta))` for which the mean
/// estimator is within a factor `epsilon` of F2 with probability `1 - delta`.
pub fn required_depth(epsilon: f64, delta: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain("epsilon must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain("delta must lie in (0, 1)"));
    }
    let d = libm::ceil(2.0 / (epsilon * epsilon * delta));
    if d > usize::MAX as f64 {
        return Err(Error::Domain("epsilon too small for an addressable depth"));
    }
    Ok(d as usize)
}
