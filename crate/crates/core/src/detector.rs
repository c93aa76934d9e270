//! Windowed zombie classification on top of the F2 sketch.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::sketch::AmsSketch;
use crate::{HeaderId, HostId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Good,
    Zombie,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Good => "good",
            Verdict::Zombie => "zombie",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good" => Ok(Verdict::Good),
            "zombie" => Ok(Verdict::Zombie),
            _ => Err(Error::Domain("verdict must be \"good\" or \"zombie\"")),
        }
    }
}

/// Zombie iff the F2 estimate is at most `tau`.
///
/// An all-unique window has F2 = M while repeated headers push F2 well
/// above M, so a low score marks the host as suspicious.
#[inline]
pub fn classify(f2_estimate: f64, tau: f64) -> Verdict {
    if f2_estimate <= tau {
        Verdict::Zombie
    } else {
        Verdict::Good
    }
}

/// One classified window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowVerdict {
    pub host: HostId,
    pub window: u64,
    pub f2_estimate: f64,
    pub verdict: Verdict,
}

/// Sketch state and window bookkeeping for a single host.
#[derive(Debug, Clone)]
pub struct HostMonitor {
    host: HostId,
    sketch: AmsSketch,
    window: u64,
    tau: f64,
    windows_closed: u64,
}

impl HostMonitor {
    pub fn new(host: HostId, sketch: AmsSketch, window: u64, tau: f64) -> Result<Self> {
        if window == 0 {
            return Err(Error::Domain("window must hold at least one packet"));
        }
        if window > i64::MAX as u64 {
            return Err(Error::Domain("window exceeds the counter range"));
        }
        if tau.is_nan() || tau <= 0.0 {
            return Err(Error::Domain("tau must be positive"));
        }
        Ok(HostMonitor {
            host,
            sketch,
            window,
            tau,
            windows_closed: 0,
        })
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn sketch(&self) -> &AmsSketch {
        &self.sketch
    }

    /// Feeds one packet. The packet that completes a window yields the
    /// window's verdict, and the sketch is reset before returning.
    pub fn ingest(&mut self, header: HeaderId) -> Option<WindowVerdict> {
        self.sketch
            .update(header)
            .expect("packets_seen < window <= i64::MAX");
        if self.sketch.packets_seen() < self.window {
            return None;
        }
        let f2_estimate = self.sketch.estimate_f2();
        let out = WindowVerdict {
            host: self.host,
            window: self.windows_closed,
            f2_estimate,
            verdict: classify(f2_estimate, self.tau),
        };
        self.sketch.reset();
        self.windows_closed += 1;
        Some(out)
    }
}

/// The eleven integer thresholds `M-5 ..= M+5`.
pub fn default_tau_sweep(window: u64) -> Result<Vec<u64>> {
    if window <= 5 {
        return Err(Error::Domain(
            "window must exceed 5 packets for a tau sweep",
        ));
    }
    Ok((window - 5..=window + 5).collect())
}

/// Confusion tallies with Zombie as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn tally(&mut self, predicted: Verdict, actual: Verdict) {
        match (predicted, actual) {
            (Verdict::Zombie, Verdict::Zombie) => self.tp += 1,
            (Verdict::Good, Verdict::Good) => self.tn += 1,
            (Verdict::Zombie, Verdict::Good) => self.fp += 1,
            (Verdict::Good, Verdict::Zombie) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// True-positive rate in percent.
    pub fn tp_rate(&self) -> Result<f64> {
        let positives = self.tp + self.fn_;
        if positives == 0 {
            return Err(Error::UndefinedRate("zombie"));
        }
        Ok(100.0 * self.tp as f64 / positives as f64)
    }

    /// True-negative rate in percent.
    pub fn tn_rate(&self) -> Result<f64> {
        let negatives = self.tn + self.fp;
        if negatives == 0 {
            return Err(Error::UndefinedRate("good"));
        }
        Ok(100.0 * self.tn as f64 / negatives as f64)
    }

    pub fn rates(&self) -> Result<(f64, f64)> {
        Ok((self.tp_rate()?, self.tn_rate()?))
    }
}

impl FromIterator<(Verdict, Verdict)> for ConfusionCounts {
    fn from_iter<I: IntoIterator<Item = (Verdict, Verdict)>>(iter: I) -> Self {
        let mut c = ConfusionCounts::default();
        for (predicted, actual) in iter {
            c.tally(predicted, actual);
        }
        c
    }
}
