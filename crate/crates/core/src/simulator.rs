//! Synthetic SDN traffic: host profiles, switch topology, flow-table misses
//! and the controller-overload condition.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detector::{ConfusionCounts, HostMonitor, Verdict};
use crate::error::{Error, Result};
use crate::frequency::{FrequencyVector, DEFAULT_UNIQUE_RATIO};
use crate::seed::child_seed;
use crate::sketch::AmsSketch;
use crate::{HeaderId, HostId};

pub const DEFAULT_P_UNIQUE: f64 = 0.95;

const ATTACKER_STREAM: u64 = 0;
const SKETCH_STREAM: u64 = 1;
const TRAFFIC_STREAM: u64 = 2;

/// A contiguous block of header ids `[start, start + len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeaderRange {
    pub start: HeaderId,
    pub len: u64,
}

impl HeaderRange {
    pub fn new(start: HeaderId, len: u64) -> Self {
        HeaderRange { start, len }
    }

    pub fn contains(&self, h: HeaderId) -> bool {
        h >= self.start && h - self.start < self.len
    }
}

/// Behavioural model of a host's ingress traffic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HostProfile {
    /// Draws uniformly from a fixed pool of `pool_size` headers.
    Good { pool_size: u64 },
    /// Sends a never-used header with probability `p_unique`, otherwise
    /// repeats one of its earlier headers.
    Zombie { p_unique: f64 },
}

impl HostProfile {
    pub fn kind(&self) -> Verdict {
        match self {
            HostProfile::Good { .. } => Verdict::Good,
            HostProfile::Zombie { .. } => Verdict::Zombie,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            HostProfile::Good { pool_size: 0 } => {
                Err(Error::Domain("pool_size must be at least 1"))
            }
            HostProfile::Zombie { p_unique } if !(0.0..=1.0).contains(&p_unique) => {
                Err(Error::Domain("p_unique must lie in [0, 1]"))
            }
            _ => Ok(()),
        }
    }
}

/// Generates `packets` header ids for one host, deterministically in `seed`.
pub fn generate_stream(
    profile: HostProfile,
    packets: u64,
    universe: HeaderRange,
    seed: u64,
) -> Result<Vec<HeaderId>> {
    profile.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stream = Vec::with_capacity(packets as usize);
    match profile {
        HostProfile::Good { pool_size } => {
            if pool_size > universe.len {
                return Err(Error::UniverseExhausted {
                    needed: pool_size,
                    available: universe.len,
                });
            }
            let pool: Vec<HeaderId> =
                index::sample(&mut rng, universe.len as usize, pool_size as usize)
                    .into_iter()
                    .map(|i| universe.start + i as u64)
                    .collect();
            for _ in 0..packets {
                stream.push(pool[rng.gen_range(0..pool.len())]);
            }
        }
        HostProfile::Zombie { p_unique } => {
            let reserve = packets.min(universe.len);
            let mut fresh = index::sample(&mut rng, universe.len as usize, reserve as usize)
                .into_iter()
                .map(|i| universe.start + i as u64);
            let mut used: Vec<HeaderId> = Vec::new();
            for _ in 0..packets {
                if used.is_empty() || rng.gen_bool(p_unique) {
                    let h = fresh.next().ok_or(Error::UniverseExhausted {
                        needed: used.len() as u64 + 1,
                        available: universe.len,
                    })?;
                    used.push(h);
                    stream.push(h);
                } else {
                    stream.push(used[rng.gen_range(0..used.len())]);
                }
            }
        }
    }
    Ok(stream)
}

/// Reactive flow table: every header installs a rule on its first miss.
/// Rules never expire.
#[derive(Debug, Clone, Default)]
pub struct FlowTable {
    rules: BTreeSet<HeaderId>,
}

impl FlowTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` on a table miss (the packet goes to the controller).
    pub fn lookup(&mut self, header: HeaderId) -> bool {
        self.rules.insert(header)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Packets of `stream` that miss an initially empty flow table.
pub fn table_misses(stream: &[HeaderId]) -> u64 {
    let mut table = FlowTable::new();
    stream.iter().filter(|&&h| table.lookup(h)).count() as u64
}

/// Total controller load: the sum of every switch's table misses.
pub fn controller_load(per_switch_misses: &[u64]) -> u64 {
    per_switch_misses.iter().sum()
}

/// The attack succeeds once the controller load reaches its capacity.
pub fn attack_successful(load: u64, capacity: u64) -> bool {
    capacity <= load
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Switch {
    /// Carried for reporting only; no buffer dynamics are simulated.
    pub buffer_capacity: u64,
    pub hosts: Vec<HostId>,
    pub headers: HeaderRange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub controller_capacity: u64,
    pub switches: Vec<Switch>,
}

impl Topology {
    /// Hosts `0..num_hosts` attached round-robin, with the header space
    /// `[0, num_headers)` split into equal disjoint blocks, one per switch.
    pub fn round_robin(
        num_hosts: u64,
        num_switches: u64,
        num_headers: u64,
        controller_capacity: u64,
        buffer_capacity: u64,
    ) -> Result<Self> {
        if num_switches == 0 {
            return Err(Error::InvalidConfig("at least one switch is required"));
        }
        let block = num_headers / num_switches;
        if block == 0 {
            return Err(Error::InvalidConfig("fewer headers than switches"));
        }
        let switches = (0..num_switches)
            .map(|s| Switch {
                buffer_capacity,
                hosts: (s..num_hosts).step_by(num_switches as usize).collect(),
                headers: HeaderRange::new(s * block, block),
            })
            .collect();
        Ok(Topology {
            controller_capacity,
            switches,
        })
    }

    pub fn switch_of(&self, host: HostId) -> Option<usize> {
        self.switches.iter().position(|s| s.hosts.contains(&host))
    }
}

/// Parameters of one simulated experiment. Defaults reproduce the
/// published operating point: 30 hosts, 5 switches, 5000 headers,
/// 4 attackers, M = 50, d = 4, 50 runs.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub num_hosts: u64,
    pub num_switches: u64,
    pub num_headers: u64,
    pub num_attackers: u64,
    pub packets: u64,
    pub depth: usize,
    /// `None` means `tau = packets`.
    pub tau: Option<f64>,
    pub runs: u64,
    pub master_seed: u64,
    /// `None` means `max(1, packets / 10)`.
    pub pool_size: Option<u64>,
    pub p_unique: f64,
    /// `None` means `packets * num_switches`.
    pub controller_capacity: Option<u64>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            num_hosts: 30,
            num_switches: 5,
            num_headers: 5000,
            num_attackers: 4,
            packets: 50,
            depth: 4,
            tau: None,
            runs: 50,
            master_seed: 0,
            pool_size: None,
            p_unique: DEFAULT_P_UNIQUE,
            controller_capacity: None,
        }
    }
}

impl TrialConfig {
    pub fn tau(&self) -> f64 {
        self.tau.unwrap_or(self.packets as f64)
    }

    pub fn pool_size(&self) -> u64 {
        self.pool_size.unwrap_or((self.packets / 10).max(1))
    }

    pub fn controller_capacity(&self) -> u64 {
        self.controller_capacity
            .unwrap_or(self.packets * self.num_switches)
    }

    pub fn good_profile(&self) -> HostProfile {
        HostProfile::Good {
            pool_size: self.pool_size(),
        }
    }

    pub fn zombie_profile(&self) -> HostProfile {
        HostProfile::Zombie {
            p_unique: self.p_unique,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg| Err(Error::InvalidConfig(msg));
        if self.num_hosts == 0 {
            return fail("hosts must be at least 1");
        }
        if self.num_attackers > self.num_hosts {
            return fail("attackers must not exceed hosts");
        }
        if self.num_switches == 0 {
            return fail("switches must be at least 1");
        }
        if self.num_headers == 0 {
            return fail("headers must be at least 1");
        }
        if self.num_headers < self.num_switches {
            return fail("headers must be at least the number of switches");
        }
        if self.packets == 0 {
            return fail("packets must be at least 1");
        }
        if self.packets > i64::MAX as u64 {
            return fail("packets exceeds the counter range");
        }
        if self.depth == 0 {
            return fail("hash_functions must be at least 1");
        }
        if !(self.tau() > 0.0 && self.tau().is_finite()) {
            return fail("tau must be positive");
        }
        if self.runs == 0 {
            return fail("runs must be at least 1");
        }
        if self.pool_size() == 0 {
            return fail("pool_size must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.p_unique) {
            return fail("p_unique must lie in [0, 1]");
        }
        Ok(())
    }

    pub fn topology(&self) -> Result<Topology> {
        Topology::round_robin(
            self.num_hosts,
            self.num_switches,
            self.num_headers,
            self.controller_capacity(),
            self.packets,
        )
    }
}

/// Per-host result of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HostRecord {
    pub host: HostId,
    pub switch: usize,
    pub actual: Verdict,
    pub predicted: Verdict,
    /// Label from the exact `F0 / M >= 80%` rule.
    pub oracle: Verdict,
    pub f2_estimate: f64,
    pub f0_exact: u64,
    pub f2_exact: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllerMetrics {
    pub per_switch_misses: Vec<u64>,
    pub load: u64,
    pub capacity: u64,
    pub attack_successful: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub records: Vec<HostRecord>,
    pub confusion: ConfusionCounts,
    pub controller: ControllerMetrics,
}

impl TrialOutcome {
    /// Re-tallies the fixed per-host scores against another threshold.
    pub fn confusion_at(&self, tau: f64) -> ConfusionCounts {
        self.records
            .iter()
            .map(|r| (crate::detector::classify(r.f2_estimate, tau), r.actual))
            .collect()
    }
}

/// One host's generated window of traffic.
#[derive(Debug, Clone, PartialEq)]
pub struct HostTraffic {
    pub host: HostId,
    pub switch: usize,
    pub profile: HostProfile,
    pub stream: Vec<HeaderId>,
}

/// Picks the attackers and generates one window per host, grouped by switch
/// in topology order.
pub fn generate_traffic(config: &TrialConfig, trial_seed: u64) -> Result<Vec<HostTraffic>> {
    config.validate()?;
    let topology = config.topology()?;

    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(trial_seed, ATTACKER_STREAM));
    let attackers: BTreeSet<HostId> = index::sample(
        &mut rng,
        config.num_hosts as usize,
        config.num_attackers as usize,
    )
    .into_iter()
    .map(|h| h as HostId)
    .collect();

    let traffic_seed = child_seed(trial_seed, TRAFFIC_STREAM);
    let mut out = Vec::with_capacity(config.num_hosts as usize);
    for (s, switch) in topology.switches.iter().enumerate() {
        for &host in &switch.hosts {
            let profile = if attackers.contains(&host) {
                config.zombie_profile()
            } else {
                config.good_profile()
            };
            let stream = generate_stream(
                profile,
                config.packets,
                switch.headers,
                child_seed(traffic_seed, host),
            )?;
            out.push(HostTraffic {
                host,
                switch: s,
                profile,
                stream,
            });
        }
    }
    Ok(out)
}

/// Seed of the hash functions shared by every switch in a trial.
pub fn trial_sketch_seed(trial_seed: u64) -> u64 {
    child_seed(trial_seed, SKETCH_STREAM)
}

/// Runs one window of traffic for every host and classifies it.
///
/// Everything random (attacker choice, hash functions, traffic) is derived
/// from `trial_seed`, so the outcome is a pure function of its inputs.
pub fn run_trial(config: &TrialConfig, trial_seed: u64) -> Result<TrialOutcome> {
    let traffic = generate_traffic(config, trial_seed)?;
    let sketch = AmsSketch::new(config.depth, trial_sketch_seed(trial_seed))?;

    let mut records = Vec::with_capacity(traffic.len());
    let mut tables = alloc::vec![FlowTable::new(); config.num_switches as usize];
    let mut per_switch_misses = alloc::vec![0u64; config.num_switches as usize];
    for t in &traffic {
        let mut monitor = HostMonitor::new(t.host, sketch.clone(), config.packets, config.tau())?;
        let verdict = t
            .stream
            .iter()
            .filter_map(|&h| monitor.ingest(h))
            .last()
            .expect("stream holds exactly one window");
        let table = &mut tables[t.switch];
        per_switch_misses[t.switch] += t.stream.iter().filter(|&&h| table.lookup(h)).count() as u64;

        let exact: FrequencyVector = t.stream.iter().copied().collect();
        records.push(HostRecord {
            host: t.host,
            switch: t.switch,
            actual: t.profile.kind(),
            predicted: verdict.verdict,
            oracle: exact.ground_truth_label(DEFAULT_UNIQUE_RATIO)?,
            f2_estimate: verdict.f2_estimate,
            f0_exact: exact.f0(),
            f2_exact: exact.f2(),
        });
    }
    records.sort_by_key(|r| r.host);

    let confusion = records.iter().map(|r| (r.predicted, r.actual)).collect();
    let load = controller_load(&per_switch_misses);
    let capacity = config.controller_capacity();
    Ok(TrialOutcome {
        records,
        confusion,
        controller: ControllerMetrics {
            per_switch_misses,
            load,
            capacity,
            attack_successful: attack_successful(load, capacity),
        },
    })
}
