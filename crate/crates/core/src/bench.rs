//! Partition-vs-bipartition scaling: enumeration counts and timings of the
//! averaged φ and ψ searches on seeded random threshold networks.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::net::{build_transition_map, uniform_joint, NetworkSpec, Threshold, TransitionMap};
use crate::parts::{
    bipartition_count, enumerate_bipartitions, enumerate_partitions, partition_count,
};
use crate::phi::{EiMode, PhiAnalyzer};
use crate::psi::bracket_psi_bounds;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// φ is timed only up to this size; beyond it Bell(n) gets impractical.
    pub phi_max_nodes: usize,
    pub psi_max_nodes: usize,
    /// Best-of repeats per timing.
    pub repeats: usize,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            min_nodes: 4,
            max_nodes: 12,
            phi_max_nodes: 12,
            psi_max_nodes: 14,
            repeats: 3,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub nodes: usize,
    pub partitions: u128,
    pub bipartitions: u128,
    /// Whether the counts came from walking the enumerators.
    pub enumerated: bool,
    pub expected_partitions: Option<u128>,
    pub expected_bipartitions: Option<u128>,
    pub phi_time: Option<Duration>,
    pub psi_time: Option<Duration>,
}

impl BenchRow {
    pub fn counts_ok(&self) -> bool {
        Some(self.partitions) == self.expected_partitions
            && Some(self.bipartitions) == self.expected_bipartitions
    }

    /// `None` when either side was not timed.
    pub fn psi_faster(&self) -> Option<bool> {
        Some(self.psi_time? < self.phi_time?)
    }
}

/// A random threshold network: each edge present with probability 1/2,
/// thresholds in `1..=3`.
pub fn random_network(n: usize, rng: &mut impl Rng) -> Result<TransitionMap> {
    let thresholds = (0..n)
        .map(|_| Threshold::Finite(rng.gen_range(1..=3)))
        .collect();
    let mut edges = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if rng.gen_bool(0.5) {
                edges.push((s, d));
            }
        }
    }
    build_transition_map(&NetworkSpec::new(thresholds, edges)?)
}

fn best_of<F: FnMut() -> Result<()>>(repeats: usize, mut f: F) -> Result<Duration> {
    let mut best = Duration::MAX;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        f()?;
        best = best.min(start.elapsed());
    }
    Ok(best)
}

pub fn run_bench(opts: &BenchOptions) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    for n in opts.min_nodes.max(2)..=opts.max_nodes {
        let map = random_network(n, &mut rng)?;
        let joint = uniform_joint(&map);
        let time_phi = n <= opts.phi_max_nodes;
        let (partitions, bipartitions) = if time_phi {
            (
                enumerate_partitions(n)?.count() as u128,
                enumerate_bipartitions(n)?.count() as u128,
            )
        } else {
            (
                partition_count(n).unwrap_or(u128::MAX),
                bipartition_count(n).unwrap_or(u128::MAX),
            )
        };
        let phi_time = if time_phi {
            Some(best_of(opts.repeats, || {
                PhiAnalyzer::new(&joint)?
                    .bracket(EiMode::Standard)
                    .map(drop)
            })?)
        } else {
            None
        };
        let psi_time = if n <= opts.psi_max_nodes {
            Some(best_of(opts.repeats, || {
                bracket_psi_bounds(&joint).map(drop)
            })?)
        } else {
            None
        };
        rows.push(BenchRow {
            nodes: n,
            partitions,
            bipartitions,
            enumerated: time_phi,
            expected_partitions: bell_oracle(n).map(|b| b - 1),
            expected_bipartitions: 1u128.checked_shl(n as u32 - 1).map(|p| p - 1),
            phi_time,
            psi_time,
        });
    }
    Ok(rows)
}

/// Bell numbers by the Bell triangle, independent of the Stirling route
/// used by `partition_count`.
pub fn bell_oracle(n: usize) -> Option<u128> {
    let mut row = vec![1u128];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last()?);
        for &v in &row {
            let last = *next.last()?;
            next.push(last.checked_add(v)?);
        }
        row = next;
    }
    row.first().copied()
}

fn ms(d: Option<Duration>) -> String {
    d.map_or("-".into(), |d| format!("{:.3}", d.as_secs_f64() * 1e3))
}

pub fn render_bench(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str("| n | partitions | Bell(n)-1 | bipartitions | 2^(n-1)-1 | <phi> ms | <psi> ms | psi faster |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let show = |v: Option<u128>| v.map_or("overflow".to_string(), |v| v.to_string());
        let counted = |v: u128| {
            if r.enumerated {
                v.to_string()
            } else {
                format!("{v} (formula)")
            }
        };
        let faster = match r.psi_faster() {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            r.nodes,
            counted(r.partitions),
            show(r.expected_partitions),
            counted(r.bipartitions),
            show(r.expected_bipartitions),
            ms(r.phi_time),
            ms(r.psi_time),
            faster
        );
    }
    let counts = rows.iter().all(BenchRow::counts_ok);
    let _ = writeln!(out, "\ncounts match: {}", if counts { "yes" } else { "NO" });
    let timed: Vec<&BenchRow> = rows
        .iter()
        .filter(|r| r.nodes >= 8 && r.psi_faster().is_some())
        .collect();
    if !timed.is_empty() {
        let all = timed.iter().all(|r| r.psi_faster() == Some(true));
        let _ = writeln!(
            out,
            "psi faster than phi for every timed n >= 8: {}",
            if all { "yes" } else { "NO" }
        );
    }
    out
}
