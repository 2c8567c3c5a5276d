//! Effective information, minimum information partitions, and φ.
//!
//! State-dependent quantities condition on one output state `y`; the
//! bracket (`⟨·⟩`) variants average over `Y` before minimizing, so
//! `⟨φ⟩` generally differs from `E_y φ(y)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::{self, keyed_entropy, Dist, JointDist, NodeSet, StateSpace};
use crate::error::{Error, Result};
use crate::parts::{enumerate_partitions, Partition};

/// Slack used when comparing candidate costs; earlier candidates win ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// How the per-part conditionals in `ei(X → y / P)` are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EiMode {
    /// True conditional marginals `P(X_i | y_i)`.
    #[default]
    Standard,
    /// `P*(X_i | y_i)`: each node of the part reaches its state
    /// independently given the part's input.
    PerturbedWires,
}

impl fmt::Display for EiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EiMode::Standard => "standard",
            EiMode::PerturbedWires => "perturbed",
        })
    }
}

impl FromStr for EiMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(EiMode::Standard),
            "perturbed" | "perturbed_wires" => Ok(EiMode::PerturbedWires),
            _ => Err(Error::InvalidArgument(format!("unknown ei mode {s:?}"))),
        }
    }
}

/// Winner of a minimum-information-partition search.
#[derive(Debug, Clone, PartialEq)]
pub struct MipResult {
    pub partition: Partition,
    pub raw_ei_beyond: f64,
    /// `(m - 1) * min_i H(X_i)`.
    pub normalizer: f64,
    pub normalized_cost: f64,
}

/// Bracket measures of a system.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketPhi {
    /// `⟨ei⟩ = I(X; Y)`.
    pub ei: f64,
    pub mip: MipResult,
    /// `⟨φ⟩`: the raw averaged ei beyond `⟨MIP⟩`.
    pub phi: f64,
}

struct PStarTables {
    sub: StateSpace,
    /// `P(x_S)`
    px: Vec<f64>,
    /// `P(Y_j = v | x_S)` for each node `j` of the part, indexed `x_S * arity_j + v`.
    node_out: Vec<Vec<f64>>,
    /// `P*(y_S)`, filled on demand.
    norm: HashMap<usize, f64>,
}

#[derive(Default)]
struct PartTables {
    /// `P(x_S, y_S)` keyed by `(y_S, x_S)`.
    joint: HashMap<(usize, usize), f64>,
    /// `P(y_S)`
    out: HashMap<usize, f64>,
    pstar: Option<PStarTables>,
}

/// Per-system cache of part tables shared across states and partitions.
pub struct PhiAnalyzer<'a> {
    joint: &'a JointDist,
    parts: HashMap<NodeSet, PartTables>,
    input_entropy: HashMap<NodeSet, f64>,
    conditional_entropy: HashMap<NodeSet, f64>,
}

impl<'a> PhiAnalyzer<'a> {
    pub fn new(joint: &'a JointDist) -> Result<Self> {
        joint.require_same_nodes()?;
        if joint.input_space().node_count() < 2 {
            return Err(Error::TooFewNodes {
                min: 2,
                got: joint.input_space().node_count(),
            });
        }
        Ok(PhiAnalyzer {
            joint,
            parts: HashMap::new(),
            input_entropy: HashMap::new(),
            conditional_entropy: HashMap::new(),
        })
    }

    fn space(&self) -> &'a StateSpace {
        self.joint.input_space()
    }

    fn tables(&mut self, part: NodeSet) -> &mut PartTables {
        let joint = self.joint;
        self.parts.entry(part).or_insert_with(|| {
            let space = joint.input_space();
            let mut t = PartTables::default();
            for e in joint.entries() {
                let xs = space.restrict(e.input, part);
                let ys = space.restrict(e.output, part);
                *t.joint.entry((ys, xs)).or_insert(0.0) += e.mass;
                *t.out.entry(ys).or_insert(0.0) += e.mass;
            }
            t
        })
    }

    fn pstar_tables(&mut self, part: NodeSet) -> &mut PStarTables {
        let joint = self.joint;
        let tables = self.tables(part);
        tables.pstar.get_or_insert_with(|| {
            let space = joint.input_space();
            let card = space.card(part);
            let mut px = vec![0.0; card];
            let nodes: Vec<usize> = part.iter().collect();
            let mut node_out: Vec<Vec<f64>> = nodes
                .iter()
                .map(|&j| vec![0.0; card * space.arity(j)])
                .collect();
            for e in joint.entries() {
                let xs = space.restrict(e.input, part);
                px[xs] += e.mass;
                for (k, &j) in nodes.iter().enumerate() {
                    let a = space.arity(j);
                    node_out[k][xs * a + space.digit(e.output, j)] += e.mass;
                }
            }
            for (k, &j) in nodes.iter().enumerate() {
                let a = space.arity(j);
                for xs in 0..card {
                    if px[xs] > 0.0 {
                        for v in 0..a {
                            node_out[k][xs * a + v] /= px[xs];
                        }
                    }
                }
            }
            PStarTables {
                sub: space.subspace(part).expect("part validated"),
                px,
                node_out,
                norm: HashMap::new(),
            }
        })
    }

    /// `P*(x_S, y_S) = P(x_S) * prod_j P(y_j | x_S)`.
    fn pstar_joint(t: &PStarTables, xs: usize, ys: usize) -> f64 {
        let mut p = t.px[xs];
        if p == 0.0 {
            return 0.0;
        }
        for (k, table) in t.node_out.iter().enumerate() {
            let a = t.sub.arity(k);
            p *= table[xs * a + t.sub.digit(ys, k)];
        }
        p
    }

    /// `Q(x_S | y_S)` under the given mode; errors if `y_S` is unreachable.
    fn part_conditional(
        &mut self,
        part: NodeSet,
        xs: usize,
        ys: usize,
        mode: EiMode,
    ) -> Result<f64> {
        let space = self.space();
        match mode {
            EiMode::Standard => {
                let t = self.tables(part);
                let py = t.out.get(&ys).copied().unwrap_or(0.0);
                if py <= 0.0 {
                    return Err(part_unreachable(space, part, ys));
                }
                Ok(t.joint.get(&(ys, xs)).copied().unwrap_or(0.0) / py)
            }
            EiMode::PerturbedWires => {
                let t = self.pstar_tables(part);
                let norm = match t.norm.get(&ys) {
                    Some(&v) => v,
                    None => {
                        let v: f64 = (0..t.px.len()).map(|x| Self::pstar_joint(t, x, ys)).sum();
                        t.norm.insert(ys, v);
                        v
                    }
                };
                if norm <= 0.0 {
                    return Err(part_unreachable(space, part, ys));
                }
                Ok(Self::pstar_joint(t, xs, ys) / norm)
            }
        }
    }

    fn input_entropy(&mut self, part: NodeSet) -> f64 {
        let joint = self.joint;
        *self.input_entropy.entry(part).or_insert_with(|| {
            let px = joint.input_marginal();
            let space = joint.input_space();
            keyed_entropy(
                px.support()
                    .map(|(x, p)| (space.restrict(x, part) as u64, p))
                    .collect(),
            )
        })
    }

    /// `H(X_S | Y_S)`
    fn conditional_entropy(&mut self, part: NodeSet) -> f64 {
        let joint = self.joint;
        *self.conditional_entropy.entry(part).or_insert_with(|| {
            let space = joint.input_space();
            let card = space.card(part) as u64;
            let h_joint = keyed_entropy(
                joint
                    .entries()
                    .iter()
                    .map(|e| {
                        let ys = space.restrict(e.output, part) as u64;
                        (ys * card + space.restrict(e.input, part) as u64, e.mass)
                    })
                    .collect(),
            );
            let h_out = keyed_entropy(
                joint
                    .entries()
                    .iter()
                    .map(|e| (space.restrict(e.output, part) as u64, e.mass))
                    .collect(),
            );
            (h_joint - h_out).max(0.0)
        })
    }

    fn normalizer(&mut self, partition: &Partition) -> f64 {
        let parts = partition.parts();
        let min_h = parts
            .iter()
            .map(|&p| self.input_entropy(p))
            .fold(f64::INFINITY, f64::min);
        (partition.part_count() - 1) as f64 * min_h
    }

    fn check_partition(&self, p: &Partition) -> Result<()> {
        let n = self.space().node_count();
        if p.node_count() != n {
            return Err(Error::InvalidArgument(format!(
                "partition covers {} nodes, system has {n}",
                p.node_count()
            )));
        }
        Ok(())
    }

    /// `ei(X → y / P) = D_KL(P(X|y) || prod_i Q(X_i | y_i))`.
    pub fn ei_beyond(&mut self, y: usize, partition: &Partition, mode: EiMode) -> Result<f64> {
        self.check_partition(partition)?;
        let py = self.joint.require_reachable(y)?;
        let space = self.space();
        let parts = partition.parts();
        let mut d = 0.0;
        for e in self.joint.given_output(y) {
            let p = e.mass / py;
            let mut q = 1.0;
            for &part in &parts {
                let xs = space.restrict(e.input, part);
                let ys = space.restrict(y, part);
                q *= self.part_conditional(part, xs, ys, mode)?;
            }
            if q <= 0.0 {
                return Err(Error::AbsoluteContinuityViolation { state: e.input });
            }
            d += p * (p / q).log2();
        }
        Ok(d.max(0.0))
    }

    /// `⟨ei(X → Y / P)⟩`. In standard mode this is
    /// `sum_i H(X_i | Y_i) - H(X | Y)`; the perturbed mode averages state by
    /// state.
    pub fn bracket_ei_beyond(&mut self, partition: &Partition, mode: EiMode) -> Result<f64> {
        self.check_partition(partition)?;
        match mode {
            EiMode::Standard => {
                let all = self.space().all_nodes();
                let whole = self.conditional_entropy(all);
                let sum: f64 = partition
                    .parts()
                    .into_iter()
                    .map(|p| self.conditional_entropy(p))
                    .sum();
                Ok((sum - whole).max(0.0))
            }
            EiMode::PerturbedWires => {
                let outputs: Vec<(usize, f64)> = self.joint.output_marginal().support().collect();
                let mut total = 0.0;
                for (y, py) in outputs {
                    total += py * self.ei_beyond(y, partition, mode)?;
                }
                Ok(total)
            }
        }
    }

    fn minimize<F>(&mut self, mut raw: F) -> Result<MipResult>
    where
        F: FnMut(&mut Self, &Partition) -> Result<f64>,
    {
        let n = self.space().node_count();
        let mut best: Option<MipResult> = None;
        for partition in enumerate_partitions(n)? {
            let normalizer = self.normalizer(&partition);
            if normalizer <= 0.0 {
                continue;
            }
            let raw_ei_beyond = raw(self, &partition)?;
            let normalized_cost = raw_ei_beyond / normalizer;
            if best
                .as_ref()
                .is_none_or(|b| normalized_cost < b.normalized_cost - TIE_TOLERANCE)
            {
                best = Some(MipResult {
                    partition,
                    raw_ei_beyond,
                    normalizer,
                    normalized_cost,
                });
            }
        }
        best.ok_or(Error::DegenerateNormalizer)
    }

    pub fn find_mip(&mut self, y: usize, mode: EiMode) -> Result<MipResult> {
        self.joint.require_reachable(y)?;
        self.minimize(|a, p| a.ei_beyond(y, p, mode))
    }

    pub fn bracket(&mut self, mode: EiMode) -> Result<BracketPhi> {
        let mip = self.minimize(|a, p| a.bracket_ei_beyond(p, mode))?;
        Ok(BracketPhi {
            ei: dist::mutual_information(self.joint),
            phi: mip.raw_ei_beyond,
            mip,
        })
    }

    /// `E_y φ(y)` over reachable states.
    pub fn expected_state_phi(&mut self, mode: EiMode) -> Result<f64> {
        let outputs: Vec<(usize, f64)> = self.joint.output_marginal().support().collect();
        let mut total = 0.0;
        for (y, py) in outputs {
            total += py * self.find_mip(y, mode)?.raw_ei_beyond;
        }
        Ok(total)
    }
}

fn part_unreachable(space: &StateSpace, part: NodeSet, ys: usize) -> Error {
    let label = space
        .subspace(part)
        .map(|s| s.format_state(ys))
        .unwrap_or_else(|_| ys.to_string());
    Error::UnreachableState {
        state: format!("{label} (part {part})"),
    }
}

/// `ei(X → y) = D_KL(P(X|y) || P(X))`.
pub fn effective_information(j: &JointDist, y: usize) -> Result<f64> {
    dist::specific_surprise(j, y)
}

pub fn ei_beyond_partition(
    j: &JointDist,
    y: usize,
    partition: &Partition,
    mode: EiMode,
) -> Result<f64> {
    PhiAnalyzer::new(j)?.ei_beyond(y, partition, mode)
}

/// `P*(X_S | y_S)`, normalized over the part's input states.
pub fn pstar_part_conditional(j: &JointDist, part: NodeSet, y_part: usize) -> Result<Dist> {
    j.require_same_nodes()?;
    let space = j.input_space();
    space.check_nodes(part)?;
    let sub = space.subspace(part)?;
    sub.check_state(y_part)?;
    let mut analyzer = PhiAnalyzer {
        joint: j,
        parts: HashMap::new(),
        input_entropy: HashMap::new(),
        conditional_entropy: HashMap::new(),
    };
    let mass = (0..sub.total_states())
        .map(|xs| analyzer.part_conditional(part, xs, y_part, EiMode::PerturbedWires))
        .collect::<Result<Vec<f64>>>()?;
    Dist::new(sub, mass)
}

pub fn find_mip(j: &JointDist, y: usize, mode: EiMode) -> Result<MipResult> {
    PhiAnalyzer::new(j)?.find_mip(y, mode)
}

/// `φ(y)`: the raw ei beyond the state's MIP.
pub fn phi_of_state(j: &JointDist, y: usize, mode: EiMode) -> Result<f64> {
    Ok(find_mip(j, y, mode)?.raw_ei_beyond)
}

pub fn bracket_measures(j: &JointDist, mode: EiMode) -> Result<BracketPhi> {
    PhiAnalyzer::new(j)?.bracket(mode)
}

pub fn expected_state_phi(j: &JointDist, mode: EiMode) -> Result<f64> {
    PhiAnalyzer::new(j)?.expected_state_phi(mode)
}
