//! Exact discrete-probability kernel.
//!
//! Joint states are packed mixed-radix integers with node 0 as the most
//! significant digit, so the printed bitstring of a binary network reads left
//! to right from node 0. All information quantities are in bits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a distribution.
pub const MASS_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_MAX_NODES: usize = 20;

/// Hard ceiling imposed by the 64-bit node-set representation.
const ABSOLUTE_MAX_NODES: usize = 62;

/// Node cap for state spaces, `IRRLAB_MAX_NODES` when set, else 20.
pub fn max_nodes() -> usize {
    std::env::var("IRRLAB_MAX_NODES")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.clamp(1, ABSOLUTE_MAX_NODES))
        .unwrap_or(DEFAULT_MAX_NODES)
}

/// A set of node indices, stored as a bitmask (bit `i` is node `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    /// All nodes `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(node: usize) -> Self {
        NodeSet(1u64 << node)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, node: usize) -> bool {
        node < 64 && self.0 & (1u64 << node) != 0
    }

    pub fn insert(&mut self, node: usize) {
        self.0 |= 1u64 << node;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    /// Nodes of `0..n` not in `self`.
    pub fn complement(self, n: usize) -> NodeSet {
        NodeSet(!self.0 & NodeSet::full(n).0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = NodeSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Joint state space of `n` nodes with per-node alphabet sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    arities: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl StateSpace {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::InvalidStateSpace("no nodes".into()));
        }
        let cap = max_nodes();
        if arities.len() > cap {
            return Err(Error::TooManyNodes {
                max: cap,
                got: arities.len(),
            });
        }
        if let Some(a) = arities.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidStateSpace(format!("arity {a} < 2")));
        }
        let mut strides = vec![1; arities.len()];
        let mut total: usize = 1;
        for i in (0..arities.len()).rev() {
            strides[i] = total;
            total = total
                .checked_mul(arities[i])
                .ok_or_else(|| Error::InvalidStateSpace("state count overflows".into()))?;
        }
        Ok(StateSpace {
            arities,
            strides,
            total,
        })
    }

    pub fn binary(n: usize) -> Result<Self> {
        StateSpace::new(vec![2; n])
    }

    pub fn node_count(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn arity(&self, node: usize) -> usize {
        self.arities[node]
    }

    pub fn total_states(&self) -> usize {
        self.total
    }

    pub fn is_binary(&self) -> bool {
        self.arities.iter().all(|&a| a == 2)
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    /// Digit of `node` in `state`.
    pub fn digit(&self, state: usize, node: usize) -> usize {
        (state / self.strides[node]) % self.arities[node]
    }

    pub(crate) fn check_nodes(&self, nodes: NodeSet) -> Result<()> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let n = self.node_count();
        if nodes.span() > n {
            return Err(Error::NodeOutOfRange {
                node: nodes.span() - 1,
                node_count: n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.total {
            return Err(Error::StateOutOfRange {
                state,
                total: self.total,
            });
        }
        Ok(())
    }

    /// State space of the kept nodes, in original order.
    pub fn subspace(&self, nodes: NodeSet) -> Result<StateSpace> {
        self.check_nodes(nodes)?;
        StateSpace::new(nodes.iter().map(|i| self.arities[i]).collect())
    }

    /// Number of joint states of the given nodes (1 for the empty set).
    pub fn card(&self, nodes: NodeSet) -> usize {
        nodes.iter().map(|i| self.arities[i]).product()
    }

    /// Digits of `nodes` in `state`, packed in the subspace encoding.
    /// Callers guarantee `nodes` lies within this space.
    pub fn restrict(&self, state: usize, nodes: NodeSet) -> usize {
        if self.is_binary() {
            let n = self.node_count();
            let mut out = 0usize;
            for i in nodes.iter() {
                out = (out << 1) | ((state >> (n - 1 - i)) & 1);
            }
            return out;
        }
        nodes
            .iter()
            .fold(0, |acc, i| acc * self.arities[i] + self.digit(state, i))
    }

    /// Inverse of `restrict` paired with its complement: builds the joint state
    /// whose `nodes` digits are `sub` and whose remaining digits are `rest`.
    pub fn merge(&self, nodes: NodeSet, sub: usize, rest: usize) -> usize {
        let others = nodes.complement(self.node_count());
        let mut digits = vec![0usize; self.node_count()];
        let mut s = sub;
        for i in nodes.iter().collect::<Vec<_>>().into_iter().rev() {
            digits[i] = s % self.arities[i];
            s /= self.arities[i];
        }
        let mut r = rest;
        for i in others.iter().collect::<Vec<_>>().into_iter().rev() {
            digits[i] = r % self.arities[i];
            r /= self.arities[i];
        }
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// Printed form of a state: one character per node, node 0 first.
    pub fn format_state(&self, state: usize) -> String {
        (0..self.node_count())
            .map(|i| std::char::from_digit(self.digit(state, i) as u32, 36).unwrap_or('?'))
            .collect()
    }

    pub fn parse_state(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if text.chars().count() != self.node_count() {
            return Err(Error::InvalidArgument(format!(
                "state {text:?} has {} digits, expected {}",
                text.chars().count(),
                self.node_count()
            )));
        }
        let mut state = 0;
        for (i, c) in text.chars().enumerate() {
            let d = c
                .to_digit(36)
                .map(|d| d as usize)
                .filter(|&d| d < self.arities[i])
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("invalid digit {c:?} for node {i} in {text:?}"))
                })?;
            state += d * self.strides[i];
        }
        Ok(state)
    }
}

/// A probability vector over a finite joint state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    space: StateSpace,
    mass: Vec<f64>,
}

impl Dist {
    pub fn new(space: StateSpace, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != space.total_states() {
            return Err(Error::InvalidDistribution(format!(
                "{} entries for {} states",
                mass.len(),
                space.total_states()
            )));
        }
        if let Some((i, p)) = mass
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!("mass {p} at state {i}")));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("total mass {total}")));
        }
        Ok(Dist { space, mass })
    }

    pub fn uniform(space: StateSpace) -> Self {
        let p = 1.0 / space.total_states() as f64;
        let mass = vec![p; space.total_states()];
        Dist { space, mass }
    }

    pub fn point(space: StateSpace, state: usize) -> Result<Self> {
        space.check_state(state)?;
        let mut mass = vec![0.0; space.total_states()];
        mass[state] = 1.0;
        Ok(Dist { space, mass })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn prob(&self, state: usize) -> f64 {
        self.mass.get(state).copied().unwrap_or(0.0)
    }

    /// States with positive mass.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mass
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, p)| *p > 0.0)
    }

    /// Whether the distribution equals the product of its single-node
    /// marginals (within `tol` per state).
    pub fn is_product(&self, tol: f64) -> bool {
        let n = self.space.node_count();
        let marginals: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut m = vec![0.0; self.space.arity(i)];
                for (s, p) in self.mass.iter().enumerate() {
                    m[self.space.digit(s, i)] += p;
                }
                m
            })
            .collect();
        self.mass.iter().enumerate().all(|(s, &p)| {
            let q: f64 = (0..n)
                .map(|i| marginals[i][self.space.digit(s, i)])
                .product();
            (p - q).abs() <= tol
        })
    }
}

/// One positive-mass cell `P(x, y)` of a joint distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEntry {
    pub input: usize,
    pub output: usize,
    pub mass: f64,
}

/// Joint distribution `P(X, Y)` over an input and an output space.
///
/// Only positive cells are stored, grouped by output state, so a
/// deterministic mechanism over `2^n` inputs costs `2^n` entries rather than
/// a `2^n x 2^n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    input: StateSpace,
    output: StateSpace,
    entries: Vec<JointEntry>,
    offsets: Vec<usize>,
    input_marginal: Dist,
    output_marginal: Dist,
}

impl JointDist {
    /// Builds a joint from `(x, y, mass)` triples. Duplicate cells are summed
    /// and zero cells dropped.
    pub fn from_entries<I>(input: StateSpace, output: StateSpace, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries = Vec::new();
        for (x, y, p) in cells {
            input.check_state(x)?;
            output.check_state(y)?;
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "mass {p} at ({x}, {y})"
                )));
            }
            if p > 0.0 {
                entries.push(JointEntry {
                    input: x,
                    output: y,
                    mass: p,
                });
            }
        }
        entries.sort_by_key(|e| (e.output, e.input));
        entries.dedup_by(|b, a| {
            if a.input == b.input && a.output == b.output {
                a.mass += b.mass;
                true
            } else {
                false
            }
        });
        let total: f64 = entries.iter().map(|e| e.mass).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "total joint mass {total}"
            )));
        }

        let mut offsets = vec![0usize; output.total_states() + 1];
        for e in &entries {
            offsets[e.output + 1] += 1;
        }
        for y in 0..output.total_states() {
            offsets[y + 1] += offsets[y];
        }
        let mut px = vec![0.0; input.total_states()];
        let mut py = vec![0.0; output.total_states()];
        for e in &entries {
            px[e.input] += e.mass;
            py[e.output] += e.mass;
        }
        Ok(JointDist {
            input_marginal: Dist {
                space: input.clone(),
                mass: px,
            },
            output_marginal: Dist {
                space: output.clone(),
                mass: py,
            },
            input,
            output,
            entries,
            offsets,
        })
    }

    /// `P(x, y) = P(x) K(y | x)` for a row-stochastic kernel given as sparse
    /// rows `(y, K(y|x))`, one row per input state.
    pub fn from_kernel(
        input: &Dist,
        output: StateSpace,
        rows: &[Vec<(usize, f64)>],
    ) -> Result<Self> {
        if rows.len() != input.space().total_states() {
            return Err(Error::InvalidDistribution(format!(
                "{} kernel rows for {} input states",
                rows.len(),
                input.space().total_states()
            )));
        }
        for (x, row) in rows.iter().enumerate() {
            let s: f64 = row.iter().map(|(_, k)| k).sum();
            if (s - 1.0).abs() > MASS_TOLERANCE {
                return Err(Error::InvalidDistribution(format!(
                    "kernel row {x} sums to {s}"
                )));
            }
        }
        let cells = rows.iter().enumerate().flat_map(|(x, row)| {
            let px = input.prob(x);
            row.iter().map(move |&(y, k)| (x, y, px * k))
        });
        JointDist::from_entries(input.space().clone(), output, cells)
    }

    pub fn input_space(&self) -> &StateSpace {
        &self.input
    }

    pub fn output_space(&self) -> &StateSpace {
        &self.output
    }

    pub fn entries(&self) -> &[JointEntry] {
        &self.entries
    }

    /// Positive cells with output `y`.
    pub fn given_output(&self, y: usize) -> &[JointEntry] {
        match (self.offsets.get(y), self.offsets.get(y + 1)) {
            (Some(&a), Some(&b)) => &self.entries[a..b],
            _ => &[],
        }
    }

    pub fn input_marginal(&self) -> &Dist {
        &self.input_marginal
    }

    pub fn output_marginal(&self) -> &Dist {
        &self.output_marginal
    }

    /// Output states with positive probability, ascending.
    pub fn reachable_outputs(&self) -> impl Iterator<Item = usize> + '_ {
        self.output_marginal.support().map(|(y, _)| y)
    }

    pub(crate) fn require_reachable(&self, y: usize) -> Result<f64> {
        self.output.check_state(y)?;
        let p = self.output_marginal.prob(y);
        if p > 0.0 {
            Ok(p)
        } else {
            Err(Error::UnreachableState {
                state: self.output.format_state(y),
            })
        }
    }

    /// Errors unless input and output share one node layout, which partitions
    /// of the system require.
    pub(crate) fn require_same_nodes(&self) -> Result<()> {
        if self.input != self.output {
            return Err(Error::SpaceMismatch(
                "input and output spaces differ".into(),
            ));
        }
        Ok(())
    }
}

/// `-p log2 p`, with `0 log 0 = 0`.
pub(crate) fn surprisal_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Entropy of the pushforward of a distribution given as `(key, mass)` pairs.
/// Keys are grouped by sorting.
pub(crate) fn keyed_entropy(mut cells: Vec<(u64, f64)>) -> f64 {
    cells.sort_unstable_by_key(|c| c.0);
    let mut h = 0.0;
    let mut i = 0;
    while i < cells.len() {
        let key = cells[i].0;
        let mut p = 0.0;
        while i < cells.len() && cells[i].0 == key {
            p += cells[i].1;
            i += 1;
        }
        h += surprisal_term(p);
    }
    h.max(0.0)
}

/// Shannon entropy in bits.
pub fn entropy(d: &Dist) -> f64 {
    d.mass
        .iter()
        .map(|&p| surprisal_term(p))
        .sum::<f64>()
        .max(0.0)
}

/// `D_KL(p || q)` in bits.
pub fn kl_divergence(p: &Dist, q: &Dist) -> Result<f64> {
    if p.space != q.space {
        return Err(Error::SpaceMismatch("kl_divergence operands".into()));
    }
    let mut d = 0.0;
    for (x, (&pp, &qq)) in p.mass.iter().zip(&q.mass).enumerate() {
        if pp > 0.0 {
            if qq <= 0.0 {
                return Err(Error::AbsoluteContinuityViolation { state: x });
            }
            d += pp * (pp / qq).log2();
        }
    }
    Ok(d.max(0.0))
}

/// Sums out every node not in `keep`; kept nodes stay in original order.
pub fn marginalize(d: &Dist, keep: NodeSet) -> Result<Dist> {
    let space = d.space.subspace(keep)?;
    let mut mass = vec![0.0; space.total_states()];
    for (s, &p) in d.mass.iter().enumerate() {
        mass[d.space.restrict(s, keep)] += p;
    }
    Ok(Dist { space, mass })
}

/// `P(X | Y = y)`.
pub fn condition_on_output(j: &JointDist, y: usize) -> Result<Dist> {
    let py = j.require_reachable(y)?;
    let mut mass = vec![0.0; j.input.total_states()];
    for e in j.given_output(y) {
        mass[e.input] = e.mass / py;
    }
    Ok(Dist {
        space: j.input.clone(),
        mass,
    })
}

/// `I(X; Y)` in bits.
pub fn mutual_information(j: &JointDist) -> f64 {
    j.entries
        .iter()
        .map(|e| {
            let denom = j.input_marginal.mass[e.input] * j.output_marginal.mass[e.output];
            e.mass * (e.mass / denom).log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Specific surprise `I(X; y) = D_KL(P(X|y) || P(X))`.
pub fn specific_surprise(j: &JointDist, y: usize) -> Result<f64> {
    let cond = condition_on_output(j, y)?;
    kl_divergence(&cond, &j.input_marginal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(n: usize) -> StateSpace {
        StateSpace::binary(n).unwrap()
    }

    fn or_get() -> JointDist {
        // 00->00, 01->10, 10->11, 11->11
        let next = [0b00, 0b10, 0b11, 0b11];
        JointDist::from_entries(
            bin(2),
            bin(2),
            next.iter().enumerate().map(|(x, &y)| (x, y, 0.25)),
        )
        .unwrap()
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(&Dist::uniform(bin(2))) - 2.0).abs() < 1e-12);
        assert_eq!(entropy(&Dist::point(bin(2), 3).unwrap()), 0.0);
        let d = Dist::new(bin(1), vec![0.75, 0.25]).unwrap();
        let closed = -0.75 * 0.75f64.log2() - 0.25 * 0.25f64.log2();
        assert!((entropy(&d) - closed).abs() < 1e-12);
        assert!((entropy(&d) - 0.811).abs() < 0.0005);
    }

    #[test]
    fn kl_cases() {
        let u = Dist::uniform(bin(2));
        assert_eq!(kl_divergence(&u, &u).unwrap(), 0.0);

        let p = Dist::point(bin(2), 0b01).unwrap();
        // product of OR-GET part conditionals at y=10: (1/3, 2/3) x (1/2, 1/2)
        let q = Dist::new(bin(2), vec![1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!((kl_divergence(&p, &q).unwrap() - 6f64.log2()).abs() < 1e-12);

        let a = Dist::new(bin(1), vec![1.0, 0.0]).unwrap();
        let b = Dist::new(bin(1), vec![0.0, 1.0]).unwrap();
        assert_eq!(
            kl_divergence(&a, &b),
            Err(Error::AbsoluteContinuityViolation { state: 0 })
        );
        assert!(matches!(
            kl_divergence(&a, &u),
            Err(Error::SpaceMismatch(_))
        ));
    }

    #[test]
    fn marginalize_cases() {
        let u = Dist::uniform(bin(3));
        let m = marginalize(&u, NodeSet::from_iter([0, 2])).unwrap();
        assert_eq!(m.mass(), &[0.25; 4]);

        let py = or_get().output_marginal().clone();
        let m0 = marginalize(&py, NodeSet::singleton(0)).unwrap();
        assert_eq!(m0.mass(), &[0.25, 0.75]);

        let pt = Dist::point(bin(4), 0b0110).unwrap();
        let m = marginalize(&pt, NodeSet::from_iter([1, 2])).unwrap();
        assert_eq!(m.mass(), &[0.0, 0.0, 0.0, 1.0]);

        assert_eq!(marginalize(&u, NodeSet::EMPTY), Err(Error::EmptyNodeSet));
    }

    #[test]
    fn conditioning() {
        let j = or_get();
        let c = condition_on_output(&j, 0b10).unwrap();
        assert_eq!(c.mass(), &[0.0, 1.0, 0.0, 0.0]);
        let c = condition_on_output(&j, 0b11).unwrap();
        assert_eq!(c.mass(), &[0.0, 0.0, 0.5, 0.5]);
        assert_eq!(
            condition_on_output(&j, 0b01),
            Err(Error::UnreachableState { state: "01".into() })
        );
    }

    #[test]
    fn surprise_and_mi() {
        let j = or_get();
        assert!((specific_surprise(&j, 0b00).unwrap() - 2.0).abs() < 1e-12);
        assert!((specific_surprise(&j, 0b11).unwrap() - 1.0).abs() < 1e-12);
        assert!((mutual_information(&j) - 1.5).abs() < 1e-12);

        let constant =
            JointDist::from_entries(bin(2), bin(2), (0..4).map(|x| (x, 0, 0.25))).unwrap();
        assert_eq!(specific_surprise(&constant, 0).unwrap(), 0.0);
        assert_eq!(mutual_information(&constant), 0.0);
    }

    #[test]
    fn validation() {
        assert!(Dist::new(bin(1), vec![0.5, 0.6]).is_err());
        assert!(Dist::new(bin(1), vec![1.5, -0.5]).is_err());
        assert!(Dist::new(bin(1), vec![1.0]).is_err());
        assert!(StateSpace::new(vec![2, 1]).is_err());
        assert!(StateSpace::new(vec![]).is_err());
        assert!(JointDist::from_entries(bin(1), bin(1), [(0, 0, 0.5)]).is_err());
    }

    #[test]
    fn state_codec() {
        let s = StateSpace::new(vec![2, 3, 2]).unwrap();
        assert_eq!(s.total_states(), 12);
        let x = s.parse_state("121").unwrap();
        assert_eq!(s.format_state(x), "121");
        assert_eq!(s.digit(x, 1), 2);
        assert_eq!(s.restrict(x, NodeSet::from_iter([0, 2])), 0b11);
        let nodes = NodeSet::from_iter([1]);
        let rest = s.restrict(x, nodes.complement(3));
        assert_eq!(s.merge(nodes, s.restrict(x, nodes), rest), x);
        assert!(s.parse_state("131").is_err());
        assert!(s.parse_state("12").is_err());
    }

    #[test]
    fn product_check() {
        assert!(Dist::uniform(bin(3)).is_product(1e-12));
        let corr = Dist::new(bin(2), vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(!corr.is_product(1e-9));
    }
}
