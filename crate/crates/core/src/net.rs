//! Threshold networks, explicit transition tables, and their joint
//! distributions.
//!
//! A node updates to 1 iff at least `threshold` of its incoming edges carry a
//! 1; an `inf` threshold pins the node at 0.

use std::fmt;
use std::str::FromStr;

use crate::dist::{Dist, JointDist, StateSpace, MASS_TOLERANCE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Threshold {
    Finite(u32),
    Infinite,
}

impl Threshold {
    fn fires(self, on_inputs: usize) -> bool {
        match self {
            Threshold::Finite(t) => on_inputs >= t as usize,
            Threshold::Infinite => false,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(t) => write!(f, "{t}"),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Threshold {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Threshold::Infinite);
        }
        match s.parse::<u32>() {
            Ok(0) => Err("threshold must be positive".into()),
            Ok(t) => Ok(Threshold::Finite(t)),
            Err(_) => Err(format!("invalid threshold {s:?}")),
        }
    }
}

/// A threshold network: per-node thresholds and directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    node_count: usize,
    thresholds: Vec<Threshold>,
    edges: Vec<(usize, usize)>,
}

impl NetworkSpec {
    pub fn new(thresholds: Vec<Threshold>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = thresholds.len();
        if n == 0 {
            return Err(Error::InvalidArgument("network has no nodes".into()));
        }
        if thresholds.contains(&Threshold::Finite(0)) {
            return Err(Error::InvalidArgument("thresholds must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &(s, d) in &edges {
            for node in [s, d] {
                if node >= n {
                    return Err(Error::NodeOutOfRange {
                        node,
                        node_count: n,
                    });
                }
            }
            if !seen.insert((s, d)) {
                return Err(Error::InvalidArgument(format!("duplicate edge {s} -> {d}")));
            }
        }
        Ok(NetworkSpec {
            node_count: n,
            thresholds,
            edges,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn thresholds(&self) -> &[Threshold] {
        &self.thresholds
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl fmt::Display for NetworkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes {}", self.node_count)?;
        for (i, t) in self.thresholds.iter().enumerate() {
            writeln!(f, "threshold {i} {t}")?;
        }
        for (s, d) in &self.edges {
            writeln!(f, "edge {s} {d}")?;
        }
        Ok(())
    }
}

/// Significant lines of a text file: `(line_number, content)` with comments
/// and blank lines removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_index(tok: &str, line: usize, n: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid node index {tok:?}")))?;
    if i >= n {
        return Err(Error::parse(
            line,
            format!("unknown node {i} (network has {n} nodes)"),
        ));
    }
    Ok(i)
}

/// Parses the network DSL:
///
/// ```text
/// nodes <n>
/// threshold <node> <positive-int|inf>
/// edge <src> <dst>
/// ```
///
/// `#` starts a comment. `nodes` must come first and every node needs exactly
/// one threshold.
pub fn parse_network_spec(text: &str) -> Result<NetworkSpec> {
    let mut node_count: Option<usize> = None;
    let mut thresholds: Vec<Option<Threshold>> = Vec::new();
    let mut edges = Vec::new();
    let mut seen_edges = std::collections::HashSet::new();
    let mut last_line = 0;

    for (line, content) in content_lines(text) {
        last_line = line;
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["nodes", count] => {
                if node_count.is_some() {
                    return Err(Error::parse(line, "duplicate nodes declaration"));
                }
                let n: usize = count
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid node count {count:?}")))?;
                if n == 0 {
                    return Err(Error::parse(line, "node count must be positive"));
                }
                let cap = crate::dist::max_nodes();
                if n > cap {
                    return Err(Error::parse(
                        line,
                        format!("{n} nodes exceeds the cap of {cap}"),
                    ));
                }
                node_count = Some(n);
                thresholds = vec![None; n];
            }
            ["threshold", node, value] => {
                let n = node_count
                    .ok_or_else(|| Error::parse(line, "threshold before nodes declaration"))?;
                let i = parse_index(node, line, n)?;
                let t: Threshold = value.parse().map_err(|e: String| Error::parse(line, e))?;
                if thresholds[i].replace(t).is_some() {
                    return Err(Error::parse(
                        line,
                        format!("duplicate threshold for node {i}"),
                    ));
                }
            }
            ["edge", src, dst] => {
                let n = node_count
                    .ok_or_else(|| Error::parse(line, "edge before nodes declaration"))?;
                let s = parse_index(src, line, n)?;
                let d = parse_index(dst, line, n)?;
                if !seen_edges.insert((s, d)) {
                    return Err(Error::parse(line, format!("duplicate edge {s} {d}")));
                }
                edges.push((s, d));
            }
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unrecognized directive {content:?}"),
                ));
            }
        }
    }

    if node_count.is_none() {
        return Err(Error::parse(last_line.max(1), "missing nodes declaration"));
    }
    let thresholds = thresholds
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| Error::parse(last_line, format!("node {i} has no threshold")))
        })
        .collect::<Result<Vec<_>>>()?;
    NetworkSpec::new(thresholds, edges)
}

/// A total deterministic update map over the `2^n` binary network states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionMap {
    space: StateSpace,
    next: Vec<usize>,
}

impl TransitionMap {
    pub fn new(space: StateSpace, next: Vec<usize>) -> Result<Self> {
        if !space.is_binary() {
            return Err(Error::InvalidStateSpace(
                "transition maps are binary".into(),
            ));
        }
        if next.len() != space.total_states() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} states",
                next.len(),
                space.total_states()
            )));
        }
        for &y in &next {
            space.check_state(y)?;
        }
        Ok(TransitionMap { space, next })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn node_count(&self) -> usize {
        self.space.node_count()
    }

    pub fn next(&self, x: usize) -> usize {
        self.next[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.next
    }

    fn then(&self, other: &TransitionMap) -> TransitionMap {
        TransitionMap {
            space: self.space.clone(),
            next: self.next.iter().map(|&y| other.next[y]).collect(),
        }
    }
}

/// Prints one `bits -> bits` row per input, in input order.
impl fmt::Display for TransitionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, &y) in self.next.iter().enumerate() {
            writeln!(
                f,
                "{} -> {}",
                self.space.format_state(x),
                self.space.format_state(y)
            )?;
        }
        Ok(())
    }
}

fn parse_bits(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() {
        return Err(Error::parse(line, "empty bitstring"));
    }
    tok.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::parse(
            line,
            format!("non-binary character {c:?} in {tok:?}"),
        )),
    })
}

/// Parses a transition table of `bits -> bits` rows. The node count is the
/// bitstring length and every input must appear exactly once.
pub fn parse_transition_table(text: &str) -> Result<TransitionMap> {
    let mut width: Option<usize> = None;
    let mut next: Vec<Option<usize>> = Vec::new();
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        let (lhs, rhs) = content.split_once("->").ok_or_else(|| {
            Error::parse(line, format!("expected 'bits -> bits', got {content:?}"))
        })?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let x = parse_bits(lhs, line)?;
        let y = parse_bits(rhs, line)?;
        let n = *width.get_or_insert(lhs.len());
        if lhs.len() != n || rhs.len() != n {
            return Err(Error::parse(
                line,
                format!("ragged row: expected {n} bits per state"),
            ));
        }
        if next.is_empty() {
            let cap = crate::dist::max_nodes();
            if n > cap {
                return Err(Error::parse(
                    line,
                    format!("{n} nodes exceeds the cap of {cap}"),
                ));
            }
            next = vec![None; 1 << n];
        }
        if next[x].replace(y).is_some() {
            return Err(Error::parse(line, format!("duplicate row for input {lhs}")));
        }
    }
    let n = width.ok_or_else(|| Error::parse(last_line.max(1), "empty transition table"))?;
    let space = StateSpace::binary(n)?;
    let missing: Vec<String> = next
        .iter()
        .enumerate()
        .filter(|(_, y)| y.is_none())
        .map(|(x, _)| space.format_state(x))
        .collect();
    if !missing.is_empty() {
        return Err(Error::parse(
            last_line,
            format!("incomplete table: missing inputs {}", missing.join(", ")),
        ));
    }
    TransitionMap::new(space, next.into_iter().flatten().collect())
}

/// Evaluates the threshold rule on every input state.
pub fn build_transition_map(spec: &NetworkSpec) -> Result<TransitionMap> {
    let n = spec.node_count();
    let space = StateSpace::binary(n)?;
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, d) in spec.edges() {
        inputs[d].push(s);
    }
    let next = (0..space.total_states())
        .map(|x| {
            (0..n).fold(0usize, |y, j| {
                let on = inputs[j]
                    .iter()
                    .filter(|&&i| (x >> (n - 1 - i)) & 1 == 1)
                    .count();
                (y << 1) | usize::from(spec.thresholds()[j].fires(on))
            })
        })
        .collect();
    TransitionMap::new(space, next)
}

/// The map applied `t` times.
pub fn compose_t_steps(m: &TransitionMap, t: usize) -> Result<TransitionMap> {
    if t < 1 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut g = m.clone();
    for _ in 1..t {
        g = g.then(m);
    }
    Ok(g)
}

/// `P(x, y) = 2^-n [y = next(x)]`.
pub fn uniform_joint(m: &TransitionMap) -> JointDist {
    mechanism_joint(m, &Dist::uniform(m.space.clone()))
        .expect("uniform input over the map's own space is valid")
}

/// `P(x, y) = P(x) [y = next(x)]` for an arbitrary input distribution.
pub fn mechanism_joint(m: &TransitionMap, input: &Dist) -> Result<JointDist> {
    if input.space() != &m.space {
        return Err(Error::SpaceMismatch("input distribution vs network".into()));
    }
    JointDist::from_entries(
        m.space.clone(),
        m.space.clone(),
        m.next
            .iter()
            .enumerate()
            .map(|(x, &y)| (x, y, input.prob(x))),
    )
}

/// Parses an input distribution file: `bitstring probability` per line.
/// Unlisted states get zero mass; the total must be 1 within `1e-6` and is
/// renormalized exactly.
pub fn parse_input_distribution(text: &str, space: &StateSpace) -> Result<Dist> {
    let mut mass = vec![0.0; space.total_states()];
    let mut seen = vec![false; space.total_states()];
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        let [state, p] = toks.as_slice() else {
            return Err(Error::parse(line, "expected 'bitstring probability'"));
        };
        let x = space
            .parse_state(state)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        let p: f64 = p
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid probability {p:?}")))?;
        if !p.is_finite() || p < 0.0 {
            return Err(Error::parse(line, format!("invalid probability {p}")));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::parse(line, format!("duplicate state {state}")));
        }
        mass[x] = p;
    }
    let total: f64 = mass.iter().sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    if total != 1.0 {
        mass.iter_mut().for_each(|p| *p /= total);
    }
    debug_assert!((mass.iter().sum::<f64>() - 1.0).abs() <= MASS_TOLERANCE);
    Dist::new(space.clone(), mass)
}
