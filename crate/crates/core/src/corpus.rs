//! Named example networks: the two-node "doublet" zoo and the larger
//! comparison networks.
//!
//! Doublet names read `<node 0>-<node 1>`. Every node kind except XOR is a
//! threshold node and is built through the network DSL; XOR doublets come
//! from explicit truth tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::net::{build_transition_map, parse_network_spec, NetworkSpec, Threshold, TransitionMap};

/// Update rule of one node in a two-node network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// Always 0.
    Zero,
    /// Copies its own previous state.
    Keep,
    /// Copies the other node.
    Get,
    And,
    Or,
    Xor,
}

impl NodeKind {
    pub const ALL: [NodeKind; 6] = [
        NodeKind::Zero,
        NodeKind::Keep,
        NodeKind::Get,
        NodeKind::And,
        NodeKind::Or,
        NodeKind::Xor,
    ];

    /// Output of node `j` (0 or 1) of a doublet in state `(x0, x1)`.
    pub fn eval(self, j: usize, x0: bool, x1: bool) -> bool {
        let (own, other) = if j == 0 { (x0, x1) } else { (x1, x0) };
        match self {
            NodeKind::Zero => false,
            NodeKind::Keep => own,
            NodeKind::Get => other,
            NodeKind::And => x0 && x1,
            NodeKind::Or => x0 || x1,
            NodeKind::Xor => x0 ^ x1,
        }
    }

    /// Threshold and incoming edges realizing this kind at node `j`, or `None`
    /// for XOR, which no single threshold realizes.
    pub fn threshold_wiring(self, j: usize) -> Option<(Threshold, Vec<(usize, usize)>)> {
        let other = 1 - j;
        Some(match self {
            NodeKind::Zero => (Threshold::Infinite, vec![]),
            NodeKind::Keep => (Threshold::Finite(1), vec![(j, j)]),
            NodeKind::Get => (Threshold::Finite(1), vec![(other, j)]),
            NodeKind::And => (Threshold::Finite(2), vec![(0, j), (1, j)]),
            NodeKind::Or => (Threshold::Finite(1), vec![(0, j), (1, j)]),
            NodeKind::Xor => return None,
        })
    }

    /// Classifies node `j` of a doublet map by its truth table.
    pub fn classify(map: &TransitionMap, j: usize) -> Option<NodeKind> {
        if map.node_count() != 2 {
            return None;
        }
        let column: Vec<bool> = (0..4).map(|x| (map.next(x) >> (1 - j)) & 1 == 1).collect();
        NodeKind::ALL
            .into_iter()
            .find(|k| (0..4).all(|x| k.eval(j, x & 0b10 != 0, x & 0b01 != 0) == column[x]))
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Zero => "ZERO",
            NodeKind::Keep => "KEEP",
            NodeKind::Get => "GET",
            NodeKind::And => "AND",
            NodeKind::Or => "OR",
            NodeKind::Xor => "XOR",
        })
    }
}

impl FromStr for NodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NodeKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown node kind {s:?}")))
    }
}

/// DSL spec of a threshold-expressible doublet.
pub fn doublet_spec(a: NodeKind, b: NodeKind) -> Option<NetworkSpec> {
    let (ta, mut ea) = a.threshold_wiring(0)?;
    let (tb, eb) = b.threshold_wiring(1)?;
    ea.extend(eb);
    Some(NetworkSpec::new(vec![ta, tb], ea).expect("doublet wiring is valid"))
}

pub fn doublet_map(a: NodeKind, b: NodeKind) -> TransitionMap {
    match doublet_spec(a, b) {
        Some(spec) => build_transition_map(&spec).expect("doublet spec builds"),
        None => {
            let next = (0..4usize)
                .map(|x| {
                    let (x0, x1) = (x & 0b10 != 0, x & 0b01 != 0);
                    (usize::from(a.eval(0, x0, x1)) << 1) | usize::from(b.eval(1, x0, x1))
                })
                .collect();
            TransitionMap::new(crate::dist::StateSpace::binary(2).unwrap(), next)
                .expect("doublet table is total")
        }
    }
}

/// A network with a display name.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedNetwork {
    pub name: String,
    pub map: TransitionMap,
}

/// Four nodes on a directed ring, each copying its predecessor.
pub const SHIFT: &str = "\
nodes 4
threshold 0 1
threshold 1 1
threshold 2 1
threshold 3 1
edge 3 0
edge 0 1
edge 1 2
edge 2 3
";

/// Each node the AND of the other two.
pub const AND_TRIPLET: &str = "\
nodes 3
threshold 0 2
threshold 1 2
threshold 2 2
edge 1 0
edge 2 0
edge 0 1
edge 2 1
edge 0 2
edge 1 2
";

/// Each node the AND of itself and its ring predecessor.
pub const ISO_AND_TRIPLET: &str = "\
nodes 3
threshold 0 2
threshold 1 2
threshold 2 2
edge 0 0
edge 2 0
edge 1 1
edge 0 1
edge 2 2
edge 1 2
";

/// AND-ZERO plus a disconnected KEEP node.
pub const AND_ZERO_KEEP: &str = "\
nodes 3
threshold 0 2
threshold 1 inf
threshold 2 1
edge 0 0
edge 1 0
edge 2 2
";

/// Two disjoint AND-ZERO copies on nodes (0, 1) and (2, 3).
pub const TWO_AND_ZERO: &str = "\
nodes 4
threshold 0 2
threshold 1 inf
threshold 2 2
threshold 3 inf
edge 0 0
edge 1 0
edge 2 2
edge 3 2
";

/// Fully connected four-node network (self-edges included) with the given
/// per-node thresholds.
pub fn fully_connected(thresholds: [u32; 4]) -> NetworkSpec {
    let edges = (0..4).flat_map(|s| (0..4).map(move |d| (s, d))).collect();
    NetworkSpec::new(
        thresholds.iter().map(|&t| Threshold::Finite(t)).collect(),
        edges,
    )
    .expect("valid fully connected network")
}

fn from_dsl(text: &str) -> TransitionMap {
    build_transition_map(&parse_network_spec(text).expect("embedded spec parses"))
        .expect("embedded spec builds")
}

/// Looks up a network by name: any `<KIND>-<KIND>` doublet, or one of
/// `SHIFT`, `4422`, `4322`, `4321`, `ANDtriplet`, `iso-ANDtriplet`,
/// `AND-ZERO+KEEP`, `2x AND-ZERO`.
pub fn lookup(name: &str) -> Option<NamedNetwork> {
    let map = match name {
        "SHIFT" => from_dsl(SHIFT),
        "4422" => build_transition_map(&fully_connected([4, 4, 2, 2])).ok()?,
        "4322" => build_transition_map(&fully_connected([4, 3, 2, 2])).ok()?,
        "4321" => build_transition_map(&fully_connected([4, 3, 2, 1])).ok()?,
        "ANDtriplet" => from_dsl(AND_TRIPLET),
        "iso-ANDtriplet" => from_dsl(ISO_AND_TRIPLET),
        "AND-ZERO+KEEP" => from_dsl(AND_ZERO_KEEP),
        "2x AND-ZERO" => from_dsl(TWO_AND_ZERO),
        _ => {
            let (a, b) = name.split_once('-')?;
            doublet_map(a.parse().ok()?, b.parse().ok()?)
        }
    };
    Some(NamedNetwork {
        name: name.to_string(),
        map,
    })
}

pub fn network(name: &str) -> NamedNetwork {
    lookup(name).unwrap_or_else(|| panic!("unknown corpus network {name}"))
}

/// The doublets of the diagnostic table, in table order.
pub const DOUBLETS: [&str; 16] = [
    "ZERO-ZERO",
    "KEEP-ZERO",
    "KEEP-KEEP",
    "GET-ZERO",
    "GET-KEEP",
    "GET-GET",
    "AND-ZERO",
    "AND-KEEP",
    "AND-GET",
    "AND-AND",
    "AND-XOR",
    "XOR-ZERO",
    "XOR-KEEP",
    "XOR-GET",
    "XOR-AND",
    "XOR-XOR",
];

/// Every named network used by the reproduction tables.
pub fn all() -> Vec<NamedNetwork> {
    DOUBLETS
        .iter()
        .copied()
        .chain([
            "OR-GET",
            "OR-XOR",
            "SHIFT",
            "4422",
            "4322",
            "4321",
            "ANDtriplet",
            "iso-ANDtriplet",
            "AND-ZERO+KEEP",
            "2x AND-ZERO",
        ])
        .map(network)
        .collect()
}

/// Every distinct two-node network the threshold DSL can express, found by
/// sweeping thresholds `{1, 2, inf}` over all 16 edge sets, deduplicated by
/// transition table and named by classifying each node. Sorted by name kinds
/// in `NodeKind` order.
pub fn threshold_doublets() -> Vec<NamedNetwork> {
    let thresholds = [
        Threshold::Finite(1),
        Threshold::Finite(2),
        Threshold::Infinite,
    ];
    let all_edges = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut found: Vec<((NodeKind, NodeKind), TransitionMap)> = Vec::new();
    for t0 in thresholds {
        for t1 in thresholds {
            for mask in 0..16usize {
                let edges = all_edges
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let spec =
                    NetworkSpec::new(vec![t0, t1], edges).expect("doublet sweep spec is valid");
                let map = build_transition_map(&spec).expect("doublet sweep spec builds");
                if found.iter().any(|(_, m)| *m == map) {
                    continue;
                }
                let kinds = (
                    NodeKind::classify(&map, 0).expect("threshold node has a kind"),
                    NodeKind::classify(&map, 1).expect("threshold node has a kind"),
                );
                found.push((kinds, map));
            }
        }
    }
    found.sort_by_key(|(k, _)| *k);
    found
        .into_iter()
        .map(|((a, b), map)| NamedNetwork {
            name: format!("{a}-{b}"),
            map,
        })
        .collect()
}
