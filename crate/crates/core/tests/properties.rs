//! Invariants checked against independent oracles: brute-force entropies,
//! the Bell triangle, and direct per-state averages.

use std::collections::HashMap;

use irrlab::corpus::{self, DOUBLETS};
use irrlab::dist::{entropy, kl_divergence, marginalize, mutual_information, specific_surprise};
use irrlab::net::{compose_t_steps, uniform_joint};
use irrlab::parts::{enumerate_bipartitions, enumerate_partitions, partition_count, Partition};
use irrlab::phi::{effective_information, EiMode, PhiAnalyzer};
use irrlab::psi::{bipartition_divergence, bracket_psi_bounds, psi_bounds_state};
use irrlab::{Dist, JointDist, NodeSet, StateSpace, TransitionMap};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

fn map_strategy(max_nodes: usize) -> impl Strategy<Value = TransitionMap> {
    (2..=max_nodes).prop_flat_map(|n| {
        let total = 1usize << n;
        prop::collection::vec(0..total, total)
            .prop_map(move |next| TransitionMap::new(StateSpace::binary(n).unwrap(), next).unwrap())
    })
}

fn dist_strategy(n: usize, full_support: bool) -> impl Strategy<Value = Dist> {
    let lo = if full_support { 1u32 } else { 0 };
    prop::collection::vec(lo..100u32, 1 << n).prop_filter_map("needs mass", move |w| {
        let total: u32 = w.iter().sum();
        (total > 0).then(|| {
            Dist::new(
                StateSpace::binary(n).unwrap(),
                w.iter().map(|&v| v as f64 / total as f64).collect(),
            )
            .unwrap()
        })
    })
}

fn bit(x: usize, n: usize, i: usize) -> usize {
    (x >> (n - 1 - i)) & 1
}

/// Node `i` of `x` moved to position `perm[i]`.
fn permute_state(x: usize, n: usize, perm: &[usize]) -> usize {
    (0..n).fold(0, |acc, i| acc | (bit(x, n, i) << (n - 1 - perm[i])))
}

fn relabel(map: &TransitionMap, perm: &[usize]) -> TransitionMap {
    let n = map.node_count();
    let total = 1 << n;
    let mut next = vec![0; total];
    for x in 0..total {
        next[permute_state(x, n, perm)] = permute_state(map.next(x), n, perm);
    }
    TransitionMap::new(StateSpace::binary(n).unwrap(), next).unwrap()
}

/// Entropy of the pushforward of `(key, p)` pairs, by hash map.
fn h<K: std::hash::Hash + Eq>(cells: impl IntoIterator<Item = (K, f64)>) -> f64 {
    let mut m: HashMap<K, f64> = HashMap::new();
    for (k, p) in cells {
        *m.entry(k).or_default() += p;
    }
    m.values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

fn sub(x: usize, n: usize, part: NodeSet) -> Vec<usize> {
    part.iter().map(|i| bit(x, n, i)).collect()
}

/// `I(X_S; Y_S)` under the joint's input distribution, by brute force.
fn part_information(j: &JointDist, part: NodeSet) -> f64 {
    let n = j.input_space().node_count();
    let e = j.entries();
    h(e.iter().map(|e| (sub(e.input, n, part), e.mass)))
        + h(e.iter().map(|e| (sub(e.output, n, part), e.mass)))
        - h(e
            .iter()
            .map(|e| ((sub(e.input, n, part), sub(e.output, n, part)), e.mass)))
}

/// Bell numbers from the Bell triangle.
fn bell_triangle(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

#[test]
fn partition_counts_match_bell_triangle() {
    assert_eq!(
        (0..=8).map(bell_triangle).collect::<Vec<_>>(),
        [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    );
    for n in 2..=8 {
        let all: Vec<Partition> = enumerate_partitions(n).unwrap().collect();
        assert_eq!(all.len() as u128, bell_triangle(n) - 1, "n={n}");
        assert_eq!(partition_count(n), Some(bell_triangle(n) - 1));
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len(), "duplicates at n={n}");
        assert!(
            all.windows(2)
                .all(|w| w[0].assignment() < w[1].assignment()),
            "not lexicographic"
        );
        assert!(all.iter().all(|p| p.part_count() >= 2));

        let two: Vec<Partition> = all
            .iter()
            .filter(|p| p.part_count() == 2)
            .cloned()
            .collect();
        let bi: Vec<Partition> = enumerate_bipartitions(n).unwrap().collect();
        assert_eq!(
            bi, two,
            "bipartitions are the two-part subsequence at n={n}"
        );
        assert_eq!(bi.len(), (1 << (n - 1)) - 1);
    }
}

#[test]
fn corpus_invariants() {
    for net in corpus::all() {
        let j = uniform_joint(&net.map);
        let i = mutual_information(&j);
        // deterministic maps: I(X;Y) = H(Y)
        assert!(
            (i - entropy(j.output_marginal())).abs() < EPS,
            "{}",
            net.name
        );
        let mut avg_ei = 0.0;
        for y in j.reachable_outputs().collect::<Vec<_>>() {
            let p = j.output_marginal().prob(y);
            let ei = effective_information(&j, y).unwrap();
            avg_ei += p * ei;
            let b = psi_bounds_state(&j, y).unwrap();
            assert!(b.lower <= b.upper + EPS, "{} y={y}: {b:?}", net.name);
            assert!(
                b.upper <= ei + EPS,
                "{} y={y}: psi_max {} > I(X;y) {ei}",
                net.name,
                b.upper
            );
        }
        assert!((avg_ei - i).abs() < EPS, "{}", net.name);
        let b = bracket_psi_bounds(&j).unwrap();
        assert!(b.lower <= b.upper + EPS, "{}", net.name);
    }
}

#[test]
fn bracket_identity_for_every_doublet_partition() {
    for name in DOUBLETS.iter().copied().chain(["OR-GET", "OR-XOR"]) {
        let j = uniform_joint(&corpus::network(name).map);
        let mut a = PhiAnalyzer::new(&j).unwrap();
        for p in enumerate_partitions(2).unwrap() {
            let direct: f64 = j
                .reachable_outputs()
                .collect::<Vec<_>>()
                .into_iter()
                .map(|y| {
                    j.output_marginal().prob(y) * a.ei_beyond(y, &p, EiMode::Standard).unwrap()
                })
                .sum();
            let identity = mutual_information(&j)
                - p.parts()
                    .into_iter()
                    .map(|s| part_information(&j, s))
                    .sum::<f64>();
            assert!(
                (direct - identity).abs() < EPS,
                "{name} {p}: {direct} vs {identity}"
            );
            let bracket = a.bracket_ei_beyond(&p, EiMode::Standard).unwrap();
            assert!((bracket - identity).abs() < EPS, "{name} {p}");
        }
    }
}

fn psi_signature(name: &str) -> (f64, f64, Vec<(u64, u64)>) {
    let j = uniform_joint(&corpus::network(name).map);
    let b = bracket_psi_bounds(&j).unwrap();
    let mut states: Vec<(u64, u64)> = j
        .reachable_outputs()
        .collect::<Vec<_>>()
        .into_iter()
        .map(|y| {
            let s = psi_bounds_state(&j, y).unwrap();
            // rounded so equal values compare equal
            (
                (s.lower * 1e9).round() as u64,
                (s.upper * 1e9).round() as u64,
            )
        })
        .collect();
    states.sort_unstable();
    (b.lower, b.upper, states)
}

#[test]
fn psi_equalities() {
    for (a, b) in [
        ("AND-ZERO", "AND-AND"),
        ("KEEP-KEEP", "GET-GET"),
        ("ANDtriplet", "iso-ANDtriplet"),
    ] {
        let (la, ua, sa) = psi_signature(a);
        let (lb, ub, sb) = psi_signature(b);
        assert!((la - lb).abs() < EPS && (ua - ub).abs() < EPS, "{a} vs {b}");
        assert_eq!(sa, sb, "{a} vs {b}");
    }
}

#[test]
fn phi_differs_where_psi_agrees() {
    let phi = |name: &str| {
        let j = uniform_joint(&corpus::network(name).map);
        PhiAnalyzer::new(&j)
            .unwrap()
            .bracket(EiMode::Standard)
            .unwrap()
            .phi
    };
    assert!((phi("AND-ZERO") - phi("AND-AND")).abs() > 0.1);
    assert!((phi("KEEP-KEEP") - phi("GET-GET")).abs() > 1.0);
}

/// The bracket lower bound via the entropy identity agrees with the
/// average of per-state divergences for each bipartition.
fn bracket_min_by_states(j: &JointDist) -> f64 {
    let n = j.input_space().node_count();
    let outputs: Vec<usize> = j.reachable_outputs().collect();
    enumerate_bipartitions(n)
        .unwrap()
        .map(|p| {
            let a = p.parts()[0];
            outputs
                .iter()
                .map(|&y| j.output_marginal().prob(y) * bipartition_divergence(j, y, a).unwrap())
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn bracket_psi_min_matches_state_average_on_corpus() {
    for net in corpus::all() {
        let j = uniform_joint(&net.map);
        let b = bracket_psi_bounds(&j).unwrap();
        assert!(
            (b.lower - bracket_min_by_states(&j)).abs() < EPS,
            "{}",
            net.name
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kl_is_non_negative(p in dist_strategy(3, false), q in dist_strategy(3, true)) {
        let d = kl_divergence(&p, &q).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert!(kl_divergence(&p, &p).unwrap().abs() < EPS);
    }

    #[test]
    fn marginalize_composes(d in dist_strategy(4, false), keep in 1u64..16, inner in 1u64..16) {
        let a = NodeSet::from_bits(keep);
        // inner picks a subset of a's positions
        let pos: Vec<usize> = a.iter().collect();
        let b_rel: NodeSet = (0..pos.len()).filter(|k| inner >> k & 1 == 1).collect();
        prop_assume!(!b_rel.is_empty());
        let b_abs: NodeSet = b_rel.iter().map(|k| pos[k]).collect();
        let twice = marginalize(&marginalize(&d, a).unwrap(), b_rel).unwrap();
        let once = marginalize(&d, b_abs).unwrap();
        for (x, y) in twice.mass().iter().zip(once.mass()) {
            prop_assert!((x - y).abs() < EPS);
        }
    }

    #[test]
    fn ei_averages_to_mutual_information(m in map_strategy(4)) {
        let j = uniform_joint(&m);
        let avg: f64 = j.reachable_outputs().collect::<Vec<_>>().into_iter()
            .map(|y| j.output_marginal().prob(y) * specific_surprise(&j, y).unwrap())
            .sum();
        prop_assert!((avg - mutual_information(&j)).abs() < EPS);
    }

    #[test]
    fn compose_is_associative(m in map_strategy(3), a in 1usize..5, b in 1usize..5) {
        let lhs = compose_t_steps(&compose_t_steps(&m, a).unwrap(), b).unwrap();
        let rhs = compose_t_steps(&m, a * b).unwrap();
        prop_assert_eq!(lhs.images(), rhs.images());
        for x in 0..m.space().total_states() {
            let mut y = x;
            for _ in 0..a + b { y = m.next(y); }
            prop_assert_eq!(compose_t_steps(&m, a + b).unwrap().next(x), y);
        }
    }

    #[test]
    fn bracket_identity_on_random_maps(m in map_strategy(3)) {
        let j = uniform_joint(&m);
        let mut an = PhiAnalyzer::new(&j).unwrap();
        let outputs: Vec<usize> = j.reachable_outputs().collect();
        for p in enumerate_partitions(m.node_count()).unwrap() {
            let identity = mutual_information(&j)
                - p.parts().into_iter().map(|s| part_information(&j, s)).sum::<f64>();
            let direct: f64 = outputs.iter()
                .map(|&y| j.output_marginal().prob(y) * an.ei_beyond(y, &p, EiMode::Standard).unwrap())
                .sum();
            prop_assert!((direct - identity).abs() < EPS, "{}: {} vs {}", p, direct, identity);
        }
    }

    #[test]
    fn psi_sandwich_on_random_maps(m in map_strategy(4)) {
        let j = uniform_joint(&m);
        for y in j.reachable_outputs().collect::<Vec<_>>() {
            let b = psi_bounds_state(&j, y).unwrap();
            prop_assert!(b.lower >= 0.0);
            prop_assert!(b.lower <= b.upper + EPS);
            prop_assert!(b.upper <= effective_information(&j, y).unwrap() + EPS);
        }
        let b = bracket_psi_bounds(&j).unwrap();
        prop_assert!(b.lower <= b.upper + EPS);
        prop_assert!((b.lower - bracket_min_by_states(&j)).abs() < EPS);
    }

    #[test]
    fn relabeling_preserves_measures(m in map_strategy(4), seed in any::<u64>()) {
        let n = m.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = relabel(&m, &perm);
        let (ja, jb) = (uniform_joint(&m), uniform_joint(&r));
        prop_assert!((mutual_information(&ja) - mutual_information(&jb)).abs() < EPS);
        let (pa, pb) = (bracket_psi_bounds(&ja).unwrap(), bracket_psi_bounds(&jb).unwrap());
        prop_assert!((pa.lower - pb.lower).abs() < EPS);
        prop_assert!((pa.upper - pb.upper).abs() < EPS);
        let ca = PhiAnalyzer::new(&ja).unwrap().bracket(EiMode::Standard).unwrap().mip.normalized_cost;
        let cb = PhiAnalyzer::new(&jb).unwrap().bracket(EiMode::Standard).unwrap().mip.normalized_cost;
        prop_assert!((ca - cb).abs() < EPS);
        for y in ja.reachable_outputs().collect::<Vec<_>>() {
            let yr = permute_state(y, n, &perm);
            let a = PhiAnalyzer::new(&ja).unwrap().find_mip(y, EiMode::Standard).unwrap();
            let b = PhiAnalyzer::new(&jb).unwrap().find_mip(yr, EiMode::Standard).unwrap();
            prop_assert!((a.normalized_cost - b.normalized_cost).abs() < EPS);
            let (sa, sb) = (psi_bounds_state(&ja, y).unwrap(), psi_bounds_state(&jb, yr).unwrap());
            prop_assert!((sa.lower - sb.lower).abs() < EPS && (sa.upper - sb.upper).abs() < EPS);
        }
    }

    #[test]
    fn perturbed_bracket_is_state_average(m in map_strategy(3)) {
        let j = uniform_joint(&m);
        let mut an = PhiAnalyzer::new(&j).unwrap();
        let outputs: Vec<usize> = j.reachable_outputs().collect();
        for p in enumerate_partitions(m.node_count()).unwrap() {
            let avg: f64 = outputs.iter()
                .map(|&y| j.output_marginal().prob(y) * an.ei_beyond(y, &p, EiMode::PerturbedWires).unwrap())
                .sum();
            let bracket = an.bracket_ei_beyond(&p, EiMode::PerturbedWires).unwrap();
            prop_assert!((avg - bracket).abs() < EPS);
        }
    }
}
