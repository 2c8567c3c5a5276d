//! Closed-form bounds on ψ, the irreducibility of a system to disjoint parts.
//!
//! With independent inputs, the intersection-information bounds
//! `0 <= I∩(A, B : y) <= min(I(A; y), I(B; y))` turn into
//!
//! ```text
//! ψ_min(y) = min_A  D_KL( P(X|y) || P(A|y) P(B|y) )          B = X \ A
//! ψ_max(y) = min_i  D_KL( P(X|y) || P(X_i) P(X_~i|y) )
//! ⟨ψ⟩_min  = min_A  I(A; B | Y)
//! ⟨ψ⟩_max  = min_i  D_KL( P(X,Y) || P(X_~i, Y) P(X_i) )
//! ```
//!
//! Only bipartitions are searched: every finer partition is dominated by one.
//! Minimizers are the first in canonical enumeration order, compared with
//! [`TIE_TOLERANCE`] slack.

use std::collections::HashMap;

use crate::dist::{keyed_entropy, JointDist, NodeSet};
use crate::error::{Error, Result};
use crate::parts::{enumerate_bipartitions, Partition};
use crate::phi::TIE_TOLERANCE;

/// Lower and upper bound on ψ with their minimizers.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiBounds {
    pub lower: f64,
    pub upper: f64,
    /// Bipartition attaining `lower`.
    pub argmin_lower: Partition,
    /// Left-out node attaining `upper`.
    pub argmin_upper: usize,
}

fn check(j: &JointDist) -> Result<usize> {
    j.require_same_nodes()?;
    let n = j.input_space().node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { min: 2, got: n });
    }
    Ok(n)
}

/// Keeps the first candidate unless a later one is smaller by more than the
/// tie slack.
fn argmin<T, I>(candidates: I) -> Option<(f64, T)>
where
    I: IntoIterator<Item = (f64, T)>,
{
    let mut best: Option<(f64, T)> = None;
    for (v, t) in candidates {
        if best.as_ref().is_none_or(|(b, _)| v < b - TIE_TOLERANCE) {
            best = Some((v, t));
        }
    }
    best
}

/// `P(X|y)` as `(x, p)` pairs.
fn conditional(j: &JointDist, y: usize) -> Result<Vec<(usize, f64)>> {
    let py = j.require_reachable(y)?;
    Ok(j.given_output(y)
        .iter()
        .map(|e| (e.input, e.mass / py))
        .collect())
}

fn marginal(j: &JointDist, cond: &[(usize, f64)], nodes: NodeSet) -> HashMap<usize, f64> {
    let space = j.input_space();
    let mut m = HashMap::new();
    for &(x, p) in cond {
        *m.entry(space.restrict(x, nodes)).or_insert(0.0) += p;
    }
    m
}

/// `D_KL(P(X|y) || P(A|y) P(B|y))` for the bipartition `{a, X \ a}`.
pub fn bipartition_divergence(j: &JointDist, y: usize, a: NodeSet) -> Result<f64> {
    let n = check(j)?;
    j.input_space().check_nodes(a)?;
    let b = a.complement(n);
    if b.is_empty() {
        return Err(Error::InvalidArgument(
            "bipartition side covers every node".into(),
        ));
    }
    let cond = conditional(j, y)?;
    Ok(split_divergence(j, &cond, a, b))
}

fn split_divergence(j: &JointDist, cond: &[(usize, f64)], a: NodeSet, b: NodeSet) -> f64 {
    let space = j.input_space();
    let pa = marginal(j, cond, a);
    let pb = marginal(j, cond, b);
    cond.iter()
        .map(|&(x, p)| {
            let q = pa[&space.restrict(x, a)] * pb[&space.restrict(x, b)];
            p * (p / q).log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// `ψ_min(X : y)` and the minimizing bipartition.
pub fn psi_min_state(j: &JointDist, y: usize) -> Result<(f64, Partition)> {
    let n = check(j)?;
    let cond = conditional(j, y)?;
    let candidates = enumerate_bipartitions(n)?.map(|p| {
        let parts = p.parts();
        (split_divergence(j, &cond, parts[0], parts[1]), p)
    });
    Ok(argmin(candidates).expect("n >= 2 has a bipartition"))
}

/// `ψ_max(X : y)` and the minimizing left-out node.
pub fn psi_max_state(j: &JointDist, y: usize) -> Result<(f64, usize)> {
    let n = check(j)?;
    let cond = conditional(j, y)?;
    let space = j.input_space();
    let px = j.input_marginal();
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        let node = NodeSet::singleton(i);
        let rest = node.complement(n);
        let p_node = crate::dist::marginalize(px, node)?;
        let p_rest = marginal(j, &cond, rest);
        let mut d = 0.0;
        for &(x, p) in &cond {
            let q = p_node.prob(space.digit(x, i)) * p_rest[&space.restrict(x, rest)];
            if q <= 0.0 {
                return Err(Error::AbsoluteContinuityViolation { state: x });
            }
            d += p * (p / q).log2();
        }
        candidates.push((d.max(0.0), i));
    }
    Ok(argmin(candidates).expect("n >= 2"))
}

pub fn psi_bounds_state(j: &JointDist, y: usize) -> Result<PsiBounds> {
    let (lower, argmin_lower) = psi_min_state(j, y)?;
    let (upper, argmin_upper) = psi_max_state(j, y)?;
    Ok(PsiBounds {
        lower,
        upper,
        argmin_lower,
        argmin_upper,
    })
}

/// `H(X_S, Y)`
fn input_output_entropy(j: &JointDist, nodes: NodeSet) -> f64 {
    let space = j.input_space();
    let card = space.card(nodes) as u64;
    keyed_entropy(
        j.entries()
            .iter()
            .map(|e| {
                (
                    e.output as u64 * card + space.restrict(e.input, nodes) as u64,
                    e.mass,
                )
            })
            .collect(),
    )
}

/// `⟨ψ⟩_min = min_A I(A; B | Y)`, via
/// `I(A; B | Y) = H(A, Y) + H(B, Y) - H(X, Y) - H(Y)`.
pub fn bracket_psi_min(j: &JointDist) -> Result<(f64, Partition)> {
    let n = check(j)?;
    let h_xy = keyed_entropy(
        j.entries()
            .iter()
            .map(|e| (((e.output as u64) << 32) ^ e.input as u64, e.mass))
            .collect(),
    );
    let h_y = crate::dist::entropy(j.output_marginal());
    let candidates = enumerate_bipartitions(n)?.map(|p| {
        let parts = p.parts();
        let v = input_output_entropy(j, parts[0]) + input_output_entropy(j, parts[1]) - h_xy - h_y;
        (v.max(0.0), p)
    });
    Ok(argmin(candidates).expect("n >= 2 has a bipartition"))
}

/// `⟨ψ⟩_max = min_i D_KL(P(X, Y) || P(X_~i, Y) P(X_i))`.
pub fn bracket_psi_max(j: &JointDist) -> Result<(f64, usize)> {
    let n = check(j)?;
    let space = j.input_space();
    let px = j.input_marginal();
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        let node = NodeSet::singleton(i);
        let rest = node.complement(n);
        let p_node = crate::dist::marginalize(px, node)?;
        let mut p_rest_y: HashMap<(usize, usize), f64> = HashMap::new();
        for e in j.entries() {
            *p_rest_y
                .entry((e.output, space.restrict(e.input, rest)))
                .or_insert(0.0) += e.mass;
        }
        let mut d = 0.0;
        for e in j.entries() {
            let q = p_rest_y[&(e.output, space.restrict(e.input, rest))]
                * p_node.prob(space.digit(e.input, i));
            d += e.mass * (e.mass / q).log2();
        }
        candidates.push((d.max(0.0), i));
    }
    Ok(argmin(candidates).expect("n >= 2"))
}

pub fn bracket_psi_bounds(j: &JointDist) -> Result<PsiBounds> {
    let (lower, argmin_lower) = bracket_psi_min(j)?;
    let (upper, argmin_upper) = bracket_psi_max(j)?;
    Ok(PsiBounds {
        lower,
        upper,
        argmin_lower,
        argmin_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{parse_transition_table, uniform_joint};

    fn joint(table: &str) -> JointDist {
        uniform_joint(&parse_transition_table(table).unwrap())
    }

    const KEEP_KEEP: &str = "00 -> 00\n01 -> 01\n10 -> 10\n11 -> 11";
    const GET_GET: &str = "00 -> 00\n01 -> 10\n10 -> 01\n11 -> 11";
    const XOR_ZERO: &str = "00 -> 00\n01 -> 10\n10 -> 10\n11 -> 00";
    const KEEP_ZERO: &str = "00 -> 00\n01 -> 00\n10 -> 10\n11 -> 10";
    const AND_XOR: &str = "00 -> 00\n01 -> 01\n10 -> 01\n11 -> 10";

    #[test]
    fn state_bounds() {
        let j = joint(KEEP_KEEP);
        assert_eq!(psi_min_state(&j, 0b00).unwrap().0, 0.0);
        assert!((psi_max_state(&j, 0b00).unwrap().0 - 1.0).abs() < 1e-12);

        let j = joint(XOR_ZERO);
        assert!((psi_min_state(&j, 0b10).unwrap().0 - 1.0).abs() < 1e-12);

        let j = joint(KEEP_ZERO);
        for y in [0b00, 0b10] {
            let (v, node) = psi_max_state(&j, y).unwrap();
            assert!(v.abs() < 1e-12);
            assert_eq!(node, 1);
        }
    }

    #[test]
    fn keep_keep_matches_get_get_under_swap() {
        let kk = joint(KEEP_KEEP);
        let gg = joint(GET_GET);
        for y in 0..4usize {
            let swapped = ((y & 1) << 1) | (y >> 1);
            let a = psi_bounds_state(&kk, y).unwrap();
            let b = psi_bounds_state(&gg, swapped).unwrap();
            assert!((a.lower - b.lower).abs() < 1e-12);
            assert!((a.upper - b.upper).abs() < 1e-12);
        }
    }

    #[test]
    fn brackets() {
        let j = joint(AND_XOR);
        assert!((bracket_psi_min(&j).unwrap().0 - 0.5).abs() < 1e-12);
        let j = joint("00 -> 00\n01 -> 11\n10 -> 11\n11 -> 00");
        assert!((bracket_psi_min(&j).unwrap().0 - 1.0).abs() < 1e-12);
        let j = joint(KEEP_KEEP);
        assert!((bracket_psi_max(&j).unwrap().0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unreachable_state() {
        let j = joint(XOR_ZERO);
        assert!(matches!(
            psi_min_state(&j, 0b01),
            Err(Error::UnreachableState { .. })
        ));
        assert!(matches!(
            psi_max_state(&j, 0b11),
            Err(Error::UnreachableState { .. })
        ));
    }

    #[test]
    fn divergence_argument_checks() {
        let j = joint(KEEP_KEEP);
        assert!(bipartition_divergence(&j, 0, NodeSet::full(2)).is_err());
        assert!(bipartition_divergence(&j, 0, NodeSet::EMPTY).is_err());
        assert_eq!(
            bipartition_divergence(&j, 0, NodeSet::singleton(0)).unwrap(),
            0.0
        );
    }
}
