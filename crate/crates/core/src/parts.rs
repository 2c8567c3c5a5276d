//! Set partitions of node indices.
//!
//! Partitions are restricted-growth strings: `assignment[i]` is the part of
//! node `i`, and part ids appear in first-use order, so equal partitions
//! have equal encodings. Enumeration is lexicographic in that encoding and
//! skips the single-part partition.

use std::fmt;

use crate::dist::{NodeSet, StateSpace};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    assignment: Vec<u8>,
    part_count: usize,
}

impl Partition {
    /// Builds a partition from any labelling; labels are canonicalized.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::TooFewNodes {
                min: 2,
                got: labels.len(),
            });
        }
        let mut map: Vec<(usize, u8)> = Vec::new();
        let mut assignment = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = map.len() as u8;
                    map.push((l, id));
                    id
                }
            };
            assignment.push(id);
        }
        if map.len() < 2 {
            return Err(Error::InvalidArgument(
                "a partition needs at least two parts".into(),
            ));
        }
        Ok(Partition {
            assignment,
            part_count: map.len(),
        })
    }

    /// The bipartition `{part, rest}`.
    pub fn bipartition(n: usize, part: NodeSet) -> Result<Self> {
        if part.span() > n {
            return Err(Error::NodeOutOfRange {
                node: part.span() - 1,
                node_count: n,
            });
        }
        let labels: Vec<usize> = (0..n).map(|i| usize::from(part.contains(i))).collect();
        Partition::from_labels(&labels)
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    /// Parts in canonical order (part `k` is the `k`-th to appear).
    pub fn parts(&self) -> Vec<NodeSet> {
        let mut parts = vec![NodeSet::EMPTY; self.part_count];
        for (i, &p) in self.assignment.iter().enumerate() {
            parts[p as usize].insert(i);
        }
        parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, part) in self.parts().into_iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewNodes { min: 2, got: n });
    }
    if n > 64 {
        return Err(Error::TooManyNodes { max: 64, got: n });
    }
    Ok(())
}

/// Lazy lexicographic walk over restricted-growth strings with at least two
/// parts.
#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Vec<u8>,
    // prefix maxima: max[i] = max(rgs[..=i])
    max: Vec<u8>,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.max[i - 1] {
                self.rgs[i] += 1;
                self.max[i] = self.max[i - 1].max(self.rgs[i]);
                for k in i + 1..n {
                    self.rgs[k] = 0;
                    self.max[k] = self.max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done || !self.advance() {
            self.done = true;
            return None;
        }
        Some(Partition {
            assignment: self.rgs.clone(),
            part_count: *self.max.last().unwrap() as usize + 1,
        })
    }
}

/// Every partition of `n` nodes into at least two parts, `Bell(n) - 1` in
/// total.
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    check_n(n)?;
    Ok(Partitions {
        rgs: vec![0; n],
        max: vec![0; n],
        done: false,
    })
}

/// Lazy walk over the `2^(n-1) - 1` bipartitions, in the same relative order
/// as `enumerate_partitions`.
#[derive(Debug, Clone)]
pub struct Bipartitions {
    n: usize,
    k: u64,
    end: u64,
}

impl Iterator for Bipartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.k >= self.end {
            return None;
        }
        let k = self.k;
        self.k += 1;
        // node i (i >= 1) sits in the second part iff bit (n-1-i) of k is set
        let assignment: Vec<u8> = (0..self.n)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    ((k >> (self.n - 1 - i)) & 1) as u8
                }
            })
            .collect();
        Some(Partition {
            assignment,
            part_count: 2,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.k) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Bipartitions {}

pub fn enumerate_bipartitions(n: usize) -> Result<Bipartitions> {
    check_n(n)?;
    if n > 63 {
        return Err(Error::TooManyNodes { max: 63, got: n });
    }
    Ok(Bipartitions {
        n,
        k: 1,
        end: 1u64 << (n - 1),
    })
}

/// Number of partitions with at least two parts, `Bell(n) - 1`, from the
/// Stirling numbers of the second kind. `None` on overflow.
pub fn partition_count(n: usize) -> Option<u128> {
    if n < 2 {
        return Some(0);
    }
    // row[k] = S(i, k)
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for k in (1..=i).rev() {
            row[k] = (k as u128).checked_mul(row[k])?.checked_add(row[k - 1])?;
        }
        row[0] = 0;
    }
    row.iter()
        .try_fold(0u128, |acc, &s| acc.checked_add(s))
        .map(|b| b - 1)
}

pub fn bipartition_count(n: usize) -> Option<u128> {
    if n < 2 {
        return Some(0);
    }
    1u128.checked_shl(n as u32 - 1).map(|p| p - 1)
}

/// The digits of `part`'s nodes in `state`, in original node order.
pub fn restrict_state(space: &StateSpace, state: usize, part: NodeSet) -> Result<usize> {
    space.check_nodes(part)?;
    space.check_state(state)?;
    Ok(space.restrict(state, part))
}
