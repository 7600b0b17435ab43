//! Integer partitions indexing abelian p-group types.
//!
//! Parts are stored weakly decreasing. Positions past the last part read as
//! zero, which covers both the `(d_k, …, d_1, 0, …)` and padded-tail
//! conventions without storing the padding.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};

/// A partition of a non-negative integer, parts stored weakly decreasing.
///
/// The derived `Ord` is lexicographic on the descending parts. Restricted to
/// partitions of the same weight it coincides with [`compare_preceq`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Builds a partition from parts given in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self::from_sorted(parts))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `parts` must already be weakly decreasing and positive.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&x| x > 0));
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of parts; for a group type this is the rank.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based, largest first), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> u32 {
        self.part(0)
    }

    /// Transpose of the Ferrers diagram: `d'_j = #{i : d_i >= j}`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|j| self.parts.iter().take_while(|&&x| x >= j).count() as u32)
            .collect();
        Partition::from_sorted(parts)
    }

    /// `l_i <= d_i` for every position, both padded with zeros.
    pub fn contained_in(&self, d: &Partition) -> bool {
        self.len() <= d.len() && self.parts.iter().zip(&d.parts).all(|(a, b)| a <= b)
    }

    /// Every partition `l` with `l ⊆ self`, grouped by weight ascending.
    pub fn subpartitions(&self) -> Vec<Partition> {
        (0..=self.weight)
            .flat_map(|m| partitions_of(m, Some(self)))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n`, optionally restricted to those contained in `bound`.
///
/// Output is in descending ⪯ order, e.g. `(4),(3,1),(2,2),(2,1,1),(1,1,1,1)`.
pub fn partitions_of(n: u32, bound: Option<&Partition>) -> Vec<Partition> {
    // capacity[i]: the most that positions i.. can hold under the bound
    let caps: Option<Vec<u32>> = bound.map(|b| {
        let mut caps = vec![0u32; b.len() + 1];
        for i in (0..b.len()).rev() {
            caps[i] = caps[i + 1] + b.part(i);
        }
        caps
    });
    if let Some(caps) = &caps {
        if caps[0] < n {
            return Vec::new();
        }
    }

    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, bound, caps.as_deref(), &mut current, &mut out);
    out
}

fn fill(
    remaining: u32,
    max_part: u32,
    bound: Option<&Partition>,
    caps: Option<&[u32]>,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    let pos = current.len();
    let mut hi = remaining.min(max_part);
    if let (Some(b), Some(caps)) = (bound, caps) {
        if pos >= b.len() {
            return;
        }
        hi = hi.min(b.part(pos));
        // later positions cannot absorb what this one leaves behind
        if caps[pos] < remaining {
            return;
        }
    }
    for first in (1..=hi).rev() {
        let rest = remaining - first;
        if let Some(caps) = caps {
            let tail_cap = caps[pos + 1].min(first.saturating_mul((caps.len() - pos - 2) as u32));
            if tail_cap < rest {
                // smaller first parts only shrink the tail capacity further
                break;
            }
        }
        current.push(first);
        fill(rest, first, bound, caps, current, out);
        current.pop();
    }
}

/// Total order ⪯ on partitions of a fixed weight: compare the first part
/// (largest first) at which the two differ, missing parts reading as zero.
pub fn compare_preceq(d: &Partition, e: &Partition) -> Result<Ordering> {
    if d.weight() != e.weight() {
        return domain(format!(
            "⪯ compares partitions of equal weight, got {} and {}",
            d.weight(),
            e.weight()
        ));
    }
    let len = d.len().max(e.len());
    for i in 0..len {
        match d.part(i).cmp(&e.part(i)) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}
