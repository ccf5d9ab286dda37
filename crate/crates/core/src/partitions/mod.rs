//! Integer partitions and k-multipartitions.
//!
//! Partitions index both the conjugacy classes and the irreducible
//! characters of `G ≀ S_N`; everything here is pure and immutable.

mod counting;
mod enumerate;

pub use counting::{
    count_multipartitions, count_partitions, multipartition_counts, partition_counts,
    unrank_multipartition, MultiPartitionIndex, PartitionTable,
};
pub use enumerate::{
    enumerate_multipartitions, enumerate_partitions, MultiPartitionIter, PartitionIter,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive",
            });
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing",
            });
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&x| x > 0));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(n)`, empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn largest_part(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.largest_part();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition::from_sorted(parts)
    }

    /// Part size -> number of occurrences.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn from_multiplicities(mult: &BTreeMap<usize, usize>) -> Self {
        let parts = mult
            .iter()
            .rev()
            .flat_map(|(&size, &count)| std::iter::repeat_n(size, count))
            .collect();
        Self::from_sorted(parts)
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + conj.part(j) - i - 1).collect())
            .collect()
    }

    /// Beta-set (first-column hook lengths) on `self.len()` beads, decreasing.
    fn beta_set(&self) -> Vec<usize> {
        let r = self.parts.len();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p + r - 1 - i)
            .collect()
    }

    fn from_beta_set(mut beta: Vec<usize>) -> Self {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let r = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (r - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        Partition::from_sorted(parts)
    }

    /// True iff no hook length is divisible by `t`.
    ///
    /// Decided on the abacus: a hook divisible by `t` exists iff a rimhook of
    /// length exactly `t` can be removed, i.e. some bead `b >= t` has `b - t`
    /// vacant.
    pub fn is_t_core(&self, t: usize) -> bool {
        assert!(t >= 1, "t-core needs t >= 1");
        let beta = self.beta_set();
        let occupied: std::collections::HashSet<usize> = beta.iter().copied().collect();
        beta.iter().all(|&b| b < t || occupied.contains(&(b - t)))
    }

    /// All rimhooks of exactly `len` boxes, in order of the row they start in.
    pub fn rimhook_removals(&self, len: usize) -> Vec<RimhookRemoval> {
        assert!(len >= 1, "rimhook length must be positive");
        if len > self.size {
            return Vec::new();
        }
        let beta = self.beta_set();
        let mut out = Vec::new();
        for (i, &b) in beta.iter().enumerate() {
            if b < len {
                break;
            }
            let target = b - len;
            // beta is strictly decreasing: beads between target and b sit right after i.
            let between = beta[i + 1..].iter().take_while(|&&c| c > target).count();
            if beta[i + 1..].get(between) == Some(&target) {
                continue;
            }
            let mut moved = beta.clone();
            moved[i] = target;
            out.push(RimhookRemoval {
                remainder: Partition::from_beta_set(moved),
                height: between,
                length: len,
            });
        }
        out
    }

    /// Partition dominance; false when sizes differ.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size != other.size {
            return false;
        }
        let rows = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..rows {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Number of standard Young tableaux, `n! / Π hooks`.
    pub fn syt_count(&self) -> BigUint {
        let hook_product: BigUint = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h);
        factorial(self.size) / hook_product
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// One way of peeling a rimhook (border strip) off a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RimhookRemoval {
    pub remainder: Partition,
    /// Rows spanned minus one.
    pub height: usize,
    pub length: usize,
}

/// A k-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct MultiPartition {
    components: Vec<Partition>,
    total: usize,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "a multipartition needs at least one component".into(),
            ));
        }
        let total = components.iter().map(Partition::size).sum();
        Ok(MultiPartition { components, total })
    }

    /// Builds from nested part lists, validating each component.
    pub fn from_parts(parts: Vec<Vec<usize>>) -> Result<Self> {
        let components = parts
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    /// All-empty multipartition with `k` components.
    pub fn empty(k: usize) -> Self {
        assert!(k >= 1);
        MultiPartition {
            components: vec![Partition::empty(); k],
            total: 0,
        }
    }

    /// `partition` in component `index`, every other component empty.
    pub fn single(k: usize, index: usize, partition: Partition) -> Self {
        assert!(index < k);
        let mut components = vec![Partition::empty(); k];
        let total = partition.size();
        components[index] = partition;
        MultiPartition { components, total }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Partition> {
        self.components
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Copy with component `i` replaced.
    pub fn with_component(&self, i: usize, p: Partition) -> Self {
        let mut components = self.components.clone();
        components[i] = p;
        let total = components.iter().map(Partition::size).sum();
        MultiPartition { components, total }
    }

    pub fn largest_part(&self) -> usize {
        self.components
            .iter()
            .map(Partition::largest_part)
            .max()
            .unwrap_or(0)
    }

    pub fn to_parts(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.parts.clone()).collect()
    }

    pub(crate) fn check_shape(&self, k: usize, total: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::ComponentMismatch {
                expected: k,
                found: self.k(),
            });
        }
        if self.total != total {
            return Err(Error::SizeMismatch {
                left: self.total,
                right: total,
            });
        }
        Ok(())
    }

    /// Componentwise dominance. Both sides must have the same number of
    /// components and the same total.
    pub fn dominates(&self, other: &MultiPartition) -> Result<bool> {
        other.check_shape(self.k(), self.total)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.dominates(b)))
    }
}

impl TryFrom<Vec<Vec<usize>>> for MultiPartition {
    type Error = Error;

    fn try_from(parts: Vec<Vec<usize>>) -> Result<Self> {
        MultiPartition::from_parts(parts)
    }
}

impl From<MultiPartition> for Vec<Vec<usize>> {
    fn from(m: MultiPartition) -> Self {
        m.components.into_iter().map(Vec::from).collect()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn hook_lengths(p: &Partition) -> Vec<Vec<usize>> {
    p.hook_lengths()
}

pub fn is_t_core(p: &Partition, t: usize) -> bool {
    p.is_t_core(t)
}

pub fn remove_rimhooks(p: &Partition, len: usize) -> Vec<RimhookRemoval> {
    p.rimhook_removals(len)
}

pub fn dominates(a: &MultiPartition, b: &MultiPartition) -> Result<bool> {
    a.dominates(b)
}

pub fn syt_count(p: &Partition) -> BigUint {
    p.syt_count()
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn multi(p: &[&[usize]]) -> MultiPartition {
        MultiPartition::from_parts(p.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn hook_lengths_of_421() {
        assert_eq!(
            part(&[4, 2, 1]).hook_lengths(),
            vec![vec![6, 4, 2, 1], vec![3, 1], vec![1]]
        );
        assert_eq!(part(&[1]).hook_lengths(), vec![vec![1]]);
        assert_eq!(part(&[2, 2]).hook_lengths(), vec![vec![3, 2], vec![2, 1]]);
    }

    #[test]
    fn t_cores() {
        assert!(part(&[4, 2, 1]).is_t_core(5));
        assert!(!part(&[4, 2, 1]).is_t_core(2));
        for t in 1..6 {
            assert!(Partition::empty().is_t_core(t));
        }
        assert!(!part(&[3]).is_t_core(3));
    }

    #[test]
    fn rimhooks_of_32() {
        let r = part(&[3, 2]).rimhook_removals(3);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].remainder, part(&[1, 1]));
        assert_eq!(r[0].height, 1);
        assert_eq!(r[0].length, 3);
    }

    #[test]
    fn single_row_rimhook() {
        for n in 1..8 {
            let r = Partition::row(n).rimhook_removals(n);
            assert_eq!(r.len(), 1);
            assert!(r[0].remainder.is_empty());
            assert_eq!(r[0].height, 0);
        }
        assert!(part(&[2]).rimhook_removals(3).is_empty());
    }

    #[test]
    fn syt_counts() {
        assert_eq!(Partition::row(6).syt_count(), BigUint::from(1u32));
        assert_eq!(part(&[2, 1]).syt_count(), BigUint::from(2u32));
        assert_eq!(part(&[4, 2, 1]).syt_count(), BigUint::from(35u32));
    }

    #[test]
    fn multipartition_dominance() {
        let a = multi(&[&[2], &[]]);
        let b = multi(&[&[1, 1], &[]]);
        assert!(a.dominates(&a).unwrap());
        assert!(a.dominates(&b).unwrap());
        let c = multi(&[&[2], &[1]]);
        let d = multi(&[&[1, 1], &[1]]);
        assert!(c.dominates(&d).unwrap());
        assert!(!d.dominates(&c).unwrap());
        assert!(a.dominates(&c).is_err());
        assert!(a.dominates(&multi(&[&[2]])).is_err());
    }

    #[test]
    fn conjugate_and_multiplicities() {
        let p = part(&[4, 2, 1]);
        assert_eq!(p.conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(p.conjugate().conjugate(), p);
        let m = part(&[3, 3, 1]).multiplicities();
        assert_eq!(Partition::from_multiplicities(&m), part(&[3, 3, 1]));
    }

    #[test]
    fn serde_nested_lists() {
        let m = multi(&[&[6, 1], &[4, 1, 1, 1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[6,1],[4,1,1,1]]");
        let back: MultiPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<MultiPartition>("[[1,2]]").is_err());
        assert_eq!(m.to_string(), "[[6,1],[4,1,1,1]]");
    }
}
