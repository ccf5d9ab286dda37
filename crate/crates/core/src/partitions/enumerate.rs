//! Canonical enumeration orders.
//!
//! Partitions of `n` are listed in lexicographically decreasing order of
//! their part lists: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
//!
//! k-multipartitions are listed component-major: first by the size of the
//! first component (largest first), then by the first component in the
//! partition order above, then recursively by the remaining components.
//! For `n = 2, k = 2` this gives `((2),∅), ((1,1),∅), ((1),(1)), (∅,(2)),
//! (∅,(1,1))`. The ranking in `counting` is the inverse of this order.

use super::{MultiPartition, Partition};

/// Lazily yields the partitions of `n` in lexicographically decreasing order.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl PartitionIter {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        PartitionIter { next: Some(first) }
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pos = parts.iter().rposition(|&p| p > 1)?;
    let mut out = parts[..pos].to_vec();
    let top = parts[pos] - 1;
    let mut rest: usize = parts[pos + 1..].iter().sum::<usize>() + 1;
    out.push(top);
    while rest > 0 {
        let take = rest.min(top);
        out.push(take);
        rest -= take;
    }
    Some(out)
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_sorted(current))
    }
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    PartitionIter::new(n).collect()
}

/// Lazily yields the k-multipartitions of `n` in canonical order.
#[derive(Clone, Debug)]
pub struct MultiPartitionIter {
    n: usize,
    sizes: Vec<usize>,
    current: Vec<Vec<usize>>,
    done: bool,
}

impl MultiPartitionIter {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1, "multipartitions need k >= 1");
        let mut it = MultiPartitionIter {
            n,
            sizes: vec![0; k],
            current: vec![Vec::new(); k],
            done: false,
        };
        it.reset_from(0);
        it
    }

    fn first_of(size: usize) -> Vec<usize> {
        if size == 0 {
            Vec::new()
        } else {
            vec![size]
        }
    }

    /// Puts components `from..` into their first configuration.
    fn reset_from(&mut self, from: usize) {
        let used: usize = self.sizes[..from].iter().sum();
        let mut remaining = self.n - used;
        for i in from..self.sizes.len() {
            self.sizes[i] = remaining;
            self.current[i] = Self::first_of(remaining);
            remaining = 0;
        }
    }

    fn advance(&mut self) {
        let k = self.sizes.len();
        for i in (0..k).rev() {
            if let Some(next) = successor(&self.current[i]) {
                self.current[i] = next;
                self.reset_from(i + 1);
                return;
            }
            // The last component's size is forced by the others.
            if i + 1 < k && self.sizes[i] > 0 {
                self.sizes[i] -= 1;
                self.current[i] = Self::first_of(self.sizes[i]);
                self.reset_from(i + 1);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for MultiPartitionIter {
    type Item = MultiPartition;

    fn next(&mut self) -> Option<MultiPartition> {
        if self.done {
            return None;
        }
        let item = MultiPartition {
            components: self
                .current
                .iter()
                .map(|c| Partition::from_sorted(c.clone()))
                .collect(),
            total: self.n,
        };
        self.advance();
        Some(item)
    }
}

pub fn enumerate_multipartitions(n: usize, k: usize) -> MultiPartitionIter {
    MultiPartitionIter::new(n, k)
}
