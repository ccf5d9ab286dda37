//! Exact partition counts, plus ranking and unranking in the canonical
//! enumeration order.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::{MultiPartition, Partition};
use crate::error::{Error, Result};

/// Environment variable naming the directory for the on-disk counting table.
pub const CACHE_DIR_ENV: &str = "WREATHCHAR_CACHE_DIR";

/// `p(0), ..., p(n)` by Euler's pentagonal-number recurrence.
pub fn partition_counts(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let target = if k % 2 == 1 { &mut plus } else { &mut minus };
            *target += &p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                *target += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

pub fn count_partitions(n: usize) -> BigUint {
    partition_counts(n).pop().unwrap()
}

/// `p_k(0), ..., p_k(n)` via `p_k(N) = Σ_a p(a) p_{k-1}(N - a)`.
pub fn multipartition_counts(n: usize, k: usize) -> Vec<BigUint> {
    assert!(k >= 1, "multipartitions need k >= 1");
    let p = partition_counts(n);
    let mut current = p.clone();
    for _ in 1..k {
        current = convolve(&p, &current);
    }
    current
}

pub fn count_multipartitions(n: usize, k: usize) -> BigUint {
    assert!(k >= 1, "multipartitions need k >= 1");
    if k == 1 {
        return count_partitions(n);
    }
    // Only the last convolution is needed at a single point.
    let p = partition_counts(n);
    let lower = multipartition_counts(n, k - 1);
    (0..=n).map(|a| &p[a] * &lower[n - a]).sum()
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    (0..a.len())
        .into_par_iter()
        .map(|m| (0..=m).map(|i| &a[i] * &b[m - i]).sum())
        .collect()
}

fn cmp_limbs(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn sub_limbs(a: &mut [u64], b: &[u64]) {
    let mut borrow = false;
    for (x, &y) in a.iter_mut().zip(b) {
        let (d1, b1) = x.overflowing_sub(y);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        *x = d2;
        borrow = b1 || b2;
    }
    debug_assert!(!borrow);
}

fn to_limbs(x: &BigUint, width: usize) -> Vec<u64> {
    let mut limbs = x.to_u64_digits();
    assert!(limbs.len() <= width, "value wider than the counting table");
    limbs.resize(width, 0);
    limbs
}

fn from_limbs(limbs: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(limbs.len() * 8);
    for l in limbs {
        bytes.extend_from_slice(&l.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// Table of `P(m, j)`, the number of partitions of `m` with parts at most
/// `j`, for `0 <= j <= m <= n`.
///
/// Entries are stored as fixed-width little-endian limbs so the table for
/// `n` in the thousands stays compact.
#[derive(Debug)]
pub struct PartitionTable {
    n: usize,
    width: usize,
    limbs: Vec<u64>,
}

const TABLE_MAGIC: &[u8; 8] = b"WCPTAB01";

impl PartitionTable {
    pub fn new(n: usize) -> Self {
        let pn = count_partitions(n);
        let width = (pn.bits() as usize).div_ceil(64).max(1);
        let entries = (n + 1) * (n + 2) / 2;
        let mut limbs = vec![0u64; entries * width];
        limbs[0] = 1; // P(0, 0)
        for m in 1..=n {
            // P(m, 0) = 0 for m > 0.
            for j in 1..=m {
                let prev = (tri(m) + j - 1) * width;
                let rest = m - j;
                let other = (tri(rest) + j.min(rest)) * width;
                let dst = (tri(m) + j) * width;
                let mut carry = 0u128;
                for l in 0..width {
                    let s = limbs[prev + l] as u128 + limbs[other + l] as u128 + carry;
                    limbs[dst + l] = s as u64;
                    carry = s >> 64;
                }
                debug_assert_eq!(carry, 0);
            }
        }
        PartitionTable { n, width, limbs }
    }

    /// Shares one table per process, reusing a larger one when available,
    /// and persists it under `dir` when given.
    pub fn shared(n: usize, dir: Option<&Path>) -> Result<Arc<PartitionTable>> {
        static CACHE: OnceLock<Mutex<Option<Arc<PartitionTable>>>> = OnceLock::new();
        let slot = CACHE.get_or_init(|| Mutex::new(None));
        let mut guard = slot.lock().unwrap();
        if let Some(t) = guard.as_ref() {
            if t.n >= n {
                return Ok(Arc::clone(t));
            }
        }
        let table = Arc::new(match dir {
            Some(d) => Self::load_or_build(n, d)?,
            None => Self::new(n),
        });
        *guard = Some(Arc::clone(&table));
        Ok(table)
    }

    pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("partition-table-{n}.bin"))
    }

    pub fn load_or_build(n: usize, dir: &Path) -> Result<Self> {
        let path = Self::cache_path(dir, n);
        if path.exists() {
            return Self::load(&path, n);
        }
        let table = Self::new(n);
        table.store(&path)?;
        Ok(table)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut bytes = Vec::with_capacity(24 + self.limbs.len() * 8);
        bytes.extend_from_slice(TABLE_MAGIC);
        bytes.extend_from_slice(&(self.n as u64).to_le_bytes());
        bytes.extend_from_slice(&(self.width as u64).to_le_bytes());
        for l in &self.limbs {
            bytes.extend_from_slice(&l.to_le_bytes());
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, bytes)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path, n: usize) -> Result<Self> {
        let bad = |reason: &str| Error::BadCache {
            path: path.display().to_string(),
            reason: reason.to_string(),
        };
        let bytes = fs::read(path)?;
        if bytes.len() < 24 || &bytes[..8] != TABLE_MAGIC {
            return Err(bad("missing header"));
        }
        let word = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().unwrap()) as usize;
        let (stored_n, width) = (word(8), word(16));
        if stored_n != n {
            return Err(bad("table built for a different n"));
        }
        let entries = (n + 1) * (n + 2) / 2;
        if width == 0 || bytes.len() != 24 + entries * width * 8 {
            return Err(bad("unexpected length"));
        }
        let limbs = bytes[24..]
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let table = PartitionTable { n, width, limbs };
        if table.count_at_most(n, n) != count_partitions(n) {
            return Err(bad("P(n, n) does not match p(n)"));
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn entry(&self, m: usize, j: usize) -> &[u64] {
        let at = (tri(m) + j.min(m)) * self.width;
        &self.limbs[at..at + self.width]
    }

    /// Partitions of `m` with every part at most `j`.
    pub fn count_at_most(&self, m: usize, j: usize) -> BigUint {
        assert!(m <= self.n, "table covers m <= {}", self.n);
        from_limbs(self.entry(m, j))
    }

    pub fn count(&self, m: usize) -> BigUint {
        self.count_at_most(m, m)
    }

    /// Partition of `m` at position `index` in lexicographically decreasing order.
    pub fn unrank(&self, m: usize, index: &BigUint) -> Result<Partition> {
        assert!(m <= self.n, "table covers m <= {}", self.n);
        let count = self.count(m);
        if index >= &count {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                count: count.to_string(),
            });
        }
        let mut idx = to_limbs(index, self.width);
        let mut parts = Vec::new();
        let (mut rem, mut max) = (m, m);
        while rem > 0 {
            let mut chosen = None;
            for j in (1..=rem.min(max)).rev() {
                let block = self.entry(rem - j, j);
                if cmp_limbs(&idx, block) == Ordering::Less {
                    chosen = Some(j);
                    break;
                }
                sub_limbs(&mut idx, block);
            }
            let j = chosen.expect("index below count always lands in a block");
            parts.push(j);
            rem -= j;
            max = j;
        }
        Ok(Partition::from_sorted(parts))
    }

    pub fn rank(&self, p: &Partition) -> BigUint {
        assert!(p.size() <= self.n, "table covers m <= {}", self.n);
        let mut rank = BigUint::zero();
        let (mut rem, mut max) = (p.size(), p.size());
        for &part in p.parts() {
            for j in part + 1..=rem.min(max) {
                rank += self.count_at_most(rem - j, j);
            }
            rem -= part;
            max = part;
        }
        rank
    }
}

fn tri(m: usize) -> usize {
    m * (m + 1) / 2
}

fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Rank/unrank of k-multipartitions of `n` in canonical order.
#[derive(Debug, Clone)]
pub struct MultiPartitionIndex {
    n: usize,
    k: usize,
    table: Arc<PartitionTable>,
    /// `lower[c][m] = p_c(m)` for `c < k`; `p_0(m) = [m == 0]`.
    lower: Vec<Vec<BigUint>>,
    total: BigUint,
}

impl MultiPartitionIndex {
    /// Uses the process-wide counting table, persisted under
    /// `$WREATHCHAR_CACHE_DIR` when that is set.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let table = PartitionTable::shared(n, cache_dir_from_env().as_deref())?;
        Ok(Self::with_table(n, k, table))
    }

    pub fn with_table(n: usize, k: usize, table: Arc<PartitionTable>) -> Self {
        assert!(k >= 1, "multipartitions need k >= 1");
        assert!(table.n() >= n);
        let p: Vec<BigUint> = (0..=n).map(|m| table.count(m)).collect();
        let mut lower = Vec::with_capacity(k);
        let mut unit = vec![BigUint::zero(); n + 1];
        unit[0] = BigUint::one();
        lower.push(unit);
        for c in 1..k {
            let next = if c == 1 {
                p.clone()
            } else {
                convolve(&p, &lower[c - 1])
            };
            lower.push(next);
        }
        let total = (0..=n).map(|a| &p[a] * &lower[k - 1][n - a]).sum();
        MultiPartitionIndex {
            n,
            k,
            table,
            lower,
            total,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> &BigUint {
        &self.total
    }

    pub fn unrank(&self, index: &BigUint) -> Result<MultiPartition> {
        if index >= &self.total {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                count: self.total.to_string(),
            });
        }
        let mut idx = index.clone();
        let mut rem = self.n;
        let mut components = Vec::with_capacity(self.k);
        for c in (0..self.k).rev() {
            // `c` components remain after this one.
            let rest_counts = &self.lower[c];
            let mut found = None;
            for a in (0..=rem).rev() {
                let rest = &rest_counts[rem - a];
                if rest.is_zero() {
                    continue;
                }
                let block = self.table.count(a) * rest;
                if idx < block {
                    found = Some((a, rest));
                    break;
                }
                idx -= block;
            }
            let (a, rest) = found.expect("index below count always lands in a block");
            let (own, rest_idx) = idx.div_rem(rest);
            components.push(self.table.unrank(a, &own)?);
            idx = rest_idx;
            rem -= a;
        }
        Ok(MultiPartition {
            components,
            total: self.n,
        })
    }

    pub fn rank(&self, m: &MultiPartition) -> Result<BigUint> {
        m.check_shape(self.k, self.n)?;
        let mut rank = BigUint::zero();
        let mut rem = self.n;
        for (i, comp) in m.components().iter().enumerate() {
            let c = self.k - 1 - i;
            let rest_counts = &self.lower[c];
            let a = comp.size();
            for larger in (a + 1..=rem).rev() {
                rank += self.table.count(larger) * &rest_counts[rem - larger];
            }
            rem -= a;
            rank += self.table.rank(comp) * &rest_counts[rem];
        }
        Ok(rank)
    }

    /// Uniform draw over all `p_k(n)` multipartitions.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MultiPartition {
        let index = rng.gen_biguint_below(&self.total);
        self.unrank(&index).expect("sampled index is in range")
    }
}

/// Multipartition at `index` in the canonical order.
pub fn unrank_multipartition(n: usize, k: usize, index: &BigUint) -> Result<MultiPartition> {
    MultiPartitionIndex::new(n, k)?.unrank(index)
}
