use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::base_group::GroupData;
use crate::error::Result;
use crate::partitions::{MultiPartition, Partition};

/// A cycle of the class label: `(length, class of G of its cycle product)`.
pub type Cycle = (usize, usize);

/// Cycles of `mu` in the canonical processing order: component ascending,
/// then length descending.
pub fn flatten_cycles(mu: &MultiPartition) -> Vec<Cycle> {
    mu.components()
        .iter()
        .enumerate()
        .flat_map(|(class, comp)| comp.parts().iter().map(move |&len| (len, class)))
        .collect()
}

/// Character evaluator for one group `G`.
///
/// Irreducible values come from the Murnaghan–Nakayama recursion: the first
/// remaining cycle `(ℓ, j)` is peeled off as a rimhook of length `ℓ` from
/// some component `λ_q`, contributing `(-1)^height · χ^q(c_j)`. Intermediate
/// results are memoized on (remaining λ, remaining cycles); the cache is
/// shared between threads and racing inserts store identical values.
#[derive(Debug)]
pub struct CharacterEngine {
    group: Arc<GroupData>,
    memo: DashMap<Box<[u32]>, BigInt>,
}

impl CharacterEngine {
    pub fn new(group: GroupData) -> Self {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<GroupData>) -> Self {
        CharacterEngine {
            group,
            memo: DashMap::new(),
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.group.k()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    /// `χ^λ_μ`.
    pub fn mn_character(&self, lambda: &MultiPartition, mu: &MultiPartition) -> Result<BigInt> {
        mu.check_shape(self.k(), lambda.total())?;
        lambda.check_shape(self.k(), mu.total())?;
        Ok(self.mn_rec(lambda.components(), &flatten_cycles(mu), false))
    }

    /// `χ^λ` on the class whose cycles are `cycles`, peeled in the given order.
    /// The value does not depend on the order.
    pub fn mn_character_ordered(
        &self,
        lambda: &MultiPartition,
        cycles: &[Cycle],
    ) -> Result<BigInt> {
        lambda.check_shape(self.k(), lambda.total())?;
        let total: usize = cycles.iter().map(|c| c.0).sum();
        if total != lambda.total() {
            return Err(crate::Error::SizeMismatch {
                left: lambda.total(),
                right: total,
            });
        }
        if let Some(&(len, class)) = cycles.iter().find(|c| c.0 == 0 || c.1 >= self.k()) {
            return Err(crate::Error::InvalidArgument(format!(
                "bad cycle (length {len}, class {class})"
            )));
        }
        Ok(self.mn_rec(lambda.components(), cycles, false))
    }

    fn mn_rec(&self, lambda: &[Partition], cycles: &[Cycle], memoize: bool) -> BigInt {
        let Some((&(len, class), rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        let key = memoize.then(|| memo_key(lambda, cycles));
        if let Some(key) = &key {
            if let Some(v) = self.memo.get(key) {
                return v.clone();
            }
        }

        let mut sum = BigInt::zero();
        for (q, comp) in lambda.iter().enumerate() {
            let factor = self.group.value(q, class);
            if factor.is_zero() || comp.size() < len {
                continue;
            }
            for removal in comp.rimhook_removals(len) {
                let mut next = lambda.to_vec();
                next[q] = removal.remainder;
                let sub = self.mn_rec(&next, rest, true);
                if sub.is_zero() {
                    continue;
                }
                let term = sub * factor;
                if removal.height % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
        }

        if let Some(key) = key {
            self.memo.insert(key, sum.clone());
        }
        sum
    }

    /// `M^λ_μ`: sum over row decompositions, each cycle `(ℓ, j)` placed in a
    /// row of `λ_q` contributing `χ^q(c_j)`.
    pub fn perm_character(&self, lambda: &MultiPartition, mu: &MultiPartition) -> Result<BigInt> {
        mu.check_shape(self.k(), lambda.total())?;
        lambda.check_shape(self.k(), mu.total())?;
        let group = &self.group;
        Ok(row_decomposition_sum(lambda, mu, |q, j| {
            group.value(q, j).clone()
        }))
    }
}

fn memo_key(lambda: &[Partition], cycles: &[Cycle]) -> Box<[u32]> {
    let mut key =
        Vec::with_capacity(lambda.iter().map(|c| c.len() + 1).sum::<usize>() + 2 * cycles.len());
    for comp in lambda {
        key.extend(
            comp.parts()
                .iter()
                .map(|&p| u32::try_from(p).expect("part fits in u32")),
        );
        key.push(0);
    }
    for &(len, class) in cycles {
        key.push(u32::try_from(len).expect("cycle length fits in u32"));
        key.push(class as u32);
    }
    key.into_boxed_slice()
}

/// Weighted count of row decompositions of `lambda` by `mu`. Rows of `mu`
/// are distinguishable; a row of `mu_j` placed into `lambda_q` has weight
/// `weight(q, j)`. With unit weights this is `|RD(λ, μ)|`.
pub fn row_decomposition_sum<W>(lambda: &MultiPartition, mu: &MultiPartition, weight: W) -> BigInt
where
    W: Fn(usize, usize) -> BigInt,
{
    // Rows of λ, longest first so that large rows fail early.
    let mut rows: Vec<(usize, usize)> = lambda
        .components()
        .iter()
        .enumerate()
        .flat_map(|(q, c)| c.parts().iter().map(move |&len| (len, q)))
        .collect();
    rows.sort_by(|a, b| b.cmp(a));

    // Distinct (length, class) cycle types of μ with their multiplicities.
    let mut types: Vec<(usize, usize)> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (class, comp) in mu.components().iter().enumerate() {
        for (len, count) in comp.multiplicities().into_iter().rev() {
            types.push((len, class));
            counts.push(count);
        }
    }

    let k = lambda.k();
    // Powers table: pow[q][t][c] = weight(q, class_t)^c.
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let pow: Vec<Vec<Vec<BigInt>>> = (0..k)
        .map(|q| {
            types
                .iter()
                .map(|&(_, class)| {
                    let w = weight(q, class);
                    let mut v = vec![BigInt::one()];
                    for c in 1..=max_count {
                        let next = &v[c - 1] * &w;
                        v.push(next);
                    }
                    v
                })
                .collect()
        })
        .collect();

    let ctx = RdContext {
        rows: &rows,
        types: &types,
        pow: &pow,
    };
    let mut memo = HashMap::new();
    ctx.rec(0, &mut counts, &mut memo)
}

struct RdContext<'a> {
    rows: &'a [(usize, usize)],
    types: &'a [(usize, usize)],
    pow: &'a [Vec<Vec<BigInt>>],
}

impl RdContext<'_> {
    fn rec(
        &self,
        row: usize,
        counts: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        if row == self.rows.len() {
            return BigInt::one();
        }
        let key = (row, counts.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let (len, q) = self.rows[row];
        let mut total = BigInt::zero();
        let mut chosen = vec![0usize; self.types.len()];
        self.fill(row, q, 0, len, counts, &mut chosen, &mut total, memo);
        memo.insert(key, total.clone());
        total
    }

    /// Chooses how many cycles of each type (from index `t` on) fill the
    /// remaining `space` of the current row.
    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        row: usize,
        q: usize,
        t: usize,
        space: usize,
        counts: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        total: &mut BigInt,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) {
        if space == 0 {
            let mut w = BigInt::one();
            for (ti, &c) in chosen.iter().enumerate() {
                if c > 0 {
                    w *= binomial(counts[ti] + c, c);
                    w *= &self.pow[q][ti][c];
                }
            }
            if w.is_zero() {
                return;
            }
            let sub = self.rec(row + 1, counts, memo);
            *total += w * sub;
            return;
        }
        if t == self.types.len() {
            return;
        }
        let len = self.types[t].0;
        let max = counts[t].min(space / len);
        for c in (0..=max).rev() {
            counts[t] -= c;
            chosen[t] = c;
            self.fill(row, q, t + 1, space - c * len, counts, chosen, total, memo);
            chosen[t] = 0;
            counts[t] += c;
        }
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
