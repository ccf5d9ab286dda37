//! Type D from type B: `D_N` is the index-2 subgroup of `B_N = ℤ/2 ≀ S_N`
//! of signed permutation matrices with an even number of `-1` entries.
//!
//! Irreducibles of `B_N` are labelled by pairs `(λ, μ)`. Tensoring with the
//! sign character `ψ` of `B_N/D_N` swaps the pair, so for `λ ≠ μ` the
//! restrictions of `V^{λ,μ}` and `V^{μ,λ}` coincide and stay irreducible,
//! while `V^{λ,λ}` splits into two halves. The census here only uses the
//! nonsplit rows, whose values on `D_N` are plain `B_N` values.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::congruence::require_prime;
use crate::error::{Error, Result};
use crate::partitions::{
    count_multipartitions, enumerate_multipartitions, partition_counts, MultiPartition,
    MultiPartitionIndex, Partition,
};
use crate::stats::census::{count_hits, divisible};
use crate::stats::{sample_rng, CensusMode, CensusReport, SampleSpec};
use crate::wreath_chars::CharacterEngine;

/// Irreducible of `D_N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DnIrrepLabel {
    /// `Res V^{λ,μ} = Res V^{μ,λ}` with `(first, second)` the smaller ordering.
    Nonsplit { first: Partition, second: Partition },
    /// One of the two constituents of `Res V^{λ,λ}`.
    Split { half: Partition, index: u8 },
}

impl DnIrrepLabel {
    pub fn nonsplit(lambda: Partition, mu: Partition) -> Result<Self> {
        if lambda == mu {
            return Err(Error::InvalidArgument(format!(
                "({lambda},{mu}) has equal components and splits"
            )));
        }
        let (first, second) = if (&lambda, &mu) <= (&mu, &lambda) {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        Ok(DnIrrepLabel::Nonsplit { first, second })
    }

    pub fn split(half: Partition, index: u8) -> Result<Self> {
        if !(1..=2).contains(&index) {
            return Err(Error::InvalidArgument(format!(
                "split index {index} not in {{1,2}}"
            )));
        }
        Ok(DnIrrepLabel::Split { half, index })
    }

    /// The `B_N` irreducible it is restricted from (the representative pair
    /// for nonsplit labels).
    pub fn bn_label(&self) -> MultiPartition {
        let (a, b) = match self {
            DnIrrepLabel::Nonsplit { first, second } => (first, second),
            DnIrrepLabel::Split { half, .. } => (half, half),
        };
        MultiPartition::new(vec![a.clone(), b.clone()]).expect("two components")
    }
}

impl fmt::Display for DnIrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DnIrrepLabel::Nonsplit { first, second } => write!(f, "{{{first},{second}}}"),
            DnIrrepLabel::Split { half, index } => write!(f, "({half},{half})/{index}"),
        }
    }
}

/// A `B_N` class inside `D_N`, optionally one half of a class that splits.
/// Which classes split is not decided here; `split_half` is carried as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DnClassLabel {
    pub bn_class: MultiPartition,
    pub split_half: Option<u8>,
}

impl DnClassLabel {
    pub fn new(bn_class: MultiPartition, split_half: Option<u8>) -> Result<Self> {
        if !bn_class_in_dn(&bn_class)? {
            return Err(Error::InvalidArgument(format!(
                "{bn_class} is not a class of D_N"
            )));
        }
        if split_half.is_some_and(|h| !(1..=2).contains(&h)) {
            return Err(Error::InvalidArgument("split half must be 1 or 2".into()));
        }
        Ok(DnClassLabel {
            bn_class,
            split_half,
        })
    }
}

fn require_two(mu: &MultiPartition) -> Result<()> {
    if mu.k() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: mu.k(),
        });
    }
    Ok(())
}

/// Component 2 holds the cycles whose product is `-1`; each has an odd
/// number of `-1` entries, so the class lies in `D_N` iff it has an even
/// number of parts.
pub fn bn_class_in_dn(mu: &MultiPartition) -> Result<bool> {
    require_two(mu)?;
    Ok(mu.component(1).len().is_multiple_of(2))
}

/// `ψ(ν) = (-1)^{#parts of ν₂}`, the sign character of `B_N / D_N`.
pub fn psi(nu: &MultiPartition) -> Result<i32> {
    Ok(if bn_class_in_dn(nu)? { 1 } else { -1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnIrrepCounts {
    pub nonsplit: BigUint,
    pub split: BigUint,
    pub total: BigUint,
}

/// `½(p₂(n) − p(n/2))` nonsplit and `2p(n/2)` split irreducibles for even
/// `n`; `½p₂(n)` and none for odd `n`.
pub fn dn_irrep_census(n: usize) -> Result<DnIrrepCounts> {
    if n == 0 {
        return Err(Error::InvalidArgument("D_N needs n >= 1".into()));
    }
    let pairs = count_multipartitions(n, 2);
    let diagonal = if n.is_multiple_of(2) {
        partition_counts(n / 2).pop().unwrap()
    } else {
        BigUint::zero()
    };
    let nonsplit = (pairs - &diagonal) / 2u32;
    let split = diagonal * 2u32;
    Ok(DnIrrepCounts {
        total: &nonsplit + &split,
        nonsplit,
        split,
    })
}

/// All irreducible labels in canonical `B_N` order of their representatives.
pub fn dn_irrep_labels(n: usize) -> Vec<DnIrrepLabel> {
    let mut out = Vec::new();
    for m in enumerate_multipartitions(n, 2) {
        let [a, b] = <[Partition; 2]>::try_from(m.into_components()).expect("two components");
        if a == b {
            out.push(DnIrrepLabel::Split {
                half: a.clone(),
                index: 1,
            });
            out.push(DnIrrepLabel::Split { half: a, index: 2 });
        } else if (&a, &b) < (&b, &a) {
            out.push(DnIrrepLabel::Nonsplit {
                first: a,
                second: b,
            });
        }
    }
    out
}

/// Fraction of `B_N` classes that lie in `D_N`.
pub fn dn_half_classes_property(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("D_N needs n >= 1".into()));
    }
    let p = partition_counts(n);
    // even[a] / odd[a]: partitions of a with an even / odd number of parts.
    let mut even = vec![BigUint::zero(); n + 1];
    let mut odd = vec![BigUint::zero(); n + 1];
    even[0] = BigUint::from(1u32);
    for part in 1..=n {
        for m in part..=n {
            let (e, o) = (odd[m - part].clone(), even[m - part].clone());
            even[m] += e;
            odd[m] += o;
        }
    }
    let inside: BigUint = (0..=n).map(|a| &p[n - a] * &even[a]).sum();
    Ok(BigRational::new(
        inside.into(),
        count_multipartitions(n, 2).into(),
    ))
}

/// How [`dn_restricted_census`] visits the sub-table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DnMode {
    Exact { budget: u64 },
    Sampled(SampleSpec),
}

fn require_b_engine(engine: &CharacterEngine) -> Result<()> {
    let g = engine.group();
    if g.k() != 2 || g.order() != BigUint::from(2u32) || g.identity_class != 0 {
        return Err(Error::InvalidArgument(format!(
            "type D census needs Z2 with the identity as class 0, got {}",
            g.name
        )));
    }
    Ok(())
}

/// Divisibility census of the nonsplit rows of the `D_N` table on the
/// `B_N` classes inside `D_N`. Each entry is the `B_N` value `χ^{(λ,μ)}_ν`.
/// `coverage` is the share of the full `D_N` table made of nonsplit rows.
pub fn dn_restricted_census(
    engine: &CharacterEngine,
    n: usize,
    p: u64,
    mode: DnMode,
) -> Result<CensusReport> {
    require_prime(p)?;
    require_b_engine(engine)?;
    let counts = dn_irrep_census(n)?;
    let coverage = BigRational::new(counts.nonsplit.clone().into(), counts.total.clone().into());
    let group = format!("D{n}");
    let mut report = match mode {
        DnMode::Exact { budget } => {
            let rows: Vec<MultiPartition> = dn_irrep_labels(n)
                .iter()
                .filter(|l| matches!(l, DnIrrepLabel::Nonsplit { .. }))
                .map(DnIrrepLabel::bn_label)
                .collect();
            let cols: Vec<MultiPartition> = enumerate_multipartitions(n, 2)
                .filter(|mu| mu.component(1).len() % 2 == 0)
                .collect();
            let cells = rows.len() as u64 * cols.len() as u64;
            if cells > budget {
                return Err(Error::BudgetExceeded {
                    cells: cells.to_string(),
                    budget,
                });
            }
            let width = cols.len() as u64;
            let hits = count_hits(cells, |cell| {
                let (r, c) = ((cell / width) as usize, (cell % width) as usize);
                Ok(divisible(&engine.mn_character(&rows[r], &cols[c])?, p))
            })?;
            CensusReport::new(CensusMode::Exact, group, 2, n, p, cells, hits)
        }
        DnMode::Sampled(spec) => {
            if spec.samples == 0 {
                return Err(Error::InvalidArgument("samples must be at least 1".into()));
            }
            if counts.nonsplit.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "D{n} has no nonsplit irreducibles"
                )));
            }
            let index = MultiPartitionIndex::new(n, 2)?;
            let hits = count_hits(spec.samples, |i| {
                let mut rng = sample_rng(spec.seed, i);
                // Rejection keeps both draws uniform: every unordered pair
                // {λ, μ} with λ ≠ μ has exactly two ordered preimages.
                let lambda = loop {
                    let m = index.sample(&mut rng);
                    if m.component(0) != m.component(1) {
                        let [a, b] = <[Partition; 2]>::try_from(m.into_components()).unwrap();
                        break DnIrrepLabel::nonsplit(a, b)?.bn_label();
                    }
                };
                let mu = loop {
                    let m = index.sample(&mut rng);
                    if m.component(1).len() % 2 == 0 {
                        break m;
                    }
                };
                Ok(divisible(&engine.mn_character(&lambda, &mu)?, p))
            })?;
            CensusReport::new(CensusMode::Sampled, group, 2, n, p, spec.samples, hits)
                .with_interval(spec.samples, spec.seed, spec.confidence, spec.method)?
        }
    };
    report.coverage = Some(coverage);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_group::GroupData;
    use crate::wreath_chars::character_table;
    use crate::wreath_chars::DEFAULT_CELL_BUDGET;

    fn mp(p: &[&[usize]]) -> MultiPartition {
        MultiPartition::from_parts(p.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn class_membership() {
        assert!(bn_class_in_dn(&mp(&[&[2], &[]])).unwrap());
        assert!(!bn_class_in_dn(&mp(&[&[1], &[1]])).unwrap());
        assert!(bn_class_in_dn(&mp(&[&[], &[1, 1]])).unwrap());
        assert!(bn_class_in_dn(&mp(&[&[3, 1]])).is_err());
        assert_eq!(psi(&mp(&[&[], &[2]])).unwrap(), -1);
    }

    #[test]
    fn irrep_counts() {
        let c2 = dn_irrep_census(2).unwrap();
        assert_eq!(
            (c2.nonsplit, c2.split, c2.total),
            (2u32.into(), 2u32.into(), 4u32.into())
        );
        assert_eq!(dn_irrep_census(3).unwrap().total, BigUint::from(5u32));
        assert_eq!(dn_irrep_census(4).unwrap().total, BigUint::from(13u32));
        for n in 1..=10 {
            let labels = dn_irrep_labels(n);
            let c = dn_irrep_census(n).unwrap();
            assert_eq!(BigUint::from(labels.len()), c.total);
            let split = labels
                .iter()
                .filter(|l| matches!(l, DnIrrepLabel::Split { .. }))
                .count();
            assert_eq!(BigUint::from(split), c.split);
        }
        assert!(dn_irrep_census(0).is_err());
    }

    #[test]
    fn labels_canonicalize() {
        let a = Partition::row(2);
        let b = Partition::column(2);
        assert_eq!(
            DnIrrepLabel::nonsplit(a.clone(), b.clone()).unwrap(),
            DnIrrepLabel::nonsplit(b.clone(), a.clone()).unwrap()
        );
        assert!(DnIrrepLabel::nonsplit(a.clone(), a.clone()).is_err());
        assert!(DnIrrepLabel::split(a.clone(), 3).is_err());
        assert!(DnClassLabel::new(mp(&[&[1], &[1]]), None).is_err());
        assert!(DnClassLabel::new(mp(&[&[2], &[]]), Some(1)).is_ok());
    }

    #[test]
    fn half_classes() {
        assert_eq!(dn_half_classes_property(1).unwrap(), q(1, 2));
        assert_eq!(dn_half_classes_property(2).unwrap(), q(3, 5));
        for n in 1..=12 {
            let all: Vec<_> = enumerate_multipartitions(n, 2).collect();
            let inside = all.iter().filter(|m| bn_class_in_dn(m).unwrap()).count();
            assert_eq!(
                dn_half_classes_property(n).unwrap(),
                q(inside as i64, all.len() as i64)
            );
        }
    }

    #[test]
    fn exact_restricted_census_at_two() {
        let engine = CharacterEngine::new(GroupData::builtin("Z2").unwrap());
        let r = dn_restricted_census(&engine, 2, 2, DnMode::Exact { budget: 100 }).unwrap();
        assert_eq!(r.cells_evaluated, 6);
        assert_eq!(r.coverage, Some(q(1, 2)));
        // Oracle: the same six cells read off the B₂ table.
        let t = character_table(&engine, 2, DEFAULT_CELL_BUDGET).unwrap();
        let mut even = 0;
        for (lambda, row) in t.row_labels.iter().zip(&t.values) {
            let (a, b) = (lambda.component(0), lambda.component(1));
            if !(a != b && (a, b) < (b, a)) {
                continue;
            }
            for (mu, v) in t.col_labels.iter().zip(row) {
                if bn_class_in_dn(mu).unwrap() && divisible(v, 2) {
                    even += 1;
                }
            }
        }
        assert_eq!(r.divisible_count, even);
        let s3 = CharacterEngine::new(GroupData::builtin("S3").unwrap());
        assert!(dn_restricted_census(&s3, 2, 2, DnMode::Exact { budget: 100 }).is_err());
        assert!(dn_restricted_census(&engine, 6, 2, DnMode::Exact { budget: 10 }).is_err());
    }

    #[test]
    fn sampled_restricted_census_is_reproducible() {
        let engine = CharacterEngine::new(GroupData::builtin("Z2").unwrap());
        let mode = DnMode::Sampled(SampleSpec::new(200, 9));
        let a = dn_restricted_census(&engine, 9, 2, mode).unwrap();
        let b = dn_restricted_census(&engine, 9, 2, mode).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.cells_evaluated, 200);
    }
}
