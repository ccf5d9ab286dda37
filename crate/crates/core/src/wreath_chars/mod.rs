//! Characters of `G ≀ S_N`.
//!
//! Labels: component `i` of an irreducible label is paired with row `i`
//! (the character `χ^i`) of the group table; component `j` of a class label
//! collects the cycles whose cycle product lies in class `j` of `G`.

mod engine;
mod kostka;
mod table;

pub use engine::{flatten_cycles, row_decomposition_sum, CharacterEngine, Cycle};
pub use kostka::{kostka, perm_multiplicity};
pub use table::{character_table, check_budget, CharTable, DEFAULT_CELL_BUDGET};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::base_group::GroupData;
use crate::error::Result;
use crate::partitions::{factorial, MultiPartition, Partition};

/// A single table cell request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharQuery {
    pub lambda: MultiPartition,
    pub mu: MultiPartition,
}

/// `|class of μ| = |G|^n n! / Π_{j,ℓ} (ℓ z_j)^{m_{jℓ}} m_{jℓ}!`.
pub fn class_size(group: &GroupData, mu: &MultiPartition, n: usize) -> Result<BigUint> {
    mu.check_shape(group.k(), n)?;
    let numerator = group.order().pow(n as u32) * factorial(n);
    let mut denominator = BigUint::one();
    for (j, comp) in mu.components().iter().enumerate() {
        let z = &group.centralizer_orders[j];
        for (len, m) in comp.multiplicities() {
            denominator *= (z * len).pow(m as u32) * factorial(m);
        }
    }
    debug_assert!((&numerator % &denominator) == BigUint::from(0u32));
    Ok(numerator / denominator)
}

/// `|G ≀ S_n| = |G|^n n!`.
pub fn wreath_order(group: &GroupData, n: usize) -> BigUint {
    group.order().pow(n as u32) * factorial(n)
}

/// Degree of `V^λ`: `n!/(Π a_i!) · Π syt(λ_i) · Π deg(χ^i)^{a_i}`.
pub fn dimension(group: &GroupData, lambda: &MultiPartition) -> Result<BigInt> {
    lambda.check_shape(group.k(), lambda.total())?;
    let mut dim = BigInt::from(factorial(lambda.total()));
    for (i, comp) in lambda.components().iter().enumerate() {
        let a = comp.size();
        dim /= BigInt::from(factorial(a));
        dim *= BigInt::from(comp.syt_count());
        dim *= group.degree(i).pow(a as u32);
    }
    Ok(dim)
}

/// The identity class: all `n` cycles of length 1 with trivial cycle product.
pub fn identity_class_label(group: &GroupData, n: usize) -> MultiPartition {
    MultiPartition::single(group.k(), group.identity_class, Partition::column(n))
}

/// The trivial character: `(n)` in the component of the trivial character of `G`.
pub fn trivial_label(group: &GroupData, n: usize) -> MultiPartition {
    MultiPartition::single(group.k(), group.trivial_char, Partition::row(n))
}

/// `χ^λ_μ` with a one-off engine.
pub fn mn_character(
    group: &GroupData,
    lambda: &MultiPartition,
    mu: &MultiPartition,
) -> Result<BigInt> {
    CharacterEngine::new(group.clone()).mn_character(lambda, mu)
}

/// `M^λ_μ`.
pub fn perm_character(
    group: &GroupData,
    lambda: &MultiPartition,
    mu: &MultiPartition,
) -> Result<BigInt> {
    CharacterEngine::new(group.clone()).perm_character(lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_multipartitions;
    use num_traits::ToPrimitive;

    fn mp(p: &[&[usize]]) -> MultiPartition {
        MultiPartition::from_parts(p.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn z2() -> GroupData {
        GroupData::builtin("Z2").unwrap()
    }

    #[test]
    fn class_sizes_of_b2() {
        let g = z2();
        assert_eq!(
            class_size(&g, &mp(&[&[2], &[]]), 2).unwrap(),
            BigUint::from(2u32)
        );
        let total: BigUint = enumerate_multipartitions(2, 2)
            .map(|mu| class_size(&g, &mu, 2).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(8u32));
        let t = GroupData::builtin("trivial").unwrap();
        assert_eq!(
            class_size(&t, &identity_class_label(&t, 5), 5).unwrap(),
            BigUint::one()
        );
        assert!(class_size(&g, &mp(&[&[2], &[]]), 3).is_err());
    }

    #[test]
    fn dimensions() {
        let g = z2();
        assert_eq!(dimension(&g, &mp(&[&[1], &[1]])).unwrap(), BigInt::from(2));
        assert_eq!(dimension(&g, &trivial_label(&g, 6)).unwrap(), BigInt::one());
        let degrees: Vec<i64> = enumerate_multipartitions(2, 2)
            .map(|l| dimension(&g, &l).unwrap().to_i64().unwrap())
            .collect();
        assert_eq!(degrees, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn small_mn_values() {
        let t = GroupData::builtin("trivial").unwrap();
        assert_eq!(
            mn_character(&t, &mp(&[&[2, 1]]), &mp(&[&[1, 1, 1]])).unwrap(),
            BigInt::from(2)
        );
        let g = z2();
        assert_eq!(
            mn_character(&g, &mp(&[&[1], &[1]]), &mp(&[&[1, 1], &[]])).unwrap(),
            BigInt::from(2)
        );
        assert!(mn_character(&g, &mp(&[&[1], &[1]]), &mp(&[&[1], &[]])).is_err());
    }

    #[test]
    fn figure_two_row_decompositions() {
        let lambda = mp(&[&[4, 1], &[2]]);
        let mu = mp(&[&[3, 1], &[2, 1]]);
        let count = row_decomposition_sum(&lambda, &mu, |_, _| BigInt::one());
        assert_eq!(count, BigInt::from(2));
        assert_eq!(
            perm_character(&z2(), &lambda, &mu).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn one_row_permutation_character() {
        for name in ["trivial", "Z2", "S3"] {
            let g = GroupData::builtin(name).unwrap();
            for n in 0..=4 {
                let lambda = MultiPartition::single(g.k(), 0, Partition::row(n));
                for mu in enumerate_multipartitions(n, g.k()) {
                    let expected: BigInt = mu
                        .components()
                        .iter()
                        .enumerate()
                        .map(|(j, c)| g.value(0, j).pow(c.len() as u32))
                        .product();
                    assert_eq!(perm_character(&g, &lambda, &mu).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn trivial_character_is_one() {
        for name in ["Z2", "S3", "Q8"] {
            let g = GroupData::builtin(name).unwrap();
            let engine = CharacterEngine::new(g.clone());
            for n in 0..=4 {
                let triv = trivial_label(&g, n);
                for mu in enumerate_multipartitions(n, g.k()) {
                    assert_eq!(engine.mn_character(&triv, &mu).unwrap(), BigInt::one());
                }
            }
        }
    }
}
