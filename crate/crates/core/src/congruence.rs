//! The `~_p` equivalence on class labels and the t-core zero certificate.
//!
//! `~_p` is generated by trading one part `mp` of some `μ_j` for `p` parts
//! `m`. Columns of the character table related by `~_p` agree mod `p`, so a
//! vanishing value on the mashed representative `μ̃` certifies `p | χ^λ_μ`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::base_group::GroupData;
use crate::error::{Error, Result};
use crate::partitions::{MultiPartition, Partition};

/// Trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MashedClass {
    pub original: MultiPartition,
    pub prime: u64,
    pub canonical: MultiPartition,
    /// Largest part of `canonical`, 0 when empty.
    pub largest_part: usize,
}

/// Base-`p` carry on the multiplicities of one partition: sizes are visited
/// in increasing order and every `p` copies of `s` become one `sp`.
fn mash_partition(part: &Partition, p: usize) -> Partition {
    let mut mult: BTreeMap<usize, usize> = part.multiplicities();
    let mut cursor = 0usize;
    while let Some((&size, &count)) = mult.range(cursor..).next() {
        if count >= p {
            let carry = count / p;
            let keep = count % p;
            if keep == 0 {
                mult.remove(&size);
            } else {
                mult.insert(size, keep);
            }
            *mult.entry(size * p).or_insert(0) += carry;
        }
        cursor = size + 1;
    }
    Partition::from_multiplicities(&mult)
}

/// The merge-maximal representative: no part repeats `p` or more times in
/// any component.
pub fn mash_canonical(mu: &MultiPartition, p: u64) -> Result<MashedClass> {
    require_prime(p)?;
    let pu = p as usize;
    let canonical = MultiPartition::new(
        mu.components()
            .iter()
            .map(|c| mash_partition(c, pu))
            .collect(),
    )?;
    let largest_part = canonical.largest_part();
    Ok(MashedClass {
        original: mu.clone(),
        prime: p,
        canonical,
        largest_part,
    })
}

pub fn sim_p_equivalent(mu: &MultiPartition, nu: &MultiPartition, p: u64) -> Result<bool> {
    nu.check_shape(mu.k(), mu.total())?;
    Ok(mash_canonical(mu, p)?.canonical == mash_canonical(nu, p)?.canonical)
}

/// Every class label one generator step away from `mu`: one part `mp`
/// split into `p` parts `m`, or `p` equal parts `m` merged into `mp`.
pub fn generator_neighbors(mu: &MultiPartition, p: u64) -> Vec<MultiPartition> {
    let p = p as usize;
    let mut out = Vec::new();
    for (j, comp) in mu.components().iter().enumerate() {
        let mult = comp.multiplicities();
        for (&size, &count) in &mult {
            if size % p == 0 {
                let mut split = mult.clone();
                remove_copies(&mut split, size, 1);
                *split.entry(size / p).or_insert(0) += p;
                out.push(mu.with_component(j, Partition::from_multiplicities(&split)));
            }
            if count >= p {
                let mut merged = mult.clone();
                remove_copies(&mut merged, size, p);
                *merged.entry(size * p).or_insert(0) += 1;
                out.push(mu.with_component(j, Partition::from_multiplicities(&merged)));
            }
        }
    }
    out
}

fn remove_copies(mult: &mut BTreeMap<usize, usize>, size: usize, copies: usize) {
    let c = mult.get_mut(&size).expect("size present");
    *c -= copies;
    if *c == 0 {
        mult.remove(&size);
    }
}

/// True iff `t = mashed.largest_part >= 1` and every `λ_i` is a t-core.
/// Then no rimhook of length `t` exists, so `χ^λ_{μ̃} = 0`.
pub fn zero_certificate(lambda: &MultiPartition, mashed: &MashedClass) -> Result<bool> {
    lambda.check_shape(mashed.canonical.k(), mashed.canonical.total())?;
    let t = mashed.largest_part;
    Ok(t >= 1 && lambda.components().iter().all(|c| c.is_t_core(t)))
}

/// Sound but incomplete: true implies `p | χ^λ_μ`.
pub fn predicted_divisible(
    group: &GroupData,
    lambda: &MultiPartition,
    mu: &MultiPartition,
    p: u64,
) -> Result<bool> {
    mu.check_shape(group.k(), lambda.total())?;
    certificate_for(lambda, mu, p)
}

/// [`predicted_divisible`] without the group: only the component count matters.
pub fn certificate_for(lambda: &MultiPartition, mu: &MultiPartition, p: u64) -> Result<bool> {
    zero_certificate(lambda, &mash_canonical(mu, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_multipartitions;

    fn mp(p: &[&[usize]]) -> MultiPartition {
        MultiPartition::from_parts(p.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(matches!(
            mash_canonical(&mp(&[&[1]]), 4),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn mashing_figure_triple() {
        let target = mp(&[&[6, 1], &[4, 3]]);
        for mu in [
            mp(&[&[6, 1], &[4, 1, 1, 1]]),
            mp(&[&[2, 2, 2, 1], &[4, 1, 1, 1]]),
            mp(&[&[2, 2, 2, 1], &[4, 3]]),
        ] {
            let m = mash_canonical(&mu, 3).unwrap();
            assert_eq!(m.canonical, target);
            assert_eq!(m.largest_part, 6);
        }
    }

    #[test]
    fn distinct_parts_are_fixed() {
        let mu = mp(&[&[5, 3, 1], &[2]]);
        assert_eq!(mash_canonical(&mu, 2).unwrap().canonical, mu);
        assert_eq!(
            mash_canonical(&MultiPartition::empty(2), 2)
                .unwrap()
                .largest_part,
            0
        );
    }

    #[test]
    fn two_step_chain() {
        let a = mp(&[&[2, 2], &[]]);
        assert!(sim_p_equivalent(&a, &mp(&[&[4], &[]]), 2).unwrap());
        assert!(sim_p_equivalent(&a, &mp(&[&[1, 1, 1, 1], &[]]), 2).unwrap());
        assert!(!sim_p_equivalent(&a, &mp(&[&[3, 1], &[]]), 2).unwrap());
        assert!(sim_p_equivalent(&a, &a, 5).unwrap());
        assert!(sim_p_equivalent(&a, &mp(&[&[4]]), 2).is_err());
    }

    #[test]
    fn carries_propagate() {
        // Eight 1s with p = 2 carry all the way to a single 8.
        let mu = mp(&[&[1; 8]]);
        assert_eq!(mash_canonical(&mu, 2).unwrap().canonical, mp(&[&[8]]));
        // Three 1s carry into a third 3, which then carries into a 9.
        let mu = mp(&[&[3, 3, 1, 1, 1]]);
        assert_eq!(mash_canonical(&mu, 3).unwrap().canonical, mp(&[&[9]]));
    }

    #[test]
    fn canonical_is_closed_under_generators() {
        for p in [2u64, 3, 5] {
            for n in 0..=10 {
                for mu in enumerate_multipartitions(n, 2) {
                    let m = mash_canonical(&mu, p).unwrap();
                    let again = mash_canonical(&m.canonical, p).unwrap();
                    assert_eq!(again.canonical, m.canonical);
                    for c in m.canonical.components() {
                        assert!(c.multiplicities().values().all(|&x| x < p as usize));
                    }
                    for nu in generator_neighbors(&mu, p) {
                        assert_eq!(mash_canonical(&nu, p).unwrap().canonical, m.canonical);
                    }
                }
            }
        }
    }

    #[test]
    fn base_p_digits_view() {
        // m copies of size s contribute the base-p digits of m at s, sp, sp², ...
        for p in [2usize, 3, 5] {
            for m in 0..40usize {
                let mu = MultiPartition::single(1, 0, Partition::from_sorted(vec![7; m]));
                let canon = mash_canonical(&mu, p as u64).unwrap().canonical;
                let mult = canon.component(0).multiplicities();
                let (mut rest, mut size) = (m, 7);
                while rest > 0 {
                    assert_eq!(mult.get(&size).copied().unwrap_or(0), rest % p);
                    rest /= p;
                    size *= p;
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let lambda = mp(&[&[4, 2, 1], &[]]);
        let mashed = mash_canonical(&mp(&[&[5, 2], &[]]), 2).unwrap();
        assert!(zero_certificate(&lambda, &mashed).unwrap());
        // A single row of length t always has a hook of length t.
        let lambda = mp(&[&[5, 2], &[]]);
        assert!(!zero_certificate(&lambda, &mashed).unwrap());
        let mashed0 = mash_canonical(&MultiPartition::empty(2), 2).unwrap();
        assert!(!zero_certificate(&MultiPartition::empty(2), &mashed0).unwrap());
    }

    #[test]
    fn trivial_character_is_never_certified() {
        let g = GroupData::builtin("Z2").unwrap();
        for n in 1..=8 {
            let triv = crate::wreath_chars::trivial_label(&g, n);
            for mu in enumerate_multipartitions(n, 2) {
                for p in [2, 3, 5] {
                    assert!(!predicted_divisible(&g, &triv, &mu, p).unwrap());
                }
            }
        }
    }
}
