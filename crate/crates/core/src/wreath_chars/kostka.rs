use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{MultiPartition, Partition};

/// `K^{β,γ}`: semistandard tableaux of shape `gamma` and content `beta`,
/// so that `M^β = ⊕_γ (V^γ)^{K^{β,γ}}`. Nonzero iff `gamma` dominates `beta`.
pub fn kostka(beta: &Partition, gamma: &Partition) -> Result<BigUint> {
    if beta.size() != gamma.size() {
        return Err(Error::SizeMismatch {
            left: beta.size(),
            right: gamma.size(),
        });
    }
    if !gamma.dominates(beta) {
        return Ok(BigUint::zero());
    }
    let mut memo = HashMap::new();
    Ok(strip_count(gamma.parts().to_vec(), beta.parts(), &mut memo))
}

/// Peels the largest entry off as a horizontal strip of size `content.last()`.
fn strip_count(
    shape: Vec<usize>,
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), BigUint>,
) -> BigUint {
    let Some((&strip, rest)) = content.split_last() else {
        return if shape.is_empty() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    // Entries 1..=r fit in at most r rows.
    if shape.len() > content.len() {
        return BigUint::zero();
    }
    let key = (shape.clone(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut inner = shape.clone();
    each_horizontal_strip(&shape, 0, strip, &mut inner, &mut |nu| {
        let trimmed: Vec<usize> = nu.iter().copied().take_while(|&x| x > 0).collect();
        total += strip_count(trimmed, rest, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Visits every `ν ⊆ shape` with `shape/ν` a horizontal strip of `left` boxes,
/// i.e. `shape[i+1] <= ν[i] <= shape[i]`.
fn each_horizontal_strip<F>(shape: &[usize], i: usize, left: usize, nu: &mut Vec<usize>, f: &mut F)
where
    F: FnMut(&[usize]),
{
    if i == shape.len() {
        if left == 0 {
            f(nu);
        }
        return;
    }
    let floor = shape.get(i + 1).copied().unwrap_or(0);
    // At most shape[i] boxes can still come off rows i.. of a horizontal strip.
    if shape[i] < left {
        return;
    }
    let max_take = (shape[i] - floor).min(left);
    for take in 0..=max_take {
        nu[i] = shape[i] - take;
        each_horizontal_strip(shape, i + 1, left - take, nu, f);
    }
    nu[i] = shape[i];
}

/// `c(λ, η) = Π_i K^{λ_i, η_i}`, zero when some component sizes differ.
pub fn perm_multiplicity(lambda: &MultiPartition, eta: &MultiPartition) -> Result<BigUint> {
    if lambda.k() != eta.k() {
        return Err(Error::ComponentMismatch {
            expected: lambda.k(),
            found: eta.k(),
        });
    }
    let mut product = BigUint::one();
    for (a, b) in lambda.components().iter().zip(eta.components()) {
        if a.size() != b.size() {
            return Ok(BigUint::zero());
        }
        product *= kostka(a, b)?;
        if product.is_zero() {
            break;
        }
    }
    Ok(product)
}
