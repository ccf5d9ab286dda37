use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partitions::{count_multipartitions, partition_counts};

/// Natural log of a big integer: the top 64 bits as the mantissa plus the
/// discarded bit count times `ln 2`. Relative error is near `f64` epsilon,
/// far below 10 significant digits for any size that fits in memory.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * LN_2
}

/// `ln p_k(n) / ((2π/√6)·√(kn))`.
pub fn asymptotic_check(k: usize, n: usize) -> Result<f64> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "asymptotic check needs k, n >= 1".into(),
        ));
    }
    let count = count_multipartitions(n, k);
    Ok(ln_biguint(&count) / (2.0 * PI / 6f64.sqrt() * ((k * n) as f64).sqrt()))
}

/// Exact fraction of k-multipartitions of `n` whose component sizes all lie
/// strictly between `(n/k)(1-δ)` and `(n/k)(1+δ)`. Sizes are summed by
/// convolving the windowed partition counts; nothing is enumerated.
pub fn concentration_check(k: usize, n: usize, delta: &BigRational) -> Result<BigRational> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "concentration check needs k, n >= 1".into(),
        ));
    }
    if !(delta.is_positive() && delta < &BigRational::one()) {
        return Err(Error::InvalidArgument(format!(
            "delta {delta} not in (0, 1)"
        )));
    }
    let (num, den) = (delta.numer(), delta.denom());
    let big_n = BigInt::from(n);
    // a is inside iff n(den - num) < k·a·den < n(den + num).
    let low = &big_n * (den - num);
    let high = &big_n * (den + num);
    let p = partition_counts(n);
    let windowed: Vec<BigUint> = p
        .iter()
        .enumerate()
        .map(|(a, count)| {
            let scaled = BigInt::from(k * a) * den;
            if low < scaled && scaled < high {
                count.clone()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let mut acc = windowed.clone();
    for _ in 1..k {
        acc = (0..=n)
            .map(|m| (0..=m).map(|i| &windowed[i] * &acc[m - i]).sum())
            .collect();
    }
    let inside = BigInt::from(acc[n].clone());
    let total = BigInt::from(count_multipartitions(n, k));
    Ok(BigRational::new(inside, total))
}

/// Parses `a/b` or a plain decimal such as `0.3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mantissa: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let value = BigRational::new(mantissa, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Independent logarithm: leading 17 decimal digits plus the digit count.
    fn ln_decimal(x: &BigUint) -> f64 {
        let s = x.to_string();
        let head = &s[..s.len().min(17)];
        let mantissa: f64 = format!("0.{head}").parse().unwrap();
        mantissa.ln() + s.len() as f64 * std::f64::consts::LN_10
    }

    #[test]
    fn log_matches_decimal_oracle() {
        for x in [1u64, 2, 10, 12345, u64::MAX] {
            let b = BigUint::from(x);
            assert!((ln_biguint(&b) - (x as f64).ln()).abs() < 1e-12);
        }
        for n in [100, 1000, 5000] {
            let p = crate::partitions::count_partitions(n);
            let (a, b) = (ln_biguint(&p), ln_decimal(&p));
            assert!(((a - b) / b).abs() < 1e-12, "{n}: {a} vs {b}");
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.3").unwrap(), q(3, 10));
        assert_eq!(parse_rational("3/10").unwrap(), q(3, 10));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        for bad in ["", ".", "1/0", "0.3.1", "abc", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn concentration_small_cases() {
        assert_eq!(concentration_check(2, 2, &q(1, 2)).unwrap(), q(1, 5));
        for n in 1..30 {
            assert_eq!(concentration_check(1, n, &q(1, 10)).unwrap(), q(1, 1));
        }
        assert!(concentration_check(2, 4, &q(0, 1)).is_err());
        assert!(concentration_check(2, 4, &q(1, 1)).is_err());
    }

    #[test]
    fn concentration_matches_enumeration() {
        use crate::partitions::enumerate_multipartitions;
        for k in 1..=3 {
            for n in 1..=10 {
                for delta in [q(1, 10), q(3, 10), q(1, 2), q(9, 10)] {
                    let all: Vec<_> = enumerate_multipartitions(n, k).collect();
                    let inside = all
                        .iter()
                        .filter(|m| {
                            m.components().iter().all(|c| {
                                let a = q((k * c.size()) as i64, n as i64);
                                q(1, 1) - &delta < a && a < q(1, 1) + &delta
                            })
                        })
                        .count();
                    let expected = q(inside as i64, all.len() as i64);
                    assert_eq!(concentration_check(k, n, &delta).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn doubled_k_matches_doubled_n() {
        let a = asymptotic_check(2, 5000).unwrap();
        let b = asymptotic_check(1, 10000).unwrap();
        assert!((a - b).abs() < 0.05, "{a} {b}");
        assert!(asymptotic_check(0, 5).is_err());
    }
}
