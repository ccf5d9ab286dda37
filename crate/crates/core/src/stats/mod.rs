//! Divisibility censuses of character tables and the counting checks behind
//! the limit statements.
//!
//! Randomness: sample `i` of a run with seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `i`. ChaCha is
//! counter-based, so each sample's draws are fixed by `(s, i)` alone and a
//! report does not depend on how samples are spread over threads.

mod asymptotics;
pub(crate) mod census;

pub use asymptotics::{asymptotic_check, concentration_check, ln_biguint, parse_rational};
pub use census::{
    certificate_census, exact_census, random_multipartition, sample_rng, sampled_census, SampleSpec,
};

use std::fmt;

use num_rational::{BigRational, Ratio};
use serde::{Serialize, Serializer};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

pub const DEFAULT_CONFIDENCE: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exact,
    Sampled,
    Certificate,
}

impl fmt::Display for CensusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusMode::Exact => "exact",
            CensusMode::Sampled => "sampled",
            CensusMode::Certificate => "certificate",
        })
    }
}

/// Binomial confidence interval construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalMethod {
    #[default]
    Wilson,
    /// Normal approximation around `p̂`.
    Wald,
}

/// Outcome of a census. `proportion` is `divisible_count / cells_evaluated`
/// in lowest terms, or `0/1` when nothing was evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub mode: CensusMode,
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub cells_evaluated: u64,
    pub divisible_count: u64,
    #[serde(serialize_with = "ratio_string")]
    pub proportion: Ratio<u64>,
    pub proportion_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_ratio_string"
    )]
    pub coverage: Option<BigRational>,
}

/// Frozen CSV column order.
pub const CSV_COLUMNS: [&str; 12] = [
    "mode",
    "group",
    "n",
    "p",
    "samples",
    "divisible",
    "evaluated",
    "proportion",
    "ci_low",
    "ci_high",
    "seed",
    "coverage",
];

impl CensusReport {
    pub(crate) fn new(
        mode: CensusMode,
        group: String,
        k: usize,
        n: usize,
        p: u64,
        evaluated: u64,
        divisible: u64,
    ) -> Self {
        let proportion = proportion(divisible, evaluated);
        CensusReport {
            mode,
            group,
            k,
            n,
            p,
            samples: None,
            cells_evaluated: evaluated,
            divisible_count: divisible,
            proportion_decimal: ratio_f64(&proportion),
            proportion,
            ci_low: None,
            ci_high: None,
            confidence: None,
            seed: None,
            coverage: None,
        }
    }

    /// Attaches the sample count, seed and an interval around the proportion.
    pub(crate) fn with_interval(
        mut self,
        samples: u64,
        seed: u64,
        confidence: f64,
        method: IntervalMethod,
    ) -> Result<Self> {
        let (lo, hi) = binomial_interval(
            self.divisible_count,
            self.cells_evaluated,
            confidence,
            method,
        )?;
        self.samples = Some(samples);
        self.seed = Some(seed);
        self.confidence = Some(confidence);
        self.ci_low = Some(lo);
        self.ci_high = Some(hi);
        Ok(self)
    }

    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    /// One row in [`CSV_COLUMNS`] order; absent fields are empty.
    pub fn to_csv_row(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        [
            self.mode.to_string(),
            csv_field(&self.group),
            self.n.to_string(),
            self.p.to_string(),
            opt(&self.samples),
            self.divisible_count.to_string(),
            self.cells_evaluated.to_string(),
            format_ratio(&self.proportion),
            opt(&self.ci_low),
            opt(&self.ci_high),
            opt(&self.seed),
            self.coverage
                .as_ref()
                .map(format_big_ratio)
                .unwrap_or_default(),
        ]
        .join(",")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn proportion(num: u64, den: u64) -> Ratio<u64> {
    if den == 0 {
        Ratio::new_raw(0, 1)
    } else {
        Ratio::new(num, den)
    }
}

/// `a/b` with the denominator always written.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_big_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

fn opt_ratio_string<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_big_ratio(r)),
        None => s.serialize_none(),
    }
}

/// Two-sided interval for a binomial proportion `successes / trials`,
/// clamped to `[0, 1]`.
pub fn binomial_interval(
    successes: u64,
    trials: u64,
    confidence: f64,
    method: IntervalMethod,
) -> Result<(f64, f64)> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "confidence {confidence} not in (0, 1)"
        )));
    }
    if successes > trials {
        return Err(Error::InvalidArgument(format!(
            "{successes} successes in {trials} trials"
        )));
    }
    if trials == 0 {
        return Ok((0.0, 1.0));
    }
    let z = Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = trials as f64;
    let phat = successes as f64 / n;
    let (lo, hi) = match method {
        IntervalMethod::Wilson => {
            let z2 = z * z;
            let denom = 1.0 + z2 / n;
            let centre = (phat + z2 / (2.0 * n)) / denom;
            let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
            (centre - half, centre + half)
        }
        IntervalMethod::Wald => {
            let half = z * (phat * (1.0 - phat) / n).sqrt();
            (phat - half, phat + half)
        }
    };
    // Rounding can push a bound a hair past p̂ at the extremes.
    Ok((lo.clamp(0.0, 1.0).min(phat), hi.clamp(0.0, 1.0).max(phat)))
}
