use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CensusMode, CensusReport, IntervalMethod, DEFAULT_CONFIDENCE};
use crate::congruence::{certificate_for, require_prime};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_multipartitions, MultiPartition, MultiPartitionIndex};
use crate::wreath_chars::{check_budget, CharacterEngine};

/// Parameters of a sampled run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSpec {
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    pub method: IntervalMethod,
}

impl SampleSpec {
    pub fn new(samples: u64, seed: u64) -> Self {
        SampleSpec {
            samples,
            seed,
            confidence: DEFAULT_CONFIDENCE,
            method: IntervalMethod::Wilson,
        }
    }

    fn check(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// The generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform over all k-multipartitions of `n`.
pub fn random_multipartition<R: rand::Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<MultiPartition> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(MultiPartitionIndex::new(n, k)?.sample(rng))
}

pub(crate) fn divisible(value: &BigInt, p: u64) -> bool {
    value.mod_floor(&BigInt::from(p)).is_zero()
}

/// Number of `i < count` with `test(i)`, over the current rayon pool.
pub(crate) fn count_hits<F>(count: u64, test: F) -> Result<u64>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| test(i).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Every cell of the table of `G ≀ S_n`, counted for `p | χ^λ_μ`.
pub fn exact_census(
    engine: &CharacterEngine,
    n: usize,
    p: u64,
    budget: u64,
) -> Result<CensusReport> {
    require_prime(p)?;
    let k = engine.k();
    let cells = check_budget(n, k, budget)?;
    let labels: Vec<MultiPartition> = enumerate_multipartitions(n, k).collect();
    let side = labels.len();
    let hits = count_hits(cells, |cell| {
        let (r, c) = (cell as usize / side, cell as usize % side);
        Ok(divisible(&engine.mn_character(&labels[r], &labels[c])?, p))
    })?;
    Ok(CensusReport::new(
        CensusMode::Exact,
        engine.group().name.clone(),
        k,
        n,
        p,
        cells,
        hits,
    ))
}

/// Draws `(λ, μ)` for sample `index`: `λ` first, then `μ`, from one stream.
pub(crate) fn draw_pair(
    index: &MultiPartitionIndex,
    seed: u64,
    i: u64,
) -> (MultiPartition, MultiPartition) {
    let mut rng = sample_rng(seed, i);
    let lambda = index.sample(&mut rng);
    let mu = index.sample(&mut rng);
    (lambda, mu)
}

/// Independent uniform cells, each evaluated exactly.
pub fn sampled_census(
    engine: &CharacterEngine,
    n: usize,
    p: u64,
    spec: SampleSpec,
) -> Result<CensusReport> {
    require_prime(p)?;
    spec.check()?;
    let k = engine.k();
    let index = MultiPartitionIndex::new(n, k)?;
    let hits = count_hits(spec.samples, |i| {
        let (lambda, mu) = draw_pair(&index, spec.seed, i);
        Ok(divisible(&engine.mn_character(&lambda, &mu)?, p))
    })?;
    CensusReport::new(
        CensusMode::Sampled,
        engine.group().name.clone(),
        k,
        n,
        p,
        spec.samples,
        hits,
    )
    .with_interval(spec.samples, spec.seed, spec.confidence, spec.method)
}

/// Like [`sampled_census`] but only checks the zero certificate, so no
/// character is evaluated and only `k` is needed. With the same seed it
/// visits the same cells as [`sampled_census`], and every certified cell is
/// divisible, so its proportion is a lower bound for that run's.
pub fn certificate_census(k: usize, n: usize, p: u64, spec: SampleSpec) -> Result<CensusReport> {
    require_prime(p)?;
    spec.check()?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let index = MultiPartitionIndex::new(n, k)?;
    let hits = count_hits(spec.samples, |i| {
        let (lambda, mu) = draw_pair(&index, spec.seed, i);
        certificate_for(&lambda, &mu, p)
    })?;
    let mut report = CensusReport::new(
        CensusMode::Certificate,
        format!("k={k}"),
        k,
        n,
        p,
        spec.samples,
        hits,
    )
    .with_interval(spec.samples, spec.seed, spec.confidence, spec.method)?;
    report.coverage = Some(BigRational::new(hits.into(), spec.samples.into()));
    Ok(report)
}
