//! Sampling estimates of measures, for cross-checking exact values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::scenario_spec;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measure::{measure_at, validate_scenario, CoverScenario};

/// Name of the sampler recorded in every report.
pub const GENERATOR: &str = "chacha8/rand_chacha-0.9/stream-per-chunk";

/// Samples drawn from one generator stream. Chunk `k` uses stream `k` of the
/// seed, so results do not depend on how chunks are scheduled.
pub const CHUNK_SIZE: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub scenario: String,
    pub target: String,
    pub e: usize,
    pub samples: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub accepted: u64,
    pub hits: u64,
    pub estimate: BigRational,
    pub exact: BigRational,
    pub abs_error: BigRational,
    /// `sqrt(p(1-p)/accepted)` with `p` the exact value.
    pub sigma: f64,
}

impl EstimateReport {
    /// `|estimate - exact| ≤ k·σ`.
    pub fn within(&self, k: f64) -> bool {
        let err = self.abs_error.to_f64().unwrap_or(f64::INFINITY);
        if self.sigma == 0.0 {
            return self.abs_error == BigRational::from_integer(BigInt::from(0));
        }
        err <= k * self.sigma
    }
}

fn run_chunk(s: &CoverScenario, target_class: usize, e: usize, seed: u64, chunk: u64, count: u64) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let lattice = s.lattice();
    let n = s.group().order();
    let mut cache = lattice.join_cache();
    let mut tuple = vec![0usize; e];
    let (mut accepted, mut hits) = (0, 0);
    for _ in 0..count {
        for slot in tuple.iter_mut() {
            *slot = rng.random_range(0..n);
        }
        let node = cache.generated(&tuple);
        if s.is_regular_node(node) {
            accepted += 1;
            if lattice.class_of(node) == target_class {
                hits += 1;
            }
        }
    }
    (accepted, hits)
}

/// Draws `samples` uniform e-tuples of `G`, keeps those with `⟨σ⟩·G0 = G`,
/// and reports the share generating a conjugate of the target.
pub fn sample_measure(
    s: &CoverScenario,
    target: &str,
    e: usize,
    samples: u64,
    seed: u64,
    parallel: bool,
) -> Result<EstimateReport> {
    if e == 0 {
        return Err(Error::ZeroRank);
    }
    if samples == 0 {
        return Err(Error::NoRegularSamples { samples });
    }
    let t = s.target(target)?;
    let exact = measure_at(s, e)?.value(target).cloned().expect("target present");
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let size = |k: u64| CHUNK_SIZE.min(samples - k * CHUNK_SIZE);
    let parts: Vec<(u64, u64)> = if parallel {
        (0..chunks).into_par_iter().map(|k| run_chunk(s, t.class, e, seed, k, size(k))).collect()
    } else {
        (0..chunks).map(|k| run_chunk(s, t.class, e, seed, k, size(k))).collect()
    };
    let (accepted, hits) = parts.into_iter().fold((0, 0), |(a, h), (x, y)| (a + x, h + y));
    if accepted == 0 {
        return Err(Error::NoRegularSamples { samples });
    }
    let estimate = BigRational::new(BigInt::from(hits), BigInt::from(accepted));
    let abs_error = (&estimate - &exact).abs();
    let p = exact.to_f64().unwrap_or(0.0);
    let sigma = (p * (1.0 - p) / accepted as f64).sqrt();
    Ok(EstimateReport {
        scenario: s.name().to_string(),
        target: target.to_string(),
        e,
        samples,
        seed,
        generator: GENERATOR,
        accepted,
        hits,
        estimate,
        exact,
        abs_error,
        sigma,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub scenario: &'static str,
    pub target: &'static str,
    pub e: usize,
    pub seed: u64,
}

/// Forty pinned (scenario, target, e, seed) cells over the catalog.
pub fn soundness_grid() -> Vec<GridCell> {
    const CASES: [(&str, &str, usize); 10] = [
        ("squares", "trivial", 1),
        ("squares", "trivial", 3),
        ("fifth-root", "image", 2),
        ("fifth-root", "image", 3),
        ("s3-over-a3", "transposition", 2),
        ("d4-over-c4", "vertex-reflection", 2),
        ("c2xc4-pro2", "c4", 2),
        ("c2xc4-pro2", "full", 3),
        ("s5-transposition", "full", 2),
        ("wreath-5-2", "top", 2),
    ];
    const SEEDS: [u64; 4] = [1, 20, 300, 4000];
    CASES
        .iter()
        .flat_map(|&(scenario, target, e)| SEEDS.iter().map(move |&seed| GridCell { scenario, target, e, seed }))
        .collect()
}

#[derive(Clone, Debug)]
pub struct GridReport {
    pub cells: Vec<(GridCell, EstimateReport)>,
    pub sigmas: f64,
}

impl GridReport {
    pub fn passing(&self) -> usize {
        self.cells.iter().filter(|(_, r)| r.within(self.sigmas)).count()
    }

    pub fn pass_rate(&self) -> f64 {
        self.passing() as f64 / self.cells.len() as f64
    }
}

pub fn run_grid(samples: u64, sigmas: f64, limits: &Limits) -> Result<GridReport> {
    let mut cells = Vec::new();
    for cell in soundness_grid() {
        let s = validate_scenario(&scenario_spec(cell.scenario).expect("catalog id"), limits)?;
        let r = sample_measure(&s, cell.target, cell.e, samples, cell.seed, true)?;
        cells.push((cell, r));
    }
    Ok(GridReport { cells, sigmas })
}
