//! Rayon drivers for the two learners. Results are identical to the
//! sequential versions: the exact search keeps the first hit in candidate
//! order and the causal search scores a fixed, seed-determined candidate list.

use rayon::prelude::*;
use udag_core::anm::{check_search, sample_candidates, score_udag_with, select_best};
use udag_core::learn::learn_with;
use udag_core::{AnmConfig, CausalSearch, Dataset, IndependenceOracle, LearnResult, LearnerConfig};

use crate::error::{Error, Result};

/// Builds the worker pool, capped by `UDAG_THREADS` when it is set.
pub fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("UDAG_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Invalid(format!("UDAG_THREADS must be a positive integer, got `{v}`")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Invalid(e.to_string()))
}

pub fn learn_parallel(oracle: &IndependenceOracle, config: &LearnerConfig) -> Result<LearnResult> {
    let r = learn_with(
        oracle,
        config,
        |cands, pass| cands.par_iter().position_first(|&c| pass(c)),
        |cands, pass| {
            cands
                .par_iter()
                .enumerate()
                .filter(|&(_, &c)| pass(c))
                .map(|(i, _)| i)
                .collect()
        },
    )?;
    Ok(r)
}

pub fn learn_causal_parallel(data: &Dataset, l: usize, seed: u64, config: &AnmConfig) -> Result<CausalSearch> {
    check_search(data, l)?;
    let data = if config.standardize {
        data.standardize()
    } else {
        data.clone()
    };
    let candidates = sample_candidates(data.names(), l, seed)
        .par_iter()
        .map(|g| score_udag_with(g, &data, &config.regressor, config.test))
        .collect::<Result<Vec<_>, _>>()?;
    let best = candidates[select_best(&candidates).expect("at least one candidate")].clone();
    Ok(CausalSearch { best, candidates })
}
