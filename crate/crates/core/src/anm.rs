//! Learning causal UDAGs from continuous data under additive noise.
//!
//! A candidate graph is scored by regressing every node on its parents and
//! neighbours and testing the residuals for joint independence; the score is
//! the test's p-value. Among randomly sampled candidates the best scorer wins,
//! with ties going to the graph with fewest edges.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Udag;
use crate::hsic::{hsic_joint_test, HsicMethod};
use crate::learn::{random_graph, GraphClass};
use crate::nodeset::{NodeId, NodeSet};

/// Largest node count accepted by [`learn_causal`].
pub const MAX_ANM_NODES: usize = 5;
/// Relative p-value slack under which two scores count as tied.
pub const P_VALUE_TIE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnmError {
    #[error("columns have different lengths")]
    LengthMismatch,
    #[error("data contain a non-finite value")]
    NonFinite,
    #[error("{got} observations, at least {min} needed")]
    TooFewSamples { got: usize, min: usize },
    #[error("{0} residual columns, at least 2 needed")]
    TooFewColumns(usize),
    #[error("{got} permutations, at least {min} needed")]
    TooFewPermutations { got: usize, min: usize },
    #[error("regression target has zero variance")]
    DegenerateColumn,
    #[error("kernel system is not positive definite")]
    SingularSystem,
    #[error("graph nodes do not match the dataset columns")]
    VariableMismatch,
    #[error("{n} variables exceed the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("at least one candidate graph must be sampled")]
    NoCandidates,
}

/// Columns of real observations with names.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    standardized: bool,
}

impl Dataset {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self, AnmError> {
        if names.len() != columns.len() {
            return Err(AnmError::LengthMismatch);
        }
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.len() != first.len()) {
                return Err(AnmError::LengthMismatch);
            }
        }
        if columns.iter().flatten().any(|v| !v.is_finite()) {
            return Err(AnmError::NonFinite);
        }
        Ok(Dataset {
            names,
            columns,
            standardized: false,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column(&self, v: NodeId) -> &[f64] {
        &self.columns[v]
    }

    pub fn n_vars(&self) -> usize {
        self.columns.len()
    }

    /// Number of observations.
    pub fn m(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    /// Zero mean and unit variance per column; constant columns are only centered.
    pub fn standardize(&self) -> Dataset {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let (mean, sd) = mean_sd(c);
                let scale = if sd > 0.0 { 1.0 / sd } else { 1.0 };
                c.iter().map(|x| (x - mean) * scale).collect()
            })
            .collect();
        Dataset {
            names: self.names.clone(),
            columns,
            standardized: true,
        }
    }
}

fn mean_sd(c: &[f64]) -> (f64, f64) {
    if c.is_empty() {
        return (0.0, 0.0);
    }
    let m = c.len() as f64;
    let mean = c.iter().sum::<f64>() / m;
    let var = c.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / m;
    (mean, libm::sqrt(var))
}

/// Nonparametric regression used to produce residuals.
pub trait Regressor {
    /// Residuals of `target` after regressing it on `predictors`. With no
    /// predictors the residual is the centered target.
    fn residuals(&self, target: &[f64], predictors: &[&[f64]]) -> Result<Vec<f64>, AnmError>;
}

/// Kernel ridge regression with a Gaussian kernel whose bandwidth is the
/// median pairwise distance between predictor vectors. `lambda` is added to
/// the diagonal of the Gram matrix, i.e. it plays the role of the GP noise
/// variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRidge {
    pub lambda: f64,
}

impl Default for KernelRidge {
    fn default() -> Self {
        KernelRidge { lambda: 1e-3 }
    }
}

impl Regressor for KernelRidge {
    fn residuals(&self, target: &[f64], predictors: &[&[f64]]) -> Result<Vec<f64>, AnmError> {
        let m = target.len();
        if predictors.iter().any(|p| p.len() != m) {
            return Err(AnmError::LengthMismatch);
        }
        let (mean, sd) = mean_sd(target);
        if !(sd > 0.0) {
            return Err(AnmError::DegenerateColumn);
        }
        let y: Vec<f64> = target.iter().map(|t| t - mean).collect();
        let used: Vec<&[f64]> = predictors.iter().copied().filter(|p| mean_sd(p).1 > 0.0).collect();
        if used.is_empty() {
            return Ok(y);
        }
        let sq = |i: usize, j: usize| used.iter().map(|p| (p[i] - p[j]) * (p[i] - p[j])).sum::<f64>();
        let mut dist = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                dist.push(libm::sqrt(sq(i, j)));
            }
        }
        let sigma = if dist.is_empty() {
            1.0
        } else {
            let mid = dist.len() / 2;
            let (_, med, _) = dist.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
            if *med > 0.0 {
                *med
            } else {
                1.0
            }
        };
        let c = 1.0 / (2.0 * sigma * sigma);
        let lambda = self.lambda;
        let mut a = vec![0.0; m * m];
        for i in 0..m {
            a[i * m + i] = 1.0 + lambda;
            for j in 0..i {
                let k = libm::exp(-c * sq(i, j));
                a[i * m + j] = k;
                a[j * m + i] = k;
            }
        }
        // (K + λI) α = y, and the residual y - Kα equals λα.
        let alpha = cholesky_solve(&mut a, m, &y)?;
        Ok(alpha.iter().map(|v| lambda * v).collect())
    }
}

/// Solves `A x = b` for symmetric positive definite `A` (row-major, overwritten).
fn cholesky_solve(a: &mut [f64], m: usize, b: &[f64]) -> Result<Vec<f64>, AnmError> {
    for j in 0..m {
        let mut d = a[j * m + j];
        for k in 0..j {
            d -= a[j * m + k] * a[j * m + k];
        }
        if !(d > 0.0) {
            return Err(AnmError::SingularSystem);
        }
        let d = libm::sqrt(d);
        a[j * m + j] = d;
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for k in 0..j {
                s -= a[i * m + k] * a[j * m + k];
            }
            a[i * m + j] = s / d;
        }
    }
    let mut x = b.to_vec();
    for i in 0..m {
        let mut s = x[i];
        for k in 0..i {
            s -= a[i * m + k] * x[k];
        }
        x[i] = s / a[i * m + i];
    }
    for i in (0..m).rev() {
        let mut s = x[i];
        for k in i + 1..m {
            s -= a[k * m + i] * x[k];
        }
        x[i] = s / a[i * m + i];
    }
    Ok(x)
}

/// Residuals of `target` on `predictors` with the default kernel ridge.
pub fn regress_residuals(target: &[f64], predictors: &[&[f64]]) -> Result<Vec<f64>, AnmError> {
    KernelRidge::default().residuals(target, predictors)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnmConfig {
    pub regressor: KernelRidge,
    pub test: HsicMethod,
    /// Standardize the columns before fitting.
    pub standardize: bool,
}

impl Default for AnmConfig {
    fn default() -> Self {
        AnmConfig {
            regressor: KernelRidge::default(),
            test: HsicMethod::Gamma,
            standardize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredGraph {
    pub graph: Udag,
    pub p_value: f64,
    pub statistic: f64,
    /// One residual column per node.
    pub residuals: Vec<Vec<f64>>,
}

/// Scores `g` with an arbitrary regressor. The data are used as given.
pub fn score_udag_with(
    g: &Udag,
    data: &Dataset,
    regressor: &dyn Regressor,
    test: HsicMethod,
) -> Result<ScoredGraph, AnmError> {
    if g.n() != data.n_vars() || g.names().iter().zip(data.names()).any(|(a, b)| a != b) {
        return Err(AnmError::VariableMismatch);
    }
    let mut residuals = Vec::with_capacity(g.n());
    for a in 0..g.n() {
        let inputs = g.pa(NodeSet::singleton(a)) | g.ne(NodeSet::singleton(a));
        let preds: Vec<&[f64]> = inputs.iter().map(|v| data.column(v)).collect();
        residuals.push(regressor.residuals(data.column(a), &preds)?);
    }
    let (statistic, p_value) = if residuals.len() < 2 {
        (0.0, 1.0)
    } else {
        let o = hsic_joint_test(&residuals, test)?;
        (o.statistic, o.p_value)
    };
    Ok(ScoredGraph {
        graph: g.clone(),
        p_value,
        statistic,
        residuals,
    })
}

pub fn score_udag(g: &Udag, data: &Dataset, config: &AnmConfig) -> Result<ScoredGraph, AnmError> {
    if config.standardize && !data.is_standardized() {
        score_udag_with(g, &data.standardize(), &config.regressor, config.test)
    } else {
        score_udag_with(g, data, &config.regressor, config.test)
    }
}

/// The `index`-th sampled candidate: a uniform UDAG over `names` drawn from
/// its own ChaCha8 stream, so candidates do not depend on evaluation order.
pub fn sample_candidate(names: &[String], seed: u64, index: u64) -> Udag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_graph(names.len(), GraphClass::Udag, &mut rng)
        .renamed(names.to_vec())
        .expect("name count matches")
}

/// `l` sampled candidates with duplicates removed, first occurrence kept.
pub fn sample_candidates(names: &[String], l: usize, seed: u64) -> Vec<Udag> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..l as u64 {
        let g = sample_candidate(names, seed, i);
        if seen.insert(g.edge_key()) {
            out.push(g);
        }
    }
    out
}

/// Index of the best scorer: highest p-value up to [`P_VALUE_TIE`], then
/// fewest edges, then smallest edge key.
pub fn select_best(scored: &[ScoredGraph]) -> Option<usize> {
    let max = scored.iter().map(|s| s.p_value).fold(f64::NEG_INFINITY, f64::max);
    let floor = max - P_VALUE_TIE * max.abs();
    scored
        .iter()
        .enumerate()
        .filter(|(_, s)| s.p_value >= floor)
        .min_by(|(_, a), (_, b)| {
            a.graph
                .num_edges()
                .cmp(&b.graph.num_edges())
                .then_with(|| a.graph.edge_key().cmp(&b.graph.edge_key()))
        })
        .map(|(i, _)| i)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalSearch {
    pub best: ScoredGraph,
    /// Every distinct candidate with its score, in sampling order.
    pub candidates: Vec<ScoredGraph>,
}

/// Input checks shared by every driver of the search.
pub fn check_search(data: &Dataset, l: usize) -> Result<(), AnmError> {
    if data.n_vars() > MAX_ANM_NODES {
        return Err(AnmError::TooLarge {
            n: data.n_vars(),
            max: MAX_ANM_NODES,
        });
    }
    if l == 0 {
        return Err(AnmError::NoCandidates);
    }
    Ok(())
}

/// Samples `l` UDAGs, scores each and returns the simplest best scorer.
pub fn learn_causal(data: &Dataset, l: usize, seed: u64, config: &AnmConfig) -> Result<CausalSearch, AnmError> {
    check_search(data, l)?;
    let data = if config.standardize {
        data.standardize()
    } else {
        data.clone()
    };
    let candidates = sample_candidates(data.names(), l, seed)
        .iter()
        .map(|g| score_udag_with(g, &data, &config.regressor, config.test))
        .collect::<Result<Vec<_>, _>>()?;
    let best = candidates[select_best(&candidates).expect("at least one candidate")].clone();
    Ok(CausalSearch { best, candidates })
}

/// One standard normal draw (Box–Muller).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// `X ~ N(0, 1)`, `Y = X³ + noise_scale · ε` with `ε ~ N(0, 1)`, columns named `X`, `Y`.
pub fn cubic_pair(m: usize, noise_scale: f64, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..m).map(|_| standard_normal(&mut rng)).collect();
    let y: Vec<f64> = x
        .iter()
        .map(|&v| v * v * v + noise_scale * standard_normal(&mut rng))
        .collect();
    Dataset::new(vec!["X".into(), "Y".into()], vec![x, y]).expect("finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::labeled;

    fn names(s: &str) -> Vec<String> {
        s.chars().map(|c| c.into()).collect()
    }

    #[test]
    fn identical_columns_leave_small_residuals() {
        let d = cubic_pair(200, 0.2, 1).standardize();
        let x = d.column(0);
        let tight = KernelRidge { lambda: 1e-12 };
        let r = tight.residuals(x, &[x]).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-6));
        // The default ridge fits almost exactly, but not to 1e-6.
        let r = regress_residuals(x, &[x]).unwrap();
        assert!(r.iter().map(|v| v.abs()).fold(0.0, f64::max) < 0.05);
    }

    #[test]
    fn empty_predictors_return_centered_target() {
        let d = cubic_pair(50, 0.2, 2).standardize();
        let r = regress_residuals(d.column(1), &[]).unwrap();
        for (a, b) in r.iter().zip(d.column(1)) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_columns() {
        let c = vec![1.0; 30];
        let x: Vec<f64> = (0..30).map(|i| i as f64).collect();
        assert_eq!(regress_residuals(&c, &[&x]), Err(AnmError::DegenerateColumn));
        // A constant predictor is dropped.
        let r = regress_residuals(&x, &[&c]).unwrap();
        assert!((r[0] + 14.5).abs() < 1e-12);
    }

    #[test]
    fn cubic_fit_removes_signal() {
        let d = cubic_pair(300, 0.2, 3).standardize();
        let r = regress_residuals(d.column(1), &[d.column(0)]).unwrap();
        let (_, sd) = mean_sd(&r);
        // Noise is small relative to the standardized signal.
        assert!(sd < 0.2, "{sd}");
        // Pearson correlation with X and with the true signal X³; both should be
        // within sampling noise (about 2/sqrt(m)) of zero.
        let pearson = |u: &[f64], v: &[f64]| {
            let (mu, su) = mean_sd(u);
            let (mv, sv) = mean_sd(v);
            u.iter().zip(v).map(|(a, b)| (a - mu) * (b - mv)).sum::<f64>() / (u.len() as f64 * su * sv)
        };
        let x = d.column(0);
        let cube: Vec<f64> = x.iter().map(|v| v * v * v).collect();
        let bound = 2.0 / (r.len() as f64).sqrt();
        let (c1, c3) = (pearson(&r, x), pearson(&r, &cube));
        assert!(c1.abs() < bound && c3.abs() < bound, "{c1} {c3}");
    }

    #[test]
    fn correct_direction_scores_higher() {
        let d = cubic_pair(300, 0.2, 4);
        let cfg = AnmConfig::default();
        let fwd = score_udag(&labeled("XY", &["X->Y"]), &d, &cfg).unwrap();
        let bwd = score_udag(&labeled("XY", &["Y->X"]), &d, &cfg).unwrap();
        assert!(fwd.p_value > bwd.p_value, "{} vs {}", fwd.p_value, bwd.p_value);
        assert_eq!(fwd.residuals.len(), 2);
    }

    #[test]
    fn candidates_are_deterministic_and_distinct() {
        let n = names("ABC");
        let a = sample_candidates(&n, 30, 7);
        let b = sample_candidates(&n, 30, 7);
        assert_eq!(a, b);
        let keys: BTreeSet<_> = a.iter().map(|g| g.edge_key()).collect();
        assert_eq!(keys.len(), a.len());
        assert_eq!(sample_candidate(&n, 7, 3), sample_candidate(&n, 7, 3));
    }

    #[test]
    fn single_candidate_is_returned() {
        let d = cubic_pair(40, 0.2, 5);
        let r = learn_causal(&d, 1, 11, &AnmConfig::default()).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(r.best.graph, sample_candidate(d.names(), 11, 0));
    }

    #[test]
    fn tie_break_prefers_fewer_edges() {
        let g0 = labeled("XY", &[]);
        let g1 = labeled("XY", &["X->Y"]);
        let s = |g: &Udag, p| ScoredGraph {
            graph: g.clone(),
            p_value: p,
            statistic: 0.0,
            residuals: Vec::new(),
        };
        assert_eq!(select_best(&[s(&g1, 0.5), s(&g0, 0.5 * (1.0 - 1e-12))]), Some(1));
        assert_eq!(select_best(&[s(&g1, 0.6), s(&g0, 0.5)]), Some(0));
    }

    #[test]
    fn rejects_large_or_empty_searches() {
        let d = cubic_pair(30, 0.2, 6);
        assert_eq!(
            learn_causal(&d, 0, 0, &AnmConfig::default()),
            Err(AnmError::NoCandidates)
        );
        let wide = Dataset::new(names("ABCDEF"), vec![vec![0.0; 3]; 6]).unwrap();
        assert!(matches!(
            learn_causal(&wide, 1, 0, &AnmConfig::default()),
            Err(AnmError::TooLarge { n: 6, max: 5 })
        ));
    }

    #[test]
    fn variable_mismatch() {
        let d = cubic_pair(30, 0.2, 6);
        let g = labeled("AB", &["A->B"]);
        assert_eq!(
            score_udag(&g, &d, &AnmConfig::default()),
            Err(AnmError::VariableMismatch)
        );
    }
}
