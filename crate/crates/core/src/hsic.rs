//! Joint independence test for `d >= 2` real columns based on the d-variable
//! Hilbert–Schmidt independence criterion with Gaussian kernels.
//!
//! The statistic is `m * dHSIC`, the V-statistic estimate of the squared
//! distance between the embedded joint distribution and the product of the
//! embedded marginals.
//!
//! The gamma approximation matches the mean and variance of the asymptotic
//! null distribution. Linearizing the estimator gives
//! `m * dHSIC ≈ ||m^{-1/2} Σ_i g(z_i)||²` with
//! `g(z) = Σ_{|S| ≥ 2} ⊗_{j∈S} (φ_j(x_j) - μ_j) ⊗_{j∉S} μ_j`, so the null mean
//! is `E||g(Z)||²` and the variance `2 E[<g(Z), g(Z')>²]`. Under independence
//! both expectations factor over the columns, and the sums over index sets
//! `S` are carried out by a small dynamic program over the set sizes
//! (capped at two).

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::anm::AnmError;
use crate::special::gamma_sf;

/// Fewest observations accepted by the test.
pub const MIN_SAMPLES: usize = 20;
/// Fewest permutations accepted by the permutation variant.
pub const MIN_PERMUTATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HsicMethod {
    #[default]
    Gamma,
    Permutation {
        permutations: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsicOutcome {
    /// `m * dHSIC`.
    pub statistic: f64,
    pub p_value: f64,
}

/// Median of the pairwise distances, or 1 when it vanishes.
pub fn median_bandwidth(x: &[f64]) -> f64 {
    let m = x.len();
    let mut d = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            d.push((x[i] - x[j]).abs());
        }
    }
    if d.is_empty() {
        return 1.0;
    }
    let mid = d.len() / 2;
    let (_, med, _) = d.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
    if *med > 0.0 {
        *med
    } else {
        1.0
    }
}

/// `exp(-(x_i - x_j)² / (2σ²))` with the median bandwidth, row-major.
pub fn gaussian_gram(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let s = median_bandwidth(x);
    let c = 1.0 / (2.0 * s * s);
    let mut k = vec![0.0; m * m];
    for i in 0..m {
        k[i * m + i] = 1.0;
        for j in i + 1..m {
            let v = libm::exp(-c * (x[i] - x[j]) * (x[i] - x[j]));
            k[i * m + j] = v;
            k[j * m + i] = v;
        }
    }
    k
}

struct Gram {
    k: Vec<f64>,
    /// Row means.
    r: Vec<f64>,
    /// Grand mean.
    a: f64,
}

impl Gram {
    fn new(x: &[f64]) -> Self {
        let m = x.len();
        let k = gaussian_gram(x);
        let r: Vec<f64> = (0..m)
            .map(|i| k[i * m..(i + 1) * m].iter().sum::<f64>() / m as f64)
            .collect();
        let a = r.iter().sum::<f64>() / m as f64;
        Gram { k, r, a }
    }
}

fn validate(columns: &[Vec<f64>]) -> Result<usize, AnmError> {
    if columns.len() < 2 {
        return Err(AnmError::TooFewColumns(columns.len()));
    }
    let m = columns[0].len();
    if columns.iter().any(|c| c.len() != m) {
        return Err(AnmError::LengthMismatch);
    }
    if m < MIN_SAMPLES {
        return Err(AnmError::TooFewSamples {
            got: m,
            min: MIN_SAMPLES,
        });
    }
    if columns.iter().flatten().any(|v| !v.is_finite()) {
        return Err(AnmError::NonFinite);
    }
    Ok(m)
}

/// `m * dHSIC` with each column's rows read through its permutation.
fn statistic(grams: &[Gram], perms: &[Vec<usize>], m: usize) -> f64 {
    let mf = m as f64;
    let mut term1 = 0.0;
    let mut term3 = 0.0;
    for i in 0..m {
        let mut prod_r = 1.0;
        for (g, p) in grams.iter().zip(perms) {
            prod_r *= g.r[p[i]];
        }
        term3 += prod_r;
        for j in 0..m {
            let mut prod = 1.0;
            for (g, p) in grams.iter().zip(perms) {
                prod *= g.k[p[i] * m + p[j]];
            }
            term1 += prod;
        }
    }
    let term2: f64 = grams.iter().map(|g| g.a).product();
    mf * (term1 / (mf * mf) + term2 - 2.0 * term3 / mf)
}

/// Mean and variance of the asymptotic null distribution of `m * dHSIC`.
fn null_moments(grams: &[Gram], m: usize) -> (f64, f64) {
    // Mean: Σ_{|S|≥2} Π_{j∈S} (1 - a_j) Π_{j∉S} a_j, states |S| ∈ {0, 1, 2+}.
    let mut mean_dp = [1.0, 0.0, 0.0];
    for g in grams {
        let mut next = [0.0; 3];
        for (s, &w) in mean_dp.iter().enumerate() {
            next[s] += w * g.a;
            next[(s + 1).min(2)] += w * (1.0 - g.a);
        }
        mean_dp = next;
    }
    let mean = mean_dp[2];

    // Variance: 2 Σ_{S,T,S',T'} Π_j Q_j[(s,t),(s',t')], all four sets of size ≥ 2.
    let idx = |c: [usize; 4]| ((c[0] * 3 + c[1]) * 3 + c[2]) * 3 + c[3];
    let mut dp = vec![0.0; 81];
    dp[0] = 1.0;
    for g in grams {
        let q = pair_moments(g, m);
        let mut next = vec![0.0; 81];
        for c0 in 0..3 {
            for c1 in 0..3 {
                for c2 in 0..3 {
                    for c3 in 0..3 {
                        let w = dp[idx([c0, c1, c2, c3])];
                        if w == 0.0 {
                            continue;
                        }
                        for u in 0..4 {
                            for v in 0..4 {
                                let (s, t, s2, t2) = (u >> 1, u & 1, v >> 1, v & 1);
                                let to = [(c0 + s).min(2), (c1 + t).min(2), (c2 + s2).min(2), (c3 + t2).min(2)];
                                next[idx(to)] += w * q[u][v];
                            }
                        }
                    }
                }
            }
        }
        dp = next;
    }
    (mean, 2.0 * dp[80])
}

/// `Q[u][v] = mean over (i, i') of e_u e_v` with
/// `e = [a, r̃(i'), r̃(i), k̃(i, i')]`, the centered kernel quantities.
fn pair_moments(g: &Gram, m: usize) -> [[f64; 4]; 4] {
    let mut q = [[0.0; 4]; 4];
    for i in 0..m {
        let ri = g.r[i] - g.a;
        for j in 0..m {
            let rj = g.r[j] - g.a;
            let kt = g.k[i * m + j] - g.r[i] - g.r[j] + g.a;
            let e = [g.a, rj, ri, kt];
            for u in 0..4 {
                for v in u..4 {
                    q[u][v] += e[u] * e[v];
                }
            }
        }
    }
    let n = (m * m) as f64;
    for u in 0..4 {
        for v in u..4 {
            q[u][v] /= n;
            q[v][u] = q[u][v];
        }
    }
    q
}

/// Tests joint independence of the columns.
pub fn hsic_joint_test(columns: &[Vec<f64>], method: HsicMethod) -> Result<HsicOutcome, AnmError> {
    let m = validate(columns)?;
    let grams: Vec<Gram> = columns.iter().map(|c| Gram::new(c)).collect();
    let identity: Vec<usize> = (0..m).collect();
    let mut perms = vec![identity; grams.len()];
    let stat = statistic(&grams, &perms, m);
    let p_value = match method {
        HsicMethod::Gamma => {
            let (mean, var) = null_moments(&grams, m);
            if !(mean > 0.0 && var > 0.0) {
                1.0
            } else {
                gamma_sf(stat, mean * mean / var, var / mean)
            }
        }
        HsicMethod::Permutation { permutations, seed } => {
            if permutations < MIN_PERMUTATIONS {
                return Err(AnmError::TooFewPermutations {
                    got: permutations,
                    min: MIN_PERMUTATIONS,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut exceed = 0usize;
            for _ in 0..permutations {
                for p in perms.iter_mut().skip(1) {
                    p.shuffle(&mut rng);
                }
                if statistic(&grams, &perms, m) >= stat {
                    exceed += 1;
                }
            }
            (1 + exceed) as f64 / (1 + permutations) as f64
        }
    };
    Ok(HsicOutcome {
        statistic: stat,
        p_value,
    })
}

pub fn hsic_joint_pvalue(columns: &[Vec<f64>], method: HsicMethod) -> Result<f64, AnmError> {
    hsic_joint_test(columns, method).map(|o| o.p_value)
}
