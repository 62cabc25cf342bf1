//! Random-scan Gibbs sampling of one component with its boundary clamped.
//!
//! For a component `C` of the decomposition and every boundary configuration
//! `b` with positive probability, the sampler repeatedly picks `A ∈ C`
//! uniformly and redraws it from `p(A | b, C \ A)`. A sweep is `|C|` updates.
//! The first 20% of sweeps are burn-in; the state after each remaining sweep
//! is counted and compared with the exact `p(C | b)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::decompose;
use crate::distribution::{advance, DiscreteDistribution, ZERO_EVENT};
use crate::graph::Udag;
use crate::markov::{check_positive, check_variables, CheckError};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    /// Values of the boundary variables, in ascending node order.
    pub boundary: Vec<usize>,
    /// Empirical distribution over component configurations (row-major,
    /// ascending node order).
    pub empirical: Vec<f64>,
    pub exact: Vec<f64>,
    pub total_variation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GibbsTrace {
    pub component: usize,
    pub sweeps: usize,
    pub burn_in: usize,
    pub per_boundary: Vec<BoundaryTrace>,
}

impl GibbsTrace {
    pub fn max_total_variation(&self) -> f64 {
        self.per_boundary.iter().map(|b| b.total_variation).fold(0.0, f64::max)
    }
}

pub fn gibbs_run(
    p: &DiscreteDistribution,
    g: &Udag,
    component: usize,
    sweeps: usize,
    seed: u64,
) -> Result<GibbsTrace, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    let dec = decompose(g);
    if component >= dec.len() {
        return Err(CheckError::ComponentOutOfRange(component));
    }
    let (c, bd) = (dec.components[component], dec.boundaries[component]);
    let cvars: Vec<usize> = c.iter().collect();
    let bvars: Vec<usize> = bd.iter().collect();
    let cards = p.cards();
    let ccards: Vec<usize> = cvars.iter().map(|&v| cards[v]).collect();
    let bcards: Vec<usize> = bvars.iter().map(|&v| cards[v]).collect();
    let csize: usize = ccards.iter().product();
    let bsize: usize = bcards.iter().product();

    // Joint over C ∪ bd, indexed boundary-major: bd_index * csize + c_index.
    let joint = p.marginal_table(c | bd);
    let mut local = vec![0.0; bsize * csize];
    {
        let mc = joint.index_map(c);
        let mb = joint.index_map(bd);
        for (i, &q) in joint.probs.iter().enumerate() {
            local[mb[i] * csize + mc[i]] += q;
        }
    }
    // Strides of component variables inside a component configuration index.
    let mut stride = vec![1usize; cvars.len()];
    for k in (0..cvars.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * ccards[k + 1];
    }

    let burn_in = sweeps / 5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_boundary = Vec::new();
    let mut bconf = vec![0usize; bvars.len()];
    for bi in 0..bsize {
        let slice = &local[bi * csize..(bi + 1) * csize];
        let mass: f64 = slice.iter().sum();
        if mass > ZERO_EVENT {
            let exact: Vec<f64> = slice.iter().map(|q| q / mass).collect();
            let mut counts = vec![0u64; csize];
            let mut state = vec![0usize; cvars.len()];
            let mut idx = 0usize;
            let mut weights = Vec::new();
            for sweep in 0..sweeps {
                for _ in 0..cvars.len() {
                    let k = rng.gen_range(0..cvars.len());
                    let base = idx - state[k] * stride[k];
                    weights.clear();
                    weights.extend((0..ccards[k]).map(|x| slice[base + x * stride[k]]));
                    let total: f64 = weights.iter().sum();
                    let mut u = rng.gen::<f64>() * total;
                    let mut x = ccards[k] - 1;
                    for (j, &w) in weights.iter().enumerate() {
                        if u < w {
                            x = j;
                            break;
                        }
                        u -= w;
                    }
                    state[k] = x;
                    idx = base + x * stride[k];
                }
                if sweep >= burn_in {
                    counts[idx] += 1;
                }
            }
            let kept = (sweeps - burn_in).max(1) as f64;
            let empirical: Vec<f64> = counts.iter().map(|&n| n as f64 / kept).collect();
            let total_variation = 0.5 * empirical.iter().zip(&exact).map(|(a, b)| (a - b).abs()).sum::<f64>();
            per_boundary.push(BoundaryTrace {
                boundary: bconf.clone(),
                empirical,
                exact,
                total_variation,
            });
        }
        advance(&mut bconf, &bcards);
    }
    Ok(GibbsTrace {
        component,
        sweeps,
        burn_in,
        per_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{sample_markov_fixture, Strictness};
    use crate::gallery::*;

    #[test]
    fn undirected_pair_converges() {
        let g = labeled("AB", &["A-B"]);
        let p = sample_markov_fixture(&g, 3, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        let t = gibbs_run(&p, &g, 0, 10_000, 1).unwrap();
        assert_eq!(t.per_boundary.len(), 1);
        assert!(t.max_total_variation() <= 0.05, "{t:?}");
    }

    #[test]
    fn more_sweeps_get_closer() {
        let g = inseparable_non_adjacent();
        let p = sample_markov_fixture(&g, 3, Strictness::ComponentForm)
            .unwrap()
            .distribution;
        let last = decompose(&g).len() - 1;
        let short = gibbs_run(&p, &g, last, 10, 2).unwrap();
        let long = gibbs_run(&p, &g, last, 10_000, 2).unwrap();
        assert_eq!(long.per_boundary.len(), 4);
        assert!(long.max_total_variation() < short.max_total_variation());
    }

    #[test]
    fn singleton_component_draws_exactly() {
        let g = labeled("AB", &["A->B"]);
        let p = sample_markov_fixture(&g, 6, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        let t = gibbs_run(&p, &g, 1, 20_000, 3).unwrap();
        assert_eq!(t.per_boundary.len(), 2);
        assert!(t.max_total_variation() < 0.02);
    }

    #[test]
    fn rejects_bad_component() {
        let g = labeled("AB", &["A->B"]);
        let p = sample_markov_fixture(&g, 6, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        assert_eq!(gibbs_run(&p, &g, 5, 10, 0), Err(CheckError::ComponentOutOfRange(5)));
    }
}
