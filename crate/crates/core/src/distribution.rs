//! Explicit joint probability tables over finite-valued variables.
//!
//! Tables are row-major over the variable order: the first variable varies
//! slowest and the last fastest, so configuration `(x_0, ..., x_{k-1})` lives
//! at `sum_i x_i * stride_i` with `stride_{k-1} = 1`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::nodeset::{NodeId, NodeSet, MAX_NODES};

/// Probability mass below which a conditioning event is treated as impossible.
pub const ZERO_EVENT: f64 = 1e-12;

/// Default slack for conditional-independence checks.
pub const CI_TOLERANCE: f64 = 1e-9;

const NORMALIZATION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistributionError {
    #[error("table has {got} entries, variables require {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("variable {0} has cardinality zero")]
    ZeroCardinality(usize),
    #[error("too many variables ({0}), at most 64 are supported")]
    TooManyVariables(usize),
    #[error("entry {0} is negative or not finite")]
    InvalidEntry(usize),
    #[error("table sums to {0}, expected 1")]
    NotNormalized(f64),
    #[error("variable {0} is out of range")]
    UnknownVariable(usize),
    #[error("value {value} out of range for variable {var}")]
    ValueOutOfRange { var: usize, value: usize },
    #[error("evidence has zero probability")]
    ZeroProbabilityEvidence,
    #[error("distribution is not strictly positive")]
    NonPositiveDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub card: usize,
}

impl Variable {
    pub fn new(name: impl Into<String>, card: usize) -> Self {
        Variable {
            name: name.into(),
            card,
        }
    }
}

/// A normalized joint distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    vars: Vec<Variable>,
    table: Vec<f64>,
}

impl DiscreteDistribution {
    /// Validates shape, non-negativity and normalization.
    pub fn new(vars: Vec<Variable>, table: Vec<f64>) -> Result<Self, DistributionError> {
        check_shape(&vars, table.len())?;
        let mut sum = 0.0;
        for (i, &p) in table.iter().enumerate() {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(DistributionError::InvalidEntry(i));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(DistributionError::NotNormalized(sum));
        }
        Ok(DiscreteDistribution { vars, table })
    }

    /// Normalizes non-negative weights into a distribution.
    pub fn from_weights(vars: Vec<Variable>, mut weights: Vec<f64>) -> Result<Self, DistributionError> {
        check_shape(&vars, weights.len())?;
        let mut sum = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(DistributionError::InvalidEntry(i));
            }
            sum += w;
        }
        if !(sum > 0.0) {
            return Err(DistributionError::NotNormalized(sum));
        }
        for w in &mut weights {
            *w /= sum;
        }
        Ok(DiscreteDistribution { vars, table: weights })
    }

    /// Uniform distribution over the given variables.
    pub fn uniform(vars: Vec<Variable>) -> Result<Self, DistributionError> {
        let size = vars.iter().map(|v| v.card).product();
        Self::from_weights(vars, vec![1.0; size])
    }

    /// Product of independent marginals.
    pub fn product(marginals: &[(Variable, Vec<f64>)]) -> Result<Self, DistributionError> {
        let vars: Vec<Variable> = marginals.iter().map(|(v, _)| v.clone()).collect();
        for (i, (v, m)) in marginals.iter().enumerate() {
            if m.len() != v.card {
                return Err(DistributionError::ShapeMismatch {
                    expected: v.card,
                    got: m.len(),
                });
            }
            if m.iter().any(|&p| !(p >= 0.0)) {
                return Err(DistributionError::InvalidEntry(i));
            }
        }
        let size: usize = vars.iter().map(|v| v.card).product();
        let mut table = vec![1.0; size];
        let cards: Vec<usize> = vars.iter().map(|v| v.card).collect();
        let mut digits = vec![0usize; vars.len()];
        for p in table.iter_mut() {
            for (k, &d) in digits.iter().enumerate() {
                *p *= marginals[k].1[d];
            }
            advance(&mut digits, &cards);
        }
        Self::from_weights(vars, table)
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn cards(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.card).collect()
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn all_vars(&self) -> NodeSet {
        NodeSet::full(self.vars.len())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Flat index of a full configuration.
    pub fn index(&self, config: &[usize]) -> usize {
        config.iter().zip(&self.vars).fold(0, |acc, (&x, v)| acc * v.card + x)
    }

    pub fn prob(&self, config: &[usize]) -> f64 {
        self.table[self.index(config)]
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.table.iter().all(|&p| p > 0.0)
    }

    pub(crate) fn marginal_table(&self, keep: NodeSet) -> Table {
        Table::full_view(self).sum_to(keep)
    }

    /// Exact marginal over `keep`, variables in their original order.
    pub fn marginalize(&self, keep: NodeSet) -> Result<DiscreteDistribution, DistributionError> {
        self.check_vars(keep)?;
        let t = self.marginal_table(keep);
        let vars = t.vars.iter().map(|&v| self.vars[v].clone()).collect();
        Ok(DiscreteDistribution { vars, table: t.probs })
    }

    /// Slice on the evidence and renormalize. The result ranges over the
    /// variables not named in the evidence, in their original order.
    pub fn condition(&self, evidence: &[(usize, usize)]) -> Result<DiscreteDistribution, DistributionError> {
        let mut fixed = vec![None; self.vars.len()];
        for &(v, x) in evidence {
            if v >= self.vars.len() {
                return Err(DistributionError::UnknownVariable(v));
            }
            if x >= self.vars[v].card {
                return Err(DistributionError::ValueOutOfRange { var: v, value: x });
            }
            fixed[v] = Some(x);
        }
        let cards = self.cards();
        let mut digits = vec![0usize; self.vars.len()];
        let mut kept = Vec::new();
        for &p in &self.table {
            if digits.iter().zip(&fixed).all(|(d, f)| f.is_none_or(|x| x == *d)) {
                kept.push(p);
            }
            advance(&mut digits, &cards);
        }
        let mass: f64 = kept.iter().sum();
        if mass <= ZERO_EVENT {
            return Err(DistributionError::ZeroProbabilityEvidence);
        }
        for p in &mut kept {
            *p /= mass;
        }
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| fixed[*i].is_none())
            .map(|(_, v)| v.clone())
            .collect();
        Ok(DiscreteDistribution { vars, table: kept })
    }

    /// Largest `|p(x,y|z) - p(x|z) p(y|z)|` over configurations with
    /// `p(z) > 1e-12`. Zero when `x` or `y` is empty.
    pub fn ci_deviation(&self, x: NodeSet, y: NodeSet, z: NodeSet) -> f64 {
        if x.is_empty() || y.is_empty() {
            return 0.0;
        }
        self.marginal_table(x | y | z).ci_deviation(x, y, z)
    }

    /// `X ⊥ Y | Z` holds within `tol` on every positive-probability slice of `Z`.
    pub fn ci_test_exact(&self, x: NodeSet, y: NodeSet, z: NodeSet, tol: f64) -> bool {
        self.ci_deviation(x, y, z) <= tol
    }

    /// Largest `|p(a | s_big) - p(a | s_small)|` over configurations with
    /// `p(s_big) > 1e-12`. `s_small` must be a subset of `s_big`.
    pub fn conditional_deviation(&self, a: NodeId, s_big: NodeSet, s_small: NodeSet) -> f64 {
        debug_assert!(s_small.is_subset(s_big));
        let t = self.marginal_table(s_big.with(a));
        t.conditional_deviation(a, s_big, s_small)
    }

    /// Draw `count` full configurations by inverse-CDF sampling.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<Vec<usize>> {
        let mut cdf = Vec::with_capacity(self.table.len());
        let mut acc = 0.0;
        for &p in &self.table {
            acc += p;
            cdf.push(acc);
        }
        let cards = self.cards();
        (0..count)
            .map(|_| {
                let u: f64 = rng.gen::<f64>() * acc;
                let idx = cdf.partition_point(|&c| c <= u).min(self.table.len() - 1);
                decode(idx, &cards)
            })
            .collect()
    }

    fn check_vars(&self, s: NodeSet) -> Result<(), DistributionError> {
        match (s - self.all_vars()).first() {
            Some(v) => Err(DistributionError::UnknownVariable(v)),
            None => Ok(()),
        }
    }
}

fn check_shape(vars: &[Variable], len: usize) -> Result<(), DistributionError> {
    if vars.len() > MAX_NODES {
        return Err(DistributionError::TooManyVariables(vars.len()));
    }
    if let Some(i) = vars.iter().position(|v| v.card == 0) {
        return Err(DistributionError::ZeroCardinality(i));
    }
    let expected = vars
        .iter()
        .try_fold(1usize, |acc, v| acc.checked_mul(v.card))
        .unwrap_or(usize::MAX);
    if expected != len {
        return Err(DistributionError::ShapeMismatch { expected, got: len });
    }
    Ok(())
}

/// Odometer increment, last digit fastest.
pub(crate) fn advance(digits: &mut [usize], cards: &[usize]) {
    for k in (0..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < cards[k] {
            return;
        }
        digits[k] = 0;
    }
}

pub(crate) fn decode(mut idx: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for k in (0..cards.len()).rev() {
        out[k] = idx % cards[k];
        idx /= cards[k];
    }
    out
}

/// An unnormalized or normalized table over an ascending list of variable ids.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Table {
    pub vars: Vec<usize>,
    pub cards: Vec<usize>,
    pub probs: Vec<f64>,
}

impl Table {
    fn full_view(p: &DiscreteDistribution) -> TableRef<'_> {
        TableRef {
            vars: (0..p.vars.len()).collect(),
            cards: p.cards(),
            probs: &p.table,
        }
    }

    pub fn var_set(&self) -> NodeSet {
        self.vars.iter().collect()
    }

    pub fn sum_to(&self, keep: NodeSet) -> Table {
        TableRef {
            vars: self.vars.clone(),
            cards: self.cards.clone(),
            probs: &self.probs,
        }
        .sum_to(keep)
    }

    /// For every entry, its index in the marginal table over `sub`.
    pub fn index_map(&self, sub: NodeSet) -> Vec<usize> {
        index_map(&self.vars, &self.cards, sub)
    }

    pub fn ci_deviation(&self, x: NodeSet, y: NodeSet, z: NodeSet) -> f64 {
        let pxz = self.sum_to(x | z);
        let pyz = self.sum_to(y | z);
        let pz = self.sum_to(z);
        let mxz = self.index_map(x | z);
        let myz = self.index_map(y | z);
        let mz = self.index_map(z);
        let mut worst: f64 = 0.0;
        for (i, &pxyz) in self.probs.iter().enumerate() {
            let zmass = pz.probs[mz[i]];
            if zmass <= ZERO_EVENT {
                continue;
            }
            let joint = pxyz / zmass;
            let prod = (pxz.probs[mxz[i]] / zmass) * (pyz.probs[myz[i]] / zmass);
            worst = worst.max((joint - prod).abs());
        }
        worst
    }

    pub fn conditional_deviation(&self, a: NodeId, s_big: NodeSet, s_small: NodeSet) -> f64 {
        let p_big = self.sum_to(s_big);
        let p_a_small = self.sum_to(s_small.with(a));
        let p_small = self.sum_to(s_small);
        let m_big = self.index_map(s_big);
        let m_a_small = self.index_map(s_small.with(a));
        let m_small = self.index_map(s_small);
        let mut worst: f64 = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            let big = p_big.probs[m_big[i]];
            if big <= ZERO_EVENT {
                continue;
            }
            let lhs = p / big;
            let rhs = p_a_small.probs[m_a_small[i]] / p_small.probs[m_small[i]];
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    }
}

struct TableRef<'a> {
    vars: Vec<usize>,
    cards: Vec<usize>,
    probs: &'a [f64],
}

impl TableRef<'_> {
    fn sum_to(&self, keep: NodeSet) -> Table {
        let vars: Vec<usize> = self.vars.iter().copied().filter(|v| keep.contains(*v)).collect();
        let cards: Vec<usize> = self
            .vars
            .iter()
            .zip(&self.cards)
            .filter(|(v, _)| keep.contains(**v))
            .map(|(_, &c)| c)
            .collect();
        let size: usize = cards.iter().product();
        let mut probs = vec![0.0; size];
        let map = index_map(&self.vars, &self.cards, keep);
        for (i, &p) in self.probs.iter().enumerate() {
            probs[map[i]] += p;
        }
        Table { vars, cards, probs }
    }
}

fn index_map(vars: &[usize], cards: &[usize], sub: NodeSet) -> Vec<usize> {
    // Stride of each variable inside the sub-table (0 when dropped).
    let mut sub_stride = vec![0usize; vars.len()];
    let mut s = 1;
    for k in (0..vars.len()).rev() {
        if sub.contains(vars[k]) {
            sub_stride[k] = s;
            s *= cards[k];
        }
    }
    let size: usize = cards.iter().product();
    let mut out = Vec::with_capacity(size);
    let mut digits = vec![0usize; vars.len()];
    let mut j = 0usize;
    for _ in 0..size {
        out.push(j);
        // odometer with incremental sub-index
        for k in (0..vars.len()).rev() {
            digits[k] += 1;
            j += sub_stride[k];
            if digits[k] < cards[k] {
                break;
            }
            j -= sub_stride[k] * cards[k];
            digits[k] = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn binary(n: usize) -> Vec<Variable> {
        (0..n).map(|i| Variable::new(format!("X{i}"), 2)).collect()
    }

    /// X, Y uniform bits, Z = X xor Y.
    fn xor() -> DiscreteDistribution {
        let mut t = vec![0.0; 8];
        for x in 0..2 {
            for y in 0..2 {
                t[x * 4 + y * 2 + (x ^ y)] = 0.25;
            }
        }
        DiscreteDistribution::new(binary(3), t).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            DiscreteDistribution::new(binary(2), vec![0.5, 0.5]),
            Err(DistributionError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            DiscreteDistribution::new(binary(1), vec![0.7, 0.7]),
            Err(DistributionError::NotNormalized(_))
        ));
        assert!(matches!(
            DiscreteDistribution::new(binary(1), vec![1.5, -0.5]),
            Err(DistributionError::InvalidEntry(1))
        ));
    }

    #[test]
    fn marginalize_uniform() {
        let p = DiscreteDistribution::uniform(binary(2)).unwrap();
        let m = p.marginalize(NodeSet::singleton(1)).unwrap();
        assert_eq!(m.table(), &[0.5, 0.5]);
        assert_eq!(m.variables()[0].name, "X1");
        assert_eq!(p.marginalize(p.all_vars()).unwrap(), p);
    }

    #[test]
    fn marginalize_product_keeps_marginals() {
        let vars = [Variable::new("a", 2), Variable::new("b", 3), Variable::new("c", 2)];
        let margs = vec![
            (vars[0].clone(), vec![0.3, 0.7]),
            (vars[1].clone(), vec![0.2, 0.5, 0.3]),
            (vars[2].clone(), vec![0.9, 0.1]),
        ];
        let p = DiscreteDistribution::product(&margs).unwrap();
        let m = p.marginalize(NodeSet::from_iter([0usize, 2])).unwrap();
        let expected = [0.3 * 0.9, 0.3 * 0.1, 0.7 * 0.9, 0.7 * 0.1];
        for (a, b) in m.table().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(p.ci_test_exact(
            NodeSet::singleton(0),
            NodeSet::singleton(1),
            NodeSet::singleton(2),
            1e-12
        ));
    }

    #[test]
    fn condition_examples() {
        let p = DiscreteDistribution::uniform(binary(2)).unwrap();
        let c = p.condition(&[(0, 1)]).unwrap();
        assert_eq!(c.table(), &[0.5, 0.5]);
        assert_eq!(p.condition(&[]).unwrap(), p);
        let det = DiscreteDistribution::new(binary(2), vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(det.condition(&[(0, 1)]).unwrap().table(), &[0.0, 1.0]);
        assert_eq!(
            det.condition(&[(0, 0)]),
            Err(DistributionError::ZeroProbabilityEvidence)
        );
    }

    #[test]
    fn xor_pattern() {
        let p = xor();
        let (x, y, z) = (NodeSet::singleton(0), NodeSet::singleton(1), NodeSet::singleton(2));
        assert!(p.ci_test_exact(x, y, NodeSet::EMPTY, CI_TOLERANCE));
        assert!(!p.ci_test_exact(x, y, z, CI_TOLERANCE));
        assert!((p.ci_deviation(x, y, z) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn index_and_decode_agree() {
        let vars = vec![Variable::new("a", 2), Variable::new("b", 3), Variable::new("c", 4)];
        let p = DiscreteDistribution::uniform(vars).unwrap();
        let cards = p.cards();
        for i in 0..24 {
            assert_eq!(p.index(&decode(i, &cards)), i);
        }
    }
}
