//! Strict partitions inside a staircase, duals, intertwining statistics, and
//! the zero-augmented variants used by the type D formulas.

use crate::weyl::WeylError;
use itertools::Itertools;
use std::fmt;

/// A strictly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, WeylError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if ok {
            Ok(StrictPartition { parts })
        } else {
            Err(WeylError::Parse {
                input: format!("{parts:?}"),
                expected: "a strictly decreasing sequence of positive parts".to_string(),
            })
        }
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    /// Parts from an unsorted set of distinct positive values.
    pub fn from_set(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        StrictPartition::new(parts).expect("parts must be distinct and positive")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        // 1-based with the usual convention that parts vanish past the end.
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn has_part(&self, p: u32) -> bool {
        self.parts.contains(&p)
    }

    pub fn fits(&self, n: usize) -> bool {
        self.parts.first().copied().unwrap_or(0) <= n as u32
    }

    /// Complement of the part set in {1..n}.
    pub fn dual(&self, n: usize) -> StrictPartition {
        let parts = (1..=n as u32)
            .rev()
            .filter(|p| !self.has_part(*p))
            .collect();
        StrictPartition { parts }
    }

    /// Diagram containment: other_i <= self_i for every index.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.parts.get(i).copied().unwrap_or(0) >= p)
    }

    pub fn union(&self, other: &StrictPartition) -> Result<StrictPartition, WeylError> {
        if !self.is_disjoint(other) {
            return Err(WeylError::Unsupported(format!(
                "union of overlapping strict partitions {self} and {other}"
            )));
        }
        let mut parts: Vec<u32> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(StrictPartition { parts })
    }

    pub fn intersection(&self, other: &StrictPartition) -> StrictPartition {
        let parts = self
            .parts
            .iter()
            .copied()
            .filter(|p| other.has_part(*p))
            .collect();
        StrictPartition { parts }
    }

    /// Set difference of parts.
    pub fn difference(&self, other: &StrictPartition) -> StrictPartition {
        let parts = self
            .parts
            .iter()
            .copied()
            .filter(|p| !other.has_part(*p))
            .collect();
        StrictPartition { parts }
    }

    pub fn is_disjoint(&self, other: &StrictPartition) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn remove_part(&self, p: u32) -> StrictPartition {
        assert!(self.has_part(p));
        StrictPartition {
            parts: self.parts.iter().copied().filter(|&q| q != p).collect(),
        }
    }

    /// e(lambda) = |lambda| - l(l+1)/2; nonnegative since parts are strict.
    pub fn excess(&self) -> u32 {
        let l = self.len() as u32;
        self.weight() - l * (l + 1) / 2
    }

    /// Parse "3,1"; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<StrictPartition, WeylError> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(StrictPartition::empty());
        }
        let parts: Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        match parts {
            Ok(v) => StrictPartition::new(v),
            Err(_) => Err(WeylError::Parse {
                input: s.to_string(),
                expected: "a comma-separated strict partition".to_string(),
            }),
        }
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

/// A strictly decreasing sequence of nonnegative parts; only the last part
/// may be zero, and the declared length counts it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionPlus {
    parts: Vec<u32>,
}

impl PartitionPlus {
    pub fn new(parts: Vec<u32>) -> Result<Self, WeylError> {
        if parts.windows(2).all(|w| w[0] > w[1]) {
            Ok(PartitionPlus { parts })
        } else {
            Err(WeylError::Parse {
                input: format!("{parts:?}"),
                expected: "a strictly decreasing sequence of nonnegative parts".to_string(),
            })
        }
    }

    /// View a strict partition as an augmented one of declared length `len`,
    /// appending a zero part when len exceeds the number of parts.
    pub fn from_strict(lambda: &StrictPartition, len: usize) -> PartitionPlus {
        assert!(len == lambda.len() || len == lambda.len() + 1);
        let mut parts = lambda.parts().to_vec();
        if len > lambda.len() {
            parts.push(0);
        }
        PartitionPlus { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Declared length, counting a zero part.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn has_zero_part(&self) -> bool {
        self.parts.last() == Some(&0)
    }

    /// The positive parts as a strict partition.
    pub fn positive(&self) -> StrictPartition {
        StrictPartition {
            parts: self.parts.iter().copied().filter(|&p| p > 0).collect(),
        }
    }

    /// Componentwise containment of equal-length sequences.
    pub fn contains(&self, other: &PartitionPlus) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(&a, &b)| a >= b)
    }
}

impl fmt::Display for PartitionPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

fn fmt_parts(parts: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parts.is_empty() {
        write!(f, "()")
    } else {
        write!(f, "({})", parts.iter().map(|p| p.to_string()).join(","))
    }
}

/// The staircase (n, n-1, ..., 1).
pub fn rho(n: usize) -> StrictPartition {
    StrictPartition {
        parts: (1..=n as u32).rev().collect(),
    }
}

/// Intertwining number e(alpha, beta) = sum_i i * m_i where m_i counts the
/// parts of beta lying strictly between alpha_i and alpha_{i+1}. Requires
/// disjoint arguments.
pub fn intertwine_e(alpha: &StrictPartition, beta: &StrictPartition) -> Result<u32, WeylError> {
    if !alpha.is_disjoint(beta) {
        return Err(WeylError::Unsupported(format!(
            "intertwining number needs disjoint partitions, got {alpha} and {beta}"
        )));
    }
    let mut total = 0u32;
    for i in 1..=alpha.len() {
        let hi = alpha.part(i);
        let lo = alpha.part(i + 1);
        let m = beta.parts().iter().filter(|&&b| hi > b && b > lo).count() as u32;
        total += i as u32 * m;
    }
    Ok(total)
}

/// The type D intertwining number f(alpha, beta) = sum_i i * n_i, where n_i
/// counts parts of beta with alpha_i > beta_j >= alpha_{i+1}; beta may carry
/// a zero part, which is counted.
pub fn intertwine_f(alpha: &StrictPartition, beta: &PartitionPlus) -> u32 {
    let mut total = 0u32;
    for i in 1..=alpha.len() {
        let hi = alpha.part(i);
        let lo = alpha.part(i + 1);
        let m = beta.parts().iter().filter(|&&b| hi > b && b >= lo).count() as u32;
        total += i as u32 * m;
    }
    total
}

/// Length of the augmented dual in the type D indexing at rank n:
/// k = n - l when n and l have equal parity, n - l - 1 otherwise.
pub fn k_stat(lambda: &StrictPartition, n: usize) -> usize {
    let l = lambda.len();
    if (n % 2) == (l % 2) {
        n - l
    } else {
        n - l - 1
    }
}

/// The type D sign statistic: f(lambda) = e(lambda) + l(lambda) when n and
/// l(lambda) have equal parity, e(lambda) otherwise.
pub fn f_stat(lambda: &StrictPartition, n: usize) -> u32 {
    if (n % 2) == (lambda.len() % 2) {
        lambda.excess() + lambda.len() as u32
    } else {
        lambda.excess()
    }
}

/// The dual of lambda in the rank n - 1 staircase, augmented to declared
/// length k_stat(lambda, n).
pub fn dual_plus(lambda: &StrictPartition, n: usize) -> PartitionPlus {
    PartitionPlus::from_strict(&lambda.dual(n - 1), k_stat(lambda, n))
}

/// All 2^n strict partitions inside the rank n staircase, ordered by weight
/// and then by descending lexicographic part order.
pub fn enumerate_strict(n: usize) -> Vec<StrictPartition> {
    let mut all: Vec<StrictPartition> = (0..(1u32 << n))
        .map(|mask| {
            let parts = (1..=n as u32)
                .rev()
                .filter(|p| mask & (1 << (p - 1)) != 0)
                .collect();
            StrictPartition { parts }
        })
        .collect();
    sort_canonical(&mut all, |l| &l.parts);
    all
}

/// Strictly decreasing sequences over {0, ..., m}, possibly ending in a zero
/// part; same canonical order.
pub fn enumerate_plus(m: usize) -> Vec<PartitionPlus> {
    let mut all: Vec<PartitionPlus> = (0..(1u32 << (m + 1)))
        .map(|mask| {
            let parts = (0..=m as u32)
                .rev()
                .filter(|p| mask & (1 << p) != 0)
                .collect();
            PartitionPlus { parts }
        })
        .collect();
    sort_canonical(&mut all, |l| &l.parts);
    all
}

/// The length-k members of enumerate_plus(m).
pub fn enumerate_plus_len(m: usize, k: usize) -> Vec<PartitionPlus> {
    enumerate_plus(m).into_iter().filter(|b| b.len() == k).collect()
}

fn sort_canonical<T, F: Fn(&T) -> &Vec<u32>>(items: &mut [T], parts: F) {
    items.sort_by(|a, b| {
        let (pa, pb) = (parts(a), parts(b));
        let wa: u32 = pa.iter().sum();
        let wb: u32 = pb.iter().sum();
        wa.cmp(&wb).then_with(|| pb.cmp(pa))
    });
}

/// Bundle of the statistics attached to one or two partitions at rank n.
#[derive(Debug, Clone)]
pub struct PartitionStats {
    pub dual: StrictPartition,
    pub excess: u32,
    pub e_pair: Option<u32>,
    pub f_pair: Option<u32>,
    pub f_stat: u32,
    pub k_stat: usize,
}

pub fn partition_stats(
    lambda: &StrictPartition,
    mu: Option<&StrictPartition>,
    n: usize,
) -> Result<PartitionStats, WeylError> {
    let e_pair = mu.map(|m| intertwine_e(lambda, m)).transpose()?;
    let f_pair = mu.map(|m| intertwine_f(lambda, &PartitionPlus::from_strict(m, m.len())));
    Ok(PartitionStats {
        dual: lambda.dual(n),
        excess: lambda.excess(),
        e_pair,
        f_pair,
        f_stat: f_stat(lambda, n),
        k_stat: if n >= 1 + lambda.len() { k_stat(lambda, n) } else { 0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_validation() {
        assert!(StrictPartition::new(vec![3, 1]).is_ok());
        assert!(StrictPartition::new(vec![1, 1]).is_err());
        assert!(StrictPartition::new(vec![1, 3]).is_err());
        assert!(StrictPartition::new(vec![0]).is_err());
        assert!(PartitionPlus::new(vec![1, 0]).is_ok());
        assert!(PartitionPlus::new(vec![1, 0, 0]).is_err());
    }

    #[test]
    fn dual_and_excess() {
        assert_eq!(l(&[3, 1]).dual(3), l(&[2]));
        assert_eq!(l(&[3, 1]).excess(), 1);
        assert_eq!(StrictPartition::empty().excess(), 0);
        assert_eq!(rho(3), l(&[3, 2, 1]));
        for lam in enumerate_strict(4) {
            assert_eq!(lam.dual(4).dual(4), lam);
            assert_eq!(lam.weight() + lam.dual(4).weight(), rho(4).weight());
        }
    }

    #[test]
    fn intertwine_examples() {
        assert_eq!(intertwine_e(&l(&[3, 1]), &l(&[2])).unwrap(), 1);
        assert_eq!(
            intertwine_e(&l(&[3, 1]), &l(&[2])).unwrap(),
            l(&[3, 1]).excess()
        );
        assert!(intertwine_e(&l(&[2]), &l(&[2, 1])).is_err());
        // e(lambda, lambda') = e(lambda) throughout the staircase.
        for n in 1..=4 {
            for lam in enumerate_strict(n) {
                assert_eq!(
                    intertwine_e(&lam, &lam.dual(n)).unwrap(),
                    lam.excess(),
                    "lambda {lam}"
                );
            }
        }
    }

    #[test]
    fn f_matches_f_of_pair_with_augmented_dual() {
        for n in 2..=5 {
            for lam in enumerate_strict(n - 1) {
                let dual = dual_plus(&lam, n);
                assert_eq!(
                    f_stat(&lam, n),
                    intertwine_f(&lam, &dual),
                    "n={n} lambda={lam} dual={dual}"
                );
            }
        }
    }

    #[test]
    fn k_stat_parity() {
        assert_eq!(k_stat(&StrictPartition::empty(), 2), 2);
        assert_eq!(k_stat(&l(&[1]), 2), 0);
        assert_eq!(k_stat(&l(&[1]), 3), 2);
        assert_eq!(k_stat(&l(&[2]), 3), 2);
        assert_eq!(k_stat(&l(&[2, 1]), 3), 0);
    }

    #[test]
    fn enumeration_order() {
        let d2 = enumerate_strict(2);
        assert_eq!(d2, vec![StrictPartition::empty(), l(&[1]), l(&[2]), l(&[2, 1])]);
        assert_eq!(enumerate_strict(3).len(), 8);
        let d3 = enumerate_strict(3);
        // Weight ties break by descending lexicographic order.
        let w3: Vec<&StrictPartition> = d3.iter().filter(|p| p.weight() == 3).collect();
        assert_eq!(w3, vec![&l(&[3]), &l(&[2, 1])]);
        let plus2 = enumerate_plus(2);
        assert_eq!(plus2.len(), 8);
        assert!(plus2.contains(&PartitionPlus::new(vec![1, 0]).unwrap()));
    }

    #[test]
    fn set_operations() {
        let a = l(&[3, 1]);
        let b = l(&[2]);
        assert_eq!(a.union(&b).unwrap(), l(&[3, 2, 1]));
        assert!(a.union(&l(&[1])).is_err());
        assert_eq!(rho(3).difference(&a), b);
        assert_eq!(a.intersection(&rho(3)), a);
        assert!(rho(3).contains(&a));
        assert!(!a.contains(&rho(3)));
        assert_eq!(a.remove_part(3), l(&[1]));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(StrictPartition::parse("3,1").unwrap(), l(&[3, 1]));
        assert_eq!(StrictPartition::parse("").unwrap(), StrictPartition::empty());
        assert!(StrictPartition::parse("1,3").is_err());
        assert_eq!(l(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(StrictPartition::empty().to_string(), "()");
    }
}
