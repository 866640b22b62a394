//! Integer partitions in multiplicity form `J = [j_1, j_2, ...]`.

use std::collections::BTreeMap;
use std::fmt;

/// Weight above which callers should switch from enumeration to the series
/// recurrence in [`crate::bpoly`].
pub const DEFAULT_ENUMERATION_THRESHOLD: u32 = 30;

/// A partition stored as part size `k` → multiplicity `j_k`. Only strictly
/// positive multiplicities are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: BTreeMap<u32, u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from `(k, j_k)` pairs; zero multiplicities are dropped and
    /// repeated keys accumulate.
    pub fn from_multiplicities(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut parts = BTreeMap::new();
        for (k, j) in pairs {
            assert!(k >= 1, "part sizes start at 1");
            if j > 0 {
                *parts.entry(k).or_insert(0) += j;
            }
        }
        Self { parts }
    }

    /// Build from a list of parts, e.g. `[3, 1, 1]`.
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::from_multiplicities(parts.iter().map(|&k| (k, 1)))
    }

    /// `j_k`, zero if `k` does not occur.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.get(&k).copied().unwrap_or(0)
    }

    /// `(k, j_k)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts.iter().map(|(&k, &j)| (k, j))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> Option<u32> {
        self.parts.keys().next_back().copied()
    }

    /// `w(J) = Σ k·j_k`.
    pub fn weight(&self) -> u64 {
        self.iter().map(|(k, j)| u64::from(k) * u64::from(j)).sum()
    }

    /// `|J| = Σ j_k`.
    pub fn norm(&self) -> u64 {
        self.iter().map(|(_, j)| u64::from(j)).sum()
    }

    /// `J_o`, the number of odd parts counted with multiplicity.
    pub fn odd_count(&self) -> u64 {
        self.iter()
            .filter(|(k, _)| k % 2 == 1)
            .map(|(_, j)| u64::from(j))
            .sum()
    }

    /// `J_e`, the number of even parts counted with multiplicity.
    pub fn even_count(&self) -> u64 {
        self.iter()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(_, j)| u64::from(j))
            .sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.iter().map(|(k, j)| format!("j_{k}={j}")).collect();
        write!(f, "[{}]", terms.join(", "))
    }
}

/// All partitions of `n`, ordered by descending largest part and then
/// recursively on the remainder.
pub fn enumerate(n: u32) -> Vec<Partition> {
    enumerate_with(n, |_| true)
}

/// Partitions of `n` into odd parts only.
pub fn enumerate_odd(n: u32) -> Vec<Partition> {
    enumerate_with(n, |k| k % 2 == 1)
}

fn enumerate_with(n: u32, allowed: impl Fn(u32) -> bool + Copy) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, allowed, &mut stack, &mut out);
    out
}

fn descend(
    remaining: u32,
    max_part: u32,
    allowed: impl Fn(u32) -> bool + Copy,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_parts(stack));
        return;
    }
    for k in (1..=max_part.min(remaining)).rev() {
        if !allowed(k) {
            continue;
        }
        stack.push(k);
        descend(remaining - k, k, allowed, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's pentagonal recurrence for p(n), independent of enumeration.
    fn partition_numbers(max: usize) -> Vec<u64> {
        let mut p = vec![0i64; max + 1];
        p[0] = 1;
        for n in 1..=max {
            let mut acc = 0i64;
            for k in 1.. {
                let k = k as i64;
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * p[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    acc += sign * p[n - g2];
                }
            }
            p[n] = acc;
        }
        p.into_iter().map(|x| x as u64).collect()
    }

    #[test]
    fn statistics() {
        let e = Partition::empty();
        assert_eq!(
            (e.weight(), e.norm(), e.odd_count(), e.even_count()),
            (0, 0, 0, 0)
        );

        let j = Partition::from_multiplicities([(1, 2), (2, 1)]);
        assert_eq!(j.weight(), 4);
        assert_eq!((j.norm(), j.odd_count(), j.even_count()), (3, 2, 1));

        assert_eq!(Partition::from_multiplicities([(3, 1), (5, 1)]).weight(), 8);

        let ones = Partition::from_multiplicities([(1, 9)]);
        assert_eq!(
            (ones.norm(), ones.odd_count(), ones.even_count()),
            (9, 9, 0)
        );
    }

    #[test]
    fn zero_multiplicities_are_dropped() {
        let j = Partition::from_multiplicities([(2, 0), (3, 1)]);
        assert_eq!(j.iter().collect::<Vec<_>>(), vec![(3, 1)]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4).len(), 5);
        assert_eq!(enumerate(20).len(), 627);
        assert_eq!(enumerate_odd(1), vec![Partition::from_parts(&[1])]);
        assert_eq!(enumerate_odd(7).len(), 5);
    }

    #[test]
    fn enumeration_order() {
        let order: Vec<String> = enumerate(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            order,
            vec![
                "[j_4=1]",
                "[j_1=1, j_3=1]",
                "[j_2=2]",
                "[j_1=2, j_2=1]",
                "[j_1=4]",
            ]
        );
    }

    #[test]
    fn odd_partitions_of_six() {
        let got = enumerate_odd(6);
        let want = vec![
            Partition::from_multiplicities([(5, 1), (1, 1)]),
            Partition::from_multiplicities([(3, 2)]),
            Partition::from_multiplicities([(3, 1), (1, 3)]),
            Partition::from_multiplicities([(1, 6)]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let p = partition_numbers(40);
        for n in 0..=40u32 {
            let all = enumerate(n);
            assert_eq!(all.len() as u64, p[n as usize], "p({n})");
            for j in &all {
                assert_eq!(j.weight(), u64::from(n));
                assert_eq!(j.norm(), j.odd_count() + j.even_count());
            }
            let filtered: Vec<_> = all.into_iter().filter(|j| j.even_count() == 0).collect();
            assert_eq!(enumerate_odd(n), filtered, "odd partitions of {n}");
        }
    }
}
