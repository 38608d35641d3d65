//! Brute-force reference answers. Every function here walks all 2^n
//! subsets and checks the textbook definitions directly, so it shares no
//! code or shortcuts with the library.

use std::collections::BTreeSet;

/// A framework over nodes `0..n`, with sets encoded as bitmasks.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub attacks: Vec<(usize, usize)>,
}

pub fn members(set: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| set & (1 << i) != 0)
}

pub fn to_set(set: u32) -> BTreeSet<usize> {
    members(set).collect()
}

impl Graph {
    pub fn subsets(&self) -> impl Iterator<Item = u32> {
        assert!(self.n <= 20, "oracle is exponential");
        0..(1u32 << self.n)
    }

    pub fn conflict_free(&self, s: u32) -> bool {
        self.attacks
            .iter()
            .all(|&(a, b)| !(s & (1 << a) != 0 && s & (1 << b) != 0))
    }

    fn attacks_node(&self, s: u32, target: usize) -> bool {
        self.attacks
            .iter()
            .any(|&(a, b)| b == target && s & (1 << a) != 0)
    }

    pub fn defends(&self, s: u32, a: usize) -> bool {
        self.attacks
            .iter()
            .filter(|&&(_, b)| b == a)
            .all(|&(attacker, _)| self.attacks_node(s, attacker))
    }

    pub fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s) && members(s).all(|a| self.defends(s, a))
    }

    pub fn complete(&self, s: u32) -> bool {
        self.admissible(s) && (0..self.n).all(|a| !self.defends(s, a) || s & (1 << a) != 0)
    }

    pub fn stable(&self, s: u32) -> bool {
        self.conflict_free(s) && (0..self.n).all(|a| s & (1 << a) != 0 || self.attacks_node(s, a))
    }

    pub fn conflict_free_sets(&self) -> Vec<u32> {
        self.subsets().filter(|&s| self.conflict_free(s)).collect()
    }

    pub fn admissible_sets(&self) -> Vec<u32> {
        self.subsets().filter(|&s| self.admissible(s)).collect()
    }

    pub fn complete_sets(&self) -> Vec<u32> {
        self.subsets().filter(|&s| self.complete(s)).collect()
    }

    /// The least complete set: the one contained in every other.
    pub fn grounded(&self) -> u32 {
        let complete = self.complete_sets();
        let least: Vec<u32> = complete
            .iter()
            .copied()
            .filter(|&s| complete.iter().all(|&t| s & t == s))
            .collect();
        assert_eq!(least.len(), 1, "exactly one least complete set");
        least[0]
    }

    /// Admissible sets with no admissible strict superset.
    pub fn preferred(&self) -> Vec<u32> {
        let adm = self.admissible_sets();
        adm.iter()
            .copied()
            .filter(|&s| !adm.iter().any(|&t| t != s && s & t == s))
            .collect()
    }

    pub fn stable_sets(&self) -> Vec<u32> {
        self.subsets().filter(|&s| self.stable(s)).collect()
    }
}

/// Maximum total weight over the given sets, and every set reaching it.
/// Weights are integers, so ties are exact.
pub fn argmax(sets: &[u32], weight: &[u64]) -> (u64, Vec<u32>) {
    let total = |s: u32| members(s).map(|i| weight[i]).sum::<u64>();
    let best = sets.iter().map(|&s| total(s)).max().unwrap_or(0);
    let winners = sets.iter().copied().filter(|&s| total(s) == best).collect();
    (best, winners)
}
