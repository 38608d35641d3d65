//! Abstract argumentation frameworks and Dung's semantics.
//!
//! Nodes are kept in a canonical order (sorted identifiers) and every
//! semantics is evaluated over node indices into that order. Set families
//! are returned as `Vec<BTreeSet<N>>` sorted lexicographically by their
//! sorted members, so the empty set always comes first.
//!
//! Enumeration is exhaustive search with pruning. It is meant for the small
//! frameworks that show up during deliberation and explanation, not for
//! thousands of arguments.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("attack ({from}, {to}) references unknown node `{missing}`")]
    UnknownEndpoint {
        from: String,
        to: String,
        missing: String,
    },
    #[error("node `{0}` attacks itself")]
    SelfAttack(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
}

/// A directed attack graph over opaque node identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractAf<N> {
    nodes: Vec<N>,
    attacks: BTreeSet<(N, N)>,
    // attackers[i] = indices attacking node i
    attackers: Vec<Vec<usize>>,
    // conflict[i][j] = attack in either direction
    conflict: Vec<Vec<bool>>,
}

impl<N: Ord + Clone + fmt::Display> AbstractAf<N> {
    pub fn new(
        nodes: impl IntoIterator<Item = N>,
        attacks: impl IntoIterator<Item = (N, N)>,
    ) -> Result<Self, AfError> {
        let nodes: Vec<N> = nodes
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let attacks: BTreeSet<(N, N)> = attacks.into_iter().collect();
        let n = nodes.len();
        let mut attackers = vec![Vec::new(); n];
        let mut conflict = vec![vec![false; n]; n];
        for (from, to) in &attacks {
            let lookup = |x: &N| {
                nodes
                    .binary_search(x)
                    .map_err(|_| AfError::UnknownEndpoint {
                        from: from.to_string(),
                        to: to.to_string(),
                        missing: x.to_string(),
                    })
            };
            let i = lookup(from)?;
            let j = lookup(to)?;
            if i == j {
                return Err(AfError::SelfAttack(from.to_string()));
            }
            attackers[j].push(i);
            conflict[i][j] = true;
            conflict[j][i] = true;
        }
        Ok(AbstractAf {
            nodes,
            attacks,
            attackers,
            conflict,
        })
    }
}

impl<N: Ord + Clone> AbstractAf<N> {
    /// Nodes in canonical (sorted) order.
    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn attacks(&self) -> &BTreeSet<(N, N)> {
        &self.attacks
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, node: &N) -> Option<usize> {
        self.nodes.binary_search(node).ok()
    }

    pub fn attacks_between(&self, from: &N, to: &N) -> bool {
        self.attacks.contains(&(from.clone(), to.clone()))
    }

    /// True when the nodes at `i` and `j` are connected by an attack in
    /// either direction.
    pub fn in_conflict(&self, i: usize, j: usize) -> bool {
        self.conflict[i][j]
    }

    fn to_set(&self, indices: impl IntoIterator<Item = usize>) -> BTreeSet<N> {
        indices.into_iter().map(|i| self.nodes[i].clone()).collect()
    }

    fn to_indices<'a>(&self, set: impl IntoIterator<Item = &'a N>) -> Result<Vec<bool>, AfError>
    where
        N: 'a + fmt::Display,
    {
        let mut member = vec![false; self.len()];
        for node in set {
            let i = self
                .index_of(node)
                .ok_or_else(|| AfError::UnknownNode(node.to_string()))?;
            member[i] = true;
        }
        Ok(member)
    }

    /// Calls `visit` with the (ascending) index list of every conflict-free
    /// set, in depth-first order. The empty set is always visited.
    pub fn for_each_conflict_free_indexed(&self, mut visit: impl FnMut(&[usize])) {
        let mut chosen = Vec::with_capacity(self.len());
        self.cf_search(0, &mut chosen, &mut visit);
    }

    fn cf_search(&self, next: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if next == self.len() {
            visit(chosen);
            return;
        }
        self.cf_search(next + 1, chosen, visit);
        if chosen.iter().all(|&c| !self.conflict[c][next]) {
            chosen.push(next);
            self.cf_search(next + 1, chosen, visit);
            chosen.pop();
        }
    }

    pub fn count_conflict_free(&self) -> u64 {
        let mut count = 0;
        self.for_each_conflict_free_indexed(|_| count += 1);
        count
    }

    pub fn conflict_free_sets(&self) -> Vec<BTreeSet<N>> {
        let mut out = Vec::new();
        self.for_each_conflict_free_indexed(|s| out.push(self.to_set(s.iter().copied())));
        out.sort();
        out
    }

    fn defends_idx(&self, member: &[bool], a: usize) -> bool {
        self.attackers[a]
            .iter()
            .all(|&b| self.attackers[b].iter().any(|&c| member[c]))
    }

    /// Whether every attacker of `a` is attacked by some member of `set`.
    pub fn defends<'a>(&self, set: impl IntoIterator<Item = &'a N>, a: &N) -> Result<bool, AfError>
    where
        N: 'a + fmt::Display,
    {
        let member = self.to_indices(set)?;
        let a = self
            .index_of(a)
            .ok_or_else(|| AfError::UnknownNode(a.to_string()))?;
        Ok(self.defends_idx(&member, a))
    }

    fn characteristic(&self, member: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|a| self.defends_idx(member, a))
            .collect()
    }

    /// Least fixpoint of the characteristic function, iterated from the
    /// empty set.
    pub fn grounded_extension(&self) -> BTreeSet<N> {
        let mut member = vec![false; self.len()];
        loop {
            let next = self.characteristic(&member);
            if next == member {
                break;
            }
            member = next;
        }
        self.to_set((0..self.len()).filter(|&i| member[i]))
    }

    fn membership(&self, s: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        for &i in s {
            member[i] = true;
        }
        member
    }

    fn collect_cf_where(&self, keep: impl Fn(&[usize], &[bool]) -> bool) -> Vec<BTreeSet<N>> {
        let mut out = Vec::new();
        self.for_each_conflict_free_indexed(|s| {
            let member = self.membership(s);
            if keep(s, &member) {
                out.push(self.to_set(s.iter().copied()));
            }
        });
        out.sort();
        out
    }

    pub fn admissible_sets(&self) -> Vec<BTreeSet<N>> {
        self.collect_cf_where(|s, member| s.iter().all(|&a| self.defends_idx(member, a)))
    }

    pub fn complete_extensions(&self) -> Vec<BTreeSet<N>> {
        self.collect_cf_where(|_, member| self.characteristic(member) == member)
    }

    /// Complete extensions that are maximal w.r.t. set inclusion.
    pub fn preferred_extensions(&self) -> Vec<BTreeSet<N>> {
        let complete = self.complete_extensions();
        complete
            .iter()
            .filter(|e| {
                !complete
                    .iter()
                    .any(|other| other.len() > e.len() && e.is_subset(other))
            })
            .cloned()
            .collect()
    }

    /// Conflict-free sets attacking every node outside themselves. May be
    /// empty.
    pub fn stable_extensions(&self) -> Vec<BTreeSet<N>> {
        self.collect_cf_where(|_, member| {
            (0..self.len())
                .filter(|&a| !member[a])
                .all(|a| self.attackers[a].iter().any(|&b| member[b]))
        })
    }

    pub fn extensions(&self, semantics: Semantics) -> Vec<BTreeSet<N>> {
        match semantics {
            Semantics::Grounded => vec![self.grounded_extension()],
            Semantics::Complete => self.complete_extensions(),
            Semantics::Preferred => self.preferred_extensions(),
            Semantics::Stable => self.stable_extensions(),
        }
    }
}

/// Dung semantics selectable for evaluating a framework.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    #[default]
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Grounded => "grounded",
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grounded" => Ok(Semantics::Grounded),
            "complete" => Ok(Semantics::Complete),
            "preferred" => Ok(Semantics::Preferred),
            "stable" => Ok(Semantics::Stable),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}
