//! Choosing the pursued goals: the conflict-free goal sets of maximal
//! utility.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::goal_graph::{Filtered, GoalAf};
use crate::instrumental::GoalId;
use crate::rational::Rational;

/// How a goal set is scored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UtilityFunction {
    /// Sum of the preferences of every goal in the set.
    SumAll,
    /// Sum of the preferences of the main goals in the set; sub-goals count
    /// for nothing.
    SumMain { main_goals: BTreeSet<GoalId> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UtilityVariant {
    #[default]
    SumAll,
    SumMain,
}

impl fmt::Display for UtilityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UtilityVariant::SumAll => "sum_all",
            UtilityVariant::SumMain => "sum_main",
        })
    }
}

impl UtilityFunction {
    pub fn variant(&self) -> UtilityVariant {
        match self {
            UtilityFunction::SumAll => UtilityVariant::SumAll,
            UtilityFunction::SumMain { .. } => UtilityVariant::SumMain,
        }
    }

    fn counts(&self, goal: &GoalId) -> bool {
        match self {
            UtilityFunction::SumAll => true,
            UtilityFunction::SumMain { main_goals } => main_goals.contains(goal),
        }
    }

    pub fn utility<'a>(
        &self,
        extension: impl IntoIterator<Item = &'a GoalId>,
        gaf: &GoalAf<Filtered>,
    ) -> Rational {
        match self {
            UtilityFunction::SumAll => utility_sum_all(extension, gaf),
            UtilityFunction::SumMain { main_goals } => utility_sum_main(extension, gaf, main_goals),
        }
    }
}

pub fn utility_sum_all<'a>(
    extension: impl IntoIterator<Item = &'a GoalId>,
    gaf: &GoalAf<Filtered>,
) -> Rational {
    extension.into_iter().filter_map(|g| gaf.pref(g)).sum()
}

pub fn utility_sum_main<'a>(
    extension: impl IntoIterator<Item = &'a GoalId>,
    gaf: &GoalAf<Filtered>,
    main_goals: &BTreeSet<GoalId>,
) -> Rational {
    extension
        .into_iter()
        .filter(|g| main_goals.contains(*g))
        .filter_map(|g| gaf.pref(g))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionResult {
    /// The goals the agent commits to.
    pub pursued: BTreeSet<GoalId>,
    pub winning_utility: Rational,
    /// Every conflict-free set reaching `winning_utility`, sorted.
    pub all_max_extensions: Vec<BTreeSet<GoalId>>,
    /// Number of conflict-free sets, the empty set included.
    pub cf_count: u64,
}

impl SelectionResult {
    /// More than one conflict-free set reaches the maximum utility.
    pub fn is_tie(&self) -> bool {
        self.all_max_extensions.len() > 1
    }
}

/// Integer weights over a common denominator, so the scan only adds
/// integers.
enum Weights {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

fn scaled_weights(prefs: &[BigRational]) -> (Weights, BigInt) {
    let denom = prefs
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let numers: Vec<BigInt> = prefs
        .iter()
        .map(|p| p.numer() * (&denom / p.denom()))
        .collect();
    let small: Option<Vec<i128>> = numers.iter().map(|n| n.to_i64().map(i128::from)).collect();
    let weights = match small {
        Some(w) => Weights::Small(w),
        None => Weights::Big(numers),
    };
    (weights, denom)
}

/// Best-scoring conflict-free sets under integer weights.
fn argmax<T: Ord + Clone + Zero>(
    gaf: &crate::af::AbstractAf<GoalId>,
    weight: impl Fn(usize) -> T,
    add: impl Fn(&mut T, &T),
) -> (T, Vec<Vec<usize>>, u64) {
    let mut best: Option<T> = None;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    let mut count = 0u64;
    gaf.for_each_conflict_free_indexed(|set| {
        count += 1;
        let mut total = T::zero();
        for &i in set {
            add(&mut total, &weight(i));
        }
        match best.as_ref().map(|b| total.cmp(b)) {
            Some(std::cmp::Ordering::Less) => {}
            Some(std::cmp::Ordering::Equal) => winners.push(set.to_vec()),
            _ => {
                best = Some(total);
                winners.clear();
                winners.push(set.to_vec());
            }
        }
    });
    (best.unwrap_or_else(T::zero), winners, count)
}

/// Enumerates the conflict-free sets of `gaf` (attack direction ignored)
/// and keeps those of maximal utility. Among tied maxima the
/// lexicographically least set becomes `pursued`.
pub fn select(gaf: &GoalAf<Filtered>, utility: &UtilityFunction) -> SelectionResult {
    let af = gaf.to_abstract();
    let prefs: Vec<BigRational> = af
        .nodes()
        .iter()
        .map(|g| {
            if utility.counts(g) {
                gaf.pref(g).expect("node is a goal").as_big().clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let (weights, denom) = scaled_weights(&prefs);
    let (best, winners, cf_count) = match &weights {
        Weights::Small(w) => {
            let (best, winners, count) = argmax(&af, |i| w[i], |acc, x| *acc += *x);
            (BigInt::from(best), winners, count)
        }
        Weights::Big(w) => argmax(&af, |i| w[i].clone(), |acc, x| *acc += x),
    };

    let mut all_max_extensions: Vec<BTreeSet<GoalId>> = winners
        .into_iter()
        .map(|set| set.into_iter().map(|i| af.nodes()[i].clone()).collect())
        .collect();
    all_max_extensions.sort();
    SelectionResult {
        pursued: all_max_extensions.first().cloned().unwrap_or_default(),
        winning_utility: Rational::from_big(BigRational::new(best, denom)),
        all_max_extensions,
        cf_count,
    }
}
