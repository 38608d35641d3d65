//! Seeded random frameworks and goal scenarios.

use std::collections::BTreeSet;

use goalarg::goal_graph::{GoalAttackDecl, Raw};
use goalarg::instrumental::{InstrumentalArgDecl, LabeledAttack};
use goalarg::{
    AbstractAf, GeneralAf, GoalAf, GoalDecl, GoalId, IncompatibilityKind, KindSet, PlanId, Rational,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::oracle::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> Graph {
    let n = rng.gen_range(0..=max_nodes);
    let density = *[0.08, 0.15, 0.25, 0.4, 0.6].choose(rng).unwrap();
    let mut attacks = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(density) {
                attacks.push((a, b));
            }
        }
    }
    Graph { n, attacks }
}

pub fn to_af(graph: &Graph) -> AbstractAf<usize> {
    AbstractAf::new(0..graph.n, graph.attacks.iter().copied())
        .expect("generated framework is valid")
}

fn random_kinds(rng: &mut ChaCha8Rng) -> KindSet {
    loop {
        let kinds: KindSet = IncompatibilityKind::ALL
            .into_iter()
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        if !kinds.is_empty() {
            return kinds;
        }
    }
}

pub fn goal_id(i: usize) -> GoalId {
    GoalId::from(format!("g{:02}", i + 1))
}

/// A random goal scenario: goals with preferences `k/1000`, the integer
/// numerators (for the oracle), main goals, and its raw goal framework.
pub struct GoalScenario {
    pub goals: Vec<GoalDecl>,
    pub weights: Vec<u64>,
    pub main: BTreeSet<GoalId>,
    pub raw: GoalAf<Raw>,
    pub general: Option<GeneralAf>,
}

fn random_goals(rng: &mut ChaCha8Rng, n: usize) -> (Vec<GoalDecl>, Vec<u64>) {
    // A small pool makes equal preferences, and so ties, common.
    let pool: Vec<u64> = (0..4).map(|_| rng.gen_range(1..=1000)).collect();
    let weights: Vec<u64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                *pool.choose(rng).unwrap()
            } else {
                rng.gen_range(1..=1000)
            }
        })
        .collect();
    let goals = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| GoalDecl {
            id: goal_id(i),
            predicate: format!("achieve(t{i})"),
            preference: Rational::new(w as i64, 1000),
        })
        .collect();
    (goals, weights)
}

/// Goal attacks given directly, one labeled symmetric pair at a time.
pub fn random_direct_scenario(rng: &mut ChaCha8Rng, max_goals: usize) -> GoalScenario {
    let n = rng.gen_range(1..=max_goals);
    let (goals, weights) = random_goals(rng, n);
    let density = *[0.1, 0.2, 0.35, 0.5].choose(rng).unwrap();
    let mut attacks = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(density) {
                let kinds = random_kinds(rng);
                attacks.push(GoalAttackDecl {
                    from: goal_id(a),
                    to: goal_id(b),
                    kinds: kinds.clone(),
                });
                attacks.push(GoalAttackDecl {
                    from: goal_id(b),
                    to: goal_id(a),
                    kinds,
                });
            }
        }
    }
    let main = goals
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .map(|g| g.id.clone())
        .collect();
    let (raw, warnings) =
        GoalAf::from_goal_attacks(goals.clone(), attacks).expect("valid goal attacks");
    assert!(warnings.is_empty());
    GoalScenario {
        goals,
        weights,
        main,
        raw,
        general: None,
    }
}

/// Plans attached to goals, with symmetric labeled plan attacks; goal
/// attacks are then derived.
pub fn random_general_scenario(rng: &mut ChaCha8Rng, max_goals: usize) -> GoalScenario {
    let n = rng.gen_range(1..=max_goals);
    let (goals, weights) = random_goals(rng, n);
    let mut args = Vec::new();
    for i in 0..n {
        for k in 0..rng.gen_range(1..=2) {
            args.push(InstrumentalArgDecl {
                id: PlanId::from(format!("P{i}_{k}")),
                claim: goal_id(i),
                sub_args: BTreeSet::new(),
            });
        }
    }
    let density = *[0.3, 0.5, 0.7].choose(rng).unwrap();
    let mut attacks = Vec::new();
    for (i, a) in args.iter().enumerate() {
        for b in &args[i + 1..] {
            if a.claim != b.claim && rng.gen_bool(density) {
                let kinds = random_kinds(rng);
                attacks.push(LabeledAttack {
                    from: a.id.clone(),
                    to: b.id.clone(),
                    kinds: kinds.clone(),
                });
                attacks.push(LabeledAttack {
                    from: b.id.clone(),
                    to: a.id.clone(),
                    kinds,
                });
            }
        }
    }
    let main = goals
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .map(|g| g.id.clone())
        .collect();
    let general = GeneralAf::new(goals.clone(), args, attacks).expect("valid general framework");
    let raw = GoalAf::derive(&general);
    GoalScenario {
        goals,
        weights,
        main,
        raw,
        general: Some(general),
    }
}

/// The filtered goal framework as an oracle graph over goal indices.
pub fn goal_graph<S: goalarg::goal_graph::Stage>(gaf: &GoalAf<S>) -> Graph {
    let ids: Vec<&GoalId> = gaf.goals().keys().collect();
    let index = |g: &GoalId| ids.iter().position(|x| *x == g).unwrap();
    Graph {
        n: ids.len(),
        attacks: gaf
            .attacks()
            .keys()
            .map(|(a, b)| (index(a), index(b)))
            .collect(),
    }
}
