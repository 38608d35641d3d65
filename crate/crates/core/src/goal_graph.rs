//! Goal-level argumentation framework.
//!
//! Goal `g` attacks goal `g'` when every plan for `g` conflicts (in either
//! direction) with every plan for `g'`. Both goals need at least one plan;
//! a goal without plans takes part in no attack. The raw relation is
//! symmetric; [`GoalAf::apply_successful_attacks`] then keeps only the
//! direction from the strictly preferred goal, leaving ties symmetric.

use std::collections::{BTreeMap, BTreeSet};
use std::marker::PhantomData;

use serde::Serialize;

use crate::af::AbstractAf;
use crate::instrumental::{
    collect_goals, GeneralAf, GoalDecl, GoalId, KindSet, ValidationErrors, Violation,
    ViolationKind, Warning,
};
use crate::rational::Rational;

/// Stage marker: symmetric attacks straight from the goal-attack definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Raw;

/// Stage marker: attacks filtered down to successful ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filtered;

pub trait Stage {
    const NAME: &'static str;
}

impl Stage for Raw {
    const NAME: &'static str = "raw";
}

impl Stage for Filtered {
    const NAME: &'static str = "successful-filtered";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalAttackDecl {
    pub from: GoalId,
    pub to: GoalId,
    pub kinds: KindSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalAf<S> {
    goals: BTreeMap<GoalId, GoalDecl>,
    /// Attack pairs with their incompatibility labels.
    attacks: BTreeMap<(GoalId, GoalId), KindSet>,
    stage: PhantomData<S>,
}

impl<S: Stage> GoalAf<S> {
    pub fn stage(&self) -> &'static str {
        S::NAME
    }

    pub fn goals(&self) -> &BTreeMap<GoalId, GoalDecl> {
        &self.goals
    }

    pub fn goal(&self, id: &GoalId) -> Option<&GoalDecl> {
        self.goals.get(id)
    }

    pub fn contains_goal(&self, id: &GoalId) -> bool {
        self.goals.contains_key(id)
    }

    pub fn attacks(&self) -> &BTreeMap<(GoalId, GoalId), KindSet> {
        &self.attacks
    }

    pub fn has_attack(&self, from: &GoalId, to: &GoalId) -> bool {
        self.attacks.contains_key(&(from.clone(), to.clone()))
    }

    /// Incompatibility labels of an attack pair.
    pub fn incomp(&self, from: &GoalId, to: &GoalId) -> Option<&KindSet> {
        self.attacks.get(&(from.clone(), to.clone()))
    }

    pub fn pref(&self, goal: &GoalId) -> Option<&Rational> {
        self.goals.get(goal).map(|g| &g.preference)
    }

    /// Undirected conflict pairs, each as `(smaller id, larger id)`.
    pub fn conflict_pairs(&self) -> BTreeSet<(GoalId, GoalId)> {
        self.attacks
            .keys()
            .map(|(a, b)| {
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect()
    }

    pub fn to_abstract(&self) -> AbstractAf<GoalId> {
        AbstractAf::new(self.goals.keys().cloned(), self.attacks.keys().cloned())
            .expect("goal attacks are validated on construction")
    }
}

impl GoalAf<Raw> {
    /// Lifts the plan-level attack relation to goals.
    pub fn derive(general: &GeneralAf) -> GoalAf<Raw> {
        let plans: BTreeMap<&GoalId, BTreeSet<_>> = general
            .goals()
            .keys()
            .map(|g| {
                let args = general.args_for_goal(g).expect("goal is declared");
                (g, args)
            })
            .collect();

        let mut attacks = BTreeMap::new();
        for (g, g_plans) in &plans {
            for (h, h_plans) in &plans {
                if g == h || g_plans.is_empty() || h_plans.is_empty() {
                    continue;
                }
                let mut labels = KindSet::new();
                let all_conflict = g_plans.iter().all(|a| {
                    h_plans.iter().all(|b| {
                        let forward = general.label(a, b);
                        let backward = general.label(b, a);
                        for kinds in forward.iter().chain(backward.iter()) {
                            labels.extend(kinds);
                        }
                        forward.is_some() || backward.is_some()
                    })
                });
                if all_conflict {
                    attacks.insert(((*g).clone(), (*h).clone()), labels);
                }
            }
        }
        GoalAf {
            goals: general.goals().clone(),
            attacks,
            stage: PhantomData,
        }
    }

    /// Builds the raw framework from directly specified goal attacks.
    ///
    /// A pair given in only one direction gets its reverse added with the
    /// same labels; when both directions are given their labels are merged.
    pub fn from_goal_attacks(
        goals: Vec<GoalDecl>,
        goal_attacks: Vec<GoalAttackDecl>,
    ) -> Result<(GoalAf<Raw>, Vec<Warning>), ValidationErrors> {
        let mut violations = Vec::new();
        let goals = collect_goals(goals, &mut violations);
        let mut given: BTreeMap<(GoalId, GoalId), KindSet> = BTreeMap::new();
        for (i, attack) in goal_attacks.into_iter().enumerate() {
            let location = format!("goal_attacks[{i}]");
            let before = violations.len();
            for end in [&attack.from, &attack.to] {
                if !goals.contains_key(end) {
                    violations.push(Violation {
                        location: location.clone(),
                        kind: ViolationKind::UnknownGoalEndpoint(end.clone()),
                    });
                }
            }
            if attack.from == attack.to {
                violations.push(Violation {
                    location: location.clone(),
                    kind: ViolationKind::GoalSelfAttack(attack.from.clone()),
                });
            }
            if attack.kinds.is_empty() {
                violations.push(Violation {
                    location: location.clone(),
                    kind: ViolationKind::EmptyGoalLabelSet(attack.from.clone(), attack.to.clone()),
                });
            }
            let key = (attack.from.clone(), attack.to.clone());
            if given.contains_key(&key) {
                violations.push(Violation {
                    location,
                    kind: ViolationKind::DuplicateGoalAttack(attack.from, attack.to),
                });
                continue;
            }
            if violations.len() == before {
                given.insert(key, attack.kinds);
            }
        }
        if !violations.is_empty() {
            return Err(ValidationErrors(violations));
        }

        let mut warnings = Vec::new();
        let mut attacks = BTreeMap::new();
        for ((from, to), kinds) in &given {
            let mut labels = kinds.clone();
            match given.get(&(to.clone(), from.clone())) {
                Some(reverse) => labels.extend(reverse),
                None => warnings.push(Warning::AsymmetricGoalAttack {
                    from: from.clone(),
                    to: to.clone(),
                }),
            }
            attacks.insert((from.clone(), to.clone()), labels.clone());
            attacks.insert((to.clone(), from.clone()), labels);
        }
        Ok((
            GoalAf {
                goals,
                attacks,
                stage: PhantomData,
            },
            warnings,
        ))
    }

    /// Keeps `(g, g')` only if `g` is strictly preferred to `g'`; pairs with
    /// equal preference keep both directions.
    pub fn apply_successful_attacks(&self) -> GoalAf<Filtered> {
        let attacks = self
            .attacks
            .iter()
            .filter(|((g, h), _)| self.goals[g].preference >= self.goals[h].preference)
            .map(|(pair, kinds)| (pair.clone(), kinds.clone()))
            .collect();
        GoalAf {
            goals: self.goals.clone(),
            attacks,
            stage: PhantomData,
        }
    }
}

#[derive(Serialize)]
struct AttackView<'a> {
    from: &'a GoalId,
    to: &'a GoalId,
    kinds: &'a KindSet,
}

impl<S: Stage> Serialize for GoalAf<S> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("GoalAf", 3)?;
        st.serialize_field("stage", S::NAME)?;
        st.serialize_field("goals", &self.goals.values().collect::<Vec<_>>())?;
        st.serialize_field(
            "attacks",
            &self
                .attacks
                .iter()
                .map(|((from, to), kinds)| AttackView { from, to, kinds })
                .collect::<Vec<_>>(),
        )?;
        st.end()
    }
}
