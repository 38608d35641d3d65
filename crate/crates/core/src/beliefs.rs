//! Ground beliefs describing the filtered goal framework and the selection
//! outcome. These are the only facts the explanatory rules consume.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::goal_graph::{Filtered, GoalAf};
use crate::instrumental::{GoalId, KindSet};
use crate::selection::SelectionResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BeliefId(pub usize);

impl fmt::Display for BeliefId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum BeliefAtom {
    NotIncomp {
        goal: GoalId,
    },
    Pref {
        x: GoalId,
        y: GoalId,
    },
    NotPref {
        x: GoalId,
        y: GoalId,
    },
    EqPref {
        x: GoalId,
        y: GoalId,
    },
    Incompat {
        x: GoalId,
        y: GoalId,
        labels: KindSet,
    },
    MaxUtil {
        goal: GoalId,
    },
    NotMaxUtil {
        goal: GoalId,
    },
}

impl BeliefAtom {
    /// Predicate name and polarity, e.g. `("pref", false)` for `¬pref`.
    pub fn predicate(&self) -> (&'static str, bool) {
        match self {
            BeliefAtom::NotIncomp { .. } => ("incomp", false),
            BeliefAtom::Pref { .. } => ("pref", true),
            BeliefAtom::NotPref { .. } => ("pref", false),
            BeliefAtom::EqPref { .. } => ("eq_pref", true),
            BeliefAtom::Incompat { .. } => ("incompat", true),
            BeliefAtom::MaxUtil { .. } => ("max_util", true),
            BeliefAtom::NotMaxUtil { .. } => ("max_util", false),
        }
    }

    /// The atom with its polarity flipped, where that atom is expressible.
    pub fn negation(&self) -> Option<BeliefAtom> {
        match self.clone() {
            BeliefAtom::Pref { x, y } => Some(BeliefAtom::NotPref { x, y }),
            BeliefAtom::NotPref { x, y } => Some(BeliefAtom::Pref { x, y }),
            BeliefAtom::MaxUtil { goal } => Some(BeliefAtom::NotMaxUtil { goal }),
            BeliefAtom::NotMaxUtil { goal } => Some(BeliefAtom::MaxUtil { goal }),
            _ => None,
        }
    }
}

impl fmt::Display for BeliefAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeliefAtom::NotIncomp { goal } => write!(f, "¬incomp({goal})"),
            BeliefAtom::Pref { x, y } => write!(f, "pref({x},{y})"),
            BeliefAtom::NotPref { x, y } => write!(f, "¬pref({x},{y})"),
            BeliefAtom::EqPref { x, y } => write!(f, "eq_pref({x},{y})"),
            BeliefAtom::Incompat { x, y, labels } => write!(f, "incompat({x},{y},'{labels}')"),
            BeliefAtom::MaxUtil { goal } => write!(f, "max_util({goal})"),
            BeliefAtom::NotMaxUtil { goal } => write!(f, "¬max_util({goal})"),
        }
    }
}

/// Which generation step produced a belief, in generation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    NoConflict,
    StrictPreference,
    EqualPreference,
    Incompatibility,
    MaxUtility,
    NotMaxUtility,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::NoConflict => "no-conflict",
            Provenance::StrictPreference => "strict-preference",
            Provenance::EqualPreference => "equal-preference",
            Provenance::Incompatibility => "incompatibility",
            Provenance::MaxUtility => "max-utility",
            Provenance::NotMaxUtility => "not-max-utility",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Belief {
    pub id: BeliefId,
    pub atom: BeliefAtom,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct BeliefSet {
    beliefs: Vec<Belief>,
}

impl BeliefSet {
    /// Builds a set from atoms, numbering them `b1, b2, ...` in order.
    /// Repeated atoms are kept once.
    pub fn from_atoms(atoms: impl IntoIterator<Item = (BeliefAtom, Provenance)>) -> Self {
        let mut set = BeliefSet::default();
        for (atom, provenance) in atoms {
            set.push(atom, provenance);
        }
        set
    }

    fn push(&mut self, atom: BeliefAtom, provenance: Provenance) {
        if self.find(&atom).is_none() {
            let id = BeliefId(self.beliefs.len() + 1);
            self.beliefs.push(Belief {
                id,
                atom,
                provenance,
            });
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Belief> {
        self.beliefs.iter()
    }

    pub fn len(&self) -> usize {
        self.beliefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beliefs.is_empty()
    }

    pub fn get(&self, id: BeliefId) -> Option<&Belief> {
        id.0.checked_sub(1).and_then(|i| self.beliefs.get(i))
    }

    pub fn find(&self, atom: &BeliefAtom) -> Option<&Belief> {
        self.beliefs.iter().find(|b| &b.atom == atom)
    }

    pub fn contains(&self, atom: &BeliefAtom) -> bool {
        self.find(atom).is_some()
    }

    pub fn atoms(&self) -> BTreeSet<BeliefAtom> {
        self.beliefs.iter().map(|b| b.atom.clone()).collect()
    }

    /// True if some atom and its negation are both present.
    pub fn is_contradictory(&self) -> bool {
        self.beliefs
            .iter()
            .filter_map(|b| b.atom.negation())
            .any(|neg| self.contains(&neg))
    }
}

/// Goals with no incident attack in either direction.
pub fn comps(gaf: &GoalAf<Filtered>) -> BTreeSet<GoalId> {
    let touched: BTreeSet<&GoalId> = gaf.attacks().keys().flat_map(|(a, b)| [a, b]).collect();
    gaf.goals()
        .keys()
        .filter(|g| !touched.contains(g))
        .cloned()
        .collect()
}

/// Attack pairs whose reverse is absent.
pub fn eval_pref(gaf: &GoalAf<Filtered>) -> BTreeSet<(GoalId, GoalId)> {
    gaf.attacks()
        .keys()
        .filter(|(a, b)| !gaf.has_attack(b, a))
        .cloned()
        .collect()
}

/// Generates the belief set in step order: no-conflict, strict preference,
/// equal preference, incompatibility, max-utility, not-max-utility; within
/// a step by sorted goal ids.
pub fn generate_beliefs(gaf: &GoalAf<Filtered>, selection: &SelectionResult) -> BeliefSet {
    let mut atoms = Vec::new();

    for goal in comps(gaf) {
        atoms.push((BeliefAtom::NotIncomp { goal }, Provenance::NoConflict));
    }

    let strict = eval_pref(gaf);
    for (x, y) in &strict {
        if gaf.pref(x) > gaf.pref(y) {
            atoms.push((
                BeliefAtom::Pref {
                    x: x.clone(),
                    y: y.clone(),
                },
                Provenance::StrictPreference,
            ));
            atoms.push((
                BeliefAtom::NotPref {
                    x: y.clone(),
                    y: x.clone(),
                },
                Provenance::StrictPreference,
            ));
        }
    }

    for (x, y) in gaf.attacks().keys().filter(|pair| !strict.contains(*pair)) {
        atoms.push((
            BeliefAtom::EqPref {
                x: x.clone(),
                y: y.clone(),
            },
            Provenance::EqualPreference,
        ));
    }

    for ((x, y), labels) in gaf.attacks() {
        atoms.push((
            BeliefAtom::Incompat {
                x: x.clone(),
                y: y.clone(),
                labels: labels.clone(),
            },
            Provenance::Incompatibility,
        ));
    }

    for goal in gaf.goals().keys() {
        if selection.pursued.contains(goal) {
            atoms.push((
                BeliefAtom::MaxUtil { goal: goal.clone() },
                Provenance::MaxUtility,
            ));
        }
    }
    for goal in gaf.goals().keys() {
        if !selection.pursued.contains(goal) {
            atoms.push((
                BeliefAtom::NotMaxUtil { goal: goal.clone() },
                Provenance::NotMaxUtility,
            ));
        }
    }

    BeliefSet::from_atoms(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goal_graph::GoalAttackDecl;
    use crate::instrumental::{GoalDecl, IncompatibilityKind};
    use crate::selection::{select, UtilityFunction};

    fn gaf(goals: &[(&str, &str)], attacks: &[(&str, &str)]) -> GoalAf<Filtered> {
        let goals = goals
            .iter()
            .map(|(id, p)| GoalDecl {
                id: (*id).into(),
                predicate: id.to_string(),
                preference: p.parse().unwrap(),
            })
            .collect();
        let attacks = attacks
            .iter()
            .map(|(a, b)| GoalAttackDecl {
                from: (*a).into(),
                to: (*b).into(),
                kinds: [IncompatibilityKind::Superfluity].into_iter().collect(),
            })
            .collect();
        GoalAf::from_goal_attacks(goals, attacks)
            .unwrap()
            .0
            .apply_successful_attacks()
    }

    fn g(s: &str) -> GoalId {
        s.into()
    }

    #[test]
    fn comps_cases() {
        let loose = gaf(&[("a", "0.5"), ("b", "0.6")], &[]);
        assert_eq!(comps(&loose), [g("a"), g("b")].into_iter().collect());
        let tight = gaf(&[("a", "0.5"), ("b", "0.6")], &[("a", "b")]);
        assert!(comps(&tight).is_empty());
    }

    #[test]
    fn eval_pref_cases() {
        let tied = gaf(&[("a", "0.5"), ("b", "0.5")], &[("a", "b")]);
        assert!(eval_pref(&tied).is_empty());
        let directed = gaf(&[("a", "0.7"), ("b", "0.5")], &[("a", "b")]);
        assert_eq!(
            eval_pref(&directed),
            [(g("a"), g("b"))].into_iter().collect()
        );
    }

    #[test]
    fn empty_framework_no_beliefs() {
        let empty = gaf(&[], &[]);
        let sel = select(&empty, &UtilityFunction::SumAll);
        assert!(generate_beliefs(&empty, &sel).is_empty());
    }

    #[test]
    fn isolated_pursued_goal() {
        let one = gaf(&[("g", "0.4")], &[]);
        let sel = select(&one, &UtilityFunction::SumAll);
        let beliefs = generate_beliefs(&one, &sel);
        assert_eq!(
            beliefs.atoms(),
            [
                BeliefAtom::NotIncomp { goal: g("g") },
                BeliefAtom::MaxUtil { goal: g("g") }
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(
            beliefs.get(BeliefId(1)).unwrap().provenance,
            Provenance::NoConflict
        );
    }

    #[test]
    fn ties_produce_eq_pref_both_ways() {
        let tied = gaf(&[("a", "0.5"), ("b", "0.5")], &[("a", "b")]);
        let sel = select(&tied, &UtilityFunction::SumAll);
        let beliefs = generate_beliefs(&tied, &sel);
        assert!(beliefs.contains(&BeliefAtom::EqPref {
            x: g("a"),
            y: g("b")
        }));
        assert!(beliefs.contains(&BeliefAtom::EqPref {
            x: g("b"),
            y: g("a")
        }));
        // 2 eq_pref + 2 incompat + one max_util + one not_max_util
        assert_eq!(beliefs.len(), 6);
        assert!(!beliefs.is_contradictory());
    }

    #[test]
    fn strict_pair_beliefs() {
        let directed = gaf(&[("a", "0.7"), ("b", "0.5")], &[("a", "b")]);
        let sel = select(&directed, &UtilityFunction::SumAll);
        let beliefs = generate_beliefs(&directed, &sel);
        let rendered: Vec<String> = beliefs
            .iter()
            .map(|b| format!("{}: {}", b.id, b.atom))
            .collect();
        assert_eq!(
            rendered,
            vec![
                "b1: pref(a,b)",
                "b2: ¬pref(b,a)",
                "b3: incompat(a,b,'s')",
                "b4: max_util(a)",
                "b5: ¬max_util(b)",
            ]
        );
    }
}
