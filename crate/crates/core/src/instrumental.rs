//! General argumentation framework over instrumental arguments (plans),
//! with every attack labeled by the kinds of incompatibility behind it.
//!
//! The framework is input data: it is validated here, never computed from
//! plan bodies or resources.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

/// Identifier of a pursuable goal (`g1`, `g2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GoalId(pub String);

/// Identifier of an instrumental argument (`A`, `B`, ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlanId(pub String);

macro_rules! string_id {
    ($ty:ident) => {
        impl $ty {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty(s.to_string())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                $ty(s)
            }
        }
    };
}

string_id!(GoalId);
string_id!(PlanId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IncompatibilityKind {
    #[serde(rename = "t")]
    Terminal,
    #[serde(rename = "r")]
    Resource,
    #[serde(rename = "s")]
    Superfluity,
}

impl IncompatibilityKind {
    pub const ALL: [IncompatibilityKind; 3] = [
        IncompatibilityKind::Terminal,
        IncompatibilityKind::Resource,
        IncompatibilityKind::Superfluity,
    ];

    pub fn letter(self) -> char {
        match self {
            IncompatibilityKind::Terminal => 't',
            IncompatibilityKind::Resource => 'r',
            IncompatibilityKind::Superfluity => 's',
        }
    }
}

/// A set of incompatibility kinds. Displays in the fixed order `t,r,s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KindSet(BTreeSet<IncompatibilityKind>);

impl KindSet {
    pub fn new() -> Self {
        KindSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, kind: IncompatibilityKind) -> bool {
        self.0.contains(&kind)
    }

    pub fn insert(&mut self, kind: IncompatibilityKind) {
        self.0.insert(kind);
    }

    pub fn extend(&mut self, other: &KindSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn iter(&self) -> impl Iterator<Item = IncompatibilityKind> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<IncompatibilityKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = IncompatibilityKind>>(iter: I) -> Self {
        KindSet(iter.into_iter().collect())
    }
}

impl fmt::Display for KindSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.iter().map(|k| k.letter().to_string()).collect();
        f.write_str(&letters.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoalDecl {
    pub id: GoalId,
    /// Display form of the goal, e.g. `clean(5,5)`.
    pub predicate: String,
    pub preference: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstrumentalArgDecl {
    pub id: PlanId,
    pub claim: GoalId,
    pub sub_args: BTreeSet<PlanId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledAttack {
    pub from: PlanId,
    pub to: PlanId,
    pub kinds: KindSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicateGoal(GoalId),
    DuplicatePlan(PlanId),
    DuplicateAttack(PlanId, PlanId),
    EmptyPredicate(GoalId),
    PreferenceOutOfRange(GoalId, Rational),
    UnknownClaim { plan: PlanId, goal: GoalId },
    UnknownSubArgument { plan: PlanId, sub: PlanId },
    CyclicSubArguments(Vec<PlanId>),
    UnknownAttackEndpoint(PlanId),
    SelfAttack(PlanId),
    EmptyLabelSet(PlanId, PlanId),
    UnknownGoalEndpoint(GoalId),
    GoalSelfAttack(GoalId),
    EmptyGoalLabelSet(GoalId, GoalId),
    DuplicateGoalAttack(GoalId, GoalId),
    InvalidPreference(GoalId, String),
    UnknownMainGoal(GoalId),
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ViolationKind::*;
        match self {
            DuplicateGoal(g) => write!(f, "duplicate goal id `{g}`"),
            DuplicatePlan(a) => write!(f, "duplicate argument id `{a}`"),
            DuplicateAttack(a, b) => write!(f, "attack ({a}, {b}) declared more than once"),
            EmptyPredicate(g) => write!(f, "goal `{g}` has an empty predicate"),
            PreferenceOutOfRange(g, p) => {
                write!(f, "preference {p} of goal `{g}` is outside (0, 1]")
            }
            UnknownClaim { plan, goal } => {
                write!(f, "argument `{plan}` claims undeclared goal `{goal}`")
            }
            UnknownSubArgument { plan, sub } => {
                write!(f, "argument `{plan}` lists undeclared sub-argument `{sub}`")
            }
            CyclicSubArguments(cycle) => {
                let ids: Vec<&str> = cycle.iter().map(PlanId::as_str).collect();
                write!(f, "sub-argument cycle {}", ids.join(" -> "))
            }
            UnknownAttackEndpoint(a) => write!(f, "attack references undeclared argument `{a}`"),
            SelfAttack(a) => write!(f, "argument `{a}` attacks itself"),
            EmptyLabelSet(a, b) => write!(f, "attack ({a}, {b}) has an empty label set"),
            UnknownGoalEndpoint(g) => write!(f, "goal attack references undeclared goal `{g}`"),
            GoalSelfAttack(g) => write!(f, "goal `{g}` attacks itself"),
            EmptyGoalLabelSet(a, b) => write!(f, "goal attack ({a}, {b}) has an empty label set"),
            DuplicateGoalAttack(a, b) => {
                write!(f, "goal attack ({a}, {b}) declared more than once")
            }
            InvalidPreference(g, text) => {
                write!(f, "preference `{text}` of goal `{g}` is not a number")
            }
            UnknownMainGoal(g) => write!(f, "main goal `{g}` is not declared"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Where in the input the problem sits, e.g. `attacks[3]`.
    pub location: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationErrors(pub Vec<Violation>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Non-fatal findings about an otherwise valid framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// `(from, to)` is labeled but `(to, from)` is not.
    AsymmetricAttack { from: PlanId, to: PlanId },
    /// Both directions exist with different label sets.
    AsymmetricLabels { from: PlanId, to: PlanId },
    /// A directly specified goal attack without its reverse; the reverse
    /// is added with the same labels.
    AsymmetricGoalAttack { from: GoalId, to: GoalId },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::AsymmetricAttack { from, to } => {
                write!(f, "attack ({from}, {to}) has no reverse ({to}, {from})")
            }
            Warning::AsymmetricLabels { from, to } => {
                write!(
                    f,
                    "attacks ({from}, {to}) and ({to}, {from}) carry different labels"
                )
            }
            Warning::AsymmetricGoalAttack { from, to } => {
                write!(
                    f,
                    "goal attack ({from}, {to}) has no reverse; treating it as symmetric"
                )
            }
        }
    }
}

pub(crate) fn check_goal(goal: &GoalDecl, location: String, out: &mut Vec<Violation>) {
    if goal.predicate.trim().is_empty() {
        out.push(Violation {
            location: location.clone(),
            kind: ViolationKind::EmptyPredicate(goal.id.clone()),
        });
    }
    if !goal.preference.is_positive() || goal.preference > Rational::one() {
        out.push(Violation {
            location,
            kind: ViolationKind::PreferenceOutOfRange(goal.id.clone(), goal.preference.clone()),
        });
    }
}

pub(crate) fn collect_goals(
    goals: Vec<GoalDecl>,
    violations: &mut Vec<Violation>,
) -> BTreeMap<GoalId, GoalDecl> {
    let mut by_id = BTreeMap::new();
    for (i, goal) in goals.into_iter().enumerate() {
        let location = format!("goals[{i}]");
        check_goal(&goal, location.clone(), violations);
        if by_id.contains_key(&goal.id) {
            violations.push(Violation {
                location,
                kind: ViolationKind::DuplicateGoal(goal.id.clone()),
            });
            continue;
        }
        by_id.insert(goal.id.clone(), goal);
    }
    by_id
}

/// A validated general argumentation framework.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralAf {
    goals: BTreeMap<GoalId, GoalDecl>,
    args: BTreeMap<PlanId, InstrumentalArgDecl>,
    #[serde(serialize_with = "serialize_attacks")]
    attacks: BTreeMap<(PlanId, PlanId), KindSet>,
}

fn serialize_attacks<S: serde::Serializer>(
    attacks: &BTreeMap<(PlanId, PlanId), KindSet>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(attacks.iter().map(|((from, to), kinds)| LabeledAttack {
        from: from.clone(),
        to: to.clone(),
        kinds: kinds.clone(),
    }))
}

impl GeneralAf {
    /// Checks every structural invariant and returns the framework, or all
    /// the violations found.
    pub fn new(
        goals: Vec<GoalDecl>,
        args: Vec<InstrumentalArgDecl>,
        attacks: Vec<LabeledAttack>,
    ) -> Result<Self, ValidationErrors> {
        let mut violations = Vec::new();
        let goals = collect_goals(goals, &mut violations);

        let mut by_id: BTreeMap<PlanId, InstrumentalArgDecl> = BTreeMap::new();
        for (i, arg) in args.into_iter().enumerate() {
            let location = format!("arguments[{i}]");
            if !goals.contains_key(&arg.claim) {
                violations.push(Violation {
                    location: location.clone(),
                    kind: ViolationKind::UnknownClaim {
                        plan: arg.id.clone(),
                        goal: arg.claim.clone(),
                    },
                });
            }
            if by_id.contains_key(&arg.id) {
                violations.push(Violation {
                    location,
                    kind: ViolationKind::DuplicatePlan(arg.id.clone()),
                });
                continue;
            }
            by_id.insert(arg.id.clone(), arg);
        }
        for arg in by_id.values() {
            for sub in &arg.sub_args {
                if !by_id.contains_key(sub) {
                    violations.push(Violation {
                        location: format!("arguments[{}]", arg.id),
                        kind: ViolationKind::UnknownSubArgument {
                            plan: arg.id.clone(),
                            sub: sub.clone(),
                        },
                    });
                }
            }
        }
        if let Some(cycle) = find_sub_argument_cycle(&by_id) {
            violations.push(Violation {
                location: format!("arguments[{}]", cycle[0]),
                kind: ViolationKind::CyclicSubArguments(cycle),
            });
        }

        let mut labeled = BTreeMap::new();
        for (i, attack) in attacks.into_iter().enumerate() {
            let location = format!("attacks[{i}]");
            let before = violations.len();
            for end in [&attack.from, &attack.to] {
                if !by_id.contains_key(end) {
                    violations.push(Violation {
                        location: location.clone(),
                        kind: ViolationKind::UnknownAttackEndpoint(end.clone()),
                    });
                }
            }
            if attack.from == attack.to {
                violations.push(Violation {
                    location: location.clone(),
                    kind: ViolationKind::SelfAttack(attack.from.clone()),
                });
            }
            if attack.kinds.is_empty() {
                violations.push(Violation {
                    location: location.clone(),
                    kind: ViolationKind::EmptyLabelSet(attack.from.clone(), attack.to.clone()),
                });
            }
            let key = (attack.from.clone(), attack.to.clone());
            if labeled.contains_key(&key) {
                violations.push(Violation {
                    location,
                    kind: ViolationKind::DuplicateAttack(attack.from, attack.to),
                });
                continue;
            }
            if violations.len() == before {
                labeled.insert(key, attack.kinds);
            }
        }

        if violations.is_empty() {
            Ok(GeneralAf {
                goals,
                args: by_id,
                attacks: labeled,
            })
        } else {
            Err(ValidationErrors(violations))
        }
    }

    pub fn goals(&self) -> &BTreeMap<GoalId, GoalDecl> {
        &self.goals
    }

    pub fn arguments(&self) -> &BTreeMap<PlanId, InstrumentalArgDecl> {
        &self.args
    }

    /// The labeling function over the general attack relation.
    pub fn attacks(&self) -> &BTreeMap<(PlanId, PlanId), KindSet> {
        &self.attacks
    }

    pub fn label(&self, from: &PlanId, to: &PlanId) -> Option<&KindSet> {
        self.attacks.get(&(from.clone(), to.clone()))
    }

    /// The attack pairs whose label contains `kind`.
    pub fn relation_of_kind(&self, kind: IncompatibilityKind) -> BTreeSet<(PlanId, PlanId)> {
        self.attacks
            .iter()
            .filter(|(_, kinds)| kinds.contains(kind))
            .map(|(pair, _)| pair.clone())
            .collect()
    }

    /// All instrumental arguments whose claim is `goal`.
    pub fn args_for_goal(&self, goal: &GoalId) -> Result<BTreeSet<PlanId>, UnknownGoal> {
        if !self.goals.contains_key(goal) {
            return Err(UnknownGoal(goal.clone()));
        }
        Ok(self
            .args
            .values()
            .filter(|a| &a.claim == goal)
            .map(|a| a.id.clone())
            .collect())
    }

    /// Goals that are not the claim of any sub-argument.
    pub fn main_goals(&self) -> BTreeSet<GoalId> {
        let sub_claims: BTreeSet<&GoalId> = self
            .args
            .values()
            .flat_map(|a| a.sub_args.iter())
            .filter_map(|sub| self.args.get(sub).map(|s| &s.claim))
            .collect();
        self.goals
            .keys()
            .filter(|g| !sub_claims.contains(g))
            .cloned()
            .collect()
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        for ((from, to), kinds) in &self.attacks {
            match self.attacks.get(&(to.clone(), from.clone())) {
                None => out.push(Warning::AsymmetricAttack {
                    from: from.clone(),
                    to: to.clone(),
                }),
                Some(reverse) if reverse != kinds && from < to => {
                    out.push(Warning::AsymmetricLabels {
                        from: from.clone(),
                        to: to.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown goal `{0}`")]
pub struct UnknownGoal(pub GoalId);

fn find_sub_argument_cycle(args: &BTreeMap<PlanId, InstrumentalArgDecl>) -> Option<Vec<PlanId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    fn visit<'a>(
        id: &'a PlanId,
        args: &'a BTreeMap<PlanId, InstrumentalArgDecl>,
        marks: &mut BTreeMap<&'a PlanId, Mark>,
        path: &mut Vec<&'a PlanId>,
    ) -> Option<Vec<PlanId>> {
        match marks.get(id).copied().unwrap_or(Mark::Fresh) {
            Mark::Done => return None,
            Mark::Active => {
                let start = path.iter().position(|p| *p == id).unwrap_or(0);
                let mut cycle: Vec<PlanId> = path[start..].iter().map(|p| (*p).clone()).collect();
                cycle.push(id.clone());
                return Some(cycle);
            }
            Mark::Fresh => {}
        }
        marks.insert(id, Mark::Active);
        path.push(id);
        if let Some(arg) = args.get(id) {
            for sub in &arg.sub_args {
                if args.contains_key(sub) {
                    if let Some(cycle) = visit(sub, args, marks, path) {
                        return Some(cycle);
                    }
                }
            }
        }
        path.pop();
        marks.insert(id, Mark::Done);
        None
    }

    let mut marks = BTreeMap::new();
    for id in args.keys() {
        let mut path = Vec::new();
        if let Some(cycle) = visit(id, args, &mut marks, &mut path) {
            return Some(cycle);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use IncompatibilityKind::*;

    fn goal(id: &str, pred: &str, pref: &str) -> GoalDecl {
        GoalDecl {
            id: id.into(),
            predicate: pred.into(),
            preference: pref.parse().unwrap(),
        }
    }

    fn plan(id: &str, claim: &str, subs: &[&str]) -> InstrumentalArgDecl {
        InstrumentalArgDecl {
            id: id.into(),
            claim: claim.into(),
            sub_args: subs.iter().map(|s| PlanId::from(*s)).collect(),
        }
    }

    fn attack(from: &str, to: &str, kinds: &[IncompatibilityKind]) -> LabeledAttack {
        LabeledAttack {
            from: from.into(),
            to: to.into(),
            kinds: kinds.iter().copied().collect(),
        }
    }

    fn small() -> (Vec<GoalDecl>, Vec<InstrumentalArgDecl>) {
        (
            vec![
                goal("g1", "clean(5,5)", "0.8"),
                goal("g2", "pickup(5,5)", "0.6"),
            ],
            vec![
                plan("A", "g1", &["E"]),
                plan("E", "g2", &[]),
                plan("C", "g1", &[]),
            ],
        )
    }

    #[test]
    fn kind_sets_display_in_fixed_order() {
        let ks: KindSet = [Superfluity, Terminal, Resource].into_iter().collect();
        assert_eq!(ks.to_string(), "t,r,s");
        let ks: KindSet = [Resource, Terminal].into_iter().collect();
        assert_eq!(ks.to_string(), "t,r");
    }

    #[test]
    fn dangling_attack_is_named() {
        let (goals, args) = small();
        let err = GeneralAf::new(goals, args, vec![attack("A", "Z", &[Terminal])]).unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!(
            err.0[0].kind,
            ViolationKind::UnknownAttackEndpoint("Z".into())
        );
        assert!(err.to_string().contains("`Z`"));
        assert_eq!(err.0[0].location, "attacks[0]");
    }

    #[test]
    fn empty_label_set_rejected() {
        let (goals, args) = small();
        let err = GeneralAf::new(goals, args, vec![attack("A", "C", &[])]).unwrap_err();
        assert_eq!(
            err.0[0].kind,
            ViolationKind::EmptyLabelSet("A".into(), "C".into())
        );
    }

    #[test]
    fn duplicates_and_cycles_rejected() {
        let goals = vec![goal("g1", "a", "0.5"), goal("g1", "b", "0.5")];
        let args = vec![
            plan("A", "g1", &["B"]),
            plan("B", "g1", &["A"]),
            plan("B", "g1", &[]),
        ];
        let err = GeneralAf::new(goals, args, vec![]).unwrap_err();
        let kinds: Vec<_> = err.0.iter().map(|v| &v.kind).collect();
        assert!(kinds.contains(&&ViolationKind::DuplicateGoal("g1".into())));
        assert!(kinds.contains(&&ViolationKind::DuplicatePlan("B".into())));
        assert!(kinds
            .iter()
            .any(|k| matches!(k, ViolationKind::CyclicSubArguments(c) if c.len() == 3)));
    }

    #[test]
    fn bad_goal_fields_rejected() {
        let goals = vec![
            goal("g1", " ", "0.5"),
            goal("g2", "x", "0"),
            goal("g3", "y", "1.5"),
        ];
        let err = GeneralAf::new(goals, vec![], vec![]).unwrap_err();
        assert_eq!(err.0.len(), 3);
        // 1 itself is allowed
        assert!(GeneralAf::new(vec![goal("g1", "x", "1")], vec![], vec![]).is_ok());
    }

    #[test]
    fn self_attack_and_unknown_claim_rejected() {
        let (goals, mut args) = small();
        args.push(plan("Q", "g9", &["nope"]));
        let err = GeneralAf::new(goals, args, vec![attack("A", "A", &[Terminal])]).unwrap_err();
        let kinds: Vec<_> = err.0.iter().map(|v| v.kind.clone()).collect();
        assert!(kinds.contains(&ViolationKind::SelfAttack("A".into())));
        assert!(kinds.contains(&ViolationKind::UnknownClaim {
            plan: "Q".into(),
            goal: "g9".into()
        }));
        assert!(kinds.contains(&ViolationKind::UnknownSubArgument {
            plan: "Q".into(),
            sub: "nope".into()
        }));
    }

    #[test]
    fn args_for_goal_and_main_goals() {
        let (goals, args) = small();
        let gaf = GeneralAf::new(goals, args, vec![]).unwrap();
        let g1: BTreeSet<PlanId> = ["A", "C"].into_iter().map(PlanId::from).collect();
        assert_eq!(gaf.args_for_goal(&"g1".into()).unwrap(), g1);
        assert_eq!(
            gaf.args_for_goal(&"g9".into()),
            Err(UnknownGoal("g9".into()))
        );
        assert_eq!(gaf.main_goals(), [GoalId::from("g1")].into_iter().collect());
    }

    #[test]
    fn goal_without_plans_has_no_args() {
        let gaf = GeneralAf::new(vec![goal("g1", "x", "0.5")], vec![], vec![]).unwrap();
        assert!(gaf.args_for_goal(&"g1".into()).unwrap().is_empty());
    }

    #[test]
    fn asymmetry_is_only_a_warning() {
        let (goals, args) = small();
        let gaf = GeneralAf::new(
            goals,
            args,
            vec![
                attack("A", "C", &[Superfluity]),
                attack("C", "E", &[Superfluity]),
                attack("E", "C", &[Terminal]),
            ],
        )
        .unwrap();
        let warnings = gaf.warnings();
        assert_eq!(
            warnings,
            vec![
                Warning::AsymmetricAttack {
                    from: "A".into(),
                    to: "C".into()
                },
                Warning::AsymmetricLabels {
                    from: "C".into(),
                    to: "E".into()
                },
            ]
        );
    }
}
