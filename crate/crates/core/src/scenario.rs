//! Scenario documents: the JSON input read by the command-line tool.
//!
//! ```json
//! {
//!   "goals": [{"id": "g1", "predicate": "clean(5,5)", "preference": 0.8}],
//!   "arguments": [{"id": "A", "claim": "g1", "sub_args": ["E"]}],
//!   "attacks": [{"from": "A", "to": "B", "kinds": ["t", "r"]}],
//!   "main_goals": ["g1"],
//!   "config": {"utility": "sum_all", "semantics": "grounded", "tie_break": "lexicographic"}
//! }
//! ```
//!
//! Exactly one of `attacks` (plan level) and `goal_attacks` (goal level,
//! same shape over goal ids) must be present. `arguments` only makes sense
//! with `attacks`. Preferences may be JSON numbers or strings such as
//! `"0.8"` or `"4/5"`; either way they are read as exact fractions.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::Semantics;
use crate::goal_graph::{GoalAf, GoalAttackDecl, Raw};
use crate::instrumental::{
    GeneralAf, GoalDecl, GoalId, IncompatibilityKind, InstrumentalArgDecl, LabeledAttack, PlanId,
    ValidationErrors, Violation, ViolationKind, Warning,
};
use crate::rational::Rational;
use crate::selection::{UtilityFunction, UtilityVariant};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scenario document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("scenario must contain exactly one of `attacks` and `goal_attacks`")]
    AttackSource,
    #[error("`arguments` requires plan-level `attacks`, not `goal_attacks`")]
    ArgumentsWithoutAttacks,
    #[error("invalid scenario:\n{0}")]
    Invalid(#[from] ValidationErrors),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// Pick the lexicographically least of the tied sets.
    #[default]
    Lexicographic,
}

/// Settings a scenario file may carry. Unset fields fall back to defaults
/// (or to command-line flags, which take precedence).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<UtilityVariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantics: Option<Semantics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<TieBreak>,
}

impl Config {
    /// `self` wins where set, `fallback` fills the rest.
    pub fn or(self, fallback: Config) -> Config {
        Config {
            utility: self.utility.or(fallback.utility),
            semantics: self.semantics.or(fallback.semantics),
            tie_break: self.tie_break.or(fallback.tie_break),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalEntry {
    pub id: GoalId,
    pub predicate: String,
    pub preference: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentEntry {
    pub id: PlanId,
    pub claim: GoalId,
    #[serde(default)]
    pub sub_args: Vec<PlanId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackEntry {
    pub from: String,
    pub to: String,
    pub kinds: Vec<IncompatibilityKind>,
}

/// The document exactly as written, before validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub goals: Vec<GoalEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arguments: Option<Vec<ArgumentEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attacks: Option<Vec<AttackEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_attacks: Option<Vec<AttackEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_goals: Option<Vec<GoalId>>,
    #[serde(default)]
    pub config: Config,
}

impl ScenarioDocument {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn preference_text(value: &serde_json::Value) -> Option<String> {
    match value {
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// A validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// Present when the scenario was given at plan level.
    pub general: Option<GeneralAf>,
    pub raw: GoalAf<Raw>,
    pub main_goals: BTreeSet<GoalId>,
    pub config: Config,
    pub warnings: Vec<Warning>,
}

impl Scenario {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Scenario::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        Scenario::from_document(ScenarioDocument::from_json(text)?)
    }

    pub fn from_document(doc: ScenarioDocument) -> Result<Self, ScenarioError> {
        let mut violations = Vec::new();
        let goals: Vec<GoalDecl> = doc
            .goals
            .into_iter()
            .enumerate()
            .map(|(i, entry)| {
                let text = preference_text(&entry.preference);
                let preference = match text.as_deref().map(str::parse::<Rational>) {
                    Some(Ok(p)) => p,
                    _ => {
                        violations.push(Violation {
                            location: format!("goals[{i}]"),
                            kind: ViolationKind::InvalidPreference(
                                entry.id.clone(),
                                entry.preference.to_string(),
                            ),
                        });
                        Rational::one()
                    }
                };
                GoalDecl {
                    id: entry.id,
                    predicate: entry.predicate,
                    preference,
                }
            })
            .collect();
        let declared: BTreeSet<GoalId> = goals.iter().map(|g| g.id.clone()).collect();

        let (general, raw, mut warnings) = match (doc.attacks, doc.goal_attacks) {
            (Some(attacks), None) => {
                let args = doc
                    .arguments
                    .unwrap_or_default()
                    .into_iter()
                    .map(|a| InstrumentalArgDecl {
                        id: a.id,
                        claim: a.claim,
                        sub_args: a.sub_args.into_iter().collect(),
                    })
                    .collect();
                let attacks = attacks
                    .into_iter()
                    .map(|a| LabeledAttack {
                        from: a.from.into(),
                        to: a.to.into(),
                        kinds: a.kinds.into_iter().collect(),
                    })
                    .collect();
                match GeneralAf::new(goals, args, attacks) {
                    Ok(general) => {
                        let raw = GoalAf::derive(&general);
                        let warnings = general.warnings();
                        (Some(general), Some(raw), warnings)
                    }
                    Err(errors) => {
                        violations.extend(errors.0);
                        (None, None, Vec::new())
                    }
                }
            }
            (None, Some(goal_attacks)) => {
                if doc.arguments.is_some() {
                    return Err(ScenarioError::ArgumentsWithoutAttacks);
                }
                let attacks = goal_attacks
                    .into_iter()
                    .map(|a| GoalAttackDecl {
                        from: a.from.into(),
                        to: a.to.into(),
                        kinds: a.kinds.into_iter().collect(),
                    })
                    .collect();
                match GoalAf::from_goal_attacks(goals, attacks) {
                    Ok((raw, warnings)) => (None, Some(raw), warnings),
                    Err(errors) => {
                        violations.extend(errors.0);
                        (None, None, Vec::new())
                    }
                }
            }
            _ => return Err(ScenarioError::AttackSource),
        };

        let main_goals = match doc.main_goals {
            Some(listed) => {
                for (i, g) in listed.iter().enumerate() {
                    if !declared.contains(g) {
                        violations.push(Violation {
                            location: format!("main_goals[{i}]"),
                            kind: ViolationKind::UnknownMainGoal(g.clone()),
                        });
                    }
                }
                listed.into_iter().collect()
            }
            None => match &general {
                Some(general) => general.main_goals(),
                None => declared.clone(),
            },
        };

        match raw {
            Some(raw) if violations.is_empty() => {
                warnings.sort_by_key(|w| w.to_string());
                Ok(Scenario {
                    general,
                    raw,
                    main_goals,
                    config: doc.config,
                    warnings,
                })
            }
            _ => Err(ScenarioError::Invalid(ValidationErrors(violations))),
        }
    }

    /// Utility function for `variant`, using this scenario's main goals.
    pub fn utility_function(&self, variant: UtilityVariant) -> UtilityFunction {
        match variant {
            UtilityVariant::SumAll => UtilityFunction::SumAll,
            UtilityVariant::SumMain => UtilityFunction::SumMain {
                main_goals: self.main_goals.clone(),
            },
        }
    }
}
