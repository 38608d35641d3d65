//! Goal selection over abstract argumentation frameworks, with WHY and
//! WHY_NOT explanations rendered as short English sentences.
//!
//! The pipeline runs in this order:
//!
//! 1. [`instrumental::GeneralAf`] holds plans and their labeled conflicts.
//! 2. [`goal_graph::GoalAf`] lifts those conflicts to goals, then keeps the
//!    attacks that succeed under the goals' preferences.
//! 3. [`selection::select`] picks the maximum-utility conflict-free set.
//! 4. [`beliefs::generate_beliefs`] records why each goal ended where it did.
//! 5. [`explain::ExplanationBase`] turns beliefs into rule instances,
//!    arguments and one explanatory framework per goal.
//! 6. [`render`] fills sentence templates and exports DOT.
//!
//! [`report::run`] drives all of it for a loaded [`scenario::Scenario`].

pub mod af;
pub mod beliefs;
pub mod explain;
pub mod goal_graph;
pub mod instrumental;
pub mod rational;
pub mod render;
pub mod report;
pub mod scenario;
pub mod selection;

pub use af::{AbstractAf, AfError, Semantics};
pub use beliefs::{generate_beliefs, BeliefAtom, BeliefSet};
pub use explain::{
    ArgumentId, ExplainError, Explanation, ExplanationBase, ExplanationContent, ExplanationKind,
    ExplanatoryAf, ExplanatoryArgument, Query, RuleSchema,
};
pub use goal_graph::{Filtered, GoalAf, Raw};
pub use instrumental::{GeneralAf, GoalDecl, GoalId, IncompatibilityKind, KindSet, PlanId};
pub use rational::Rational;
pub use render::{ExplanatorySentence, Renderer};
pub use report::{run, RunOptions, RunReport};
pub use scenario::{Config, Scenario};
pub use selection::{select, SelectionResult, UtilityFunction, UtilityVariant};
