//! Explanatory arguments and per-goal explanatory frameworks.
//!
//! Six rule schemas are unified against the generated beliefs. Every ground
//! instance yields one argument whose support is the instance plus its body
//! beliefs. Arguments about the same goal with opposite claims rebut each
//! other; rebuttals are turned into defeats in favour of arguments built on
//! the max-utility schemas (`r5`, `r6`). Each goal gets its own framework,
//! evaluated with a Dung semantics to produce a partial explanation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::af::{AbstractAf, Semantics};
use crate::beliefs::{generate_beliefs, BeliefAtom, BeliefId, BeliefSet};
use crate::goal_graph::{Filtered, GoalAf};
use crate::instrumental::{GoalDecl, GoalId, KindSet};
use crate::selection::SelectionResult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("unknown goal `{0}`")]
    UnknownGoal(GoalId),
    #[error("goal `{0}` was not pursued; ask WHY_NOT instead")]
    NotPursued(GoalId),
    #[error("goal `{0}` was pursued; ask WHY instead")]
    Pursued(GoalId),
    #[error("rule instance {instance} has body belief {belief} missing from the belief set")]
    MissingBelief { instance: RuleId, belief: BeliefId },
    #[error("support of argument {0} is not minimal")]
    NotMinimal(ArgumentId),
    #[error("support of argument {0} is inconsistent")]
    Inconsistent(ArgumentId),
}

/// The six explanatory rule schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSchema {
    /// `¬incomp(x) → pursued(x)`
    R1,
    /// `incompat(x,y,ls) ∧ pref(x,y) → pursued(x)`
    R2,
    /// `incompat(x,y,ls) ∧ ¬pref(y,x) → ¬pursued(y)`
    R3,
    /// `incompat(x,y,ls) ∧ eq_pref(x,y) → pursued(x)`
    R4,
    /// `max_util(x) → pursued(x)`
    R5,
    /// `¬max_util(x) → ¬pursued(x)`
    R6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Var {
    X,
    Y,
    Ls,
}

/// A body atom with variables in every argument position.
struct Pattern {
    predicate: &'static str,
    positive: bool,
    vars: &'static [Var],
}

const fn pat(predicate: &'static str, positive: bool, vars: &'static [Var]) -> Pattern {
    Pattern {
        predicate,
        positive,
        vars,
    }
}

impl RuleSchema {
    pub const ALL: [RuleSchema; 6] = [
        RuleSchema::R1,
        RuleSchema::R2,
        RuleSchema::R3,
        RuleSchema::R4,
        RuleSchema::R5,
        RuleSchema::R6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleSchema::R1 => "r1",
            RuleSchema::R2 => "r2",
            RuleSchema::R3 => "r3",
            RuleSchema::R4 => "r4",
            RuleSchema::R5 => "r5",
            RuleSchema::R6 => "r6",
        }
    }

    /// Max-utility schemas; arguments built on them win rebuttals.
    pub fn is_decisive(self) -> bool {
        matches!(self, RuleSchema::R5 | RuleSchema::R6)
    }

    fn body(self) -> &'static [Pattern] {
        use Var::*;
        const INCOMPAT: Pattern = pat("incompat", true, &[X, Y, Ls]);
        const R1: &[Pattern] = &[pat("incomp", false, &[X])];
        const R2: &[Pattern] = &[INCOMPAT, pat("pref", true, &[X, Y])];
        const R3: &[Pattern] = &[INCOMPAT, pat("pref", false, &[Y, X])];
        const R4: &[Pattern] = &[INCOMPAT, pat("eq_pref", true, &[X, Y])];
        const R5: &[Pattern] = &[pat("max_util", true, &[X])];
        const R6: &[Pattern] = &[pat("max_util", false, &[X])];
        match self {
            RuleSchema::R1 => R1,
            RuleSchema::R2 => R2,
            RuleSchema::R3 => R3,
            RuleSchema::R4 => R4,
            RuleSchema::R5 => R5,
            RuleSchema::R6 => R6,
        }
    }

    /// Head polarity and the variable naming the goal.
    fn head(self) -> (bool, Var) {
        match self {
            RuleSchema::R1 | RuleSchema::R2 | RuleSchema::R4 | RuleSchema::R5 => (true, Var::X),
            RuleSchema::R3 => (false, Var::Y),
            RuleSchema::R6 => (false, Var::X),
        }
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Term {
    Goal(GoalId),
    Labels(KindSet),
}

fn terms(atom: &BeliefAtom) -> Vec<Term> {
    use BeliefAtom::*;
    match atom {
        NotIncomp { goal } | MaxUtil { goal } | NotMaxUtil { goal } => {
            vec![Term::Goal(goal.clone())]
        }
        Pref { x, y } | NotPref { x, y } | EqPref { x, y } => {
            vec![Term::Goal(x.clone()), Term::Goal(y.clone())]
        }
        Incompat { x, y, labels } => vec![
            Term::Goal(x.clone()),
            Term::Goal(y.clone()),
            Term::Labels(labels.clone()),
        ],
    }
}

/// Ground values bound to a schema's variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Substitution {
    pub x: GoalId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<GoalId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ls: Option<KindSet>,
}

impl Substitution {
    fn from_bindings(bindings: &BTreeMap<Var, Term>) -> Option<Self> {
        let goal = |v| match bindings.get(&v) {
            Some(Term::Goal(g)) => Some(g.clone()),
            _ => None,
        };
        Some(Substitution {
            x: goal(Var::X)?,
            y: goal(Var::Y),
            ls: match bindings.get(&Var::Ls) {
                Some(Term::Labels(ls)) => Some(ls.clone()),
                _ => None,
            },
        })
    }

    fn value(&self, var: Var) -> Option<&GoalId> {
        match var {
            Var::X => Some(&self.x),
            Var::Y => self.y.as_ref(),
            Var::Ls => None,
        }
    }
}

/// `pursued(g)` or `¬pursued(g)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Claim {
    pub goal: GoalId,
    pub pursued: bool,
}

impl Claim {
    pub fn negated(&self) -> Claim {
        Claim {
            goal: self.goal.clone(),
            pursued: !self.pursued,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pursued {
            write!(f, "pursued({})", self.goal)
        } else {
            write!(f, "¬pursued({})", self.goal)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct RuleId(pub usize);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleInstance {
    pub id: RuleId,
    pub schema: RuleSchema,
    pub substitution: Substitution,
    /// Ground body beliefs, in schema body order.
    pub body: Vec<BeliefId>,
    pub head: Claim,
}

/// Unifies every schema against `beliefs`. Instances are numbered
/// `r1, r2, ...` by schema, then by substitution.
pub fn trigger_rules(beliefs: &BeliefSet) -> Vec<RuleInstance> {
    let mut found: BTreeSet<(RuleSchema, Substitution, Vec<BeliefId>)> = BTreeSet::new();
    for schema in RuleSchema::ALL {
        let mut matches = Vec::new();
        unify_body(
            schema.body(),
            beliefs,
            &mut BTreeMap::new(),
            &mut Vec::new(),
            &mut matches,
        );
        for (bindings, body) in matches {
            if let Some(subst) = Substitution::from_bindings(&bindings) {
                found.insert((schema, subst, body));
            }
        }
    }

    let mut seen = BTreeSet::new();
    found
        .into_iter()
        .filter(|(schema, subst, _)| seen.insert((*schema, subst.clone())))
        .enumerate()
        .map(|(i, (schema, substitution, body))| {
            let (positive, var) = schema.head();
            let goal = substitution
                .value(var)
                .expect("head variable occurs in the body")
                .clone();
            RuleInstance {
                id: RuleId(i + 1),
                schema,
                substitution,
                body,
                head: Claim {
                    goal,
                    pursued: positive,
                },
            }
        })
        .collect()
}

fn unify_body(
    patterns: &[Pattern],
    beliefs: &BeliefSet,
    bindings: &mut BTreeMap<Var, Term>,
    body: &mut Vec<BeliefId>,
    out: &mut Vec<(BTreeMap<Var, Term>, Vec<BeliefId>)>,
) {
    let Some((first, rest)) = patterns.split_first() else {
        out.push((bindings.clone(), body.clone()));
        return;
    };
    for belief in beliefs.iter() {
        if belief.atom.predicate() != (first.predicate, first.positive) {
            continue;
        }
        let values = terms(&belief.atom);
        if values.len() != first.vars.len() {
            continue;
        }
        let mut added = Vec::new();
        let mut ok = true;
        for (var, value) in first.vars.iter().zip(values) {
            match bindings.get(var) {
                Some(bound) if *bound != value => {
                    ok = false;
                    break;
                }
                Some(_) => {}
                None => {
                    bindings.insert(*var, value);
                    added.push(*var);
                }
            }
        }
        if ok {
            body.push(belief.id);
            unify_body(rest, beliefs, bindings, body, out);
            body.pop();
        }
        for var in added {
            bindings.remove(&var);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArgumentId(pub usize);

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.0)
    }
}

/// An element of an argument's support: a belief or a rule instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportItem {
    Belief(BeliefId),
    Rule(RuleId),
}

impl fmt::Display for SupportItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportItem::Belief(b) => b.fmt(f),
            SupportItem::Rule(r) => r.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanatoryArgument {
    pub id: ArgumentId,
    pub support: BTreeSet<SupportItem>,
    pub claim: Claim,
    /// The rule instance the argument was built from.
    pub rule: RuleId,
    pub schema: RuleSchema,
}

impl ExplanatoryArgument {
    /// Support contains an instance of a max-utility schema.
    pub fn is_decisive(&self) -> bool {
        self.schema.is_decisive()
    }
}

impl fmt::Display for ExplanatoryArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} = ⟨{{{}}}, {}⟩",
            self.id,
            items.join(", "),
            self.claim
        )
    }
}

/// Claims derivable from `support` by one application of a rule instance
/// whose body beliefs all lie in `support`.
pub fn derivable(
    support: &BTreeSet<SupportItem>,
    instances: &BTreeMap<RuleId, &RuleInstance>,
) -> BTreeSet<Claim> {
    support
        .iter()
        .filter_map(|item| match item {
            SupportItem::Rule(r) => instances.get(r),
            SupportItem::Belief(_) => None,
        })
        .filter(|inst| {
            inst.body
                .iter()
                .all(|b| support.contains(&SupportItem::Belief(*b)))
        })
        .map(|inst| inst.head.clone())
        .collect()
}

/// Whether removing any single element of `support` stops it deriving
/// `claim`.
pub fn is_minimal(
    support: &BTreeSet<SupportItem>,
    claim: &Claim,
    instances: &BTreeMap<RuleId, &RuleInstance>,
) -> bool {
    support.iter().all(|item| {
        let mut smaller = support.clone();
        smaller.remove(item);
        !derivable(&smaller, instances).contains(claim)
    })
}

pub fn is_consistent(
    support: &BTreeSet<SupportItem>,
    instances: &BTreeMap<RuleId, &RuleInstance>,
) -> bool {
    let claims = derivable(support, instances);
    claims.iter().all(|c| !claims.contains(&c.negated()))
}

/// One argument per rule instance, numbered `A1, A2, ...` in instance
/// order. Supports are checked for derivability, minimality and
/// consistency.
pub fn construct_arguments(
    beliefs: &BeliefSet,
    instances: &[RuleInstance],
) -> Result<Vec<ExplanatoryArgument>, ExplainError> {
    let index: BTreeMap<RuleId, &RuleInstance> = instances.iter().map(|r| (r.id, r)).collect();
    let mut out = Vec::with_capacity(instances.len());
    for (i, inst) in instances.iter().enumerate() {
        let id = ArgumentId(i + 1);
        let mut support = BTreeSet::new();
        for b in &inst.body {
            if beliefs.get(*b).is_none() {
                return Err(ExplainError::MissingBelief {
                    instance: inst.id,
                    belief: *b,
                });
            }
            support.insert(SupportItem::Belief(*b));
        }
        support.insert(SupportItem::Rule(inst.id));
        debug_assert!(derivable(&support, &index).contains(&inst.head));
        if !is_minimal(&support, &inst.head, &index) {
            return Err(ExplainError::NotMinimal(id));
        }
        if !is_consistent(&support, &index) {
            return Err(ExplainError::Inconsistent(id));
        }
        out.push(ExplanatoryArgument {
            id,
            support,
            claim: inst.head.clone(),
            rule: inst.id,
            schema: inst.schema,
        });
    }
    Ok(out)
}

/// Contradictory claims about the same goal.
pub fn rebuts(a: &ExplanatoryArgument, b: &ExplanatoryArgument) -> bool {
    a.claim.goal == b.claim.goal && a.claim.pursued != b.claim.pursued
}

/// Defeat between mutually rebutting arguments. A decisive argument facing
/// a non-decisive one defeats it and is not defeated back; when both or
/// neither are decisive the rebuttal stays symmetric.
pub fn defeats(a: &ExplanatoryArgument, b: &ExplanatoryArgument) -> bool {
    rebuts(a, b) && (a.is_decisive() || !b.is_decisive())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanatoryAf {
    pub goal: GoalId,
    pub arguments: BTreeSet<ArgumentId>,
    pub defeats: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl ExplanatoryAf {
    pub fn to_abstract(&self) -> AbstractAf<ArgumentId> {
        AbstractAf::new(self.arguments.iter().copied(), self.defeats.iter().copied())
            .expect("defeats connect arguments of the framework, never an argument to itself")
    }

    pub fn extensions(&self, semantics: Semantics) -> Vec<BTreeSet<ArgumentId>> {
        self.to_abstract().extensions(semantics)
    }
}

/// The explanatory framework of `goal`: every argument whose claim is about
/// `goal`, with the defeats among them.
pub fn build_xaf(goal: &GoalId, arguments: &[ExplanatoryArgument]) -> ExplanatoryAf {
    let members: Vec<&ExplanatoryArgument> =
        arguments.iter().filter(|a| &a.claim.goal == goal).collect();
    let mut defeat_set = BTreeSet::new();
    for a in &members {
        for b in &members {
            if defeats(a, b) {
                defeat_set.insert((a.id, b.id));
            }
        }
    }
    ExplanatoryAf {
        goal: goal.clone(),
        arguments: members.iter().map(|a| a.id).collect(),
        defeats: defeat_set,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Query {
    #[serde(rename = "WHY")]
    Why,
    #[serde(rename = "WHY_NOT")]
    WhyNot,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Query::Why => "WHY",
            Query::WhyNot => "WHY_NOT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplanationKind {
    #[default]
    Partial,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplanationContent {
    /// Extensions of the goal's framework under the chosen semantics.
    /// Grounded always gives exactly one; stable may give none.
    Partial(Vec<BTreeSet<ArgumentId>>),
    Complete(ExplanatoryAf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub goal: GoalId,
    pub query: Query,
    pub kind: ExplanationKind,
    pub semantics: Semantics,
    pub content: ExplanationContent,
}

/// Everything built from a filtered goal framework and a selection result
/// that explanations draw on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanationBase {
    #[serde(skip)]
    goals: BTreeMap<GoalId, GoalDecl>,
    #[serde(skip)]
    pursued: BTreeSet<GoalId>,
    pub beliefs: BeliefSet,
    pub rule_instances: Vec<RuleInstance>,
    pub arguments: Vec<ExplanatoryArgument>,
    pub frameworks: BTreeMap<GoalId, ExplanatoryAf>,
}

impl ExplanationBase {
    pub fn build(
        gaf: &GoalAf<Filtered>,
        selection: &SelectionResult,
    ) -> Result<ExplanationBase, ExplainError> {
        let beliefs = generate_beliefs(gaf, selection);
        let rule_instances = trigger_rules(&beliefs);
        let arguments = construct_arguments(&beliefs, &rule_instances)?;
        let frameworks = gaf
            .goals()
            .keys()
            .map(|g| (g.clone(), build_xaf(g, &arguments)))
            .collect();
        Ok(ExplanationBase {
            goals: gaf.goals().clone(),
            pursued: selection.pursued.clone(),
            beliefs,
            rule_instances,
            arguments,
            frameworks,
        })
    }

    pub fn goals(&self) -> &BTreeMap<GoalId, GoalDecl> {
        &self.goals
    }

    pub fn is_pursued(&self, goal: &GoalId) -> bool {
        self.pursued.contains(goal)
    }

    pub fn argument(&self, id: ArgumentId) -> Option<&ExplanatoryArgument> {
        id.0.checked_sub(1).and_then(|i| self.arguments.get(i))
    }

    pub fn rule_instance(&self, id: RuleId) -> Option<&RuleInstance> {
        id.0.checked_sub(1).and_then(|i| self.rule_instances.get(i))
    }

    pub fn framework(&self, goal: &GoalId) -> Result<&ExplanatoryAf, ExplainError> {
        self.frameworks
            .get(goal)
            .ok_or_else(|| ExplainError::UnknownGoal(goal.clone()))
    }

    fn query_for(&self, goal: &GoalId) -> Query {
        if self.is_pursued(goal) {
            Query::Why
        } else {
            Query::WhyNot
        }
    }

    fn explain(
        &self,
        goal: &GoalId,
        query: Query,
        kind: ExplanationKind,
        semantics: Semantics,
    ) -> Result<Explanation, ExplainError> {
        let xaf = self.framework(goal)?;
        let content = match kind {
            ExplanationKind::Partial => ExplanationContent::Partial(xaf.extensions(semantics)),
            ExplanationKind::Complete => ExplanationContent::Complete(xaf.clone()),
        };
        Ok(Explanation {
            goal: goal.clone(),
            query,
            kind,
            semantics,
            content,
        })
    }

    /// Answers WHY(goal); only defined for pursued goals.
    pub fn why(
        &self,
        goal: &GoalId,
        kind: ExplanationKind,
        semantics: Semantics,
    ) -> Result<Explanation, ExplainError> {
        self.framework(goal)?;
        if !self.is_pursued(goal) {
            return Err(ExplainError::NotPursued(goal.clone()));
        }
        self.explain(goal, Query::Why, kind, semantics)
    }

    /// Answers WHY_NOT(goal); only defined for goals that were not pursued.
    pub fn why_not(
        &self,
        goal: &GoalId,
        kind: ExplanationKind,
        semantics: Semantics,
    ) -> Result<Explanation, ExplainError> {
        self.framework(goal)?;
        if self.is_pursued(goal) {
            return Err(ExplainError::Pursued(goal.clone()));
        }
        self.explain(goal, Query::WhyNot, kind, semantics)
    }

    /// The whole explanatory framework of `goal`, whatever its status.
    pub fn complete_explanation(&self, goal: &GoalId) -> Result<Explanation, ExplainError> {
        self.explain(
            goal,
            self.query_for(goal),
            ExplanationKind::Complete,
            Semantics::default(),
        )
    }

    /// Partial explanation of `goal` under `semantics`, whatever its status.
    pub fn partial_explanation(
        &self,
        goal: &GoalId,
        semantics: Semantics,
    ) -> Result<Explanation, ExplainError> {
        self.explain(
            goal,
            self.query_for(goal),
            ExplanationKind::Partial,
            semantics,
        )
    }
}
