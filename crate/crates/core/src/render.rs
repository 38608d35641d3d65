//! Pseudo-natural sentences for explanatory arguments, and DOT exports of
//! the frameworks built along the pipeline.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::af::AbstractAf;
use crate::explain::{
    ArgumentId, Explanation, ExplanationBase, ExplanationContent, ExplanatoryAf,
    ExplanatoryArgument, RuleSchema,
};
use crate::goal_graph::{GoalAf, Stage};
use crate::instrumental::{GeneralAf, GoalId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("goal `{0}` has no predicate to render")]
    UnknownGoal(GoalId),
    #[error("unknown argument {0}")]
    UnknownArgument(ArgumentId),
    #[error("argument {0} refers to a rule instance that does not exist")]
    UnknownRule(ArgumentId),
    #[error("argument {0} lacks the `{1}` slot its scheme needs")]
    MissingSlot(ArgumentId, &'static str),
    #[error(
        "complete explanations have no sentence form; export them as DOT or structured output"
    )]
    CompleteNotSupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanatorySentence {
    pub argument: ArgumentId,
    pub scheme: RuleSchema,
    pub text: String,
}

impl fmt::Display for ExplanatorySentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// One template per rule schema. Slots: `{x}`, `{y}` (goal predicates) and
/// `{ls}` (labels as `t,r,s` letters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTemplates {
    by_schema: BTreeMap<RuleSchema, String>,
}

impl Default for SentenceTemplates {
    fn default() -> Self {
        let conflicts = "{x} and {y} have the following conflicts: '{ls}'.";
        let by_schema = [
            (RuleSchema::R1, "{x} has no incompatibility, so it became pursued.".to_string()),
            (
                RuleSchema::R2,
                format!("{conflicts} Since {{x}} is more preferable than {{y}}, {{x}} became pursued."),
            ),
            (
                RuleSchema::R3,
                format!(
                    "{conflicts} Since {{y}} is less preferable than {{x}}, {{y}} did not become pursued."
                ),
            ),
            (
                RuleSchema::R4,
                format!(
                    "{conflicts} Since {{x}} and {{y}} have the same preference value, {{x}} became pursued."
                ),
            ),
            (
                RuleSchema::R5,
                "Since {x} belonged to the set of goals that maximizes the utility, it became pursued."
                    .to_string(),
            ),
            (
                RuleSchema::R6,
                "Since {x} did not belong to the set of goals that maximizes the utility, it did not become pursued."
                    .to_string(),
            ),
        ]
        .into_iter()
        .collect();
        SentenceTemplates { by_schema }
    }
}

impl SentenceTemplates {
    pub fn set(&mut self, schema: RuleSchema, template: impl Into<String>) {
        self.by_schema.insert(schema, template.into());
    }

    pub fn get(&self, schema: RuleSchema) -> &str {
        &self.by_schema[&schema]
    }
}

fn fill(
    template: &str,
    slots: &[(&'static str, Option<String>)],
    arg: ArgumentId,
) -> Result<String, RenderError> {
    let mut out = template.to_string();
    for (name, value) in slots {
        let key = format!("{{{name}}}");
        if out.contains(&key) {
            let value = value.as_ref().ok_or(RenderError::MissingSlot(arg, name))?;
            out = out.replace(&key, value);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct Renderer {
    pub templates: SentenceTemplates,
}

impl Renderer {
    pub fn new(templates: SentenceTemplates) -> Self {
        Renderer { templates }
    }

    pub fn render_argument(
        &self,
        arg: &ExplanatoryArgument,
        base: &ExplanationBase,
    ) -> Result<ExplanatorySentence, RenderError> {
        let instance = base
            .rule_instance(arg.rule)
            .ok_or(RenderError::UnknownRule(arg.id))?;
        let name = |g: &GoalId| {
            base.goals()
                .get(g)
                .map(|d| d.predicate.clone())
                .ok_or_else(|| RenderError::UnknownGoal(g.clone()))
        };
        let subst = &instance.substitution;
        let slots = [
            ("x", Some(name(&subst.x)?)),
            ("y", subst.y.as_ref().map(name).transpose()?),
            ("ls", subst.ls.as_ref().map(ToString::to_string)),
        ];
        let text = fill(self.templates.get(instance.schema), &slots, arg.id)?;
        Ok(ExplanatorySentence {
            argument: arg.id,
            scheme: instance.schema,
            text,
        })
    }

    /// One sentence list per extension, members ordered by argument id.
    pub fn render_partial_explanation(
        &self,
        explanation: &Explanation,
        base: &ExplanationBase,
    ) -> Result<Vec<Vec<ExplanatorySentence>>, RenderError> {
        let ExplanationContent::Partial(extensions) = &explanation.content else {
            return Err(RenderError::CompleteNotSupported);
        };
        extensions
            .iter()
            .map(|ext| {
                ext.iter()
                    .map(|id| {
                        let arg = base
                            .argument(*id)
                            .ok_or(RenderError::UnknownArgument(*id))?;
                        self.render_argument(arg, base)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn render_argument(
    arg: &ExplanatoryArgument,
    base: &ExplanationBase,
) -> Result<ExplanatorySentence, RenderError> {
    Renderer::default().render_argument(arg, base)
}

pub fn render_partial_explanation(
    explanation: &Explanation,
    base: &ExplanationBase,
) -> Result<Vec<Vec<ExplanatorySentence>>, RenderError> {
    Renderer::default().render_partial_explanation(explanation, base)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one node per argument and one edge per attack.
pub fn af_to_dot<N: Ord + Clone + fmt::Display>(af: &AbstractAf<N>, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for node in af.nodes() {
        let _ = writeln!(out, "  {};", quote(&node.to_string()));
    }
    for (from, to) in af.attacks() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(&from.to_string()),
            quote(&to.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Instrumental arguments labeled with their claims; edges carry the
/// incompatibility letters.
pub fn general_af_to_dot(general: &GeneralAf) -> String {
    let mut out = String::from("digraph \"general\" {\n");
    for arg in general.arguments().values() {
        let claim = general
            .goals()
            .get(&arg.claim)
            .map(|g| g.predicate.as_str())
            .unwrap_or(arg.claim.as_str());
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(arg.id.as_str()),
            quote(&format!("{}\n{}", arg.id, claim))
        );
    }
    for ((from, to), kinds) in general.attacks() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(from.as_str()),
            quote(to.as_str()),
            quote(&kinds.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Goals labeled with predicate and preference; edges carry the
/// incompatibility letters.
pub fn goal_af_to_dot<S: Stage>(gaf: &GoalAf<S>) -> String {
    let mut out = format!("digraph {} {{\n", quote(&format!("goals_{}", gaf.stage())));
    for goal in gaf.goals().values() {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(goal.id.as_str()),
            quote(&format!("{}\n{}", goal.predicate, goal.preference))
        );
    }
    for ((from, to), kinds) in gaf.attacks() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(from.as_str()),
            quote(to.as_str()),
            quote(&kinds.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Explanatory framework with each argument labeled by its claim.
pub fn xaf_to_dot(xaf: &ExplanatoryAf, base: &ExplanationBase) -> String {
    let mut out = format!("digraph {} {{\n", quote(&format!("xaf_{}", xaf.goal)));
    for id in &xaf.arguments {
        let label = match base.argument(*id) {
            Some(arg) => format!("{}: {}", id, arg.claim),
            None => id.to_string(),
        };
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(&id.to_string()),
            quote(&label)
        );
    }
    for (from, to) in &xaf.defeats {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(&from.to_string()),
            quote(&to.to_string())
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_af_dot() {
        let af: AbstractAf<String> = AbstractAf::new(Vec::new(), Vec::new()).unwrap();
        assert_eq!(af_to_dot(&af, "empty"), "digraph \"empty\" {\n}\n");
    }

    #[test]
    fn dot_quotes_are_escaped() {
        let af = AbstractAf::new(["say \"hi\"".to_string()], Vec::new()).unwrap();
        assert!(af_to_dot(&af, "q").contains(r#""say \"hi\"""#));
    }

    #[test]
    fn fill_reports_missing_slot() {
        let err = fill(
            "{x} vs {y}",
            &[("x", Some("a".into())), ("y", None)],
            ArgumentId(3),
        );
        assert_eq!(err, Err(RenderError::MissingSlot(ArgumentId(3), "y")));
        assert_eq!(
            fill(
                "{x}!",
                &[("x", Some("a".into())), ("y", None)],
                ArgumentId(1)
            )
            .unwrap(),
            "a!"
        );
    }

    #[test]
    fn every_schema_has_a_template() {
        let t = SentenceTemplates::default();
        for schema in RuleSchema::ALL {
            assert!(t.get(schema).contains("{x}"));
        }
    }
}
