//! Running the whole pipeline on a scenario, and the text / structured
//! forms of its results.
//!
//! Structured output goes through plain view types (strings and lists) that
//! deserialize back into themselves, so every emitted document re-parses
//! under the schema it was written with.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::af::Semantics;
use crate::beliefs::BeliefSet;
use crate::explain::{
    ArgumentId, ExplainError, Explanation, ExplanationBase, ExplanationContent, ExplanationKind,
    ExplanatoryAf, ExplanatoryArgument, RuleInstance,
};
use crate::goal_graph::{Filtered, GoalAf, Raw, Stage};
use crate::instrumental::GoalId;
use crate::render::Renderer;
use crate::scenario::{Config, Scenario};
use crate::selection::{select, SelectionResult, UtilityFunction, UtilityVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub utility: UtilityVariant,
    pub semantics: Semantics,
}

impl RunOptions {
    /// Flags override the scenario's config, which overrides defaults.
    pub fn resolve(flags: Config, scenario: &Scenario) -> RunOptions {
        let merged = flags.or(scenario.config);
        RunOptions {
            utility: merged.utility.unwrap_or_default(),
            semantics: merged.semantics.unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Timing {
    pub filter: Duration,
    pub select: Duration,
    pub explain: Duration,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub raw: GoalAf<Raw>,
    pub filtered: GoalAf<Filtered>,
    pub main_goals: BTreeSet<GoalId>,
    pub utility: UtilityFunction,
    pub semantics: Semantics,
    pub selection: SelectionResult,
    pub base: ExplanationBase,
    /// Extensions of each goal's explanatory framework under `semantics`.
    pub extensions: BTreeMap<GoalId, Vec<BTreeSet<ArgumentId>>>,
    pub timing: Timing,
}

/// Filters, selects, and builds every explanatory framework.
pub fn run(scenario: &Scenario, options: RunOptions) -> Result<RunReport, ExplainError> {
    let t0 = Instant::now();
    let filtered = scenario.raw.apply_successful_attacks();
    let t1 = Instant::now();
    let utility = scenario.utility_function(options.utility);
    let selection = select(&filtered, &utility);
    let t2 = Instant::now();
    let base = ExplanationBase::build(&filtered, &selection)?;
    let extensions = base
        .frameworks
        .iter()
        .map(|(g, xaf)| (g.clone(), xaf.extensions(options.semantics)))
        .collect();
    let t3 = Instant::now();
    Ok(RunReport {
        raw: scenario.raw.clone(),
        filtered,
        main_goals: scenario.main_goals.clone(),
        utility,
        semantics: options.semantics,
        selection,
        base,
        extensions,
        timing: Timing {
            filter: t1 - t0,
            select: t2 - t1,
            explain: t3 - t2,
        },
    })
}

impl RunReport {
    /// Partial explanation of `goal`, whatever its status.
    pub fn partial(&self, goal: &GoalId) -> Result<Explanation, ExplainError> {
        self.base.partial_explanation(goal, self.semantics)
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn braces<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", strings(items).join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalView {
    pub id: String,
    pub predicate: String,
    pub preference: String,
    pub main: bool,
    pub pursued: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackView {
    pub from: String,
    pub to: String,
    pub kinds: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionView {
    pub utility: String,
    pub pursued: Vec<String>,
    pub winning_utility: String,
    pub cf_count: u64,
    pub tie: bool,
    pub all_max_extensions: Vec<Vec<String>>,
}

impl SelectionView {
    pub fn new(selection: &SelectionResult, utility: &UtilityFunction) -> Self {
        SelectionView {
            utility: utility.variant().to_string(),
            pursued: strings(&selection.pursued),
            winning_utility: selection.winning_utility.to_string(),
            cf_count: selection.cf_count,
            tie: selection.is_tie(),
            all_max_extensions: selection.all_max_extensions.iter().map(strings).collect(),
        }
    }

    pub fn to_text(&self, show_all: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pursued: {}", braces(&self.pursued));
        let _ = writeln!(out, "utility: {} ({})", self.winning_utility, self.utility);
        let _ = writeln!(out, "conflict-free sets: {}", self.cf_count);
        if self.tie {
            let _ = writeln!(
                out,
                "tie: {} extensions reach the maximum",
                self.all_max_extensions.len()
            );
        }
        if show_all {
            for ext in &self.all_max_extensions {
                let _ = writeln!(out, "maximal: {}", braces(ext));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeliefView {
    pub id: String,
    pub belief: String,
    pub provenance: String,
}

pub fn belief_views(beliefs: &BeliefSet) -> Vec<BeliefView> {
    beliefs
        .iter()
        .map(|b| BeliefView {
            id: b.id.to_string(),
            belief: b.atom.to_string(),
            provenance: b.provenance.to_string(),
        })
        .collect()
}

pub fn beliefs_text(views: &[BeliefView]) -> String {
    let mut out = String::new();
    for b in views {
        let _ = writeln!(out, "{}: {}  [{}]", b.id, b.belief, b.provenance);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleView {
    pub id: String,
    pub schema: String,
    pub rule: String,
    pub body: Vec<String>,
    pub head: String,
}

fn rule_view(rule: &RuleInstance, beliefs: &BeliefSet) -> RuleView {
    let atoms: Vec<String> = rule
        .body
        .iter()
        .map(|b| {
            beliefs
                .get(*b)
                .map_or_else(|| b.to_string(), |b| b.atom.to_string())
        })
        .collect();
    RuleView {
        id: rule.id.to_string(),
        schema: rule.schema.to_string(),
        rule: format!("{} → {}", atoms.join(" ∧ "), rule.head),
        body: strings(&rule.body),
        head: rule.head.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentView {
    pub id: String,
    pub support: Vec<String>,
    pub claim: String,
    pub schema: String,
}

fn argument_view(arg: &ExplanatoryArgument) -> ArgumentView {
    ArgumentView {
        id: arg.id.to_string(),
        support: strings(&arg.support),
        claim: arg.claim.to_string(),
        schema: arg.schema.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkView {
    pub goal: String,
    pub arguments: Vec<String>,
    pub defeats: Vec<(String, String)>,
}

impl FrameworkView {
    pub fn new(xaf: &ExplanatoryAf) -> Self {
        FrameworkView {
            goal: xaf.goal.to_string(),
            arguments: strings(&xaf.arguments),
            defeats: xaf
                .defeats
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let defeats: Vec<String> = self
            .defeats
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        format!(
            "XAF_{} = ⟨{}, {}⟩",
            self.goal,
            braces(&self.arguments),
            braces(defeats)
        )
    }
}

/// An answered query, with sentences for partial explanations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplanationView {
    pub goal: String,
    pub query: String,
    pub kind: String,
    pub semantics: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extensions: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framework: Option<FrameworkView>,
    pub arguments: Vec<ArgumentView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentences: Option<Vec<Vec<String>>>,
}

impl ExplanationView {
    pub fn new(
        explanation: &Explanation,
        base: &ExplanationBase,
        renderer: &Renderer,
    ) -> Result<Self, crate::render::RenderError> {
        let (extensions, framework, sentences, members): (_, _, _, BTreeSet<ArgumentId>) =
            match &explanation.content {
                ExplanationContent::Partial(exts) => {
                    let rendered = renderer.render_partial_explanation(explanation, base)?;
                    let sentences = rendered
                        .iter()
                        .map(|list| list.iter().map(|s| s.text.clone()).collect())
                        .collect();
                    (
                        Some(exts.iter().map(strings).collect()),
                        None,
                        Some(sentences),
                        exts.iter().flatten().copied().collect(),
                    )
                }
                ExplanationContent::Complete(xaf) => (
                    None,
                    Some(FrameworkView::new(xaf)),
                    None,
                    xaf.arguments.clone(),
                ),
            };
        let arguments = members
            .iter()
            .filter_map(|id| base.argument(*id))
            .map(argument_view)
            .collect();
        Ok(ExplanationView {
            goal: explanation.goal.to_string(),
            query: explanation.query.to_string(),
            kind: match explanation.kind {
                ExplanationKind::Partial => "partial",
                ExplanationKind::Complete => "complete",
            }
            .to_string(),
            semantics: explanation.semantics.to_string(),
            extensions,
            framework,
            arguments,
            sentences,
        })
    }

    /// Sentences one per line; complete explanations print the framework.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(sentences) = &self.sentences {
            let multiple = sentences.len() > 1;
            for (i, list) in sentences.iter().enumerate() {
                if multiple {
                    let _ = writeln!(out, "# extension {}", i + 1);
                }
                for s in list {
                    let _ = writeln!(out, "{s}");
                }
            }
        }
        if let Some(framework) = &self.framework {
            let _ = writeln!(out, "{}", framework.to_text());
            for a in &self.arguments {
                let _ = writeln!(out, "{} = ⟨{}, {}⟩", a.id, braces(&a.support), a.claim);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingView {
    pub filter_us: u64,
    pub select_us: u64,
    pub explain_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub semantics: String,
    pub goals: Vec<GoalView>,
    pub goal_attacks_raw: Vec<AttackView>,
    pub goal_attacks: Vec<AttackView>,
    pub selection: SelectionView,
    pub beliefs: Vec<BeliefView>,
    pub rule_instances: Vec<RuleView>,
    pub arguments: Vec<ArgumentView>,
    pub frameworks: Vec<FrameworkView>,
    pub explanations: Vec<ExplanationView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingView>,
}

fn attack_views<S: Stage>(gaf: &GoalAf<S>) -> Vec<AttackView> {
    gaf.attacks()
        .iter()
        .map(|((from, to), kinds)| AttackView {
            from: from.to_string(),
            to: to.to_string(),
            kinds: kinds.to_string(),
        })
        .collect()
}

impl ReportDocument {
    pub fn new(report: &RunReport, with_timing: bool) -> Result<Self, crate::render::RenderError> {
        let renderer = Renderer::default();
        let base = &report.base;
        let goals = report
            .filtered
            .goals()
            .values()
            .map(|g| GoalView {
                id: g.id.to_string(),
                predicate: g.predicate.clone(),
                preference: g.preference.to_string(),
                main: report.main_goals.contains(&g.id),
                pursued: report.selection.pursued.contains(&g.id),
            })
            .collect();
        let explanations = report
            .filtered
            .goals()
            .keys()
            .map(|g| {
                let e = report
                    .partial(g)
                    .expect("every goal has an explanatory framework");
                ExplanationView::new(&e, base, &renderer)
            })
            .collect::<Result<_, _>>()?;
        Ok(ReportDocument {
            semantics: report.semantics.to_string(),
            goals,
            goal_attacks_raw: attack_views(&report.raw),
            goal_attacks: attack_views(&report.filtered),
            selection: SelectionView::new(&report.selection, &report.utility),
            beliefs: belief_views(&base.beliefs),
            rule_instances: base
                .rule_instances
                .iter()
                .map(|r| rule_view(r, &base.beliefs))
                .collect(),
            arguments: base.arguments.iter().map(argument_view).collect(),
            frameworks: base.frameworks.values().map(FrameworkView::new).collect(),
            explanations,
            timing: with_timing.then_some(TimingView {
                filter_us: report.timing.filter.as_micros() as u64,
                select_us: report.timing.select.as_micros() as u64,
                explain_us: report.timing.explain.as_micros() as u64,
            }),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("== goals\n");
        for g in &self.goals {
            let status = if g.pursued { "pursued" } else { "not pursued" };
            let main = if g.main { ", main" } else { "" };
            let _ = writeln!(
                out,
                "{}  {}  pref {}  ({}{})",
                g.id, g.predicate, g.preference, status, main
            );
        }
        out.push_str("\n== goal attacks\n");
        for a in &self.goal_attacks_raw {
            let kept = self
                .goal_attacks
                .iter()
                .any(|s| s.from == a.from && s.to == a.to);
            let mark = if kept { "successful" } else { "dropped" };
            let _ = writeln!(out, "{} -> {}  '{}'  {}", a.from, a.to, a.kinds, mark);
        }
        out.push_str("\n== selection\n");
        out.push_str(&self.selection.to_text(true));
        out.push_str("\n== beliefs\n");
        out.push_str(&beliefs_text(&self.beliefs));
        out.push_str("\n== rule instances\n");
        for r in &self.rule_instances {
            let _ = writeln!(out, "{}: {}  [{}]", r.id, r.rule, r.schema);
        }
        out.push_str("\n== arguments\n");
        for a in &self.arguments {
            let _ = writeln!(out, "{} = ⟨{}, {}⟩", a.id, braces(&a.support), a.claim);
        }
        let _ = writeln!(
            out,
            "\n== explanatory frameworks ({} semantics)",
            self.semantics
        );
        for (f, e) in self.frameworks.iter().zip(&self.explanations) {
            let _ = writeln!(out, "{}", f.to_text());
            let exts: Vec<String> = e.extensions.iter().flatten().map(braces).collect();
            let _ = writeln!(out, "  E = {}", exts.join(" | "));
        }
        out.push_str("\n== explanations\n");
        for e in &self.explanations {
            let _ = writeln!(out, "{}({}):", e.query, e.goal);
            for line in e.to_text().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(
                out,
                "\n== timing\nfilter {}us, select {}us, explain {}us",
                t.filter_us, t.select_us, t.explain_us
            );
        }
        out
    }
}
