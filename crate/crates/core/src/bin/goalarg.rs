use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use goalarg::explain::ExplanationContent;
use goalarg::render::{general_af_to_dot, goal_af_to_dot, xaf_to_dot, Renderer};
use goalarg::report::{belief_views, beliefs_text, ExplanationView, ReportDocument, SelectionView};
use goalarg::scenario::Config;
use goalarg::{
    run, ExplanationKind, GoalId, RunOptions, RunReport, Scenario, Semantics, UtilityVariant,
};

#[derive(Parser)]
#[command(
    name = "goalarg",
    version,
    about = "Select goals by argumentation and explain the choice"
)]
struct Cli {
    /// Output format. `dot` only applies to `explain --complete`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Utility used by selection; overrides the scenario's config.
    #[arg(long, global = true, value_enum)]
    utility: Option<UtilityArg>,
    /// Semantics for partial explanations; overrides the scenario's config.
    #[arg(long, global = true)]
    semantics: Option<Semantics>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum UtilityArg {
    #[value(name = "sum_all", alias = "sum-all")]
    SumAll,
    #[value(name = "sum_main", alias = "sum-main")]
    SumMain,
}

impl From<UtilityArg> for UtilityVariant {
    fn from(u: UtilityArg) -> Self {
        match u {
            UtilityArg::SumAll => UtilityVariant::SumAll,
            UtilityArg::SumMain => UtilityVariant::SumMain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryArg {
    Why,
    WhyNot,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotStage {
    /// Instrumental arguments and their labeled attacks.
    General,
    /// Goal framework before preference filtering.
    GoalRaw,
    /// Goal framework after preference filtering.
    Goal,
    /// One goal's explanatory framework (needs --goal).
    Xaf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file and report warnings.
    Validate { scenario: PathBuf },
    /// Print the selected goals.
    Select {
        scenario: PathBuf,
        /// Also list every maximal-utility extension.
        #[arg(long)]
        all: bool,
    },
    /// Print the generated beliefs.
    Beliefs { scenario: PathBuf },
    /// Answer WHY or WHY_NOT for one goal.
    Explain {
        query: QueryArg,
        goal: String,
        scenario: PathBuf,
        /// Return the whole explanatory framework instead of its extensions.
        #[arg(long)]
        complete: bool,
    },
    /// Print every stage of the pipeline.
    Report {
        scenario: PathBuf,
        /// Include stage timings (makes output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Export one stage as a DOT graph.
    Export {
        #[arg(long = "dot", value_enum)]
        stage: DotStage,
        #[arg(long)]
        goal: Option<String>,
        scenario: PathBuf,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load(path: &PathBuf) -> Result<Scenario> {
    Scenario::load(path).with_context(|| format!("scenario {}", path.display()))
}

fn run_scenario(cli: &Cli, scenario: &Scenario) -> Result<RunReport> {
    let flags = Config {
        utility: cli.utility.map(Into::into),
        semantics: cli.semantics,
        tie_break: None,
    };
    Ok(run(scenario, RunOptions::resolve(flags, scenario))?)
}

#[derive(Serialize)]
struct ValidateDocument {
    valid: bool,
    goals: usize,
    arguments: usize,
    warnings: Vec<String>,
}

fn execute(cli: &Cli) -> Result<()> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Explain { complete: true, .. })
    {
        bail!("--format dot applies only to `explain --complete`; use `export --dot` for other stages");
    }
    match &cli.command {
        Command::Validate { scenario } => {
            let s = load(scenario)?;
            let doc = ValidateDocument {
                valid: true,
                goals: s.raw.goals().len(),
                arguments: s.general.as_ref().map_or(0, |g| g.arguments().len()),
                warnings: s.warnings.iter().map(ToString::to_string).collect(),
            };
            match cli.format {
                Format::Json => print_json(&doc)?,
                _ => {
                    println!("valid: {} goals, {} arguments", doc.goals, doc.arguments);
                    for w in &doc.warnings {
                        println!("warning: {w}");
                    }
                }
            }
        }
        Command::Select { scenario, all } => {
            let s = load(scenario)?;
            let report = run_scenario(cli, &s)?;
            let view = SelectionView::new(&report.selection, &report.utility);
            match cli.format {
                Format::Json => print_json(&view)?,
                _ => print!("{}", view.to_text(*all)),
            }
        }
        Command::Beliefs { scenario } => {
            let s = load(scenario)?;
            let report = run_scenario(cli, &s)?;
            let views = belief_views(&report.base.beliefs);
            match cli.format {
                Format::Json => print_json(&views)?,
                _ => print!("{}", beliefs_text(&views)),
            }
        }
        Command::Explain {
            query,
            goal,
            scenario,
            complete,
        } => {
            let s = load(scenario)?;
            let report = run_scenario(cli, &s)?;
            let goal = GoalId::from(goal.as_str());
            let kind = if *complete {
                ExplanationKind::Complete
            } else {
                ExplanationKind::Partial
            };
            let explanation = match query {
                QueryArg::Why => report.base.why(&goal, kind, report.semantics)?,
                QueryArg::WhyNot => report.base.why_not(&goal, kind, report.semantics)?,
            };
            match (cli.format, &explanation.content) {
                (Format::Dot, ExplanationContent::Complete(xaf)) => {
                    print!("{}", xaf_to_dot(xaf, &report.base));
                }
                (format, _) => {
                    let view =
                        ExplanationView::new(&explanation, &report.base, &Renderer::default())?;
                    if format == Format::Json {
                        print_json(&view)?;
                    } else {
                        if matches!(&view.extensions, Some(e) if e.is_empty()) {
                            eprintln!(
                                "note: the framework of `{goal}` has no {} extension",
                                report.semantics
                            );
                        }
                        print!("{}", view.to_text());
                    }
                }
            }
        }
        Command::Report { scenario, timing } => {
            let s = load(scenario)?;
            let report = run_scenario(cli, &s)?;
            let doc = ReportDocument::new(&report, *timing)?;
            match cli.format {
                Format::Json => print_json(&doc)?,
                _ => print!("{}", doc.to_text()),
            }
        }
        Command::Export {
            stage,
            goal,
            scenario,
        } => {
            let s = load(scenario)?;
            let dot = match stage {
                DotStage::General => match &s.general {
                    Some(general) => general_af_to_dot(general),
                    None => {
                        bail!("scenario gives goal attacks directly; it has no general framework")
                    }
                },
                DotStage::GoalRaw => goal_af_to_dot(&s.raw),
                DotStage::Goal => goal_af_to_dot(&s.raw.apply_successful_attacks()),
                DotStage::Xaf => {
                    let Some(goal) = goal else {
                        bail!("`export --dot xaf` needs --goal");
                    };
                    let report = run_scenario(cli, &s)?;
                    let xaf = report.base.framework(&GoalId::from(goal.as_str()))?;
                    xaf_to_dot(xaf, &report.base)
                }
            };
            print!("{dot}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
