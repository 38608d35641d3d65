//! The cleaner-world worked example in its reference form, transcribed into the
//! library's display notation. Identifiers here follow the reference
//! numbering, which differs from the library's generation order, so tests
//! compare by content.

use std::collections::{BTreeMap, BTreeSet};

use goalarg::explain::{ExplanationBase, RuleInstance, SupportItem};
use goalarg::ArgumentId;

/// Reference belief list, `b1..b18`.
pub const BELIEFS: [&str; 18] = [
    "¬incomp(g5)",
    "incompat(g3,g2,'s')",
    "incompat(g3,g4,'t')",
    "incompat(g1,g4,'t,r')",
    "incompat(g2,g4,'t,r')",
    "max_util(g1)",
    "max_util(g3)",
    "max_util(g5)",
    "¬max_util(g2)",
    "¬max_util(g4)",
    "pref(g3,g4)",
    "¬pref(g4,g3)",
    "pref(g1,g4)",
    "¬pref(g4,g1)",
    "pref(g2,g4)",
    "¬pref(g4,g2)",
    "pref(g3,g2)",
    "¬pref(g2,g3)",
];

/// Reference rule instances `r1..r14`: schema, body belief numbers, head.
pub const RULES: [(&str, &[usize], &str); 14] = [
    ("r1", &[1], "pursued(g5)"),
    ("r2", &[2, 17], "pursued(g3)"),
    ("r3", &[2, 18], "¬pursued(g2)"),
    ("r2", &[3, 11], "pursued(g3)"),
    ("r3", &[3, 12], "¬pursued(g4)"),
    ("r2", &[4, 13], "pursued(g1)"),
    ("r3", &[4, 14], "¬pursued(g4)"),
    ("r2", &[5, 15], "pursued(g2)"),
    ("r3", &[5, 16], "¬pursued(g4)"),
    ("r5", &[6], "pursued(g1)"),
    ("r5", &[7], "pursued(g3)"),
    ("r5", &[8], "pursued(g5)"),
    ("r6", &[9], "¬pursued(g2)"),
    ("r6", &[10], "¬pursued(g4)"),
];

/// Reference arguments `A1..A14`: support beliefs, rule number, claim.
pub const ARGUMENTS: [(&[usize], usize, &str); 14] = [
    (&[1], 1, "pursued(g5)"),
    (&[2, 17], 2, "pursued(g3)"),
    (&[2, 18], 3, "¬pursued(g2)"),
    (&[3, 11], 4, "pursued(g3)"),
    (&[3, 12], 5, "¬pursued(g4)"),
    (&[4, 13], 6, "pursued(g1)"),
    (&[4, 14], 7, "¬pursued(g4)"),
    (&[5, 15], 8, "pursued(g2)"),
    (&[5, 16], 9, "¬pursued(g4)"),
    (&[6], 10, "pursued(g1)"),
    (&[7], 11, "pursued(g3)"),
    (&[8], 12, "pursued(g5)"),
    (&[9], 13, "¬pursued(g2)"),
    (&[10], 14, "¬pursued(g4)"),
];

/// Reference per-goal frameworks: argument numbers and grounded extension.
pub const FRAMEWORKS: [(&str, &[usize], &[usize]); 5] = [
    ("g1", &[6, 10], &[6, 10]),
    ("g2", &[3, 8, 13], &[3, 13]),
    ("g3", &[2, 4, 11], &[2, 4, 11]),
    ("g4", &[5, 7, 9, 14], &[5, 7, 9, 14]),
    ("g5", &[1, 12], &[1, 12]),
];

/// Reference partial-explanation sentences per query, with markup removed
/// but wording, order and the `be_fixed` spelling kept as in the reference.
pub const SENTENCES: [(&str, &str, &[&str]); 5] = [
    ("WHY", "g1", &[
        "clean(5,5) and be(in_workshop) have the following conflicts: 't,r'. Since clean(5,5) is more preferable than be(in_workshop), clean(5,5) became pursued",
        "Since clean(5,5) belonged to the set of goals that maximizes the utility, it became pursued",
    ]),
    ("WHY_NOT", "g2", &[
        "mop(5,5) and pickup(5,5) have the following conflicts: 's'. Since pickup(5,5) is less preferable than mop(5,5), pickup(5,5) did not become pursued",
        "Since pickup(5,5) did not belong to the set of goals that maximizes the utility, it did not become pursued",
    ]),
    ("WHY", "g3", &[
        "mop(5,5) and pickup(5,5) have the following conflicts: 's'. Since mop(5,5) is more preferable than pickup(5,5), mop(5,5) became pursued",
        "mop(5,5) and be(in_workshop) have the following conflicts: 't'. Since mop(5,5) is more preferable than be(in_workshop), mop(5,5) became pursued",
        "Since mop(5,5) belonged to the set of goals that maximizes the utility, it became pursued",
    ]),
    ("WHY_NOT", "g4", &[
        "mop(5,5) and be(in_workshop) have the following conflicts: 't'. Since be(in_workshop) is less preferable than mop(5,5), be(in_workshop) did not become pursued",
        "clean(5,5) and be(in_workshop) have the following conflicts: 't,r'. Since be(in_workshop) is less preferable than clean(5,5), be(in_workshop) did not become pursued",
        "pickup(5,5) and be(in_workshop) have the following conflicts: 't,r'. Since be(in_workshop) is less preferable than pickup(5,5), be(in_workshop) did not become pursued",
        "Since be(in_workshop) did not belong to the set of goals that maximizes the utility, it did not become pursued",
    ]),
    ("WHY", "g5", &[
        "be_fixed has no incompatibility, so it became pursued",
        "Since be_fixed belonged to the set of goals that maximizes the utility, it became pursued",
    ]),
];

/// The two spelling differences between the reference sentences and the
/// rendered ones: the reference goal name `be_fixed` for `be(fixed)`, and
/// the missing final period.
pub fn normalize_sentence(s: &str) -> String {
    s.trim_end_matches('.').replace("be_fixed", "be(fixed)")
}

/// Content key of a rule instance: schema, body atoms (sorted), head.
pub type RuleKey = (String, BTreeSet<String>, String);

/// Content key of an argument: support belief atoms, its rule, its claim.
pub type ArgumentKey = (BTreeSet<String>, RuleKey, String);

pub fn reference_rule(i: usize) -> RuleKey {
    let (schema, body, head) = RULES[i - 1];
    (
        schema.to_string(),
        body.iter().map(|b| BELIEFS[b - 1].to_string()).collect(),
        head.to_string(),
    )
}

pub fn reference_argument(i: usize) -> ArgumentKey {
    let (beliefs, rule, claim) = ARGUMENTS[i - 1];
    (
        beliefs.iter().map(|b| BELIEFS[b - 1].to_string()).collect(),
        reference_rule(rule),
        claim.to_string(),
    )
}

pub fn rule_key(base: &ExplanationBase, rule: &RuleInstance) -> RuleKey {
    (
        rule.schema.to_string(),
        rule.body
            .iter()
            .map(|b| {
                base.beliefs
                    .get(*b)
                    .expect("body belief exists")
                    .atom
                    .to_string()
            })
            .collect(),
        rule.head.to_string(),
    )
}

pub fn argument_key(base: &ExplanationBase, id: ArgumentId) -> ArgumentKey {
    let arg = base.argument(id).expect("argument exists");
    let mut beliefs = BTreeSet::new();
    let mut rules = Vec::new();
    for item in &arg.support {
        match item {
            SupportItem::Belief(b) => {
                beliefs.insert(
                    base.beliefs
                        .get(*b)
                        .expect("belief exists")
                        .atom
                        .to_string(),
                );
            }
            SupportItem::Rule(r) => {
                rules.push(rule_key(base, base.rule_instance(*r).expect("rule exists")))
            }
        }
    }
    assert_eq!(
        rules.len(),
        1,
        "{id} has exactly one rule instance in its support"
    );
    (beliefs, rules.pop().unwrap(), arg.claim.to_string())
}

/// Library argument ids keyed by content.
pub fn arguments_by_key(base: &ExplanationBase) -> BTreeMap<ArgumentKey, ArgumentId> {
    base.arguments
        .iter()
        .map(|a| (argument_key(base, a.id), a.id))
        .collect()
}
