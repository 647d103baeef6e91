use std::fmt;

use crate::kb::KnowledgeBase;
use crate::solver::{ConstructionPlan, ConstructionStep};

/// Natural-language construction, one sentence per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePlan {
    pub sentences: Vec<String>,
}

impl fmt::Display for SentencePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sentences.iter().enumerate() {
            writeln!(f, "{}. {s}", i + 1)?;
        }
        Ok(())
    }
}

/// Fill a rule's `says` template; unknown rules fall back to the plan line.
pub fn sentence(kb: &KnowledgeBase, step: &ConstructionStep) -> String {
    let Some(rule) = kb.rule(&step.rule) else { return step.to_string() };
    let mut out = String::new();
    let mut rest = rule.template.as_str();
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let Some(close) = rest[open..].find('}') else { break };
        let name = &rest[open + 1..open + close];
        let value = if name == "out" { Some(&step.output) } else { step.binding(name) };
        match value {
            Some(t) => out.push_str(&t.pretty()),
            None => out.push_str(&rest[open..=open + close]),
        }
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    out
}

pub fn to_text(kb: &KnowledgeBase, plan: &ConstructionPlan) -> SentencePlan {
    let n = plan.steps.len();
    let sentences =
        plan.steps.iter().enumerate().map(|(i, s)| format!("{}{}", sentence(kb, s), if i + 1 == n { "." } else { ";" })).collect();
    SentencePlan { sentences }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PointLabel::*;
    use crate::solver::{solve, Budget, ProblemSpec};

    #[test]
    fn problem_7_reads_step_by_step() {
        let kb = KnowledgeBase::wernick();
        let plan = solve(&kb, &ProblemSpec::new("7", &[A, B, H]), Budget::default()).unwrap().clean();
        let text = to_text(&kb, &plan);
        assert_eq!(text.sentences.len(), 5);
        assert_eq!(text.sentences[0], "Using the point A and the point H, construct the line AH_a;");
        assert_eq!(text.sentences[2], "Using the point A and the line BH_b, construct the line AC;");
        assert_eq!(text.sentences[4], "Using the line AC and the line BC, construct the point C.");
        assert!(text.to_string().starts_with("1. Using"));
    }

    #[test]
    fn unknown_rules_fall_back_to_the_plan_line() {
        let kb = KnowledgeBase::wernick();
        let mut plan = solve(&kb, &ProblemSpec::new("4", &[A, B, G]), Budget::default()).unwrap().clean();
        plan.steps[0].rule = "nope".into();
        assert_eq!(sentence(&kb, &plan.steps[0]), plan.steps[0].to_string());
        assert_eq!(sentence(&kb, &plan.steps[1]), "Construct the point C such that CM_c = 3·GM_c");
    }
}
