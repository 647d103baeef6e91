//! Forward-chaining waterfall search over the primitive construction rules.

mod corpus;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::time::Duration;

use crate::kb::{NdgKind, Op, Term};
use crate::label::PointLabel;

pub use corpus::{solve_corpus, CorpusSummary, Outcome};
pub use search::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: usize,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 10_000, max_time: Duration::from_secs(30) }
    }
}

/// Catalog status of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    S,
    U,
    R,
    L,
    Unknown,
}

impl Status {
    pub fn symbol(self) -> &'static str {
        match self {
            Status::S => "S",
            Status::U => "U",
            Status::R => "R",
            Status::L => "L",
            Status::Unknown => "?",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Status> {
        Some(match s {
            "S" => Status::S,
            "U" => Status::U,
            "R" => Status::R,
            "L" => Status::L,
            "?" | "" => Status::Unknown,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub id: String,
    pub given: Vec<PointLabel>,
    pub goal: Vec<PointLabel>,
    pub status: Status,
}

impl ProblemSpec {
    /// A problem asking for the vertices A, B, C.
    pub fn new(id: impl Into<String>, given: &[PointLabel]) -> ProblemSpec {
        use PointLabel::*;
        ProblemSpec { id: id.into(), given: given.to_vec(), goal: vec![A, B, C], status: Status::Unknown }
    }

    pub fn with_status(mut self, status: Status) -> ProblemSpec {
        self.status = status;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NdgCondition {
    pub kind: NdgKind,
    pub args: Vec<Term>,
}

impl fmt::Display for NdgCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind.name())?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionStep {
    pub rule: String,
    /// Rule variable bindings, in the rule's variable order.
    pub bindings: Vec<(String, Term)>,
    pub op: Op,
    pub args: Vec<Term>,
    pub output: Term,
    pub ndg: Vec<NdgCondition>,
}

impl ConstructionStep {
    /// Constructed objects the step reads, including the base angle of an angle expression.
    pub fn inputs(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for a in &self.args {
            match a {
                Term::Angle(e) => out.extend(e.base.map(|b| b.object())),
                Term::Num(_) => {}
                t => out.push(t.clone()),
            }
        }
        out
    }

    pub fn binding(&self, var: &str) -> Option<&Term> {
        self.bindings.iter().find(|(v, _)| v == var).map(|(_, t)| t)
    }
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.rule)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ") -> {}", self.output)?;
        if !self.ndg.is_empty() {
            f.write_str(" [ndg: ")?;
            for (i, n) in self.ndg.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{n}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub given: Vec<PointLabel>,
    pub goal: Vec<PointLabel>,
    pub steps: Vec<ConstructionStep>,
    pub solved: bool,
}

impl ConstructionPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Accumulated non-degeneracy conditions, without repeats.
    pub fn ndg(&self) -> Vec<NdgCondition> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in self.steps.iter().flat_map(|s| &s.ndg) {
            if seen.insert(n.clone()) {
                out.push(n.clone());
            }
        }
        out
    }

    /// Canonical text, one step per line.
    pub fn to_text(&self) -> String {
        self.steps.iter().enumerate().map(|(i, s)| format!("{}: {s}\n", i + 1)).collect()
    }

    fn is_given(&self, t: &Term) -> bool {
        t.as_point().is_some_and(|p| self.given.contains(&p))
    }

    /// Backward dependency slice from the goal points.
    pub fn clean(&self) -> ConstructionPlan {
        let mut needed: BTreeSet<Term> = self.goal.iter().map(|&p| Term::Point(p)).filter(|t| !self.is_given(t)).collect();
        let mut keep = vec![false; self.steps.len()];
        for (i, s) in self.steps.iter().enumerate().rev() {
            if needed.remove(&s.output) {
                keep[i] = true;
                needed.extend(s.inputs().into_iter().filter(|t| !self.is_given(t)));
            }
        }
        let steps = self.steps.iter().zip(&keep).filter(|(_, k)| **k).map(|(s, _)| s.clone()).collect();
        ConstructionPlan { given: self.given.clone(), goal: self.goal.clone(), steps, solved: self.solved }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// No rule applies any more.
    Exhausted,
    /// Step or time limit reached.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("search failed ({kind:?}) after {} steps", trace.len())]
    Failure { kind: FailureKind, trace: ConstructionPlan },
    #[error("point {0} is not in the knowledge base vocabulary")]
    UnknownLabel(PointLabel),
}

impl SolveError {
    pub fn kind(&self) -> Option<FailureKind> {
        match self {
            SolveError::Failure { kind, .. } => Some(*kind),
            SolveError::UnknownLabel(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{Ctor, Rational};
    use PointLabel::*;

    fn step(rule: &str, args: Vec<Term>, output: Term) -> ConstructionStep {
        ConstructionStep { rule: rule.into(), bindings: Vec::new(), op: Op::LineThrough, args, output, ndg: Vec::new() }
    }

    fn plan() -> ConstructionPlan {
        let p = Term::Point;
        let l = |a, b| Term::obj(Ctor::Line, vec![p(a), p(b)]);
        let mut s1 = step("p1_line", vec![p(A), p(H)], l(A, Ha));
        s1.ndg.push(NdgCondition { kind: NdgKind::Distinct, args: vec![p(A), p(H)] });
        let mut s2 = s1.clone();
        s2.output = l(A, Hb);
        ConstructionPlan {
            given: vec![A, B, H],
            goal: vec![A, B, C],
            steps: vec![
                s1,
                s2,
                step("p16_ratio", vec![p(A), p(B), p(A), Term::Num(Rational::new(1, 2))], p(Mc)),
                step("p3_ll", vec![l(A, Ha), p(Mc)], p(C)),
            ],
            solved: true,
        }
    }

    #[test]
    fn clean_keeps_only_the_goal_slice() {
        let clean = plan().clean();
        let outs: Vec<String> = clean.steps.iter().map(|s| s.output.to_string()).collect();
        assert_eq!(outs, ["line(A,Ha)", "Mc", "C"]);
        assert_eq!(clean.clean(), clean);
    }

    #[test]
    fn ndg_conditions_are_deduplicated() {
        let p = plan();
        assert_eq!(p.ndg().len(), 1);
        assert_eq!(p.ndg()[0].to_string(), "distinct(A,H)");
    }

    #[test]
    fn text_form() {
        let text = plan().to_text();
        assert!(text.starts_with("1: p1_line(A, H) -> line(A,Ha) [ndg: distinct(A,H)]\n"), "{text}");
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("p16_ratio(A, B, A, 1/2) -> Mc"));
    }

    #[test]
    fn status_symbols_round_trip() {
        for s in [Status::S, Status::U, Status::R, Status::L, Status::Unknown] {
            assert_eq!(Status::from_symbol(s.symbol()), Some(s));
        }
        assert_eq!(Status::from_symbol("X"), None);
    }
}
