use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{solve, Budget, ConstructionPlan, FailureKind, ProblemSpec, SolveError, Status};
use crate::kb::KnowledgeBase;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub problem: ProblemSpec,
    pub result: Result<ConstructionPlan, SolveError>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn solved(&self) -> bool {
        matches!(&self.result, Ok(p) if p.solved)
    }

    pub fn clean(&self) -> Option<ConstructionPlan> {
        self.result.as_ref().ok().map(|p| p.clean())
    }

    pub fn failure(&self) -> Option<FailureKind> {
        self.result.as_ref().err().and_then(|e| e.kind())
    }

    /// A solve on a problem the catalog marks unsolvable.
    pub fn is_discrepancy(&self) -> bool {
        self.solved() && self.problem.status == Status::U
    }
}

#[derive(Debug, Clone, Default)]
pub struct CorpusSummary {
    pub outcomes: Vec<Outcome>,
}

impl CorpusSummary {
    pub fn solved(&self) -> usize {
        self.outcomes.iter().filter(|o| o.solved()).count()
    }

    pub fn solved_with_status(&self, s: Status) -> usize {
        self.outcomes.iter().filter(|o| o.solved() && o.problem.status == s).count()
    }

    pub fn discrepancies(&self) -> Vec<&Outcome> {
        self.outcomes.iter().filter(|o| o.is_discrepancy()).collect()
    }

    pub fn max_clean_len(&self) -> usize {
        self.outcomes.iter().filter_map(|o| o.clean()).map(|p| p.len()).max().unwrap_or(0)
    }
}

/// Solve every problem, `jobs` at a time (0 = all cores); outcomes keep input order.
pub fn solve_corpus(kb: &KnowledgeBase, problems: &[ProblemSpec], budget: Budget, jobs: usize) -> CorpusSummary {
    let run = |p: &ProblemSpec| {
        let start = Instant::now();
        let result = solve(kb, p, budget);
        Outcome { problem: p.clone(), result, elapsed: start.elapsed() }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build();
    let outcomes = match pool {
        Ok(pool) => pool.install(|| problems.par_iter().map(run).collect()),
        Err(_) => problems.iter().map(run).collect(),
    };
    CorpusSummary { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PointLabel::*;

    #[test]
    fn outcomes_keep_input_order_and_flag_u_solves() {
        let kb = KnowledgeBase::wernick();
        let problems = vec![
            ProblemSpec::new("a", &[A, B, H]).with_status(Status::U),
            ProblemSpec::new("b", &[Ta, Tb, Tc]).with_status(Status::U),
            ProblemSpec::new("c", &[A, B, G]).with_status(Status::S),
        ];
        let one = solve_corpus(&kb, &problems, Budget::default(), 1);
        let many = solve_corpus(&kb, &problems, Budget::default(), 3);
        let ids: Vec<&str> = many.outcomes.iter().map(|o| o.problem.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        for (x, y) in one.outcomes.iter().zip(&many.outcomes) {
            assert_eq!(x.result, y.result);
        }
        assert_eq!(many.solved(), 2);
        assert_eq!(many.solved_with_status(Status::S), 1);
        assert_eq!(many.discrepancies().len(), 1);
        assert_eq!(many.outcomes[1].failure(), Some(FailureKind::Exhausted));
        assert_eq!(many.max_clean_len(), 5);
    }
}
