//! Single-step mutants of a clean plan and whether the verifier rejects them.
//!
//!     cargo run --release --example mutation_testing -- A B H

use wernick::geom::Tolerance;
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel;
use wernick::solver::{solve, Budget, ProblemSpec};
use wernick::verifier::{mutants, verify};

fn main() {
    let given: Vec<PointLabel> = std::env::args().skip(1).map(|s| s.parse().expect("point label")).collect();
    let given = if given.is_empty() { vec![PointLabel::A, PointLabel::Ma, PointLabel::H] } else { given };
    let kb = KnowledgeBase::wernick();
    let problem = ProblemSpec::new("mut", &given);
    let plan = match solve(&kb, &problem, Budget::default()) {
        Ok(p) => p.clean(),
        Err(e) => return println!("{e}"),
    };
    print!("{}", plan.to_text());
    let mut killed = 0;
    let all = mutants(&plan);
    for m in &all {
        let report = verify(&m.plan, &problem, 20, 1000, Tolerance::default());
        let verdict = if report.is_pass() { "SURVIVED" } else { "killed" };
        killed += usize::from(!report.is_pass());
        println!("{:<40} {verdict} ({}/{})", m.description, report.passed(), report.tried());
    }
    println!("{killed} of {} mutants killed", all.len());
}
