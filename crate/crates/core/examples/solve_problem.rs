//! Solve one problem from its three given points and print the raw and clean plans.
//!
//!     cargo run --example solve_problem -- A B H

use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel;
use wernick::solver::{solve, Budget, ProblemSpec};

fn main() {
    let given: Vec<PointLabel> = std::env::args().skip(1).map(|s| s.parse().expect("point label")).collect();
    let given = if given.is_empty() { vec![PointLabel::A, PointLabel::B, PointLabel::H] } else { given };
    let kb = KnowledgeBase::wernick();
    let problem = ProblemSpec::new("cli", &given);
    match solve(&kb, &problem, Budget::default()) {
        Ok(plan) => {
            println!("raw plan, {} steps", plan.len());
            print!("{}", plan.to_text());
            let clean = plan.clean();
            println!("clean plan, {} steps", clean.len());
            print!("{}", clean.to_text());
        }
        Err(e) => println!("{e}"),
    }
}
