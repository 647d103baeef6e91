//! Numbered construction sentences for a problem given by its points.
//!
//!     cargo run --example emit_text -- A B G

use wernick::emit::to_text;
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel;
use wernick::solver::{solve, Budget, ProblemSpec};

fn main() {
    let given: Vec<PointLabel> = std::env::args().skip(1).map(|s| s.parse().expect("point label")).collect();
    let given = if given.is_empty() { vec![PointLabel::A, PointLabel::B, PointLabel::G] } else { given };
    let kb = KnowledgeBase::wernick();
    match solve(&kb, &ProblemSpec::new("text", &given), Budget::default()) {
        Ok(plan) => print!("{}", to_text(&kb, &plan.clean())),
        Err(e) => println!("{e}"),
    }
}
