//! Solve every catalog problem in parallel and compare with the catalog statuses.
//!
//!     cargo run --release --example solve_catalog

use wernick::catalog::wernick_catalog;
use wernick::kb::KnowledgeBase;
use wernick::solver::{solve_corpus, Budget, Status};

fn main() {
    let kb = KnowledgeBase::wernick();
    let problems: Vec<_> = wernick_catalog().iter().map(|e| e.problem()).collect();
    let summary = solve_corpus(&kb, &problems, Budget::default(), 0);
    for o in &summary.outcomes {
        match o.clean() {
            Some(c) => println!("{:>3} {} {:>2} steps  {:.3?}", o.problem.id, o.problem.status.symbol(), c.len(), o.elapsed),
            None => println!("{:>3} {} unsolved ({:?})", o.problem.id, o.problem.status.symbol(), o.failure()),
        }
    }
    let s_total = problems.iter().filter(|p| p.status == Status::S).count();
    println!("solved {} of {}", summary.solved(), problems.len());
    println!("S problems solved: {} of {s_total}", summary.solved_with_status(Status::S));
    println!("U problems solved: {}", summary.solved_with_status(Status::U));
    println!("longest clean plan: {} steps", summary.max_clean_len());
}
