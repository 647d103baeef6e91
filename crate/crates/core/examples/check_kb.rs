//! Load the shipped knowledge base and check every closed fact numerically.
//!
//!     cargo run --release --example check_kb -- 1000

use std::time::Instant;

use wernick::geom::Tolerance;
use wernick::kb::{numeric_check_kb, KnowledgeBase};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(200, |s| s.parse().expect("triangle count"));
    let kb = KnowledgeBase::wernick();
    println!(
        "{} rules, {} definition facts, {} lemma facts, {} closed facts, {} admissible objects",
        kb.rules.len(),
        kb.instantiate_definitions().len(),
        kb.instantiate_lemmas().len(),
        kb.facts().len(),
        kb.admissible().len()
    );
    let start = Instant::now();
    let report = numeric_check_kb(&kb, n, Tolerance::default());
    println!("{} triangles, {} violations, {:.2?}", report.samples, report.violations.len(), start.elapsed());
    for (fact, count) in report.by_fact() {
        println!("  {fact}: {count}");
    }
}
