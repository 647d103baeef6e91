//! Verify the clean plan of problem 7 on random triangles and show how each
//! instance went.
//!
//!     cargo run --example verify_plan -- 100

use wernick::geom::Tolerance;
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel::{A, B, H};
use wernick::solver::{solve, Budget, ProblemSpec};
use wernick::verifier::{execute, sample_scene, spec_residual, verify};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(100, |s| s.parse().expect("instance count"));
    let kb = KnowledgeBase::wernick();
    let problem = ProblemSpec::new("7", &[A, B, H]);
    let plan = solve(&kb, &problem, Budget::default()).expect("problem 7 is solvable").clean();
    let tol = Tolerance::default();

    // one scene by hand: every branch and its residual
    let scene = sample_scene(&problem.given, 0, tol).expect("sampler");
    for t in execute(&plan, &scene) {
        println!("branch {:?}: residual {:?}", t.choices, spec_residual(&t, &problem, &scene));
    }

    let report = verify(&plan, &problem, n, 0, tol);
    print!("{}", report.to_text().lines().take(5).map(|l| format!("{l}\n")).collect::<String>());
    println!("...");
    println!("passed {}/{}, {} NDG evaluations", report.passed(), report.tried(), report.ndg_evaluations);
}
