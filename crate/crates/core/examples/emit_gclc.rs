//! GCLC-style script for one random instance of a problem, run back through
//! the bundled interpreter to check that it rebuilds the vertices.
//!
//!     cargo run --example emit_gclc -- A B H

use wernick::emit::{instance_trace, interpret, to_gclc, Frame, FRAME};
use wernick::geom::Tolerance;
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel;
use wernick::solver::{solve, Budget, ProblemSpec};
use wernick::verifier::sample_scene;

fn main() {
    let given: Vec<PointLabel> = std::env::args().skip(1).map(|s| s.parse().expect("point label")).collect();
    let given = if given.is_empty() { vec![PointLabel::A, PointLabel::B, PointLabel::H] } else { given };
    let kb = KnowledgeBase::wernick();
    let problem = ProblemSpec::new("gclc", &given);
    let plan = match solve(&kb, &problem, Budget::default()) {
        Ok(p) => p.clean(),
        Err(e) => return println!("{e}"),
    };
    let tol = Tolerance::default();
    let scene = sample_scene(&problem.given, 3, tol).expect("sampler");
    let trace = instance_trace(&plan, &problem, &scene, tol).expect("a complete branch");
    let script = to_gclc(&plan, &trace).expect("every step has a script form");
    print!("{script}");

    let state = interpret(&script.to_string(), FRAME).expect("script runs");
    let points = trace.assignment.iter().filter_map(|(_, v)| v.point());
    let frame = Frame::fit(points, FRAME, 5.0);
    for &g in &plan.goal {
        let drawn = state.point(&g.ident()).expect("goal point defined");
        let traced = frame.map(trace.point(g).expect("goal point traced"));
        println!("% {g}: off by {:.1e}", drawn.dist(traced));
    }
}
