//! Draw one instance of problem 7 as SVG.
//!
//!     cargo run --example render_svg -- figure.svg

use wernick::emit::{instance_trace, to_svg, SvgOptions};
use wernick::geom::Tolerance;
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel::{A, B, H};
use wernick::solver::{solve, Budget, ProblemSpec};
use wernick::verifier::sample_scene;

fn main() {
    let kb = KnowledgeBase::wernick();
    let problem = ProblemSpec::new("7", &[A, B, H]);
    let plan = solve(&kb, &problem, Budget::default()).expect("solvable").clean();
    let tol = Tolerance::default();
    let scene = sample_scene(&problem.given, 0, tol).expect("sampler");
    let trace = instance_trace(&plan, &problem, &scene, tol).expect("a complete branch");
    let svg = to_svg(&plan, &trace, SvgOptions { size: 360.0, auxiliary: true }).expect("drawable");
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, &svg).expect("write svg");
            println!("wrote {path}");
        }
        None => print!("{svg}"),
    }
}
