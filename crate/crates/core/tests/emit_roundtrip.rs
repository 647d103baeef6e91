//! Every solved problem's script, run through the interpreter, draws a
//! triangle whose named points land on the script's given points.

use wernick::catalog::wernick_catalog;
use wernick::emit::{instance_trace, interpret, to_gclc, to_svg, to_text, SvgOptions, FRAME};
use wernick::geom::{characteristic_points, Tolerance};
use wernick::kb::KnowledgeBase;
use wernick::label::PointLabel::*;
use wernick::solver::{solve_corpus, Budget};
use wernick::verifier::sample_scene;

#[test]
fn scripts_reconstruct_the_givens() {
    let kb = KnowledgeBase::wernick();
    let problems: Vec<_> = wernick_catalog().iter().map(|e| e.problem()).collect();
    let summary = solve_corpus(&kb, &problems, Budget::default(), 0);
    let tol = Tolerance::default();
    let mut checked = 0;
    for o in &summary.outcomes {
        let Some(plan) = o.clean() else { continue };
        assert_eq!(to_text(&kb, &plan).sentences.len(), plan.len());
        for seed in 0..3 {
            let scene = sample_scene(&o.problem.given, seed, tol).unwrap();
            let trace = instance_trace(&plan, &o.problem, &scene, tol).unwrap();
            let script = to_gclc(&plan, &trace).unwrap_or_else(|e| panic!("problem {}: {e}", o.problem.id));
            let st = interpret(&script.to_string(), FRAME).unwrap_or_else(|e| panic!("problem {}: {e}", o.problem.id));
            let [a, b, c] = [A, B, C].map(|p| st.point(&p.ident()).unwrap());
            let cp = characteristic_points(a, b, c, &tol).unwrap();
            for &g in &o.problem.given {
                let d = cp.get(g).unwrap().dist(st.point(&g.ident()).unwrap());
                assert!(d < 1e-8 * FRAME, "problem {} seed {seed}: {g} off by {d}", o.problem.id);
            }
            assert!(to_svg(&plan, &trace, SvgOptions::default()).unwrap().contains("class=\"side\""));
            checked += 1;
        }
    }
    assert!(checked >= 55 * 3);
}
