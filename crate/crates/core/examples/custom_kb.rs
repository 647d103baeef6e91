//! A knowledge base written inline: just enough about altitudes to solve
//! "given A, B and the orthocenter H, construct C".

use wernick::emit::to_text;
use wernick::kb::load_kb;
use wernick::label::PointLabel::{A, B, H};
use wernick::solver::{solve, Budget, ProblemSpec};

const KB: &str = r#"
point A
point B
point C
point Ha
point Hb
point H

def 4: online Ha line(B,C)
def 4: perp line(A,Ha) line(B,C)
def 4: online Hb line(A,C)
def 4: perp line(B,Hb) line(A,C)
def 5: online H line(A,Ha)
def 5: online H line(B,Hb)

rule p3_ll: needs line ?L, online ?P ?L, line ?M, online ?P ?M
    gives ?P by intersect(?L,?M) ndg intersects(?L,?M)
    says "Intersect {L} and {M} to get {P}"
rule p1_line: needs point ?X, online ?X ?L, point ?Y, online ?Y ?L
    gives ?L by line_through(?X,?Y) ndg distinct(?X,?Y)
    says "Draw the line {L} through {X} and {Y}"
rule p5_perp: needs line ?P, perp ?Q ?P, point ?X, online ?X ?Q
    gives ?Q by perp_through(?X,?P)
    says "Draw {Q} through {X} perpendicular to {P}"
"#;

fn main() {
    let kb = load_kb(KB).expect("valid knowledge base");
    println!("{} facts after closure, {} rules", kb.facts().len(), kb.rules.len());
    let problem = ProblemSpec::new("7", &[A, B, H]);
    match solve(&kb, &problem, Budget::default()) {
        Ok(plan) => print!("{}", to_text(&kb, &plan.clean())),
        Err(e) => println!("{e}"),
    }
}
