use std::collections::HashMap;
use std::fmt;

use super::interp::{GVal, GclcState};
use super::EmitError;
use crate::geom::{Kernel, NumCircle, NumLine, Tolerance, Vec2};
use crate::kb::model::{line_distance, Value};
use crate::kb::{Ctor, Kind, Op, Term};
use crate::label::PointLabel;
use crate::solver::ConstructionPlan;
use crate::verifier::BranchTrace;

/// Side of the square the figure is scaled into.
pub const FRAME: f64 = 60.0;
const MARGIN: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GclcScript {
    pub header: Vec<String>,
    pub body: Vec<String>,
    pub footer: Vec<String>,
}

impl GclcScript {
    pub fn lines(&self) -> impl Iterator<Item = &String> {
        self.header.iter().chain(&self.body).chain(&self.footer)
    }

    pub fn len(&self) -> usize {
        self.header.len() + self.body.len() + self.footer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for GclcScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.lines() {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Similarity taking the trace's points into the drawing frame.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub min: Vec2,
    pub scale: f64,
}

impl Frame {
    pub fn fit(points: impl IntoIterator<Item = Vec2>, size: f64, margin: f64) -> Frame {
        let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.is_finite() {
            return Frame { min: Vec2::new(-margin, -margin), scale: 1.0 };
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let scale = (size - 2.0 * margin) / extent;
        Frame { min: lo - Vec2::new(margin, margin) * (1.0 / scale), scale }
    }

    pub fn map(&self, p: Vec2) -> Vec2 {
        (p - self.min) * self.scale
    }

    pub fn map_value(&self, v: &Value) -> Option<Value> {
        Some(match v {
            Value::Point(p) => Value::Point(self.map(*p)),
            Value::Line(l) => Value::Line(NumLine::through(self.map(l.anchor()), l.direction()).ok()?),
            Value::Circle(c) => Value::Circle(NumCircle::new(self.map(c.center), c.radius * self.scale).ok()?),
            Value::Angle(a) => Value::Angle(*a),
            Value::Arcs(_) => return None,
        })
    }
}

pub(crate) fn trace_frame(trace: &BranchTrace, size: f64, margin: f64) -> Frame {
    Frame::fit(trace.assignment.iter().filter_map(|(_, v)| v.point()), size, margin)
}

fn close(g: GVal, v: &Value, eps: f64) -> bool {
    match (g, v) {
        (GVal::Point(p), Value::Point(q)) => p.dist(*q) <= eps,
        (GVal::Line(l), Value::Line(m)) => line_distance(&l, m, FRAME) <= eps,
        (GVal::Circle(c), Value::Circle(k)) => c.center.dist(k.center) + (c.radius - k.radius).abs() <= eps,
        (GVal::Number(d), Value::Angle(a)) => (d - a.to_degrees()).abs() <= 1e-6,
        _ => false,
    }
}

fn is_side(t: &Term) -> bool {
    use PointLabel::*;
    [Term::line(A, B), Term::line(A, C), Term::line(B, C)].contains(t)
}

struct Emitter {
    state: GclcState,
    body: Vec<String>,
    names: HashMap<Term, String>,
    arcs: HashMap<String, [String; 2]>,
    aux: usize,
}

impl Emitter {
    fn name(&self, t: &Term) -> String {
        match t {
            Term::Num(r) => r.to_string(),
            t => self.names.get(t).cloned().unwrap_or_else(|| t.ident()),
        }
    }

    fn fresh(&mut self) -> String {
        self.aux += 1;
        format!("aux{}", self.aux)
    }

    fn run(&mut self, lines: Vec<String>) -> Result<(), EmitError> {
        for l in lines {
            self.state.exec(&l).map_err(|msg| EmitError::Script { line: self.body.len() + 1, msg })?;
            self.body.push(l);
        }
        Ok(())
    }

    /// Among alternative command sequences, commit the first whose `out` matches the trace.
    fn choose(&mut self, options: Vec<Vec<String>>, out: &str, target: Option<&Value>) -> Result<(), EmitError> {
        let eps = 1e-6 * FRAME;
        for opt in &options {
            let mut st = self.state.clone();
            if opt.iter().all(|l| st.exec(l).is_ok()) {
                let hit = match (st.get(out), target) {
                    (Some(g), Some(v)) => close(g, v, eps),
                    (_, None) => true,
                    (None, Some(_)) => false,
                };
                if hit {
                    return self.run(opt.clone());
                }
            }
        }
        Err(EmitError::BranchNotReproduced(out.to_string()))
    }
}

/// Script for one executed instance of the plan (`trace` must be complete).
pub fn to_gclc(plan: &ConstructionPlan, trace: &BranchTrace) -> Result<GclcScript, EmitError> {
    if !trace.is_complete() {
        return Err(EmitError::NoCompleteTrace);
    }
    let frame = trace_frame(trace, FRAME, MARGIN);
    let mut header = Vec::new();
    for &g in &plan.given {
        let p = frame.map(trace.point(g).ok_or(EmitError::NoCompleteTrace)?);
        header.push(format!("point {} {} {}", g.ident(), p.x, p.y));
    }
    let mut e = Emitter {
        state: GclcState::new(Kernel::new(Tolerance::default(), FRAME * std::f64::consts::SQRT_2)),
        body: Vec::new(),
        names: HashMap::new(),
        arcs: HashMap::new(),
        aux: 0,
    };
    for l in &header {
        e.state.exec(l).map_err(|msg| EmitError::Script { line: 0, msg })?;
    }
    for (i, step) in plan.steps.iter().enumerate() {
        let out = step.output.ident();
        let target = trace.value(&step.output).and_then(|v| frame.map_value(&v));
        let a: Vec<String> = step.args.iter().map(|t| e.name(t)).collect();
        let one = |s: String| vec![vec![s]];
        let options: Vec<Vec<String>> = match step.op {
            Op::LineThrough => one(format!("line {out} {} {}", a[0], a[1])),
            Op::CircleCenterThrough => one(format!("circle {out} {} {}", a[0], a[1])),
            Op::PerpBisector => one(format!("med {out} {} {}", a[0], a[1])),
            Op::PerpThrough => one(format!("perp {out} {} {}", a[0], a[1])),
            Op::Reflect => one(format!("reflexion {out} {} {}", a[1], a[0])),
            Op::MirrorLine => one(format!("reflexion {out} {} {}", a[1], a[0])),
            Op::AngleMeasure => one(format!("angle {out} {} {} {}", a[1], a[0], a[2])),
            Op::HarmonicConjugate => one(format!("harmonic {out} {} {} {}", a[0], a[1], a[2])),
            Op::DiameterCircle => {
                let m = e.fresh();
                vec![vec![format!("midpoint {m} {} {}", a[0], a[1]), format!("circle {out} {m} {}", a[0])]]
            }
            Op::Circumcircle => {
                let (m1, m2, o) = (e.fresh(), e.fresh(), e.fresh());
                vec![vec![
                    format!("med {m1} {} {}", a[0], a[1]),
                    format!("med {m2} {} {}", a[1], a[2]),
                    format!("intersec {o} {m1} {m2}"),
                    format!("circle {out} {o} {}", a[0]),
                ]]
            }
            Op::TangentCircle => {
                let f = e.fresh();
                vec![vec![format!("foot {f} {} {}", a[0], a[1]), format!("circle {out} {} {f}", a[0])]]
            }
            Op::HomothetyLine => {
                let (f, g) = (e.fresh(), e.fresh());
                vec![vec![
                    format!("foot {f} {} {}", a[0], a[2]),
                    format!("towards {g} {} {f} {}", a[0], a[1]),
                    format!("parallel {out} {g} {}", a[2]),
                ]]
            }
            Op::RatioPoint => {
                let t = e.fresh();
                vec![vec![format!("towards {t} {} {} {}", a[2], a[1], a[3]), format!("translate {out} {} {t} {}", a[2], a[0])]]
            }
            Op::AngleLocus => {
                let Term::Angle(x) = &step.args[2] else { return Err(EmitError::UnsupportedStep { step: i + 1, rule: step.rule.clone() }) };
                let q = x.base.map_or("0".to_string(), |b| e.name(&b.object()));
                let names = [format!("{out}_1"), format!("{out}_2")];
                let cmd = format!("arcs {} {} {} {} {q} {} {}", names[0], names[1], a[0], a[1], x.coeff, x.plus_pi);
                e.arcs.insert(out.clone(), names);
                one(cmd)
            }
            Op::TangentLines | Op::Bisectors => {
                let t = e.fresh();
                let cmd = if step.op == Op::Bisectors { "bisectors" } else { "tangents" };
                vec![vec![format!("{cmd} {out} {t} {} {}", a[0], a[1])], vec![format!("{cmd} {t} {out} {} {}", a[0], a[1])]]
            }
            Op::Intersect => {
                let kinds: Vec<Kind> = step.args.iter().map(|t| t.kind()).collect();
                if kinds == [Kind::Line, Kind::Line] {
                    one(format!("intersec {out} {} {}", a[0], a[1]))
                } else {
                    let t = e.fresh();
                    let curves = |n: &String| e.arcs.get(n).map_or(vec![n.clone()], |c| c.to_vec());
                    let mut opts = Vec::new();
                    for c1 in curves(&a[0]) {
                        for c2 in curves(&a[1]) {
                            opts.push(vec![format!("intersec2 {out} {t} {c1} {c2}")]);
                            opts.push(vec![format!("intersec2 {t} {out} {c1} {c2}")]);
                        }
                    }
                    opts
                }
            }
        };
        e.choose(options, &out, target.as_ref())?;
        e.names.insert(step.output.clone(), out);
    }
    let mut footer = Vec::new();
    let given: Vec<Term> = plan.given.iter().map(|&p| Term::Point(p)).collect();
    for &g in &plan.goal {
        let kind = if plan.given.contains(&g) { "cmark_b" } else { "cmark_r" };
        footer.push(format!("{kind} {}", g.ident()));
    }
    for &g in plan.given.iter().filter(|g| !plan.goal.contains(g)) {
        footer.push(format!("cmark_b {}", g.ident()));
    }
    use PointLabel::*;
    let have = |p: PointLabel| given.contains(&Term::Point(p)) || plan.steps.iter().any(|s| s.output == Term::Point(p));
    for (p, q) in [(A, B), (A, C), (B, C)] {
        if have(p) && have(q) {
            footer.push(format!("drawsegment {} {}", p.ident(), q.ident()));
        }
    }
    for s in &plan.steps {
        if is_auxiliary_line(&s.output) {
            footer.push(format!("drawdashline {}", e.name(&s.output)));
        }
    }
    for l in &footer {
        e.state.exec(l).map_err(|msg| EmitError::Script { line: 0, msg })?;
    }
    Ok(GclcScript { header, body: e.body, footer })
}

/// Whether a term is drawn as a dashed auxiliary line.
pub fn is_auxiliary_line(t: &Term) -> bool {
    matches!(t, Term::Obj(Ctor::Line | Ctor::Par | Ctor::Pbis, _)) && !is_side(t)
}
