use std::fmt::Write;

use super::gclc::{is_auxiliary_line, trace_frame};
use super::EmitError;
use crate::geom::{NumLine, Vec2};
use crate::kb::model::Value;
use crate::label::PointLabel;
use crate::solver::ConstructionPlan;
use crate::verifier::BranchTrace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Pixel width and height of the image.
    pub size: f64,
    pub auxiliary: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { size: 480.0, auxiliary: true }
    }
}

fn clip(l: &NumLine, lo: Vec2, hi: Vec2) -> Option<(Vec2, Vec2)> {
    let (p, d) = (l.anchor(), l.direction());
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (o, dd, a, b) in [(p.x, d.x, lo.x, hi.x), (p.y, d.y, lo.y, hi.y)] {
        if dd.abs() < 1e-12 {
            if o < a || o > b {
                return None;
            }
        } else {
            let (u, v) = ((a - o) / dd, (b - o) / dd);
            t0 = t0.max(u.min(v));
            t1 = t1.min(u.max(v));
        }
    }
    (t0 < t1).then(|| (p + d * t0, p + d * t1))
}

/// Drawing of one complete trace: sides solid, auxiliary lines and circles dashed.
pub fn to_svg(plan: &ConstructionPlan, trace: &BranchTrace, opts: SvgOptions) -> Result<String, EmitError> {
    if !trace.is_complete() {
        return Err(EmitError::NoCompleteTrace);
    }
    let frame = trace_frame(trace, opts.size, 0.0);
    // SVG grows downwards
    let flip = |p: Vec2| {
        let q = frame.map(p);
        Vec2::new(q.x, opts.size - q.y)
    };
    let mut labeled: Vec<(PointLabel, Vec2)> = Vec::new();
    for (t, v) in &trace.assignment {
        if let (Some(l), Value::Point(p)) = (t.as_point(), v) {
            if !labeled.iter().any(|(m, _)| *m == l) {
                labeled.push((l, flip(*p)));
            }
        }
    }
    let mut circles = Vec::new();
    for s in &plan.steps {
        if let Some(Value::Circle(c)) = trace.value(&s.output) {
            circles.push((flip(c.center), c.radius * frame.scale));
        }
    }
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    let mut grow = |p: Vec2, r: f64| {
        lo = Vec2::new(lo.x.min(p.x - r), lo.y.min(p.y - r));
        hi = Vec2::new(hi.x.max(p.x + r), hi.y.max(p.y + r));
    };
    labeled.iter().for_each(|(_, p)| grow(*p, 0.0));
    if opts.auxiliary {
        circles.iter().for_each(|(c, r)| grow(*c, *r));
    }
    let margin = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1.0);
    let (lo, hi) = (lo - Vec2::new(margin, margin), hi + Vec2::new(margin, margin));
    let stroke = 0.003 * (hi.x - lo.x).max(hi.y - lo.y);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.3} {:.3} {:.3} {:.3}" stroke-width="{:.3}" font-size="{:.3}">"#,
        lo.x,
        lo.y,
        hi.x - lo.x,
        hi.y - lo.y,
        stroke,
        stroke * 6.0
    );
    if opts.auxiliary {
        for st in &plan.steps {
            if !is_auxiliary_line(&st.output) {
                continue;
            }
            let Some(Value::Line(l)) = trace.value(&st.output) else { continue };
            let Ok(l) = NumLine::through(flip(l.anchor()), flip(l.anchor() + l.direction()) - flip(l.anchor())) else { continue };
            if let Some((p, q)) = clip(&l, lo, hi) {
                let _ = writeln!(
                    s,
                    r##"<line class="aux" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#888" stroke-dasharray="{:.3} {:.3}"/>"##,
                    p.x,
                    p.y,
                    q.x,
                    q.y,
                    stroke * 4.0,
                    stroke * 3.0
                );
            }
        }
        for (c, r) in &circles {
            let _ = writeln!(
                s,
                r##"<circle class="aux" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#888" stroke-dasharray="{:.3} {:.3}"/>"##,
                c.x,
                c.y,
                r,
                stroke * 4.0,
                stroke * 3.0
            );
        }
    }
    use PointLabel::*;
    let at = |l: PointLabel| labeled.iter().find(|(m, _)| *m == l).map(|(_, p)| *p);
    for (a, b) in [(A, B), (A, C), (B, C)] {
        if let (Some(p), Some(q)) = (at(a), at(b)) {
            let _ = writeln!(s, r##"<line class="side" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#000"/>"##, p.x, p.y, q.x, q.y);
        }
    }
    for (l, p) in &labeled {
        let color = if plan.given.contains(l) { "#000" } else { "#c00" };
        let _ = writeln!(s, r#"<circle class="point" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{color}"/>"#, p.x, p.y, stroke * 1.5);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" fill="{color}">{}</text>"#, p.x + stroke * 2.0, p.y - stroke * 2.0, l);
    }
    s.push_str("</svg>\n");
    Ok(s)
}
