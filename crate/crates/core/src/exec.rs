//! Numeric semantics of construction steps and non-degeneracy conditions.

use crate::geom::{GeomError, Kernel, Locus};
use crate::kb::model::{valid_angle, Value};
use crate::kb::{NdgKind, Op};

/// A resolved operation argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arg {
    Val(Value),
    Scalar(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum StepError {
    #[error("argument of the wrong kind")]
    BadArgument,
    #[error("no common point")]
    NoIntersection,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

fn locus(v: &Value) -> Option<Locus> {
    match v {
        Value::Line(l) => Some(Locus::Line(*l)),
        Value::Circle(c) => Some(Locus::Circle(*c)),
        Value::Arcs(a) => Some(Locus::Arcs(*a)),
        _ => None,
    }
}

/// All values an operation can produce, in the kernel's deterministic order.
pub fn apply_op(k: &Kernel, op: Op, args: &[Arg]) -> Result<Vec<Value>, StepError> {
    use StepError::BadArgument;
    let val = |i: usize| match args.get(i) {
        Some(Arg::Val(v)) => Ok(*v),
        _ => Err(BadArgument),
    };
    let pt = |i: usize| val(i)?.point().ok_or(BadArgument);
    let line = |i: usize| val(i)?.line().ok_or(BadArgument);
    let scalar = |i: usize| match args.get(i) {
        Some(Arg::Scalar(s)) => Ok(*s),
        _ => Err(BadArgument),
    };
    Ok(match op {
        Op::LineThrough => vec![Value::Line(k.line_through(pt(0)?, pt(1)?)?)],
        Op::CircleCenterThrough => vec![Value::Circle(k.circle_center_through(pt(0)?, pt(1)?)?)],
        Op::Intersect => {
            let a = locus(&val(0)?).ok_or(BadArgument)?;
            let b = locus(&val(1)?).ok_or(BadArgument)?;
            let pts = k.intersect(&a, &b)?;
            if pts.is_empty() {
                return Err(StepError::NoIntersection);
            }
            pts.into_iter().map(Value::Point).collect()
        }
        Op::PerpBisector => vec![Value::Line(k.perp_bisector(pt(0)?, pt(1)?)?)],
        Op::PerpThrough => vec![Value::Line(k.perp_through(pt(0)?, &line(1)?))],
        Op::DiameterCircle => vec![Value::Circle(k.diameter_circle(pt(0)?, pt(1)?)?)],
        Op::Circumcircle => vec![Value::Circle(k.circumcircle(pt(0)?, pt(1)?, pt(2)?)?)],
        Op::AngleLocus => {
            let a = scalar(2)?;
            if !valid_angle(a) {
                return Err(GeomError::DegenerateInput.into());
            }
            vec![Value::Arcs(k.angle_locus(pt(0)?, pt(1)?, a)?)]
        }
        Op::Reflect => vec![Value::Point(k.reflect(pt(0)?, &line(1)?))],
        Op::TangentCircle => vec![Value::Circle(k.tangent_circle(pt(0)?, &line(1)?)?)],
        Op::TangentLines => {
            let c = val(1)?.circle().ok_or(BadArgument)?;
            k.tangent_lines(pt(0)?, &c)?.into_iter().map(Value::Line).collect()
        }
        Op::AngleMeasure => {
            let (v, x, y) = (pt(0)?, pt(1)?, pt(2)?);
            if v.dist(x) <= k.floor() || v.dist(y) <= k.floor() {
                return Err(GeomError::DegenerateInput.into());
            }
            vec![Value::Angle(crate::geom::angle_at(v, x, y))]
        }
        Op::Bisectors => k.bisectors(&line(0)?, &line(1)?)?.into_iter().map(Value::Line).collect(),
        Op::MirrorLine => vec![Value::Line(k.mirror_line(&line(0)?, &line(1)?))],
        Op::HomothetyLine => vec![Value::Line(k.homothety_line(pt(0)?, scalar(1)?, &line(2)?)?)],
        Op::RatioPoint => vec![Value::Point(k.ratio_point(pt(0)?, pt(1)?, pt(2)?, scalar(3)?))],
        Op::HarmonicConjugate => vec![Value::Point(k.harmonic_conjugate(pt(0)?, pt(1)?, pt(2)?)?)],
    })
}

/// Numeric truth of a non-degeneracy condition.
pub fn eval_ndg(k: &Kernel, kind: NdgKind, args: &[Value]) -> bool {
    let floor = k.floor();
    match (kind, args) {
        (NdgKind::Distinct, [Value::Point(p), Value::Point(q)]) => p.dist(*q) > floor,
        (NdgKind::Distinct, [a, b]) => a.distance(b, k.scale) > floor,
        (NdgKind::NonCollinear, [Value::Point(p), Value::Point(q), Value::Point(r)]) => {
            let longest = p.dist(*q).max(q.dist(*r)).max(r.dist(*p));
            longest > floor && (*q - *p).cross(*r - *p).abs() > floor * longest
        }
        (NdgKind::NotOnLine, [Value::Point(p), Value::Line(l)]) => l.distance(*p) > floor,
        (NdgKind::Intersects, [a, b]) => match (locus(a), locus(b)) {
            (Some(x), Some(y)) => k.intersect(&x, &y).is_ok_and(|v| !v.is_empty()),
            _ => false,
        },
        (NdgKind::OutsideCircle, [Value::Point(p), Value::Circle(c)]) => p.dist(c.center) > c.radius + floor,
        (NdgKind::NonZeroAngle, [Value::Angle(a)]) => *a > k.tol.degeneracy_floor && *a < std::f64::consts::PI - k.tol.degeneracy_floor,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{NumCircle, NumLine, Vec2};

    #[test]
    fn intersections_branch() {
        let k = Kernel::default();
        let l = Value::Line(NumLine::from_normal(Vec2::new(0.0, 1.0), 0.0).unwrap());
        let c = Value::Circle(NumCircle::new(Vec2::new(0.0, 0.0), 1.0).unwrap());
        let out = apply_op(&k, Op::Intersect, &[Arg::Val(l), Arg::Val(c)]).unwrap();
        assert_eq!(out.len(), 2);
        let far = Value::Line(NumLine::from_normal(Vec2::new(0.0, 1.0), 2.0).unwrap());
        assert_eq!(apply_op(&k, Op::Intersect, &[Arg::Val(far), Arg::Val(c)]), Err(StepError::NoIntersection));
        assert!(!eval_ndg(&k, NdgKind::Intersects, &[far, c]));
        assert!(eval_ndg(&k, NdgKind::Intersects, &[l, c]));
    }

    #[test]
    fn ratio_point_and_ndgs() {
        let k = Kernel::default();
        let p = |x, y| Value::Point(Vec2::new(x, y));
        let out =
            apply_op(&k, Op::RatioPoint, &[Arg::Val(p(1.0, 1.0)), Arg::Val(p(0.0, 0.0)), Arg::Val(p(2.0, 0.0)), Arg::Scalar(0.5)]).unwrap();
        assert_eq!(out, vec![p(0.0, 1.0)]);
        assert!(!eval_ndg(&k, NdgKind::NonCollinear, &[p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]));
        assert!(eval_ndg(&k, NdgKind::Distinct, &[p(0.0, 0.0), p(1.0, 0.0)]));
    }
}
