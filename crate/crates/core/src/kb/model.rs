//! Numeric model of the vocabulary: evaluates object terms and facts on a
//! concrete triangle.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fact::{Fact, Pred};
use super::term::{to_f64, Ctor, Term, TriAngle};
use super::KnowledgeBase;
use crate::geom::{angle_at, characteristic_points, CharacteristicPoints, Kernel, NumArcPair, NumCircle, NumLine, Tolerance, Vec2};
use crate::label::PointLabel;

/// Numeric value of an object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Point(Vec2),
    Line(NumLine),
    Circle(NumCircle),
    Arcs(NumArcPair),
    Angle(f64),
}

impl Value {
    pub fn point(&self) -> Option<Vec2> {
        match self {
            Value::Point(p) => Some(*p),
            _ => None,
        }
    }

    pub fn line(&self) -> Option<NumLine> {
        match self {
            Value::Line(l) => Some(*l),
            _ => None,
        }
    }

    pub fn circle(&self) -> Option<NumCircle> {
        match self {
            Value::Circle(c) => Some(*c),
            _ => None,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Value::Angle(a) => Some(*a),
            _ => None,
        }
    }

    /// Distance between two values of the same kind, in length units.
    pub fn distance(&self, o: &Value, scale: f64) -> f64 {
        match (self, o) {
            (Value::Point(p), Value::Point(q)) => p.dist(*q),
            (Value::Line(l), Value::Line(m)) => line_distance(l, m, scale),
            (Value::Circle(k), Value::Circle(c)) => k.center.dist(c.center) + (k.radius - c.radius).abs(),
            (Value::Arcs(a), Value::Arcs(b)) => {
                let direct = a.base_x.dist(b.base_x) + a.base_y.dist(b.base_y);
                let swapped = a.base_x.dist(b.base_y) + a.base_y.dist(b.base_x);
                direct.min(swapped) + (a.angle - b.angle).abs() * scale
            }
            (Value::Angle(a), Value::Angle(b)) => (a - b).abs() * scale,
            _ => f64::INFINITY,
        }
    }
}

/// Orientation-free distance between two lines, measured in a frame of size `scale`.
pub fn line_distance(l: &NumLine, m: &NumLine, scale: f64) -> f64 {
    let s = if l.normal().dot(m.normal()) < 0.0 { -1.0 } else { 1.0 };
    (l.normal() - m.normal() * s).norm() * scale + (l.offset() - m.offset() * s).abs()
}

/// A sampled triangle that passed the non-degeneracy filter.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    pub a: Vec2,
    pub b: Vec2,
    pub c: Vec2,
    pub points: CharacteristicPoints,
    pub scale: f64,
}

impl Triangle {
    /// Non-degeneracy filter: angles above 5°, side ratio below 20, every
    /// vocabulary point defined, nothing far away and no two points nearly coincident.
    pub fn new(a: Vec2, b: Vec2, c: Vec2, tol: &Tolerance) -> Option<Triangle> {
        let min_angle = angle_at(a, b, c).min(angle_at(b, c, a)).min(angle_at(c, a, b));
        if !(min_angle > 5f64.to_radians()) {
            return None;
        }
        let sides = [b.dist(c), c.dist(a), a.dist(b)];
        let (lo, hi) = sides.iter().fold((f64::INFINITY, 0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
        if !(hi / lo < 20.0) {
            return None;
        }
        let points = characteristic_points(a, b, c, tol).ok()?;
        if !points.is_complete() {
            return None;
        }
        let scale = points.scale();
        if scale > 20.0 * hi {
            return None;
        }
        let all: Vec<Vec2> = points.iter().map(|(_, p)| p).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i].dist(all[j]) <= 1e-3 * scale {
                    return None;
                }
            }
        }
        Some(Triangle { a, b, c, points, scale })
    }

    pub fn angle(&self, t: TriAngle) -> f64 {
        match t {
            TriAngle::Bac => angle_at(self.a, self.b, self.c),
            TriAngle::Cba => angle_at(self.b, self.c, self.a),
            TriAngle::Acb => angle_at(self.c, self.a, self.b),
        }
    }
}

pub const MAX_REJECTIONS: usize = 1000;

/// Draw vertices uniformly in `[0,100]²` until the filter accepts, at most
/// [`MAX_REJECTIONS`] rejections.
pub fn sample_triangle(rng: &mut impl Rng, tol: &Tolerance) -> Option<Triangle> {
    for _ in 0..=MAX_REJECTIONS {
        let mut v = || Vec2::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
        let (a, b, c) = (v(), v(), v());
        if let Some(t) = Triangle::new(a, b, c, tol) {
            return Some(t);
        }
    }
    None
}

/// Lazily evaluated values of every object term over one triangle.
#[derive(Debug, Clone)]
pub struct Model {
    pub tri: Triangle,
    pub kernel: Kernel,
    cache: HashMap<Term, Option<Value>>,
}

impl Model {
    pub fn new(tri: Triangle, tol: Tolerance) -> Model {
        let kernel = Kernel::new(tol, tri.scale);
        Model { tri, kernel, cache: HashMap::new() }
    }

    pub fn point(&self, l: PointLabel) -> Vec2 {
        self.tri.points.get(l).expect("complete triangle")
    }

    pub fn value(&mut self, t: &Term) -> Option<Value> {
        if let Some(v) = self.cache.get(t) {
            return *v;
        }
        let v = self.compute(t);
        self.cache.insert(t.clone(), v);
        v
    }

    fn pt(&mut self, t: &Term) -> Option<Vec2> {
        self.value(t)?.point()
    }

    fn compute(&mut self, t: &Term) -> Option<Value> {
        let k = self.kernel;
        Some(match t {
            Term::Point(l) => Value::Point(self.tri.points.get(*l)?),
            Term::Num(_) | Term::Angle(_) => return None,
            Term::Obj(c, a) => match c {
                Ctor::Line => Value::Line(k.line_through(self.pt(&a[0])?, self.pt(&a[1])?).ok()?),
                Ctor::Par => {
                    let p = self.pt(&a[0])?;
                    let l = self.value(&a[1])?.line()?;
                    Value::Line(k.parallel_through(p, &l))
                }
                Ctor::Pbis => Value::Line(k.perp_bisector(self.pt(&a[0])?, self.pt(&a[1])?).ok()?),
                Ctor::Circ => Value::Circle(k.circle_center_through(self.pt(&a[0])?, self.pt(&a[1])?).ok()?),
                Ctor::Dcirc => Value::Circle(k.diameter_circle(self.pt(&a[0])?, self.pt(&a[1])?).ok()?),
                Ctor::Locus => {
                    let e = match &a[2] {
                        Term::Angle(e) => *e,
                        _ => return None,
                    };
                    let alpha = e.value(e.base.map(|b| self.tri.angle(b)))?;
                    Value::Arcs(k.angle_locus(self.pt(&a[0])?, self.pt(&a[1])?, alpha).ok()?)
                }
                Ctor::Ang => {
                    let (x, v, y) = (self.pt(&a[0])?, self.pt(&a[1])?, self.pt(&a[2])?);
                    Value::Angle(angle_at(v, x, y))
                }
            },
        })
    }

    /// Residual of a fact in length units; `None` if some object is undefined.
    pub fn residual(&mut self, f: &Fact) -> Option<f64> {
        let a = &f.args;
        let scale = self.tri.scale;
        let k = self.kernel;
        Some(match f.pred {
            Pred::OnLine => self.value(&a[1])?.line()?.distance(self.pt(&a[0])?),
            Pred::OnCircle => self.value(&a[1])?.circle()?.residual(self.pt(&a[0])?),
            Pred::Perp => {
                let (l, m) = (self.value(&a[0])?.line()?, self.value(&a[1])?.line()?);
                l.normal().dot(m.normal()).abs() * scale
            }
            Pred::VecRatio => {
                let (x, y, z, w) = (self.pt(&a[0])?, self.pt(&a[1])?, self.pt(&a[2])?, self.pt(&a[3])?);
                let r = to_f64(a[4].as_num()?);
                ((y - x) - (w - z) * r).norm()
            }
            Pred::Harmonic => {
                let (x, y, z, w) = (self.pt(&a[0])?, self.pt(&a[1])?, self.pt(&a[2])?, self.pt(&a[3])?);
                let collinear = [z, w].iter().map(|p| (y - x).unit().cross(*p - x).abs()).fold(0.0, f64::max);
                let cross = ((z - x).dot(y - w) + (w - x).dot(y - z)).abs() / scale;
                collinear.max(cross)
            }
            Pred::Tangent => {
                let (l, c) = (self.value(&a[0])?.line()?, self.value(&a[1])?.circle()?);
                (l.distance(c.center) - c.radius).abs()
            }
            Pred::Bisects => {
                let (b, l, m) = (self.value(&a[0])?.line()?, self.value(&a[1])?.line()?, self.value(&a[2])?.line()?);
                line_distance(&k.mirror_line(&l, &b), &m, scale)
            }
            Pred::Reflect => {
                let (q, p, l) = (self.pt(&a[0])?, self.pt(&a[1])?, self.value(&a[2])?.line()?);
                k.reflect(p, &l).dist(q)
            }
            Pred::SideBis => {
                let l = self.value(&a[0])?.line()?;
                let s = k.perp_bisector(self.pt(&a[1])?, self.pt(&a[2])?).ok()?;
                line_distance(&l, &s, scale)
            }
            Pred::OnLocus => {
                let s = self.pt(&a[0])?;
                match self.value(&a[1])? {
                    Value::Arcs(arcs) => (angle_at(s, arcs.base_x, arcs.base_y) - arcs.angle).abs() * scale,
                    _ => return None,
                }
            }
            Pred::AngleAt => {
                let q = self.value(&a[0])?.angle()?;
                let (v, x, y) = (self.pt(&a[1])?, self.pt(&a[2])?, self.pt(&a[3])?);
                (angle_at(v, x, y) - q).abs() * scale
            }
            Pred::Homothety => {
                let l = self.value(&a[0])?.line()?;
                let y = self.pt(&a[1])?;
                let r = to_f64(a[2].as_num()?);
                let p = self.value(&a[3])?.line()?;
                line_distance(&l, &k.homothety_line(y, r, &p).ok()?, scale)
            }
        })
    }

    pub fn holds(&mut self, f: &Fact) -> bool {
        let eps = self.kernel.eps();
        self.residual(f).is_some_and(|r| r <= eps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub fact: Fact,
    pub sample: usize,
    /// `None` when an object of the fact is undefined on the sample.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct KbCheckReport {
    pub samples: usize,
    pub facts: usize,
    pub violations: Vec<Violation>,
    /// Sampling gave up before reaching the requested count.
    pub exhausted: bool,
}

impl KbCheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && !self.exhausted
    }

    /// Distinct facts with at least one violation, with their violation counts.
    pub fn by_fact(&self) -> Vec<(Fact, usize)> {
        let mut m: HashMap<&Fact, usize> = HashMap::new();
        for v in &self.violations {
            *m.entry(&v.fact).or_default() += 1;
        }
        let mut out: Vec<(Fact, usize)> = m.into_iter().map(|(f, n)| (f.clone(), n)).collect();
        out.sort();
        out
    }
}

/// Check every fact of the closed base on `n` random non-degenerate triangles.
pub fn numeric_check_kb(kb: &KnowledgeBase, n: usize, tol: Tolerance) -> KbCheckReport {
    numeric_check_kb_seeded(kb, n, tol, 0)
}

pub fn numeric_check_kb_seeded(kb: &KnowledgeBase, n: usize, tol: Tolerance, seed: u64) -> KbCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let facts: Vec<Fact> = kb.facts().sorted();
    let mut report = KbCheckReport { samples: 0, facts: facts.len(), ..Default::default() };
    for sample in 0..n {
        let Some(tri) = sample_triangle(&mut rng, &tol) else {
            report.exhausted = true;
            break;
        };
        let mut model = Model::new(tri, tol);
        for f in &facts {
            let r = model.residual(f);
            if r.is_none_or(|r| !(r <= model.kernel.eps())) {
                report.violations.push(Violation { fact: f.clone(), sample, residual: r });
            }
        }
        report.samples += 1;
    }
    report
}

/// Pairs of distinct admissible objects that coincide numerically on a triangle.
pub fn aliases(kb: &KnowledgeBase, tri: &Triangle, tol: Tolerance) -> Vec<(Term, Term)> {
    let mut model = Model::new(tri.clone(), tol);
    let objs: Vec<(Term, Value)> = kb.admissible().iter().filter_map(|t| model.value(t).map(|v| (t.clone(), v))).collect();
    let eps = 1e3 * model.kernel.eps();
    let mut out = Vec::new();
    for i in 0..objs.len() {
        for j in i + 1..objs.len() {
            if objs[i].0.kind() == objs[j].0.kind() && objs[i].1.distance(&objs[j].1, tri.scale) <= eps {
                out.push((objs[i].0.clone(), objs[j].0.clone()));
            }
        }
    }
    out
}

/// Angles in `(0, π)` only; used when an angle expression feeds a locus.
pub fn valid_angle(a: f64) -> bool {
    a > 0.0 && a < PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::term::Rational;
    use PointLabel::*;

    fn tri() -> Triangle {
        sample_triangle(&mut ChaCha8Rng::seed_from_u64(7), &Tolerance::default()).unwrap()
    }

    #[test]
    fn sampler_acceptance_rate() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut accepted = 0;
        for _ in 0..2000 {
            let mut v = || Vec2::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
            if Triangle::new(v(), v(), v(), &tol).is_some() {
                accepted += 1;
            }
        }
        assert!(accepted > 200, "accepted {accepted} of 2000");
    }

    #[test]
    fn sampler_is_deterministic_and_filters() {
        let tol = Tolerance::default();
        let t1 = sample_triangle(&mut ChaCha8Rng::seed_from_u64(1), &tol).unwrap();
        let t2 = sample_triangle(&mut ChaCha8Rng::seed_from_u64(1), &tol).unwrap();
        assert_eq!(t1, t2);
        let flat = Triangle::new(Vec2::new(0.0, 0.0), Vec2::new(50.0, 0.0), Vec2::new(100.0, 1.0), &tol);
        assert!(flat.is_none());
    }

    #[test]
    fn residuals_of_known_facts() {
        let mut m = Model::new(tri(), Tolerance::default());
        let p = Term::Point;
        let lemma9 = Fact::new(Pred::VecRatio, vec![p(H), p(G), p(H), p(O), Term::Num(Rational::new(2, 3))]);
        assert!(m.holds(&lemma9));
        let bad = Fact::new(Pred::VecRatio, vec![p(H), p(G), p(H), p(O), Term::Num(Rational::new(1, 2))]);
        assert!(!m.holds(&bad));
        let harmonic = Fact::new(Pred::Harmonic, vec![p(B), p(C), p(Ta), p(TaExt)]);
        assert!(m.holds(&harmonic));
        let not_harmonic = Fact::new(Pred::Harmonic, vec![p(B), p(Ta), p(C), p(TaExt)]);
        assert!(!m.holds(&not_harmonic));
        let tangent = Fact::new(Pred::Tangent, vec![Term::line(B, C), Term::circ(I, Pa)]);
        assert!(m.holds(&tangent));
    }
}
